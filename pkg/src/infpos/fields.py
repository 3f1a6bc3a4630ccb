"""Spatially correlated standard-normal random fields.

Each field is a stationary Gaussian process on a regular grid covering the
factory footprint, with isotropic exponential autocorrelation
``rho(delta) = exp(-delta / d_cor)``.  Grids are synthesized exactly by
circulant embedding (FFT of the padded covariance), so node-to-node
correlations match the model to numerical precision.

Queries at arbitrary positions use bilinear interpolation of the four
surrounding nodes, divided by the closed-form standard deviation of that
weighted sum.  Plain bilinear interpolation shrinks the marginal variance
inside a cell (interpolated values would no longer be standard normal,
which would bias every threshold test built on top of the field); the
normalization restores an exactly standard-normal marginal everywhere
while keeping the field continuous and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import next_fast_len


@dataclass(frozen=True)
class SpatialField:
    """Frozen correlated-field realization, queryable anywhere on the grid."""

    grid_origin: tuple          # (x0, y0) of node [0, 0], m
    grid_spacing: float         # node pitch, m
    d_cor: float                # correlation distance, m
    values: np.ndarray          # (ny, nx) standard-normal node values

    def query(self, positions) -> np.ndarray:
        """Interpolate the field at ``positions`` (shape (2,) or (n, 2)).

        Returns standard-normal values; exact node values at the nodes.
        """
        pos = np.atleast_2d(np.asarray(positions, dtype=np.float64))
        s = self.grid_spacing
        ny, nx = self.values.shape
        gx = (pos[:, 0] - self.grid_origin[0]) / s
        gy = (pos[:, 1] - self.grid_origin[1]) / s
        if np.any(gx < -1e-9) or np.any(gy < -1e-9) or \
           np.any(gx > nx - 1 + 1e-9) or np.any(gy > ny - 1 + 1e-9):
            raise ValueError("query position outside the field grid")
        ix = np.clip(gx.astype(np.int64), 0, nx - 2)
        iy = np.clip(gy.astype(np.int64), 0, ny - 2)
        fx = np.clip(gx - ix, 0.0, 1.0)
        fy = np.clip(gy - iy, 0.0, 1.0)

        v00 = self.values[iy, ix]
        v10 = self.values[iy, ix + 1]
        v01 = self.values[iy + 1, ix]
        v11 = self.values[iy + 1, ix + 1]
        w00 = (1.0 - fx) * (1.0 - fy)
        w10 = fx * (1.0 - fy)
        w01 = (1.0 - fx) * fy
        w11 = fx * fy
        raw = w00 * v00 + w10 * v10 + w01 * v01 + w11 * v11

        # variance of the weighted corner sum under the exponential model
        a = np.exp(-s / self.d_cor)             # side-adjacent corners
        b = np.exp(-s * np.sqrt(2.0) / self.d_cor)  # diagonal corners
        var = (w00**2 + w10**2 + w01**2 + w11**2
               + 2.0 * a * (w00 * w10 + w00 * w01 + w10 * w11 + w01 * w11)
               + 2.0 * b * (w00 * w11 + w10 * w01))
        out = raw / np.sqrt(var)
        if np.ndim(positions) == 1:
            return out[0]
        return out


def sample_spatial_field(seed, d_cor: float, footprint, grid_spacing: float | None = None,
                         pad_cor: float = 5.0) -> SpatialField:
    """Draw one correlated standard-normal field covering ``footprint``.

    ``seed`` may be an int or a ``np.random.SeedSequence``; the same seed
    always reproduces the same field bit for bit.  ``grid_spacing``
    defaults to ``d_cor / 5`` and must not exceed ``d_cor / 2``.
    """
    if grid_spacing is None:
        grid_spacing = 0.2 * d_cor
    if d_cor <= 0:
        raise ValueError("d_cor must be positive")
    if grid_spacing > d_cor / 2.0 + 1e-12:
        raise ValueError("grid_spacing must be <= d_cor / 2")

    s = float(grid_spacing)
    nx = int(np.ceil(footprint.length / s - 1e-9)) + 1
    ny = int(np.ceil(footprint.width / s - 1e-9)) + 1

    # pad the circulant embedding so torus wrap-around correlation is ~e^-pad_cor
    pad = int(np.ceil(pad_cor * d_cor / s))
    mx = next_fast_len(2 * (nx + pad))
    my = next_fast_len(2 * (ny + pad))

    # covariance of the first row/column on the torus
    dx = np.minimum(np.arange(mx), mx - np.arange(mx)) * s
    dy = np.minimum(np.arange(my), my - np.arange(my)) * s
    dist = np.sqrt(dx[None, :] ** 2 + dy[:, None] ** 2)
    cov = np.exp(-dist / d_cor)

    lam = np.fft.fft2(cov).real
    lam = np.clip(lam, 0.0, None)  # clip tiny negative eigenvalues of the embedding

    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    rng = np.random.Generator(np.random.PCG64(ss))
    noise = rng.standard_normal((my, mx)) + 1j * rng.standard_normal((my, mx))
    spectrum = np.sqrt(lam / (mx * my)) * noise
    grid = np.fft.fft2(spectrum).real[:ny, :nx]

    return SpatialField(grid_origin=(0.0, 0.0), grid_spacing=s, d_cor=float(d_cor),
                        values=np.ascontiguousarray(grid))


def fit_correlation_distance(field_values, grid_spacing: float,
                             max_lag_nodes: int = 8) -> float:
    """Estimate d_cor from node values by an exponential fit along both axes.

    ``field_values`` is one (ny, nx) grid or a sequence of grids (estimates
    are pooled, which is how per-BS fields of one factory are checked).
    The field model has zero mean by construction, so raw lagged products
    are used without demeaning; subtracting the short-record sample mean
    would bias the fitted distance low.  Fits ``ln rho(lag)`` vs lag over
    ``1..max_lag_nodes`` nodes through the origin.
    """
    grids = [field_values] if isinstance(field_values, np.ndarray) else list(field_values)
    lags = np.arange(1, max_lag_nodes + 1)
    num = np.zeros(len(lags))
    cnt = np.zeros(len(lags))
    denom = 0.0
    denom_cnt = 0.0
    for g in grids:
        v = np.asarray(g, dtype=np.float64)
        denom += np.sum(v * v)
        denom_cnt += v.size
        for i, k in enumerate(lags):
            num[i] += np.sum(v[:, :-k] * v[:, k:]) + np.sum(v[:-k, :] * v[k:, :])
            cnt[i] += v[:, :-k].size + v[:-k, :].size
    rhos = (num / cnt) / (denom / denom_cnt)
    valid = rhos > 0
    lags, rhos = lags[valid], rhos[valid]
    if len(lags) < 2:
        raise ValueError("autocorrelation collapsed; field too small to fit")
    # ln rho = -lag * s / d_cor, no intercept
    x = lags * grid_spacing
    slope = np.dot(x, np.log(rhos)) / np.dot(x, x)
    return -1.0 / slope
