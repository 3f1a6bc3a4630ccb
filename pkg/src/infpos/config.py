"""Configuration types for the indoor-factory positioning simulator.

The defaults describe the baseline scenario: a 120 m x 60 m x 10 m hall
with 18 base stations on a 20 m grid at 8 m height, UEs at 1.5 m, a
3.5 GHz carrier with 100 MHz bandwidth, and the two clutter settings
(40%, 2 m, 2 m) and (60%, 6 m, 2 m) of the 3GPP InF-DH channel model
(TR 38.901).

Configs can also be read from a plain ``key=value`` text file, e.g.::

    length=120
    width=60
    clutter=0.60,6.0,2.0
    seed=1234
    fc_ghz=3.5
    bw_hz=100e6
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class TopologyConfig:
    """Hall geometry and base-station layout."""

    length: float = 120.0       # m, x extent
    width: float = 60.0         # m, y extent
    height: float = 10.0        # m, ceiling
    bs_spacing: float = 20.0    # m, inter-BS grid pitch
    bs_height: float = 8.0      # m
    ue_height: float = 1.5      # m
    n_bs: int = 18

    def __post_init__(self):
        if self.length <= 0 or self.width <= 0:
            raise ValueError("hall dimensions must be positive")
        if self.bs_height >= self.height:
            raise ValueError("bs_height must be below the ceiling")
        if self.n_bs < 1:
            raise ValueError("need at least one BS")
        if self.bs_spacing <= 0:
            raise ValueError("bs_spacing must be positive")

    @property
    def area(self) -> float:
        return self.length * self.width

    def contains(self, x, y) -> bool:
        return bool((0.0 <= x) & (x <= self.length) & (0.0 <= y) & (y <= self.width))


@dataclass(frozen=True)
class ClutterConfig:
    """InF clutter meta-parameters: density r, height h_c, element size d_c."""

    density: float = 0.6        # fraction of floor area covered
    clutter_height: float = 6.0  # m
    clutter_size: float = 2.0    # m

    def __post_init__(self):
        if not 0.0 < self.density < 1.0:
            raise ValueError("clutter density must be in (0, 1)")
        if self.clutter_size <= 0:
            raise ValueError("clutter size must be positive")
        if self.clutter_height <= 0:
            raise ValueError("clutter height must be positive")


# the two baseline clutter settings
CLUTTER_SPARSE = ClutterConfig(density=0.4, clutter_height=2.0, clutter_size=2.0)
CLUTTER_DENSE = ClutterConfig(density=0.6, clutter_height=6.0, clutter_size=2.0)


@dataclass(frozen=True)
class RadioConfig:
    """Carrier and sampling parameters of the measured channel."""

    fc_ghz: float = 3.5
    bandwidth_hz: float = 100e6
    n_taps: int = 256

    def __post_init__(self):
        if self.fc_ghz <= 0:
            raise ValueError("carrier frequency must be positive")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth must be positive")
        if self.n_taps < 1:
            raise ValueError("n_taps must be >= 1")

    @property
    def sample_period(self) -> float:
        return 1.0 / self.bandwidth_hz


@dataclass(frozen=True)
class FadingConfig:
    """Large- and small-scale fading constants.

    Defaults follow TR 38.901 Table 7.4.1-1 / Table 7.5-6 Part-3 for the
    InF scenario with the baseline hall (volume/surface ratio V/S = 4 m for
    120 x 60 x 10 m).  All entries are plain config values so they can be
    re-pinned against the TR tables without touching code.
    """

    # shadow fading std [dB]
    sigma_sf_los: float = 4.3
    sigma_sf_nlos: float = 4.0
    # lognormal delay spread: lgDS = log10(DS/1s)
    mu_lgds_los: float = math.log10(26.0 * 4.0 + 14.0) - 9.35
    sigma_lgds_los: float = 0.15
    mu_lgds_nlos: float = math.log10(30.0 * 4.0 + 32.0) - 9.44
    sigma_lgds_nlos: float = 0.19
    # Ricean K factor [dB], LoS links only
    mu_k_db: float = 7.0
    sigma_k_db: float = 8.0
    # cluster generation
    n_clusters: int = 25
    r_tau_los: float = 2.7
    r_tau_nlos: float = 3.0
    zeta_db: float = 4.0         # per-cluster shadowing std
    # correlation distances of the spatial fields [m]
    dcor_sf: float = 10.0
    dcor_los: float = 10.0
    dcor_lsp: float = 10.0
    # spatial-field grid resolution as a fraction of the correlation distance
    grid_step_frac: float = 0.2

    def __post_init__(self):
        if self.n_clusters < 1:
            raise ValueError("need at least one cluster")
        if min(self.dcor_sf, self.dcor_los, self.dcor_lsp) <= 0:
            raise ValueError("correlation distances must be positive")
        if not 0.0 < self.grid_step_frac <= 0.5:
            raise ValueError("grid_step_frac must be in (0, 0.5]")

    @staticmethod
    def for_hall(topo: TopologyConfig, **overrides) -> "FadingConfig":
        """Recompute the volume-dependent delay-spread medians for a hall."""
        l, w, h = topo.length, topo.width, topo.height
        volume = l * w * h
        surface = 2.0 * (l * w + l * h + w * h)
        vs = volume / surface
        base = dict(
            mu_lgds_los=math.log10(26.0 * vs + 14.0) - 9.35,
            mu_lgds_nlos=math.log10(30.0 * vs + 32.0) - 9.44,
        )
        base.update(overrides)
        return FadingConfig(**base)


@dataclass(frozen=True)
class FactoryConfig:
    """Everything needed to realize one virtual factory."""

    seed: int = 0
    topology: TopologyConfig = field(default_factory=TopologyConfig)
    clutter: ClutterConfig = field(default_factory=lambda: CLUTTER_DENSE)
    radio: RadioConfig = field(default_factory=RadioConfig)
    fading: FadingConfig = field(default_factory=FadingConfig)


def _parse_scalar(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_kv_file(path) -> dict:
    """Parse a ``key=value`` config file into a dict.

    Blank lines and ``#`` comments are ignored.  Comma-separated values
    become tuples of numbers; everything else is int/float/str.
    """
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().lower()
        value = value.strip()
        if "," in value:
            out[key] = tuple(_parse_scalar(v) for v in value.split(","))
        else:
            out[key] = _parse_scalar(value)
    return out


def factory_config_from_kv(kv: dict) -> FactoryConfig:
    """Build a FactoryConfig from parsed key=value entries.

    Recognized keys: length, width, height, bs_spacing, bs_height,
    ue_height, n_bs, clutter (r,h,d triple), seed, fc_ghz, bw_hz, n_taps,
    dcor_sf, dcor_los, dcor_lsp.  Unknown keys are left for the caller.
    """
    topo_kw = {}
    for name, key in [("length", "length"), ("width", "width"), ("height", "height"),
                      ("bs_spacing", "bs_spacing"), ("bs_height", "bs_height"),
                      ("ue_height", "ue_height"), ("n_bs", "n_bs")]:
        if key in kv:
            topo_kw[name] = int(kv[key]) if name == "n_bs" else float(kv[key])
    topo = TopologyConfig(**topo_kw)

    if "clutter" in kv:
        r, h, d = kv["clutter"]
        clutter = ClutterConfig(density=float(r), clutter_height=float(h), clutter_size=float(d))
    else:
        clutter = CLUTTER_DENSE

    radio_kw = {}
    if "fc_ghz" in kv:
        radio_kw["fc_ghz"] = float(kv["fc_ghz"])
    if "bw_hz" in kv:
        radio_kw["bandwidth_hz"] = float(kv["bw_hz"])
    if "n_taps" in kv:
        radio_kw["n_taps"] = int(kv["n_taps"])
    radio = RadioConfig(**radio_kw)

    fading_kw = {}
    for name, key in [("dcor_sf", "dcor_sf"), ("dcor_los", "dcor_los"), ("dcor_lsp", "dcor_lsp")]:
        if key in kv:
            fading_kw[name] = float(kv[key])
    fading = FadingConfig.for_hall(topo, **fading_kw)

    return FactoryConfig(seed=int(kv.get("seed", 0)), topology=topo, clutter=clutter,
                         radio=radio, fading=fading)


def load_factory_config(path) -> FactoryConfig:
    return factory_config_from_kv(read_kv_file(path))
