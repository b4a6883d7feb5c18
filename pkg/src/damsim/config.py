"""System configuration shared by the channel, estimation, and link modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace


def dbm_to_watt(value_dbm: float) -> float:
    """Convert a power level in dBm to linear watts."""
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


@dataclass
class SystemConfig:
    """Parameters of the simulated wideband multi-antenna link.

    Power levels are stored in dBm and exposed in watts through the
    ``sigma2``, ``p_ul`` and ``p_dl`` properties.  ``noise_dbm`` may be set
    to ``-inf`` to run noiseless experiments; the transmit powers must stay
    finite and positive.
    """

    M: int = 16                 # base-station antennas
    K: int = 25                 # delay taps spanned by the channel
    L: int = 3                  # physical propagation paths
    Ts: float = 10e-9           # sampling interval [s]
    beta: float = 0.5           # raised-cosine roll-off factor
    C: float = 0.01             # tap-selection threshold, fraction of the strongest tap power
    noise_dbm: float = -94.0    # receiver noise power
    p_ul_dbm: float = 26.0      # uplink pilot power
    p_dl_dbm: float = 30.0      # downlink transmit power
    n_c: int = 100_000          # symbols per coherence block
    n_g: int = 100              # guard interval [symbols]
    pathloss_db: float = 110.0  # mean large-scale attenuation
    on_grid: bool = True        # snap path delays to the sampling grid

    def __post_init__(self):
        if self.M < 1 or self.K < 1 or self.L < 1:
            raise ValueError("M, K and L must be positive integers")
        if self.L > self.K:
            raise ValueError("cannot place more paths than delay taps")
        if self.Ts <= 0:
            raise ValueError("sampling interval must be positive")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("roll-off factor must lie in [0, 1]")
        if not 0.0 < self.C < 1.0:
            raise ValueError("tap-selection threshold must lie in (0, 1)")
        if self.n_c < 1 or self.n_g < 0:
            raise ValueError("frame lengths must be non-negative with n_c >= 1")
        if self.n_g >= self.n_c:
            raise ValueError("guard interval must be shorter than the coherence block")
        if not math.isfinite(self.p_ul_dbm) or not math.isfinite(self.p_dl_dbm):
            raise ValueError("transmit powers must be finite")
        if math.isnan(self.noise_dbm) or self.noise_dbm == math.inf:
            raise ValueError("noise power must be finite or -inf")

    @property
    def sigma2(self) -> float:
        """Noise power in watts (0.0 when ``noise_dbm`` is ``-inf``)."""
        return dbm_to_watt(self.noise_dbm)

    @property
    def p_ul(self) -> float:
        """Uplink pilot power in watts."""
        return dbm_to_watt(self.p_ul_dbm)

    @property
    def p_dl(self) -> float:
        """Downlink transmit power in watts."""
        return dbm_to_watt(self.p_dl_dbm)

    @property
    def path_gain_var(self) -> float:
        """Average per-antenna power of a single path gain."""
        return 10.0 ** (-self.pathloss_db / 10.0)

    def with_overrides(self, **kwargs) -> "SystemConfig":
        return replace(self, **kwargs)


def desk_config(**overrides) -> SystemConfig:
    """Small configuration suitable for laptop-scale runs and tests."""
    return SystemConfig(**overrides)


def full_scale_config(**overrides) -> SystemConfig:
    """Full-scale configuration (64 antennas, 50 taps, 5 paths)."""
    base = dict(M=64, K=50, L=5)
    base.update(overrides)
    return SystemConfig(**base)


_FIELD_TYPES = {f.name: f.type for f in fields(SystemConfig)}


def _parse_value(name: str, raw: str):
    kind = _FIELD_TYPES[name]
    if kind == "bool":
        lowered = raw.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"cannot parse boolean value {raw!r} for {name}")
    if kind == "int":
        return int(float(raw))
    return float(raw)


def load_config(path, base: SystemConfig | None = None) -> SystemConfig:
    """Read ``key = value`` lines into a SystemConfig.

    Blank lines and ``#`` comments are ignored.  Keys must match
    SystemConfig field names; values are parsed according to the field type.
    """
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line.strip()!r}")
            key, _, raw = text.partition("=")
            key = key.strip()
            raw = raw.strip()
            if key not in _FIELD_TYPES:
                raise ValueError(f"{path}:{lineno}: unknown parameter {key!r}")
            values[key] = _parse_value(key, raw)
    if base is None:
        return SystemConfig(**values)
    return replace(base, **values)
