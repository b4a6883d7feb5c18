"""Sparse multipath channel synthesis on the delay-tap grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SystemConfig

DOWNLINK = "downlink"
UPLINK = "uplink"


def raised_cosine(t, Ts: float, beta: float):
    """Raised-cosine pulse with unit peak, p(0) = 1.

    Evaluates sinc(t/Ts) * cos(pi*beta*t/Ts) / (1 - (2*beta*t/Ts)^2) with the
    removable singularity at |t| = Ts/(2*beta) replaced by its analytic limit
    (pi/4) * sinc(1/(2*beta)).  beta = 0 reduces to a plain sinc.

    Parameters
    ----------
    t : array_like
        Evaluation times in seconds (scalar or array).
    Ts : float
        Symbol interval, strictly positive.
    beta : float
        Roll-off factor in [0, 1].

    Returns
    -------
    ndarray or float
        Pulse values with the same shape as ``t``.
    """
    if Ts <= 0:
        raise ValueError("symbol interval must be positive")
    if not 0.0 <= beta <= 1.0:
        raise ValueError("roll-off factor must lie in [0, 1]")
    x = np.asarray(t, dtype=float) / Ts
    out = np.sinc(x)
    if beta > 0:
        scaled = 2.0 * beta * x
        den = 1.0 - scaled * scaled
        # direct evaluation cancels catastrophically near |2*beta*t/Ts| = 1
        singular = np.abs(np.abs(scaled) - 1.0) < 1e-9
        out = out * np.cos(np.pi * beta * x) / np.where(singular, 1.0, den)
        if np.any(singular):
            limit = (np.pi / 4.0) * np.sinc(1.0 / (2.0 * beta))
            out = np.where(singular, limit, out)
    if out.ndim == 0:
        return float(out)
    return out


@dataclass
class PathSet:
    """Physical paths: complex antenna-domain gain vectors and delays.

    ``gains`` has shape (L, M), one row per path; ``delays`` holds the L
    path delays in seconds.
    """

    gains: np.ndarray
    delays: np.ndarray

    def __post_init__(self):
        self.gains = np.asarray(self.gains, dtype=complex)
        self.delays = np.asarray(self.delays, dtype=float)
        if self.gains.ndim != 2 or self.delays.ndim != 1:
            raise ValueError("gains must be (L, M) and delays (L,)")
        if self.gains.shape[0] != self.delays.shape[0]:
            raise ValueError("one delay is required per path")
        if np.any(self.delays < 0):
            raise ValueError("path delays must be non-negative")

    @property
    def n_paths(self) -> int:
        return self.delays.shape[0]


@dataclass
class TapChannel:
    """Sample-spaced channel matrix; column k is the antenna vector of tap k."""

    taps: np.ndarray
    direction: str = DOWNLINK

    def __post_init__(self):
        self.taps = np.asarray(self.taps, dtype=complex)
        if self.taps.ndim != 2:
            raise ValueError("tap matrix must be two-dimensional (M, K)")
        if self.direction not in (DOWNLINK, UPLINK):
            raise ValueError(f"unknown link direction {self.direction!r}")

    @property
    def M(self) -> int:
        return self.taps.shape[0]

    @property
    def K(self) -> int:
        return self.taps.shape[1]


def generate_paths(cfg: SystemConfig, rng: np.random.Generator) -> PathSet:
    """Draw path gains and delays for one channel realization.

    Delays are uniform over [0, (K-1)*Ts]; with ``cfg.on_grid`` they are
    drawn uniformly over the distinct grid points k*Ts instead.  Each path
    gain is a Rayleigh-faded scalar spread over a uniform linear array with
    half-wavelength spacing, scaled so that the expected per-antenna path
    power equals ``cfg.path_gain_var``.
    """
    L, M, K = cfg.L, cfg.M, cfg.K
    if cfg.on_grid:
        ticks = rng.choice(K, size=L, replace=False)
        delays = np.sort(ticks) * cfg.Ts
    else:
        delays = np.sort(rng.uniform(0.0, (K - 1) * cfg.Ts, size=L))
    angles = rng.uniform(-np.pi / 2, np.pi / 2, size=L)
    fading = (rng.standard_normal(L) + 1j * rng.standard_normal(L)) / np.sqrt(2.0)
    steering = np.exp(1j * np.pi * np.outer(np.sin(angles), np.arange(M)))
    amplitude = 10.0 ** (-cfg.pathloss_db / 20.0)
    gains = amplitude * fading[:, None] * steering
    return PathSet(gains=gains, delays=delays)


def synthesize_taps(paths: PathSet, cfg: SystemConfig) -> TapChannel:
    """Project physical paths onto the K-tap grid through the shaping pulse.

    Tap k collects sum_l gains[l] * p(k*Ts - tau_l) where p is the
    raised-cosine pulse.
    """
    if paths.gains.shape[1] < 1:
        raise ValueError("paths must span at least one antenna")
    if np.any(paths.delays > (cfg.K - 1) * cfg.Ts):
        raise ValueError("path delay exceeds the modeled tap span")
    grid = np.arange(cfg.K) * cfg.Ts
    weights = raised_cosine(grid[None, :] - paths.delays[:, None], cfg.Ts, cfg.beta)
    taps = paths.gains.T @ weights
    return TapChannel(taps=taps, direction=DOWNLINK)


def tap_powers(channel: TapChannel) -> np.ndarray:
    """Per-tap powers ||h[k]||^2 as a length-K real vector."""
    return np.sum(np.abs(channel.taps) ** 2, axis=0)


@dataclass
class SignificantTaps:
    """Strictly increasing indices of the taps retained for transmission."""

    indices: np.ndarray

    def __post_init__(self):
        self.indices = np.asarray(self.indices, dtype=int)
        if self.indices.ndim != 1 or self.indices.size == 0:
            raise ValueError("at least one significant tap is required")
        if np.any(np.diff(self.indices) <= 0):
            raise ValueError("tap indices must be strictly increasing")
        if self.indices[0] < 0:
            raise ValueError("tap indices must be non-negative")

    @property
    def n_taps(self) -> int:
        return self.indices.size

    @property
    def k_max(self) -> int:
        return int(self.indices[-1])


def select_significant_taps(channel: TapChannel, threshold: float) -> SignificantTaps:
    """Keep the taps whose power reaches ``threshold`` times the strongest tap."""
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must lie in (0, 1]")
    powers = tap_powers(channel)
    peak = powers.max()
    if peak <= 0.0:
        raise ValueError("channel has no energy, cannot select taps")
    return SignificantTaps(indices=np.flatnonzero(powers >= threshold * peak))


def uplink_channel(downlink: TapChannel) -> TapChannel:
    """Uplink taps under reciprocity: entrywise conjugate of the downlink."""
    if downlink.direction != DOWNLINK:
        raise ValueError("expected a downlink channel")
    return TapChannel(taps=downlink.taps.conj(), direction=UPLINK)


def downlink_channel(uplink: TapChannel) -> TapChannel:
    """Inverse of :func:`uplink_channel`."""
    if uplink.direction != UPLINK:
        raise ValueError("expected an uplink channel")
    return TapChannel(taps=uplink.taps.conj(), direction=DOWNLINK)
