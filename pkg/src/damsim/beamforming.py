"""Per-tap transmit beamforming with delay pre-compensation.

Each significant tap l gets its own beam f_l sent kappa_l = k_max - k_l
samples early, so all selected taps arrive aligned at the common delay
k_max.  Residual inter-symbol interference is what the beams see of the
channel at the wrong lag; the stacked lag responses needed for that are
collected by :func:`effective_channel_groups`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .channel import SignificantTaps, TapChannel

_COND_LIMIT = 1e12

ZF = "zf"
MRT = "mrt"
MMSE = "mmse"
SCHEMES = (ZF, MRT, MMSE)


@dataclass
class BeamformerSet:
    """Per-tap beams: row l of ``vectors`` is sent kappa_l samples early."""

    vectors: np.ndarray
    kappas: np.ndarray
    scheme: str
    power: float

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=complex)
        self.kappas = np.asarray(self.kappas, dtype=int)
        if self.vectors.ndim != 2:
            raise ValueError("beam matrix must be (n_beams, M)")
        if self.kappas.shape != (self.vectors.shape[0],):
            raise ValueError("one pre-compensation delay is required per beam")
        if np.any(self.kappas < 0):
            raise ValueError("pre-compensation delays must be non-negative")

    @property
    def n_beams(self) -> int:
        return self.vectors.shape[0]

    @property
    def M(self) -> int:
        return self.vectors.shape[1]

    def total_power(self) -> float:
        return float(np.sum(np.abs(self.vectors) ** 2))

    def stacked(self) -> np.ndarray:
        """All beams concatenated into a single length n_beams*M vector."""
        return self.vectors.reshape(-1)


def delay_precompensation(omega: SignificantTaps) -> np.ndarray:
    """kappa_l = k_max - k_l for each selected tap."""
    return omega.k_max - omega.indices


def _selected_block(channel: TapChannel, omega: SignificantTaps) -> np.ndarray:
    if omega.k_max >= channel.K:
        raise ValueError("selected tap index exceeds the channel length")
    return channel.taps[:, omega.indices]


def zf_beamformer(channel: TapChannel, omega: SignificantTaps, p_dl: float) -> BeamformerSet:
    """Per-tap zero-forcing beams with a joint power constraint.

    Beam l is the projection of h[k_l] onto the orthogonal complement of the
    other selected tap vectors, so each beam is invisible to every other
    selected tap.  All beams share one normalization, giving total transmit
    power p_dl.
    """
    if p_dl <= 0:
        raise ValueError("transmit power must be positive")
    Hs = _selected_block(channel, omega)
    M, n = Hs.shape
    if n > M:
        raise ValueError("zero forcing needs at least as many antennas as selected taps")
    raw = np.empty((n, M), dtype=complex)
    for l in range(n):
        h = Hs[:, l]
        others = np.delete(Hs, l, axis=1)
        if others.shape[1] == 0:
            raw[l] = h
            continue
        if np.linalg.cond(others) > _COND_LIMIT:
            raise ValueError("selected tap vectors are numerically rank deficient")
        Q, _ = np.linalg.qr(others)
        raw[l] = h - Q @ (Q.conj().T @ h)
    total = np.linalg.norm(raw)
    if total <= 0 or not np.isfinite(total):
        raise ValueError("zero-forcing projections vanished, channel is degenerate")
    vectors = np.sqrt(p_dl) * raw / total
    return BeamformerSet(vectors=vectors, kappas=delay_precompensation(omega),
                         scheme=ZF, power=p_dl)


def mrt_beamformer(channel: TapChannel, omega: SignificantTaps, p_dl: float) -> BeamformerSet:
    """Per-tap matched filters f_l proportional to h[k_l], jointly normalized."""
    if p_dl <= 0:
        raise ValueError("transmit power must be positive")
    Hs = _selected_block(channel, omega)
    total = np.linalg.norm(Hs)
    if total <= 0:
        raise ValueError("selected taps carry no energy")
    vectors = np.sqrt(p_dl) * Hs.T / total
    return BeamformerSet(vectors=vectors, kappas=delay_precompensation(omega),
                         scheme=MRT, power=p_dl)


@dataclass
class EffectiveChannelGroups:
    """Stacked lag responses of the aligned link.

    Row i of ``stacked`` is the concatenation over beams l of the channel
    seen by beam l at relative lag ``lags[i]``: block l holds h[k_l - lag]
    when that index lands inside 0..K-1 and zeros otherwise.  Lag 0 (the
    aligned component, ``h_stack``) is kept separate.
    """

    lags: np.ndarray
    stacked: np.ndarray
    h_stack: np.ndarray


def effective_channel_groups(channel: TapChannel, omega: SignificantTaps) -> EffectiveChannelGroups:
    Hs = _selected_block(channel, omega)
    M, n = Hs.shape
    K = channel.K
    lags = np.concatenate([np.arange(-(K - 1), 0), np.arange(1, K)])
    stacked = np.zeros((lags.size, n * M), dtype=complex)
    for row, lag in enumerate(lags):
        for l, k_l in enumerate(omega.indices):
            k = k_l - lag
            if 0 <= k < K:
                stacked[row, l * M:(l + 1) * M] = channel.taps[:, k]
    return EffectiveChannelGroups(lags=lags, stacked=stacked, h_stack=Hs.T.reshape(-1))


def mmse_beamformer(channel: TapChannel, omega: SignificantTaps, p_dl: float,
                    sigma2: float) -> BeamformerSet:
    """Regularized beams balancing residual interference against noise.

    Solves (sum_i g[i] g[i]^H + (sigma2 / p_dl) I) w = h_stack over the
    stacked beam space and scales w to total power p_dl.  The lag sum runs
    over the nonzero lags of :func:`effective_channel_groups`.
    """
    if p_dl <= 0:
        raise ValueError("transmit power must be positive")
    if sigma2 <= 0:
        raise ValueError("regularization requires positive noise power")
    groups = effective_channel_groups(channel, omega)
    D = groups.h_stack.size
    cov = groups.stacked.T @ groups.stacked.conj() + (sigma2 / p_dl) * np.eye(D)
    w = scipy.linalg.cho_solve(scipy.linalg.cho_factor(cov), groups.h_stack)
    norm = np.linalg.norm(w)
    if norm <= 0:
        raise ValueError("selected taps carry no energy")
    vectors = (np.sqrt(p_dl) * w / norm).reshape(omega.n_taps, channel.M)
    return BeamformerSet(vectors=vectors, kappas=delay_precompensation(omega),
                         scheme=MMSE, power=p_dl)


def beamform_estimated(channel: TapChannel, omega: SignificantTaps, p_dl: float,
                       sigma2: float, scheme: str) -> BeamformerSet:
    """Build beams of the named scheme from a channel and its selected taps.

    Applies the same constructions as the dedicated functions; pass an
    estimated channel and tap set to obtain the mismatched-CSI beams.
    ``sigma2`` is only consulted by ``mmse``.
    """
    if scheme == ZF:
        return zf_beamformer(channel, omega, p_dl)
    if scheme == MRT:
        return mrt_beamformer(channel, omega, p_dl)
    if scheme == MMSE:
        return mmse_beamformer(channel, omega, p_dl, sigma2)
    raise ValueError(f"unknown beamforming scheme {scheme!r}")
