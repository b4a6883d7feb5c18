"""Downlink SINR and rate evaluation for the delay-aligned link.

Three evaluation paths are provided.  ``sinr_perfect`` scores beams built
from the true channel via the stacked lag responses.  ``sinr_estimated``
scores beams built from an imperfect channel against the true one: taps and
pre-compensation delays are folded into composite delays j = kappa_l + k,
the receiver locks onto the strongest composite delay, and everything else
counts as interference.  ``simulate_link`` is a waveform-level oracle that
runs actual symbols through the convolution and measures the same
quantities empirically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.signal

from .beamforming import BeamformerSet, effective_channel_groups
from .channel import DOWNLINK, SignificantTaps, TapChannel


def sinr_perfect(channel: TapChannel, omega: SignificantTaps,
                 beams: BeamformerSet, sigma2: float) -> float:
    """Analytic SINR of perfect-CSI beams on their own channel.

    The desired power is |h_stack^H f|^2; every nonzero lag of the stacked
    lag responses contributes |g[i]^H f|^2 of interference.
    """
    if beams.n_beams != omega.n_taps or beams.M != channel.M:
        raise ValueError("beam set does not match the selected taps")
    if sigma2 < 0:
        raise ValueError("noise power must be non-negative")
    groups = effective_channel_groups(channel, omega)
    f = beams.stacked()
    desired = np.abs(np.vdot(groups.h_stack, f)) ** 2
    isi = float(np.sum(np.abs(groups.stacked.conj() @ f) ** 2))
    denom = isi + sigma2
    if denom <= 0:
        return np.inf
    return float(desired / denom)


@dataclass
class DelayGroupMap:
    """Composite delays j = kappa_l + k and their (beam, tap) members.

    ``groups`` maps every j in the contiguous range j_min..j_max to the list
    of (l, k) pairs that land on it; groups may be empty.
    """

    groups: dict
    j_min: int
    j_max: int


def delay_group_map(kappas: np.ndarray, L_hat: int, K: int) -> DelayGroupMap:
    kappas = np.asarray(kappas, dtype=int)
    if kappas.ndim != 1 or kappas.size == 0:
        raise ValueError("at least one pre-compensation delay is required")
    if kappas.size != L_hat:
        raise ValueError("delay count does not match the declared beam count")
    if np.any(kappas < 0):
        raise ValueError("pre-compensation delays must be non-negative")
    if K < 1:
        raise ValueError("channel length must be positive")
    j_min = int(kappas.min())
    j_max = int(kappas.max()) + K - 1
    groups = {j: [] for j in range(j_min, j_max + 1)}
    for l, kappa in enumerate(kappas):
        for k in range(K):
            groups[int(kappa) + k].append((l, k))
    return DelayGroupMap(groups=groups, j_min=j_min, j_max=j_max)


def composite_delay_coefficients(channel: TapChannel, beams: BeamformerSet) -> tuple:
    """Received coefficient per composite delay j.

    Coefficient j sums h[k]^H f_l over all (l, k) with kappa_l + k = j.
    Returns (j values, complex coefficients).
    """
    if beams.M != channel.M:
        raise ValueError("beam set does not match the channel")
    K = channel.K
    # inner products h[k]^H f_l for all taps and beams at once
    inner = channel.taps.conj().T @ beams.vectors.T
    j_min = int(beams.kappas.min())
    j_max = int(beams.kappas.max()) + K - 1
    coeffs = np.zeros(j_max - j_min + 1, dtype=complex)
    for l, kappa in enumerate(beams.kappas):
        start = int(kappa) - j_min
        coeffs[start:start + K] += inner[:, l]
    return np.arange(j_min, j_max + 1), coeffs


def sinr_estimated(channel: TapChannel, beams: BeamformerSet, sigma2: float) -> tuple:
    """SINR of (possibly mismatched) beams on the true channel.

    The receiver locks onto the composite delay with the largest coefficient
    power (smallest delay on ties); all other composite delays contribute
    interference.  Returns (sinr, locked delay).
    """
    if sigma2 < 0:
        raise ValueError("noise power must be non-negative")
    delays, coeffs = composite_delay_coefficients(channel, beams)
    powers = np.abs(coeffs) ** 2
    lock = int(np.argmax(powers))
    desired = powers[lock]
    interference = float(np.sum(powers)) - float(desired)
    denom = interference + sigma2
    if denom <= 0:
        return np.inf, int(delays[lock])
    return float(desired / denom), int(delays[lock])


def simulate_link(channel: TapChannel, beams: BeamformerSet, sigma2: float,
                  n_symbols: int, rng: np.random.Generator) -> float:
    """Waveform-level SINR measurement over ``n_symbols`` QPSK symbols.

    Each beam transmits the symbol stream delayed by its pre-compensation
    delay; the superposition runs through the true tap channel plus noise.
    The receiver correlates against the known symbols over every candidate
    composite delay, locks onto the strongest, and splits the received power
    at the lock into coherent signal and everything else.
    """
    if channel.direction != DOWNLINK:
        raise ValueError("link simulation runs over the downlink channel")
    if beams.M != channel.M:
        raise ValueError("beam set does not match the channel")
    if n_symbols <= channel.K:
        raise ValueError("need a symbol stream longer than the channel memory")
    if sigma2 < 0:
        raise ValueError("noise power must be non-negative")
    M, K = channel.M, channel.K
    kappa_max = int(beams.kappas.max())

    symbols = np.exp(1j * (np.pi / 4 + np.pi / 2 * rng.integers(0, 4, size=n_symbols)))
    x = np.zeros((M, n_symbols + kappa_max), dtype=complex)
    for l in range(beams.n_beams):
        # beam l transmits the stream delayed by kappa_l so that tap k_l
        # arrives at the common composite delay
        offset = int(beams.kappas[l])
        x[:, offset:offset + n_symbols] += np.outer(beams.vectors[l], symbols)
    y = scipy.signal.fftconvolve(x, channel.taps.conj(), axes=1).sum(axis=0)
    if sigma2 > 0:
        noise = np.sqrt(sigma2 / 2) * (rng.standard_normal(y.shape)
                                       + 1j * rng.standard_normal(y.shape))
        y = y + noise

    # candidate composite delays relative to the common frame
    n_lags = kappa_max + K - 1
    correlations = np.correlate(y, symbols, mode="valid")[:n_lags + 1] / n_symbols
    powers = np.abs(correlations) ** 2
    lock = int(np.argmax(powers))
    coherent = correlations[lock]
    window = y[lock:lock + n_symbols]
    total = float(np.mean(np.abs(window) ** 2))
    desired = float(np.abs(coherent) ** 2)
    denom = total - desired
    if denom <= 0:
        return np.inf
    return desired / denom


@dataclass
class RateReport:
    """Spectral efficiency after subtracting training and guard overhead."""

    sinr: float
    rate: float
    overhead_fraction: float
    scheme: str = ""
    lock_delay: int | None = None


def achievable_rate(sinr: float, n_c: int, n_g: int, n_pilot: int,
                    scheme: str = "", lock_delay: int | None = None) -> RateReport:
    """Overhead-discounted rate ((n_c - n_g - n_pilot) / n_c) log2(1 + sinr)."""
    if sinr < 0:
        raise ValueError("SINR must be non-negative")
    if n_c < 1 or n_g < 0 or n_pilot < 0:
        raise ValueError("frame lengths must be non-negative with n_c >= 1")
    if n_g + n_pilot >= n_c:
        raise ValueError("overhead consumes the whole coherence block")
    overhead = (n_g + n_pilot) / n_c
    rate = (1.0 - overhead) * np.log2(1.0 + sinr)
    return RateReport(sinr=sinr, rate=float(rate), overhead_fraction=overhead,
                      scheme=scheme, lock_delay=lock_delay)
