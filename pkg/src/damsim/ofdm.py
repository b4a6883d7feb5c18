"""OFDM baseline: per-subcarrier matched beams with water-filled power.

The benchmark transmits over S subcarriers with a cyclic prefix of N_cp
samples.  Channel state comes either from the true taps or from a pilot
symbol based estimate that reuses the block-greedy recovery on a Fourier
dictionary.
"""

from __future__ import annotations

import numpy as np

from .channel import TapChannel, UPLINK
from .estimation import EstimationResult, bomp_estimate
from .link import RateReport


def subcarrier_channels(channel: TapChannel, n_subcarriers: int) -> np.ndarray:
    """Frequency response on each subcarrier, shape (M, S)."""
    if n_subcarriers < channel.K:
        raise ValueError("need at least as many subcarriers as channel taps")
    return np.fft.fft(channel.taps, n=n_subcarriers, axis=1)


def water_filling(gains: np.ndarray, p_total: float) -> np.ndarray:
    """Allocate p_total over parallel channels with the given power gains.

    ``gains[s]`` is the SNR per unit power on channel s.  Returns the
    allocation p with sum(p) = p_total maximizing sum(log2(1 + p * gains)).
    Channels with zero gain receive zero power.
    """
    gains = np.asarray(gains, dtype=float)
    if gains.ndim != 1 or gains.size == 0:
        raise ValueError("gains must be a non-empty vector")
    if np.any(gains < 0):
        raise ValueError("gains must be non-negative")
    if p_total <= 0:
        raise ValueError("total power must be positive")
    active = np.flatnonzero(gains > 0)
    if active.size == 0:
        raise ValueError("no channel can carry power")
    inv = np.sort(1.0 / gains[active])
    # try the largest active set first, shrinking until the water level
    # clears the worst included channel
    n = inv.size
    cumulative = np.cumsum(inv)
    for m in range(n, 0, -1):
        level = (p_total + cumulative[m - 1]) / m
        if level > inv[m - 1]:
            break
    else:
        raise ValueError("water-filling failed to find a feasible level")
    powers = np.zeros_like(gains)
    fill = level - 1.0 / gains[active]
    powers[active] = np.maximum(fill, 0.0)
    return powers


def equispaced_pilot_indices(n_subcarriers: int, n_pilot: int) -> np.ndarray:
    """n_pilot subcarrier indices spread as evenly as possible over 0..S-1."""
    if not 1 <= n_pilot <= n_subcarriers:
        raise ValueError("pilot count must lie in 1..S")
    return (np.arange(n_pilot) * n_subcarriers) // n_pilot


def pilot_dictionary(pilot_symbols: np.ndarray, pilot_indices: np.ndarray,
                     n_subcarriers: int, K: int, p_ul: float) -> np.ndarray:
    """Fourier training dictionary Psi[k, i] = sqrt(p) x_i exp(-2j pi k s_i / S).

    Observing Y = H_UL Psi + Z on the pilot subcarriers puts frequency-domain
    training in the same block-sparse form as time-domain training, so the
    same recovery applies.
    """
    if p_ul <= 0:
        raise ValueError("pilot power must be positive")
    pilot_symbols = np.asarray(pilot_symbols)
    pilot_indices = np.asarray(pilot_indices, dtype=int)
    if pilot_symbols.shape != pilot_indices.shape:
        raise ValueError("one pilot symbol is required per pilot subcarrier")
    if np.any(pilot_indices < 0) or np.any(pilot_indices >= n_subcarriers):
        raise ValueError("pilot subcarrier indices out of range")
    if np.unique(pilot_indices).size != pilot_indices.size:
        raise ValueError("pilot subcarrier indices must be distinct")
    phases = np.exp(-2j * np.pi * np.outer(np.arange(K), pilot_indices) / n_subcarriers)
    return np.sqrt(p_ul) * phases * pilot_symbols[None, :]


def ofdm_channel_estimate(Y_pilot: np.ndarray, pilot_symbols: np.ndarray,
                          pilot_indices: np.ndarray, n_subcarriers: int,
                          M: int, K: int, p_ul: float,
                          epsilon: float | None = None,
                          max_blocks: int | None = None) -> EstimationResult:
    """Recover the tap channel from pilot-subcarrier observations."""
    psi = pilot_dictionary(pilot_symbols, pilot_indices, n_subcarriers, K, p_ul)
    return bomp_estimate(Y_pilot, psi, M, K, epsilon=epsilon, max_blocks=max_blocks)


def simulate_ofdm_pilots(H_ul, pilot_symbols: np.ndarray, pilot_indices: np.ndarray,
                         n_subcarriers: int, p_ul: float, sigma2: float,
                         rng: np.random.Generator) -> np.ndarray:
    """Noisy pilot-subcarrier observation Y = H_UL Psi + Z."""
    if isinstance(H_ul, TapChannel):
        if H_ul.direction != UPLINK:
            raise ValueError("training runs over the uplink channel")
        H = H_ul.taps
    else:
        H = np.asarray(H_ul, dtype=complex)
    psi = pilot_dictionary(pilot_symbols, pilot_indices, n_subcarriers, H.shape[1], p_ul)
    Y = H @ psi
    if sigma2 < 0:
        raise ValueError("noise power must be non-negative")
    if sigma2 > 0:
        scale = np.sqrt(sigma2 / 2.0)
        Y = Y + scale * (rng.standard_normal(Y.shape) + 1j * rng.standard_normal(Y.shape))
    return Y


def ofdm_rate(design: TapChannel, n_subcarriers: int, n_cp: int, n_pilot: int,
              p_dl: float, sigma2: float, n_c: int,
              true_channel: TapChannel | None = None) -> RateReport:
    """Overhead-discounted OFDM rate with matched beams and water-filling.

    Beams and power allocation are computed from ``design``; the realized
    per-subcarrier SNR is scored on ``true_channel`` (defaults to
    ``design``).  The power budget is S * p_dl, which keeps the average
    transmit power per time-domain sample equal to p_dl.  Overhead counts
    the cyclic prefix of every symbol plus ``n_pilot`` pilot subcarriers.
    """
    if sigma2 <= 0:
        raise ValueError("OFDM rate evaluation requires positive noise power")
    if n_cp < 0 or n_pilot < 0:
        raise ValueError("overhead terms must be non-negative")
    if p_dl <= 0:
        raise ValueError("transmit power must be positive")
    S = n_subcarriers
    n_symbols = n_c // (S + n_cp)
    if n_symbols < 1:
        raise ValueError("coherence block too short for one OFDM symbol")
    data_share = n_symbols * S - n_pilot
    if data_share <= 0:
        raise ValueError("pilots consume every subcarrier of the block")

    h_design = subcarrier_channels(design, S)
    truth = design if true_channel is None else true_channel
    h_true = subcarrier_channels(truth, S)

    norms = np.linalg.norm(h_design, axis=0)
    beams = np.zeros_like(h_design)
    carrying = norms > 0
    beams[:, carrying] = h_design[:, carrying] / norms[carrying]
    gains = norms ** 2 / sigma2
    powers = water_filling(gains, S * p_dl)

    snr = powers * np.abs(np.sum(h_true.conj() * beams, axis=0)) ** 2 / sigma2
    bits_per_subcarrier = float(np.mean(np.log2(1.0 + snr)))
    rate = (data_share / n_c) * bits_per_subcarrier
    overhead = 1.0 - data_share / n_c
    # effective scalar SINR consistent with the reported rate
    effective = float(2.0 ** bits_per_subcarrier - 1.0)
    return RateReport(sinr=effective, rate=float(rate), overhead_fraction=overhead,
                      scheme="ofdm")
