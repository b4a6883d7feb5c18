"""Uplink pilot training and greedy sparse recovery of the tap channel.

The training observation is Y = H_UL @ X + Z with X a K x N Toeplitz pilot
matrix.  Vectorizing column by column gives vec(Y) = (X^T kron I_M) vec(H) +
vec(Z), so the columns of the dictionary split into K blocks of M columns,
one block per delay tap.  Recovery exploits that block structure: a channel
with few active taps is block sparse in vec(H).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .channel import TapChannel, UPLINK

_COND_LIMIT = 1e12
_EXACT_FIT = 1e-12


@dataclass
class PilotSequence:
    """Pilot symbols x[-(K-1)], ..., x[N-1] for a length-N training burst."""

    symbols: np.ndarray
    N: int
    K: int

    def __post_init__(self):
        self.symbols = np.asarray(self.symbols)
        if self.symbols.shape != (self.N + self.K - 1,):
            raise ValueError("pilot needs N + K - 1 symbols")

    def x(self, n: int) -> complex:
        """Symbol at discrete time n, valid for -(K-1) <= n <= N-1."""
        return self.symbols[n + self.K - 1]


def generate_pilot(N: int, K: int, rng: np.random.Generator) -> PilotSequence:
    """Draw a BPSK pilot sequence covering the tap memory of the channel."""
    if N < 1 or K < 1:
        raise ValueError("pilot length and tap count must be positive")
    bits = rng.integers(0, 2, size=N + K - 1)
    return PilotSequence(symbols=2.0 * bits - 1.0, N=N, K=K)


def build_pilot_matrix(pilot: PilotSequence, K: int, p_ul: float) -> np.ndarray:
    """Assemble the K x N Toeplitz training matrix X[r, c] = sqrt(p) x[c - r]."""
    if p_ul <= 0:
        raise ValueError("pilot power must be positive")
    if K > pilot.K:
        raise ValueError("pilot sequence does not cover the requested tap memory")
    first_col = np.array([pilot.x(-r) for r in range(K)])
    first_row = np.array([pilot.x(c) for c in range(pilot.N)])
    return np.sqrt(p_ul) * scipy.linalg.toeplitz(first_col, first_row)


def simulate_uplink_rx(H_ul, X: np.ndarray, sigma2: float, rng: np.random.Generator) -> np.ndarray:
    """Noisy training observation Y = H_UL X + Z with circular Gaussian noise."""
    if isinstance(H_ul, TapChannel):
        if H_ul.direction != UPLINK:
            raise ValueError("training runs over the uplink channel")
        H = H_ul.taps
    else:
        H = np.asarray(H_ul, dtype=complex)
    if sigma2 < 0:
        raise ValueError("noise power must be non-negative")
    if H.shape[1] != X.shape[0]:
        raise ValueError("channel tap count does not match pilot matrix rows")
    Y = H @ X
    if sigma2 > 0:
        scale = np.sqrt(sigma2 / 2.0)
        Y = Y + scale * (rng.standard_normal(Y.shape) + 1j * rng.standard_normal(Y.shape))
    return Y


class MeasurementOperator:
    """Matrix-free view of the block dictionary A = (X^T kron I_M).

    Block k of A contains columns k*M .. (k+1)*M - 1 and acts on the length-M
    channel vector of tap k; all columns in a block share the norm of pilot
    row k.  ``forward`` and ``adjoint`` avoid forming the M*N x M*K matrix:
    A d = vec(H X) and A^H c = vec(Y X^H) with vec taken column-major.
    """

    def __init__(self, X: np.ndarray, M: int):
        X = np.asarray(X)
        if X.ndim != 2:
            raise ValueError("pilot matrix must be two-dimensional")
        if M < 1:
            raise ValueError("antenna count must be positive")
        self.X = X
        self.M = M
        self.K, self.N = X.shape
        self.block_norms = np.linalg.norm(X, axis=1)

    @property
    def shape(self) -> tuple:
        return (self.M * self.N, self.M * self.K)

    def forward(self, d: np.ndarray) -> np.ndarray:
        H = np.asarray(d).reshape((self.M, self.K), order="F")
        return (H @ self.X).reshape(-1, order="F")

    def adjoint(self, c: np.ndarray) -> np.ndarray:
        Y = np.asarray(c).reshape((self.M, self.N), order="F")
        return (Y @ self.X.conj().T).reshape(-1, order="F")

    def correlation(self, Y: np.ndarray) -> np.ndarray:
        """Per-block adjoint of a residual kept in matrix form, shape (M, K)."""
        return Y @ self.X.conj().T

    def dense(self) -> np.ndarray:
        """Explicit dictionary, for cross-checks at toy sizes only."""
        return np.kron(self.X.T, np.eye(self.M))


@dataclass
class EstimationResult:
    """Outcome of a sparse recovery run.

    ``support`` lists selected taps (ints) for block recovery or (tap,
    antenna) pairs for the scalar variant.  ``d_hat`` is the stacked channel
    estimate of length M*K, zero outside the support.
    """

    support: list
    d_hat: np.ndarray
    residual_norms: list
    iterations: int
    M: int
    K: int
    capped: bool = False

    def channel_matrix(self) -> np.ndarray:
        """Estimate reshaped to (M, K), column k holding tap k."""
        return self.d_hat.reshape((self.M, self.K), order="F")

    def channel(self, direction: str = UPLINK) -> TapChannel:
        return TapChannel(taps=self.channel_matrix(), direction=direction)


def _solve_tap_subset(Y: np.ndarray, X: np.ndarray, taps) -> tuple:
    """Least-squares fit of Y on the pilot rows of the given taps.

    Returns the (M, |taps|) coefficient matrix and the residual Y - H_s X_s.
    Raises ValueError when the pilot submatrix is numerically singular.
    """
    Xs = X[list(taps), :]
    coeffs, _, rank, sv = np.linalg.lstsq(Xs.T, Y.T, rcond=None)
    if rank < Xs.shape[0] or sv[0] > _COND_LIMIT * sv[-1]:
        raise ValueError("pilot submatrix is numerically singular for this support")
    coeffs = coeffs.T
    return coeffs, Y - coeffs @ Xs


def _default_epsilon(epsilon, y_norm: float) -> float:
    if epsilon is None:
        return 1e-3 * y_norm
    if epsilon < 0:
        raise ValueError("stopping tolerance must be non-negative")
    return epsilon


def _assemble(taps, coeffs, M: int, K: int) -> np.ndarray:
    d_hat = np.zeros(M * K, dtype=complex)
    for i, k in enumerate(taps):
        d_hat[k * M:(k + 1) * M] = coeffs[:, i]
    return d_hat


def bomp_estimate(Y: np.ndarray, X: np.ndarray, M: int, K: int,
                  epsilon: float | None = None,
                  max_blocks: int | None = None) -> EstimationResult:
    """Block-greedy recovery of the tap channel from training data.

    Each iteration scores tap k by the norm of the residual correlation with
    block k, normalized by the shared column norm of that block, appends the
    best tap, and refits all selected taps jointly by least squares.  The
    loop stops when the residual improvement drops to ``epsilon`` (default
    1e-3 times the observation norm), when the residual is negligible, or
    when ``max_blocks`` taps have been selected (reported via ``capped``).
    """
    Y = np.asarray(Y, dtype=complex)
    op = MeasurementOperator(X, M)
    if Y.shape != (M, op.N):
        raise ValueError("observation shape does not match the pilot matrix")
    if K != op.K:
        raise ValueError("tap count does not match the pilot matrix")
    if max_blocks is not None and max_blocks < 1:
        raise ValueError("block cap must be at least one")
    cap = min(K, op.N) if max_blocks is None else min(max_blocks, K, op.N)
    y_norm = float(np.linalg.norm(Y))
    epsilon = _default_epsilon(epsilon, y_norm)

    norms = [y_norm]
    support: list = []
    coeffs = np.zeros((M, 0))
    capped = False
    if y_norm > 0:
        residual = Y
        safe_norms = np.where(op.block_norms > 0, op.block_norms, np.inf)
        while len(support) < cap:
            scores = np.linalg.norm(op.correlation(residual), axis=0) / safe_norms
            scores[support] = -1.0
            support.append(int(np.argmax(scores)))
            coeffs, residual = _solve_tap_subset(Y, X, support)
            norms.append(float(np.linalg.norm(residual)))
            if norms[-1] <= _EXACT_FIT * y_norm:
                break
            if norms[-2] - norms[-1] <= epsilon:
                break
        else:
            capped = True

    d_hat = _assemble(support, coeffs, M, K)
    return EstimationResult(support=support, d_hat=d_hat, residual_norms=norms,
                            iterations=len(support), M=M, K=K, capped=capped)


def omp_estimate(Y: np.ndarray, X: np.ndarray, M: int, K: int,
                 epsilon: float | None = None,
                 max_atoms: int | None = None) -> EstimationResult:
    """Scalar greedy benchmark: one (tap, antenna) column per iteration.

    Works on the same dictionary as :func:`bomp_estimate` but ignores the
    block structure.  Because distinct antennas hit disjoint rows of vec(Y),
    the joint least-squares refit decouples into one solve per antenna that
    has selected columns.
    """
    Y = np.asarray(Y, dtype=complex)
    op = MeasurementOperator(X, M)
    if Y.shape != (M, op.N):
        raise ValueError("observation shape does not match the pilot matrix")
    if K != op.K:
        raise ValueError("tap count does not match the pilot matrix")
    if max_atoms is not None and max_atoms < 1:
        raise ValueError("atom cap must be at least one")
    cap = M * min(K, op.N) if max_atoms is None else min(max_atoms, M * min(K, op.N))
    y_norm = float(np.linalg.norm(Y))
    epsilon = _default_epsilon(epsilon, y_norm)

    norms = [y_norm]
    support: list = []
    taps_per_antenna: list = [[] for _ in range(M)]
    H_hat = np.zeros((M, K), dtype=complex)
    residual = Y.copy()
    capped = False
    if y_norm > 0:
        safe_norms = np.where(op.block_norms > 0, op.block_norms, np.inf)
        chosen = np.zeros((M, K), dtype=bool)
        while len(support) < cap:
            scores = np.abs(op.correlation(residual)) / safe_norms[None, :]
            scores[chosen] = -1.0
            m, k = np.unravel_index(np.argmax(scores), scores.shape)
            chosen[m, k] = True
            support.append((int(k), int(m)))
            taps_per_antenna[m].append(int(k))
            coeffs, res_m = _solve_tap_subset(Y[m:m + 1, :], X, taps_per_antenna[m])
            H_hat[m, :] = 0.0
            H_hat[m, taps_per_antenna[m]] = coeffs[0]
            residual[m, :] = res_m[0]
            norms.append(float(np.linalg.norm(residual)))
            if norms[-1] <= _EXACT_FIT * y_norm:
                break
            if norms[-2] - norms[-1] <= epsilon:
                break
        else:
            capped = True

    return EstimationResult(support=support, d_hat=H_hat.reshape(-1, order="F"),
                            residual_norms=norms, iterations=len(support),
                            M=M, K=K, capped=capped)


def exhaustive_support_oracle(Y: np.ndarray, X: np.ndarray, M: int, K: int,
                              s: int) -> tuple:
    """Best s-tap support by brute force; returns (support, residual norm).

    Intended for toy problems; refuses to enumerate more than 10^5 subsets.
    """
    if not 1 <= s <= K:
        raise ValueError("subset size must lie in 1..K")
    if math.comb(K, s) > 100_000:
        raise ValueError("search space too large for exhaustive enumeration")
    Y = np.asarray(Y, dtype=complex)
    best = None
    best_norm = np.inf
    for taps in itertools.combinations(range(K), s):
        try:
            _, residual = _solve_tap_subset(Y, X, taps)
        except ValueError:
            continue
        r = float(np.linalg.norm(residual))
        if r < best_norm:
            best, best_norm = taps, r
    if best is None:
        raise ValueError("no well-conditioned support of the requested size exists")
    return best, best_norm


def nmse(d_hat: np.ndarray, d_true: np.ndarray) -> float:
    """Normalized squared error ||d_hat - d||^2 / ||d||^2."""
    d_hat = np.asarray(d_hat).reshape(-1)
    d_true = np.asarray(d_true).reshape(-1)
    if d_hat.shape != d_true.shape:
        raise ValueError("estimate and reference must have equal length")
    ref = float(np.linalg.norm(d_true) ** 2)
    if ref == 0.0:
        raise ValueError("reference vector has no energy")
    return float(np.linalg.norm(d_hat - d_true) ** 2) / ref
