"""Monte Carlo experiment harness with CSV persistence.

Three sweeps are provided: estimation NMSE versus pilot length, achievable
rate versus pilot length, and achievable rate versus transmit power, plus a
single-realization textual demo.  Trial t of every sweep derives its random
stream from (master_seed, t), so runs are reproducible byte for byte and
trials are independent of sweep layout wherever possible.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .beamforming import SCHEMES, beamform_estimated, mmse_beamformer
from .channel import (TapChannel, UPLINK, downlink_channel, generate_paths,
                      select_significant_taps, synthesize_taps, tap_powers,
                      uplink_channel)
from .config import SystemConfig
from .estimation import (bomp_estimate, build_pilot_matrix, generate_pilot,
                         nmse, omp_estimate, simulate_uplink_rx)
from .link import achievable_rate, simulate_link, sinr_estimated, sinr_perfect
from .ofdm import (equispaced_pilot_indices, ofdm_channel_estimate, ofdm_rate,
                   simulate_ofdm_pilots)

CSV_HEADER = "experiment,scheme,grid,x,metric,mean,stderr,trials"

NMSE_VS_PILOT = "nmse-vs-pilot"
RATE_VS_PILOT = "rate-vs-pilot"
RATE_VS_POWER = "rate-vs-power"
DEMO = "demo"
EXPERIMENTS = (NMSE_VS_PILOT, RATE_VS_PILOT, RATE_VS_POWER, DEMO)


@dataclass
class SweepRecord:
    """One CSV row: a (series, sweep point) aggregate over trials."""

    experiment: str
    scheme: str
    grid: str
    x: float
    metric: str
    mean: float
    stderr: float
    trials: int


@dataclass
class ExperimentSpec:
    """What to run: experiment id, sweep axis, trial count, seed, config."""

    experiment: str
    sweep: tuple
    trials: int
    master_seed: int
    config: SystemConfig
    out: str | None = None
    pilot_lengths: tuple = (15, 30)   # pilot lengths compared by rate-vs-power
    ofdm_subcarriers: int = 512
    ofdm_cp: int = 50

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        self.sweep = tuple(self.sweep)
        if any(b <= a for a, b in zip(self.sweep, self.sweep[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if self.experiment != DEMO and not self.sweep:
            raise ValueError("sweep must not be empty")
        if self.trials < 1:
            raise ValueError("at least one trial is required")
        if len(self.pilot_lengths) < 1:
            raise ValueError("at least one pilot length is required")


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Independent per-trial stream; (master_seed, trial) fixes every draw."""
    return np.random.default_rng([master_seed, trial])


def _bomp_cap(cfg: SystemConfig) -> int:
    # allow the estimator some slack beyond the physical path count
    return min(2 * cfg.L, cfg.K)


def _draw_link(cfg: SystemConfig, rng: np.random.Generator):
    paths = generate_paths(cfg, rng)
    H_dl = synthesize_taps(paths, cfg)
    return H_dl, uplink_channel(H_dl)


def _train_bomp(cfg: SystemConfig, H_ul: TapChannel, N: int, rng: np.random.Generator):
    pilot = generate_pilot(N, cfg.K, rng)
    X = build_pilot_matrix(pilot, cfg.K, cfg.p_ul)
    Y = simulate_uplink_rx(H_ul, X, cfg.sigma2, rng)
    return X, Y


def _estimated_dam_sinrs(cfg: SystemConfig, H_dl: TapChannel, H_ul: TapChannel,
                         N: int, rng: np.random.Generator) -> dict:
    """SINRs of the three schemes built from a BOMP estimate of the channel."""
    X, Y = _train_bomp(cfg, H_ul, N, rng)
    est = bomp_estimate(Y, X, cfg.M, cfg.K, max_blocks=_bomp_cap(cfg))
    try:
        H_hat = downlink_channel(est.channel(UPLINK))
        omega_hat = select_significant_taps(H_hat, cfg.C)
    except ValueError:
        # estimate carries no energy at all: every scheme scores zero
        return {scheme: 0.0 for scheme in SCHEMES}
    sinrs = {}
    for scheme in SCHEMES:
        try:
            beams = beamform_estimated(H_hat, omega_hat, cfg.p_dl, cfg.sigma2, scheme)
            sinrs[scheme], _ = sinr_estimated(H_dl, beams, cfg.sigma2)
        except ValueError:
            # e.g. more selected taps than antennas makes ZF infeasible
            sinrs[scheme] = 0.0
    return sinrs


def _estimated_ofdm_rate(spec: ExperimentSpec, cfg: SystemConfig, H_dl: TapChannel,
                         H_ul: TapChannel, N: int, rng: np.random.Generator) -> float:
    S = spec.ofdm_subcarriers
    indices = equispaced_pilot_indices(S, min(N, S))
    symbols = 2.0 * rng.integers(0, 2, size=indices.size) - 1.0
    Y = simulate_ofdm_pilots(H_ul, symbols, indices, S, cfg.p_ul, cfg.sigma2, rng)
    est = ofdm_channel_estimate(Y, symbols, indices, S, cfg.M, cfg.K, cfg.p_ul,
                                max_blocks=_bomp_cap(cfg))
    try:
        H_hat = downlink_channel(est.channel(UPLINK))
        report = ofdm_rate(H_hat, S, spec.ofdm_cp, N, cfg.p_dl, cfg.sigma2,
                           cfg.n_c, true_channel=H_dl)
        return report.rate
    except ValueError:
        return 0.0


def _aggregate(experiment: str, scheme: str, grid: str, x, metric: str,
               values: list) -> SweepRecord:
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    stderr = float(arr.std(ddof=1) / np.sqrt(arr.size)) if arr.size > 1 else 0.0
    return SweepRecord(experiment=experiment, scheme=scheme, grid=grid, x=x,
                       metric=metric, mean=mean, stderr=stderr, trials=arr.size)


def run_nmse_sweep(spec: ExperimentSpec) -> list:
    """Estimation NMSE versus pilot length for both recovery methods and grids."""
    if spec.experiment != NMSE_VS_PILOT:
        raise ValueError("spec does not describe the NMSE sweep")
    cfg = spec.config
    cap = _bomp_cap(cfg)
    series = {(method, grid): {N: [] for N in spec.sweep}
              for method in ("bomp", "omp") for grid in ("on", "off")}
    for grid in ("on", "off"):
        cfg_g = replace(cfg, on_grid=(grid == "on"))
        for t in range(spec.trials):
            rng = trial_rng(spec.master_seed, t)
            H_dl, H_ul = _draw_link(cfg_g, rng)
            d_true = H_ul.taps.reshape(-1, order="F")
            for N in spec.sweep:
                X, Y = _train_bomp(cfg_g, H_ul, N, rng)
                # matched budgets (cap blocks vs cap*M atoms) and a zero
                # improvement threshold keep the method comparison fair
                block = bomp_estimate(Y, X, cfg.M, cfg.K, epsilon=0.0,
                                      max_blocks=cap)
                atom = omp_estimate(Y, X, cfg.M, cfg.K, epsilon=0.0,
                                    max_atoms=cap * cfg.M)
                series[("bomp", grid)][N].append(nmse(block.d_hat, d_true))
                series[("omp", grid)][N].append(nmse(atom.d_hat, d_true))
    records = []
    for method in ("bomp", "omp"):
        for grid in ("on", "off"):
            for N in spec.sweep:
                records.append(_aggregate(spec.experiment, method, grid, N,
                                          "nmse", series[(method, grid)][N]))
    return records


def run_rate_vs_pilot(spec: ExperimentSpec) -> list:
    """Achievable rate versus pilot length for DAM and the OFDM baseline."""
    if spec.experiment != RATE_VS_PILOT:
        raise ValueError("spec does not describe the rate-vs-pilot sweep")
    cfg = spec.config
    grid = "on" if cfg.on_grid else "off"
    S, cp = spec.ofdm_subcarriers, spec.ofdm_cp
    tags = ([f"dam-{s}-perfect" for s in SCHEMES]
            + [f"dam-{s}-est" for s in SCHEMES]
            + ["ofdm-perfect", "ofdm-est"])
    rates = {tag: {N: [] for N in spec.sweep} for tag in tags}
    for t in range(spec.trials):
        rng = trial_rng(spec.master_seed, t)
        H_dl, H_ul = _draw_link(cfg, rng)
        omega = select_significant_taps(H_dl, cfg.C)
        gamma_perfect = {}
        for scheme in SCHEMES:
            try:
                beams = beamform_estimated(H_dl, omega, cfg.p_dl, cfg.sigma2, scheme)
                gamma_perfect[scheme] = sinr_perfect(H_dl, omega, beams, cfg.sigma2)
            except ValueError:
                # off-grid channels can select more taps than there are
                # independent path directions, which defeats zero forcing
                gamma_perfect[scheme] = 0.0
        for N in spec.sweep:
            for scheme in SCHEMES:
                r = achievable_rate(gamma_perfect[scheme], cfg.n_c, cfg.n_g, N)
                rates[f"dam-{scheme}-perfect"][N].append(r.rate)
            est_sinrs = _estimated_dam_sinrs(cfg, H_dl, H_ul, N, rng)
            for scheme in SCHEMES:
                r = achievable_rate(est_sinrs[scheme], cfg.n_c, cfg.n_g, N)
                rates[f"dam-{scheme}-est"][N].append(r.rate)
            perfect_ofdm = ofdm_rate(H_dl, S, cp, N, cfg.p_dl, cfg.sigma2, cfg.n_c)
            rates["ofdm-perfect"][N].append(perfect_ofdm.rate)
            rates["ofdm-est"][N].append(
                _estimated_ofdm_rate(spec, cfg, H_dl, H_ul, N, rng))
    return [_aggregate(spec.experiment, tag, grid, N, "rate", rates[tag][N])
            for tag in tags for N in spec.sweep]


def run_rate_vs_power(spec: ExperimentSpec) -> list:
    """Achievable rate versus transmit power for estimated-CSI DAM schemes.

    The sweep axis is the downlink power in dBm.  Each configured pilot
    length contributes one estimated-CSI series per scheme; the perfect-CSI
    MMSE series (no training overhead) is the upper bound.
    """
    if spec.experiment != RATE_VS_POWER:
        raise ValueError("spec does not describe the rate-vs-power sweep")
    cfg = spec.config
    grid = "on" if cfg.on_grid else "off"
    pilots = tuple(spec.pilot_lengths)
    tags = [f"dam-{s}-est-n{N}" for N in pilots for s in SCHEMES]
    tags.append("dam-mmse-perfect")
    rates = {tag: {x: [] for x in spec.sweep} for tag in tags}
    for t in range(spec.trials):
        rng = trial_rng(spec.master_seed, t)
        H_dl, H_ul = _draw_link(cfg, rng)
        omega = select_significant_taps(H_dl, cfg.C)
        estimates = {}
        for N in pilots:
            X, Y = _train_bomp(cfg, H_ul, N, rng)
            est = bomp_estimate(Y, X, cfg.M, cfg.K, max_blocks=_bomp_cap(cfg))
            try:
                H_hat = downlink_channel(est.channel(UPLINK))
                estimates[N] = (H_hat, select_significant_taps(H_hat, cfg.C))
            except ValueError:
                estimates[N] = None
        for x in spec.sweep:
            cfg_x = replace(cfg, p_dl_dbm=float(x))
            beams = mmse_beamformer(H_dl, omega, cfg_x.p_dl, cfg_x.sigma2)
            gamma = sinr_perfect(H_dl, omega, beams, cfg_x.sigma2)
            r = achievable_rate(gamma, cfg.n_c, cfg.n_g, 0)
            rates["dam-mmse-perfect"][x].append(r.rate)
            for N in pilots:
                for scheme in SCHEMES:
                    tag = f"dam-{scheme}-est-n{N}"
                    if estimates[N] is None:
                        rates[tag][x].append(0.0)
                        continue
                    H_hat, omega_hat = estimates[N]
                    try:
                        fhat = beamform_estimated(H_hat, omega_hat, cfg_x.p_dl,
                                                  cfg_x.sigma2, scheme)
                        gamma_hat, _ = sinr_estimated(H_dl, fhat, cfg_x.sigma2)
                        r = achievable_rate(gamma_hat, cfg.n_c, cfg.n_g, N)
                        rates[tag][x].append(r.rate)
                    except ValueError:
                        rates[tag][x].append(0.0)
    return [_aggregate(spec.experiment, tag, grid, x, "rate", rates[tag][x])
            for tag in tags for x in spec.sweep]


def _db(value: float) -> float:
    return 10.0 * np.log10(max(value, 1e-300))


def run_demo(spec: ExperimentSpec) -> str:
    """Single-realization walkthrough; returns a deterministic text report."""
    if spec.experiment != DEMO:
        raise ValueError("spec does not describe the demo")
    cfg = spec.config
    rng = trial_rng(spec.master_seed, 0)
    H_dl, H_ul = _draw_link(cfg, rng)
    omega = select_significant_taps(H_dl, cfg.C)
    kappas = omega.k_max - omega.indices
    n_symbols = min(cfg.n_c, 100_000)
    N = cfg.K

    lines = []
    lines.append(f"delay-aligned link walkthrough (seed={spec.master_seed})")
    lines.append(f"config: M={cfg.M} K={cfg.K} L={cfg.L} "
                 f"grid={'on' if cfg.on_grid else 'off'} "
                 f"p_dl={cfg.p_dl_dbm:g} dBm noise={cfg.noise_dbm:g} dBm")
    powers = tap_powers(H_dl)
    peak = powers.max()
    lines.append(f"significant taps (>= {cfg.C:g} of peak): "
                 + " ".join(f"{k}({powers[k] / peak:.3f})" for k in omega.indices))
    lines.append("pre-compensation delays: "
                 + " ".join(str(int(k)) for k in kappas))
    lines.append("")
    lines.append("perfect CSI:")
    lines.append(f"  {'scheme':6s} {'analytic':>10s} {'simulated':>10s} {'rate':>8s}")
    for scheme in SCHEMES:
        beams = beamform_estimated(H_dl, omega, cfg.p_dl, cfg.sigma2, scheme)
        gamma = sinr_perfect(H_dl, omega, beams, cfg.sigma2)
        sim = simulate_link(H_dl, beams, cfg.sigma2, n_symbols, rng)
        r = achievable_rate(gamma, cfg.n_c, cfg.n_g, 0)
        lines.append(f"  {scheme:6s} {_db(gamma):8.2f} dB {_db(sim):8.2f} dB "
                     f"{r.rate:8.3f}")
    lines.append("")
    X, Y = _train_bomp(cfg, H_ul, N, rng)
    est = bomp_estimate(Y, X, cfg.M, cfg.K, max_blocks=_bomp_cap(cfg))
    d_true = H_ul.taps.reshape(-1, order="F")
    err = nmse(est.d_hat, d_true)
    H_hat = downlink_channel(est.channel(UPLINK))
    omega_hat = select_significant_taps(H_hat, cfg.C)
    lines.append(f"estimated CSI ({N} pilots, nmse {err:.2e}, "
                 f"taps {' '.join(str(int(k)) for k in omega_hat.indices)}):")
    lines.append(f"  {'scheme':6s} {'analytic':>10s} {'simulated':>10s} {'rate':>8s}")
    for scheme in SCHEMES:
        beams = beamform_estimated(H_hat, omega_hat, cfg.p_dl, cfg.sigma2, scheme)
        gamma, _ = sinr_estimated(H_dl, beams, cfg.sigma2)
        sim = simulate_link(H_dl, beams, cfg.sigma2, n_symbols, rng)
        r = achievable_rate(gamma, cfg.n_c, cfg.n_g, N)
        lines.append(f"  {scheme:6s} {_db(gamma):8.2f} dB {_db(sim):8.2f} dB "
                     f"{r.rate:8.3f}")
    lines.append("")
    perfect_ofdm = ofdm_rate(H_dl, spec.ofdm_subcarriers, spec.ofdm_cp, N,
                             cfg.p_dl, cfg.sigma2, cfg.n_c)
    est_ofdm = _estimated_ofdm_rate(spec, cfg, H_dl, H_ul, N, rng)
    lines.append(f"ofdm baseline: perfect {perfect_ofdm.rate:.3f}  "
                 f"estimated {est_ofdm:.3f}")
    return "\n".join(lines) + "\n"


def format_number(value) -> str:
    """Nine significant digits, no exponent padding; integers stay integral."""
    return f"{value:.9g}"


def records_to_csv(records: list) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join([r.experiment, r.scheme, r.grid,
                               format_number(r.x), r.metric,
                               format_number(r.mean), format_number(r.stderr),
                               str(r.trials)]))
    return "\n".join(lines) + "\n"


def write_csv(records: list, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(records_to_csv(records))


def run_experiment(spec: ExperimentSpec):
    """Dispatch to the sweep named by ``spec.experiment``; demo returns text."""
    runner = {NMSE_VS_PILOT: run_nmse_sweep,
              RATE_VS_PILOT: run_rate_vs_pilot,
              RATE_VS_POWER: run_rate_vs_power,
              DEMO: run_demo}[spec.experiment]
    return runner(spec)
