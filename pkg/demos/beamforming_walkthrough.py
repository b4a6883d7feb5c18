"""Walk through one downlink realization: taps, delays, beams, SINR.

Draws a sparse multipath channel, selects the significant taps, builds the
three per-tap beamformers, and checks the analytic SINR of each against a
waveform-level simulation with 100k QPSK symbols.
"""

import numpy as np

from damsim import (SystemConfig, beamform_estimated, delay_precompensation,
                    generate_paths, select_significant_taps, simulate_link,
                    sinr_perfect, synthesize_taps, tap_powers)


def db(x):
    return 10 * np.log10(x)


def main():
    cfg = SystemConfig()        # desk scale: M=16, K=25, L=3
    rng = np.random.default_rng(7)

    paths = generate_paths(cfg, rng)
    H = synthesize_taps(paths, cfg)
    print(f"channel: {cfg.M} antennas, {cfg.K} taps, {cfg.L} paths")

    powers = tap_powers(H)
    omega = select_significant_taps(H, cfg.C)
    kappas = delay_precompensation(omega)
    print(f"taps holding >= {cfg.C:g} of the peak power: "
          f"{[int(k) for k in omega.indices]}")
    for k, kappa in zip(omega.indices, kappas):
        print(f"  tap {k:2d}: power {db(powers[k]):7.2f} dB, "
              f"pre-compensation delay {kappa}")
    print("after pre-compensation every selected tap lands on composite "
          f"delay {omega.k_max}\n")

    print(f"{'scheme':6s} {'analytic SINR':>14s} {'simulated':>10s}")
    for scheme in ("zf", "mrt", "mmse"):
        beams = beamform_estimated(H, omega, cfg.p_dl, cfg.sigma2, scheme)
        gamma = sinr_perfect(H, omega, beams, cfg.sigma2)
        sim = simulate_link(H, beams, cfg.sigma2, 100_000,
                            np.random.default_rng(8))
        print(f"{scheme:6s} {db(gamma):11.2f} dB {db(sim):7.2f} dB")
    print("\nMMSE should match or beat both corner cases; the simulated "
          "column tracks the analytic one to a fraction of a dB.")


if __name__ == "__main__":
    main()
