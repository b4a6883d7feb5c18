import numpy as np
import pytest

from damsim.beamforming import (BeamformerSet, beamform_estimated,
                                delay_precompensation,
                                effective_channel_groups, mmse_beamformer,
                                mrt_beamformer, zf_beamformer)
from damsim.channel import SignificantTaps, TapChannel
from damsim.link import sinr_perfect


def _random_channel(rng, M=8, K=10):
    taps = rng.standard_normal((M, K)) + 1j * rng.standard_normal((M, K))
    return TapChannel(taps=taps)


def _angle(u, v):
    # numerically stable angle between complex directions (phase-invariant)
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    inner = np.vdot(u, v)
    if abs(inner) > 0:
        v = v * (inner.conjugate() / abs(inner))
    return float(2.0 * np.arcsin(min(1.0, np.linalg.norm(u - v) / 2.0)))


def test_delay_precompensation_examples():
    assert list(delay_precompensation(SignificantTaps(indices=[2, 5, 9]))) == [7, 4, 0]
    assert list(delay_precompensation(SignificantTaps(indices=[0]))) == [0]
    K = 6
    full = delay_precompensation(SignificantTaps(indices=list(range(K))))
    assert list(full) == list(range(K - 1, -1, -1))


def test_zf_single_tap_equals_mrt():
    rng = np.random.default_rng(0)
    H = _random_channel(rng)
    omega = SignificantTaps(indices=[4])
    zf = zf_beamformer(H, omega, 2.0)
    mrt = mrt_beamformer(H, omega, 2.0)
    assert np.allclose(zf.vectors, mrt.vectors, atol=1e-14)
    h = H.taps[:, 4]
    assert np.allclose(zf.vectors[0], np.sqrt(2.0) * h / np.linalg.norm(h), atol=1e-14)


def test_zf_orthogonal_taps_stay_parallel():
    taps = np.zeros((4, 3), dtype=complex)
    taps[0, 0] = 1.0
    taps[1, 1] = 2.0 - 1j
    omega = SignificantTaps(indices=[0, 1])
    zf = zf_beamformer(TapChannel(taps=taps), omega, 1.0)
    for l, k in enumerate(omega.indices):
        assert _angle(zf.vectors[l], taps[:, k]) < 1e-12


def test_zf_orthogonality_and_power():
    rng = np.random.default_rng(1)
    H = _random_channel(rng, M=4, K=6)
    omega = SignificantTaps(indices=[1, 3])
    zf = zf_beamformer(H, omega, 3.0)
    assert zf.total_power() == pytest.approx(3.0, rel=1e-12)
    for l in range(2):
        for lp in range(2):
            if l == lp:
                continue
            h = H.taps[:, omega.indices[lp]]
            f = zf.vectors[l]
            assert abs(np.vdot(h, f)) <= 1e-10 * np.linalg.norm(h) * np.linalg.norm(f)


def test_zf_infeasible_and_singular():
    rng = np.random.default_rng(2)
    H = _random_channel(rng, M=2, K=8)
    with pytest.raises(ValueError):
        zf_beamformer(H, SignificantTaps(indices=[0, 1, 2]), 1.0)
    # duplicated tap vector: rank-deficient selection
    taps = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    taps[:, 2] = taps[:, 0]
    with pytest.raises(ValueError):
        zf_beamformer(TapChannel(taps=taps), SignificantTaps(indices=[0, 1, 2]), 1.0)


def test_mrt_formula_and_symmetry():
    rng = np.random.default_rng(3)
    H = _random_channel(rng)
    omega = SignificantTaps(indices=[2, 7])
    p = 4.0
    mrt = mrt_beamformer(H, omega, p)
    Hs = H.taps[:, omega.indices]
    expect = np.sqrt(p) * Hs.T / np.linalg.norm(Hs)
    assert np.allclose(mrt.vectors, expect, atol=1e-14)
    assert mrt.total_power() == pytest.approx(p, rel=1e-12)

    # equal-norm taps split the power evenly
    taps = np.zeros((3, 2), dtype=complex)
    taps[:, 0] = [1, 1, 1]
    taps[:, 1] = [1, -1, 1j]
    eq = mrt_beamformer(TapChannel(taps=taps), SignificantTaps(indices=[0, 1]), p)
    norms = np.linalg.norm(eq.vectors, axis=1)
    assert np.allclose(norms, np.sqrt(p / 2), rtol=1e-12)

    with pytest.raises(ValueError):
        mrt_beamformer(TapChannel(taps=np.zeros((2, 2))), SignificantTaps(indices=[0]), p)


def test_effective_channel_groups_enumeration():
    # K=3, selected taps {0, 2}
    rng = np.random.default_rng(4)
    H = _random_channel(rng, M=2, K=3)
    omega = SignificantTaps(indices=[0, 2])
    groups = effective_channel_groups(H, omega)
    assert np.array_equal(np.sort(groups.lags), np.array([-2, -1, 1, 2]))
    assert np.allclose(groups.h_stack[:2], H.taps[:, 0])
    assert np.allclose(groups.h_stack[2:], H.taps[:, 2])
    by_lag = {int(lag): groups.stacked[i] for i, lag in enumerate(groups.lags)}
    M = 2
    # tap 0 sees lags -1 -> h[1] and -2 -> h[2]; tap 2 sees 1 -> h[1], 2 -> h[0]
    assert np.allclose(by_lag[-1][:M], H.taps[:, 1])
    assert np.allclose(by_lag[-2][:M], H.taps[:, 2])
    assert np.allclose(by_lag[1][:M], 0.0)
    assert np.allclose(by_lag[2][:M], 0.0)
    assert np.allclose(by_lag[1][M:], H.taps[:, 1])
    assert np.allclose(by_lag[2][M:], H.taps[:, 0])
    assert np.allclose(by_lag[-1][M:], 0.0)
    assert np.allclose(by_lag[-2][M:], 0.0)


def test_effective_groups_single_tap_has_one_block_per_lag():
    rng = np.random.default_rng(5)
    H = _random_channel(rng, M=3, K=5)
    groups = effective_channel_groups(H, SignificantTaps(indices=[2]))
    for row in groups.stacked:
        blocks = row.reshape(1, -1)
        assert blocks.shape[1] == 3


def test_mmse_noise_dominated_limit_is_mrt():
    rng = np.random.default_rng(6)
    H = _random_channel(rng)
    omega = SignificantTaps(indices=[1, 4, 8])
    p = 1.0
    mmse = mmse_beamformer(H, omega, p, sigma2=1e8)
    mrt = mrt_beamformer(H, omega, p)
    assert _angle(mmse.stacked(), mrt.stacked()) < 1e-4
    assert mmse.total_power() == pytest.approx(p, rel=1e-12)


def test_mmse_beats_zf_and_mrt():
    rng = np.random.default_rng(7)
    for _ in range(25):
        H = _random_channel(rng, M=8, K=10)
        omega = SignificantTaps(indices=sorted(
            rng.choice(10, size=3, replace=False).tolist()))
        sigma2 = 0.5
        sinrs = {}
        for name, maker in (("zf", zf_beamformer), ("mrt", mrt_beamformer)):
            beams = maker(H, omega, 2.0)
            sinrs[name] = sinr_perfect(H, omega, beams, sigma2)
        mmse = mmse_beamformer(H, omega, 2.0, sigma2)
        sinr_mmse = sinr_perfect(H, omega, mmse, sigma2)
        assert sinr_mmse >= max(sinrs.values()) - 1e-9


def test_scale_invariance_of_directions():
    rng = np.random.default_rng(8)
    H = _random_channel(rng)
    omega = SignificantTaps(indices=[0, 5, 9])
    c = 3.7
    H2 = TapChannel(taps=c * H.taps)
    for scheme in ("zf", "mrt"):
        a = beamform_estimated(H, omega, 1.0, 0.1, scheme)
        b = beamform_estimated(H2, omega, 1.0, 0.1, scheme)
        for l in range(a.n_beams):
            assert _angle(a.vectors[l], b.vectors[l]) < 1e-10
    # MMSE matches when the noise term is scaled with the channel power
    a = mmse_beamformer(H, omega, 1.0, 0.1)
    b = mmse_beamformer(H2, omega, 1.0, 0.1 * c ** 2)
    for l in range(a.n_beams):
        assert _angle(a.vectors[l], b.vectors[l]) < 1e-10


def test_beamform_estimated_dispatch_and_validation():
    rng = np.random.default_rng(9)
    H = _random_channel(rng)
    omega = SignificantTaps(indices=[3])
    for scheme in ("zf", "mrt", "mmse"):
        beams = beamform_estimated(H, omega, 1.5, 0.2, scheme)
        assert beams.scheme == scheme
        assert beams.total_power() == pytest.approx(1.5, rel=1e-12)
        assert list(beams.kappas) == [0]
    with pytest.raises(ValueError):
        beamform_estimated(H, omega, 1.5, 0.2, "dirty")
    with pytest.raises(ValueError):
        mmse_beamformer(H, omega, 1.0, 0.0)
    with pytest.raises(ValueError):
        mrt_beamformer(H, omega, -1.0)
    with pytest.raises(ValueError):
        zf_beamformer(H, SignificantTaps(indices=[H.K - 1 + 5]), 1.0)


def test_beamformer_set_validation():
    with pytest.raises(ValueError):
        BeamformerSet(vectors=np.ones((2, 3)), kappas=np.array([1]),
                      scheme="mrt", power=1.0)
    with pytest.raises(ValueError):
        BeamformerSet(vectors=np.ones((2, 3)), kappas=np.array([1, -1]),
                      scheme="mrt", power=1.0)
