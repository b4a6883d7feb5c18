import math

import pytest

from damsim.config import SystemConfig, dbm_to_watt, desk_config, load_config, full_scale_config


def test_dbm_to_watt_reference_points():
    assert dbm_to_watt(30.0) == pytest.approx(1.0, rel=1e-12)
    assert dbm_to_watt(0.0) == pytest.approx(1e-3, rel=1e-12)
    assert dbm_to_watt(-94.0) == pytest.approx(10 ** (-12.4), rel=1e-12)
    assert dbm_to_watt(float("-inf")) == 0.0


def test_default_config_matches_desk_scale():
    cfg = desk_config()
    assert (cfg.M, cfg.K, cfg.L) == (16, 25, 3)
    assert cfg.Ts == 10e-9
    assert cfg.beta == 0.5
    assert cfg.p_dl == pytest.approx(1.0, rel=1e-12)
    assert cfg.p_ul == pytest.approx(10 ** (-0.4), rel=1e-12)
    assert cfg.sigma2 > 0


def test_paper_scale_dimensions():
    cfg = full_scale_config()
    assert (cfg.M, cfg.K, cfg.L) == (64, 50, 5)
    cfg2 = full_scale_config(M=32)
    assert (cfg2.M, cfg2.K) == (32, 50)


def test_noiseless_override():
    cfg = SystemConfig(noise_dbm=float("-inf"))
    assert cfg.sigma2 == 0.0


@pytest.mark.parametrize("kwargs", [
    dict(M=0), dict(K=0), dict(L=0), dict(L=30),
    dict(Ts=0.0), dict(Ts=-1e-9),
    dict(beta=-0.1), dict(beta=1.5),
    dict(C=0.0), dict(C=1.0),
    dict(n_c=0), dict(n_g=-1), dict(n_g=100_000),
    dict(p_dl_dbm=float("inf")), dict(p_ul_dbm=float("-inf")),
    dict(noise_dbm=float("nan")), dict(noise_dbm=float("inf")),
])
def test_invalid_configs_rejected(kwargs):
    with pytest.raises(ValueError):
        SystemConfig(**kwargs)


def test_load_config_parses_types_and_comments(tmp_path):
    text = """
# comment line
M = 8
K=12        # inline comment
L = 2
on_grid = false
noise_dbm = -inf
n_c = 1e4
"""
    path = tmp_path / "conf.txt"
    path.write_text(text, encoding="utf-8")
    cfg = load_config(path)
    assert (cfg.M, cfg.K, cfg.L) == (8, 12, 2)
    assert cfg.on_grid is False
    assert cfg.sigma2 == 0.0
    assert cfg.n_c == 10_000


def test_load_config_overrides_base(tmp_path):
    path = tmp_path / "conf.txt"
    path.write_text("C = 0.05\n", encoding="utf-8")
    cfg = load_config(path, base=full_scale_config())
    assert cfg.M == 64 and cfg.C == 0.05


@pytest.mark.parametrize("line", ["M 8", "unknown = 3", "on_grid = maybe"])
def test_load_config_rejects_bad_lines(tmp_path, line):
    path = tmp_path / "conf.txt"
    path.write_text(line + "\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_config(path)
