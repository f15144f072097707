from fractions import Fraction as F

import pytest

from extremal.cf import CFStream
from extremal.harness import (
    ConfigError,
    ExperimentConfig,
    KhinchinRule,
    Report,
    WitnessError,
    construct_witness,
    decimal,
    divergence_experiment,
    khinchin_count,
    load_config_file,
    sqrt2_stream,
    verify_properties,
)


def test_integer_alpha_hits_every_n():
    rows = khinchin_count(CFStream.terminating([], 3), KhinchinRule.preset("inv_n3"), 200)
    assert rows[-1].cumulative == 200


def test_sqrt2_convergent_denominators():
    rows = khinchin_count(sqrt2_stream(), KhinchinRule.preset("inv_n"), 1000)
    hits = {r.n for r in rows if r.hit}
    assert {2, 5, 12, 29, 70, 169, 408, 985} <= hits
    assert rows[-1].cumulative >= 8


def test_brute_force_agreement_small_n():
    # float brute force is reliable here: margins are far above 1e-12
    rows = khinchin_count(sqrt2_stream(), KhinchinRule.preset("inv_n"), 300)
    for r in rows:
        d = abs(r.n * 2 ** 0.5 - round(r.n * 2 ** 0.5))
        if abs(d - 1 / r.n) > 1e-9:
            assert r.hit == (d < 1 / r.n)


def test_strict_inequality_at_boundary():
    # alpha = 1/2: |n/2 - m| is 1/2 for odd n, equal to b_n when b_n = 1/2
    rule = KhinchinRule("half", lambda n: F(1, 2), divergent=True, monotone_from=10**9)
    rows = khinchin_count(CFStream.terminating([2]), rule, 6)
    assert [r.hit for r in rows] == [False, True, False, True, False, True]


def test_rule_checks():
    with pytest.raises(ValueError):
        KhinchinRule("grow", lambda n: F(n, 1)).check(5)
    with pytest.raises(ValueError):
        KhinchinRule.preset("nope")


def test_convergent_rule_count_stabilizes():
    rows = khinchin_count(sqrt2_stream(), KhinchinRule.preset("inv_n3"), 20000)
    assert rows[-1].cumulative == rows[1999].cumulative


def test_divergence_vanishing_point():
    cfg = ExperimentConfig(x0=F(1, 4), n_max=20)
    table = divergence_experiment(cfg)
    assert not any(r.aligned for r in table.rows)
    assert all(r.f_E == (0, 0) for r in table.rows) and table.ok


def test_divergence_linear_growth():
    table = divergence_experiment(ExperimentConfig(growth="linear", n_max=16))
    aligned = [r for r in table.rows if r.aligned]
    assert len(aligned) == 16 and table.ok
    prods = [r.c_n * r.f_E[0] for r in aligned]
    assert prods == sorted(prods)


def test_witness_outside_range():
    from extremal.functions import BuildConfig, FunctionContext
    ctx = FunctionContext(BuildConfig(j_range=(-1, 0)))
    with pytest.raises(WitnessError):
        construct_witness(ctx, "G", 1, 4, 1)


def test_empty_suite_selection():
    rep = verify_properties(ExperimentConfig(suites=()))
    assert rep.checks == [] and rep.ok and rep.exit_code == 0


def test_forced_named_failure():
    rep = verify_properties(ExperimentConfig(suites=("sets",), j_range=(2, 4)))
    bad = [c for c in rep.checks if not c.ok]
    assert [c.name for c in bad] == ["sets.extension_bound"]
    assert "error" in bad[0].witness and rep.exit_code == 1


def test_report_is_deterministic():
    cfg = ExperimentConfig(suites=("cf", "intervals", "sets"))
    a = verify_properties(cfg).to_json(timing=False)
    b = verify_properties(cfg).to_json(timing=False)
    assert a == b


def test_config_parsing(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# demo\nm = 2\nA = 7/2\njrange = -3:3\ngrowth = sqrt\n")
    cfg = ExperimentConfig.from_mapping(load_config_file(str(p)))
    assert (cfg.m, cfg.A, cfg.j_range, cfg.growth) == (2, F(7, 2), (-3, 3), "sqrt")
    for bad in ({"format": "xml"}, {"m": "0"}, {"nope": "1"}, {"A": "x"}):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_mapping(bad)


def test_decimal_rendering():
    assert decimal(F(1, 3), 5) == "0.33333"
    assert decimal(F(-7, 4), 3) == "-1.750"


def test_exit_codes():
    r = Report()
    assert r.exit_code == 0
