import json
import math
import os

import pytest

import holdref as h

UNIT = h.Rectangle(0, 1, 0, 1)


def test_chain_on_integral():
    A = h.Functional.integral(h.Interval(0, 1))
    part = h.Partition.make("linear-pair", h.Interval(0, 1))
    c = h.verify_chain(A, "t", 1, 2, part)
    assert c
    assert c.lhs == pytest.approx(0.5, abs=1e-12)
    assert c.refined == pytest.approx(math.sqrt(1 / 24) + math.sqrt(1 / 8), abs=1e-12)
    assert c.classical == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert c.lhs <= c.refined <= c.classical


def test_sums_and_samples():
    A = h.Functional.discrete_sum(h.IndexRange(2))
    part = h.Partition.make("discrete-pair", h.IndexRange(2))
    r = h.improved_holder(A, [1, 2], [1, 1], 2, part)
    assert r.refined == pytest.approx((3 * math.sqrt(3) + 1) / 2, abs=1e-12)
    assert r.classical == pytest.approx(math.sqrt(10), abs=1e-12)
    assert len(r.terms) == 2


def test_reversed_regime():
    A = h.Functional.discrete_sum(h.IndexRange(2))
    r = h.reversed_holder(A, [1, 4], [1, 1], 0.5)
    assert r.regime == "reversed"
    assert r.lhs == pytest.approx(5.0)
    assert r.classical == pytest.approx(4.5)


def test_corner_bounds_and_identity():
    b = h.corner_bounds(UNIT, "x^2*y^2", "4*x*y")
    assert b["pass"]
    assert b["classical"] == pytest.approx(1 / 6, abs=1e-12)
    assert b["improved"] == pytest.approx((2 + 4 * math.sqrt(2) / 3) / 24, abs=1e-12)
    assert h.hh_identity(UNIT, "x^3*y^3", "9*x^2*y^2")["left"] == pytest.approx(1 / 16)
    assert h.hh_identity(UNIT, "x*y", "1", paper_verbatim_sign=True)["residual"] == pytest.approx(0.5)


def test_kernel_moment():
    for p in (1, 2, 3, 5):
        km = h.kernel_moment(p)
        assert abs(km["value"] - 1 / (4 * (p + 1) ** 2)) <= 1e-8


def test_fuzz_is_deterministic():
    a = h.fuzz_chain("discrete-2d", seed=3, trials=200)
    b = h.fuzz_chain("discrete-2d", seed=3, trials=200)
    assert a == b
    assert a["violations"] == 0


def test_errors_are_value_errors():
    with pytest.raises(h.HoldrefError):
        h.Functional.discrete_sum(h.IndexRange(2), [-1, 1])
    with pytest.raises(ValueError):
        h.integrate("2*", h.Interval(0, 1))


def test_run_matches_cli_config():
    path = os.path.join(os.environ.get("HOLDREF_CONFIG_DIR", "configs"), "chain_sum.json")
    with open(path) as fh:
        cfg = json.load(fh)
    code, report, diagnostics = h.run("chain", cfg)
    assert code == 0 and diagnostics == ""
    header, row = report.strip().splitlines()
    assert header.startswith("command,instance_id,p,q")
    assert row.startswith("chain,1,2,2,3,3.0980762113533")
