"""Smoke tests for the python bindings."""

from fractions import Fraction

import binpacklab as bpl


def frac(s: str) -> Fraction:
    return Fraction(s)


def test_ffd_trace():
    tr = bpl.ffd(["3/5", "1/2", "2/5", "3/10"])
    assert tr["bins"] == 2
    assert tr["tau"] == 1
    assert frac(tr["theta"]) == Fraction(1, 2)
    assert [frac(x) for x in tr["loads"]] == [Fraction(1), Fraction(4, 5)]


def test_exact_optimal():
    assert bpl.exact_optimal(["51/100", "51/100", "49/100"]) == "2"
    tiny = Fraction(1, 1807) + Fraction(1, 10**9)  # 1806 fit a bin, 1807 do not
    assert bpl.exact_optimal([f"{tiny.numerator}/{tiny.denominator}"], [3613]) == "3"
    assert bpl.exact_optimal(["1/1807000000"], [3613]) == "1"


def test_weights():
    assert frac(bpl.eval_weight("wk3", "3/5")) == Fraction(4777, 3900)
    assert frac(bpl.eval_weight("v", "3/10")) == Fraction(23, 60)
    assert frac(bpl.bin_weight("wk3", ["51/100", "49/100"])) == Fraction(581, 300)


def test_pi_and_rho():
    assert frac(bpl.pi_partial_sum(5)) == Fraction(509, 301)
    assert frac(bpl.pi_certified_upper(8)) < Fraction(1691030207, 10**9)
    rho, bound = bpl.compute_rho(30)
    assert abs(rho - 0.4640251938) < 1e-9
    assert abs(bound - 3.1550554008) < 1e-9


def test_closed_forms():
    assert frac(bpl.k3_limit()) == (
        Fraction(19, 10) + Fraction(2, 18065) + Fraction(2, 425) + Fraction(2, 65)
    )
    assert abs(float(frac(bpl.lb_formula(4))) - 1.8781318) < 5e-8


def test_generator():
    res = bpl.generate_and_verify(3, 90, 1, [2, 3])
    assert res["ok"], res["failures"]
    assert res["sum_cluster_opt"] == "145"
    assert res["global_opt"] == "90"
    assert frac(res["ratio"]) == Fraction(29, 18)


def test_delays():
    rho, _ = bpl.compute_rho(30)
    tr = bpl.simulate_linear([("1/2", "0", "1")])
    assert abs(tr["cost"] - (rho + 1)) < 1e-12
    off = bpl.offline_optimal([("2/5", "0", "1"), ("2/5", "1", "1")])
    assert off["bins"] == 1 and frac(off["cost"]) == 2
    chk = bpl.check_bound([("3/10", "0", "1"), ("3/10", "0", "1")])
    assert chk["pass"] and chk["exact"]
