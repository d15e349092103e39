"""Exit criteria: each test runs one criterion at its stated bound and time limit."""

from yamanim.reduction import Role, build_reduction, parse_poscnf
from yamanim.verification import (FIG3_FORMULA, suite_claim_parity, suite_g4_even,
                                  suite_g4_odd, suite_g5, suite_g6, suite_reduction_audit,
                                  suite_reduction_equiv, suite_sum, suite_termination, suite_w0,
                                  suite_yama)


def _check(report_criterion, number, res, min_checked, max_seconds, what):
    ok = (res.passed and res.checked >= min_checked
          and (not max_seconds or res.seconds < max_seconds))
    report_criterion(number, ok, f"{what}: {res.checked} checked, {res.failures} failed, "
                                 f"{res.seconds:.2f}s" + (f" (limit {max_seconds}s)" if max_seconds else ""))
    assert res.failures == 0, res.counterexample
    assert res.checked >= min_checked
    if max_seconds:
        assert res.seconds < max_seconds


def test_01_yama_closed_forms(report_criterion):
    _check(report_criterion, 1, suite_yama(40), 1681, 5, "Yama Nim grid 0..40")


def test_02_sum_theorem(report_criterion):
    _check(report_criterion, 2, suite_sum(200, max_vertices=3, max_tokens=5), 200, 30,
           "disjunctive sums")


def test_03_g4_odd(report_criterion):
    _check(report_criterion, 3, suite_g4_odd(500, max_v1=3, max_tokens=6), 500, 60,
           "odd |W1| nim-sum formula")


def test_04_g4_even(report_criterion):
    _check(report_criterion, 4, suite_g4_even(500, max_v1=3, max_tokens=6), 500, 120,
           "even |W1| outcome rule")


def test_05_g5(report_criterion):
    _check(report_criterion, 5, suite_g5(12, 8, 7), 6656, 60, "diamond grid")


def test_06_g6(report_criterion):
    _check(report_criterion, 6, suite_g6(4, 5, 7), sum((n + 6) * 8 ** n for n in range(1, 5)), 120, "stars n=1..4")


def test_07_w0_remark(report_criterion):
    _check(report_criterion, 7, suite_w0(100), 100, None, "inert-W1 construction")


def test_08_reduction_structure(report_criterion):
    res = suite_reduction_audit(4, 3, 3)
    rg = build_reduction(parse_poscnf(FIG3_FORMULA))
    tokens = {str(r): rg.init[v] for v, r in enumerate(rg.roles) if rg.init[v]}
    expected = {"x1": 6, "x2": 8, "x3": 6, "x4": 6, "x5": 6, "x6": 6,
                "c1": 1, "c2": 1, "c3": 1}
    fig3_ok = rg.graph.n == 43 and tokens == expected and not rg.vertices_of("parity")
    ok = res.passed and fig3_ok
    report_criterion(8, ok, f"reduction audits: {res.checked} checked, {res.failures} failed; "
                            f"example graph {rg.graph.n} vertices, tokens exact: {tokens == expected}")
    assert res.failures == 0, res.counterexample
    assert fig3_ok


def test_09_claim_parity(report_criterion):
    _check(report_criterion, 9, suite_claim_parity(3, 2, 3), 1, 600, "even move counts in G1/G2")


def test_10_winner_equivalence(report_criterion):
    _check(report_criterion, 10, suite_reduction_equiv(3, 2, 3), 1, 600,
           "formula winner vs graph outcome")


def test_11_termination(report_criterion):
    res = suite_termination(1000)
    _check(report_criterion, 11, res, 1000, None,
           f"strict descent over {res.notes['moves']} moves, depth within token total")
