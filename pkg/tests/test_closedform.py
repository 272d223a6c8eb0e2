from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sumsquares import closedform as cf
from sumsquares.closedform import (
    ExcludedAlpha,
    NotSquarefree,
    class_number,
    r2_closed,
    r2_criterion,
    r3_closed,
    representable3,
    verify_cfc,
)
from sumsquares.idealarith import InvalidInput, is_squarefree
from sumsquares.quadfield import K3, K17, QuadInt, make_context
from sumsquares.repcount import r2_brute, r3_brute, tp_elements
from strategies import totally_positive


def q3(x, y=0):
    return QuadInt(x, y, K3)


def q17(x, y=0):
    return QuadInt(x, y, K17)


def test_r2_examples():
    assert r2_closed(q3(1)) == 4
    assert r2_closed(q17(2)) == 4
    assert r2_closed(q3(4, 2)) == 4
    with pytest.raises(InvalidInput):
        r2_closed(q3(1, 1))
    assert r2_criterion(q3(2)) == (True, 4)
    assert r2_criterion(q17(2)) == (True, 4)
    # 3 = (sqrt 3)^2 + 0^2
    assert r2_criterion(q3(3)) == (True, 4) and r2_brute(q3(3)) == 4


@given(totally_positive(max_trace=40))
def test_r2_three_ways(nu):
    brute = r2_brute(nu)
    ok, count = r2_criterion(nu)
    assert r2_closed(nu) == brute == count
    assert ok == (brute > 0)


def test_representable3_examples():
    assert not representable3(q3(2, 1))
    assert not representable3(q17(7))
    assert representable3(q17(3))


@given(totally_positive(max_trace=40))
def test_representable3_matches_enumeration(nu):
    assert representable3(nu) == (r3_brute(nu) > 0)


def test_class_number_examples():
    res = class_number(q3(5))
    assert (res.case_label, res.h, res.r3_used) == ("B", 2, 48)
    assert class_number(q3(2, 1)).h == 2
    assert class_number(q17(42, 13)).h == 12
    assert class_number(q3(1)).h == 1 and class_number(q3(1)).special
    assert class_number(q17(1)).h == 2 and class_number(q17(3)).h == 1
    with pytest.raises(NotSquarefree):
        class_number(q3(4))
    with pytest.raises(ExcludedAlpha):
        class_number(q17(7))


def test_r3_closed_examples():
    assert r3_closed(q3(5), q3(1)) == 48
    assert r3_closed(q17(5), q17(1)) == 24
    assert r3_closed(q3(2, 1), q3(1)) == 0
    assert r3_closed(q17(7), q17(3)) == 0


def test_cfc_examples():
    assert verify_cfc(q3(5), q3(1)) == (Fraction(48), Fraction(48))
    lhs, rhs = verify_cfc(q17(5), make_context(K17).pi2)
    assert lhs == rhs


def test_pi2_fourth_power_rule():
    pi2 = make_context(K3).pi2
    for alpha in [a for a in tp_elements(K3, 12) if is_squarefree(a)]:
        if cf.case_label(alpha) not in ("C2", "D"):
            continue
        h = class_number(alpha).h
        # the unit class of eps0 has half the L-value per class number
        expected = 18 * h if cf.special_kind(alpha) == "eps" else 36 * h
        assert r3_brute(pi2 ** 4 * alpha) == expected


def test_unit_class_of_one_in_q3():
    """The special display for alpha = 1 gives 3 sigma_1 + sigma_1,odd;
    enumeration instead follows 4 sigma_1 + 2 sigma_1,odd."""
    one = q3(1)
    assert r3_brute(one) == 6 and r3_closed(one, one) == 4
    assert cf.is_documented_edge(one, one) and cf.is_documented_edge(q3(7, 4), one)
    for nu in tp_elements(K3, 12):
        lhs, _ = verify_cfc(one, nu)
        assert lhs == 4 * cf._sigma1(nu) + 2 * cf._sigma1_odd(nu)


alphas17 = [a for a in tp_elements(K17, 16) if is_squarefree(a) and cf.coarse17(a) != "Excluded"]


@given(st.sampled_from(alphas17), totally_positive(K17, 8))
def test_r3_closed_q17(alpha, nu):
    assert r3_closed(alpha, nu) == r3_brute(alpha * nu * nu)


alphas3 = [a for a in tp_elements(K3, 16) if is_squarefree(a) and cf.special_kind(a) != "one"]


@given(st.sampled_from(alphas3), totally_positive(K3, 8))
def test_r3_closed_q3(alpha, nu):
    if cf.closed_form_applies(nu):
        assert r3_closed(alpha, nu) == r3_brute(alpha * nu * nu)
    lhs, rhs = verify_cfc(alpha, nu)
    assert lhs == rhs


@pytest.mark.parametrize("field", [K3, K17])
def test_closed_form_up_to_trace_36(field):
    # the unit class of 1 in Q(sqrt 3) is covered by test_unit_class_of_one_in_q3
    alphas = [a for a in tp_elements(field, 36) if is_squarefree(a)
              and not (field == K17 and cf.coarse17(a) == "Excluded")
              and not (field == K3 and cf.special_kind(a) == "one")]
    checked = 0
    for alpha in alphas:
        for nu in tp_elements(field, 18):
            target = alpha * nu * nu
            if target.trace() > 36 or not cf.closed_form_applies(nu):
                continue
            checked += 1
            assert r3_closed(alpha, nu) == r3_brute(target), (alpha, nu)
    assert checked > 50


def test_cfc_up_to_nu_trace_10():
    for field in (K3, K17):
        for alpha in [a for a in tp_elements(field, 16) if is_squarefree(a)]:
            if field == K17 and cf.coarse17(alpha) == "Excluded":
                continue
            if field == K3 and cf.special_kind(alpha) == "one":
                continue
            for nu in tp_elements(field, 10):
                lhs, rhs = verify_cfc(alpha, nu)
                assert lhs == rhs, (alpha, nu)
