import json
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from strategies import lattice_classes, positive_classes
from tiltwalls.chern import STRUCTURE_SHEAF, ChernClass, discriminant, euler_characteristic, linear_combine
from tiltwalls.core import make_surface
from tiltwalls.kernel import (
    Certificate,
    Verdict,
    check_theorem_hypotheses,
    destabilizer_filter,
    destabilizing_wall,
    kernel_class,
    slope_gap,
    slope_gap_direct,
    twist_bound,
)
from tiltwalls.walls import Semicircle, classify_wall

P2 = make_surface(h_sq=1, lam=3, chi_o=1)


def cc(r, d, c):
    return ChernClass(r, Fraction(d), Fraction(c))


T = cc(*oracles.tangent_bundle_twist(0))
T2 = cc(*oracles.tangent_bundle_twist(2))
O1 = cc(*oracles.line_bundle(1))
OMEGA1 = cc(*oracles.euler_sequence_omega_twist())


def test_kernel_class_examples():
    assert kernel_class(O1, 3) == OMEGA1
    assert kernel_class(cc(1, 0, 0), 1) == cc(0, 0, 0)
    assert kernel_class(T, 8) == 3 * OMEGA1
    with pytest.raises(ValueError):
        kernel_class(T, 1)


def test_destabilizing_wall_examples():
    assert destabilizing_wall(O1) == Semicircle(Fraction(1, 2), Fraction(1, 4))
    assert destabilizing_wall(T2) == Semicircle(Fraction(23, 14), Fraction(529, 196))
    assert destabilizing_wall(T) == Semicircle(Fraction(1, 2), Fraction(1, 4))
    for bad in (cc(1, 0, 1), cc(1, 1, 0), cc(1, -1, 1)):
        with pytest.raises(ValueError):
            destabilizing_wall(bad)


def test_slope_gap_examples():
    assert slope_gap(T2, 1) == Fraction(735, 299) == slope_gap_direct(T2, 1)
    assert slope_gap(T2, 0) == 0
    assert slope_gap(O1, Fraction(1, 2)) == Fraction(3, 2) == slope_gap_direct(O1, Fraction(1, 2))
    with pytest.raises(ValueError):
        slope_gap(cc(2, 2, 2), 1)  # deg^2 = rank ch2
    with pytest.raises(ValueError):
        slope_gap(T2, -1)


def test_hypotheses_fail_for_tangent_bundle():
    rep = check_theorem_hypotheses(P2, T, 8)
    assert rep.verdict is Verdict.FAILS
    assert rep.failed == ("discriminant bound",)
    assert rep.discriminant_bound.lhs == Fraction(5, 4) and rep.discriminant_bound.rhs == 3
    assert "5/4 < 3" in rep.discriminant_bound.render()
    assert rep.kernel_class == cc(6, -3, Fraction(-3, 2))


def test_hypotheses_hold_for_twisted_tangent_bundle():
    rep = check_theorem_hypotheses(P2, T2, 24)
    assert rep.verdict is Verdict.ALL_HYPOTHESES_HOLD
    assert (rep.degree_bound.lhs, rep.degree_bound.rhs) == (7, 198)
    assert rep.ch2_positive.lhs == Fraction(23, 2)
    assert (rep.discriminant_bound.lhs, rep.discriminant_bound.rhs) == (Fraction(99, 28), 3)
    assert rep.wall_domination.case1_ok and rep.wall_domination.case2_ok
    text = rep.render()
    assert "2*ch2/deg + 1/r^2 = 99/28 >= 3 = disc : PASS" in text
    assert "verdict: AllHypothesesHold" in text


def test_hypotheses_hold_for_hyperplane_bundle():
    rep = check_theorem_hypotheses(P2, O1, 3)
    assert rep.holds
    assert (rep.discriminant_bound.lhs, rep.discriminant_bound.rhs) == (2, 0)
    assert rep.degree_bound.rhs == 18
    assert rep.kernel_class == OMEGA1


def test_hypotheses_report_json():
    doc = json.loads(check_theorem_hypotheses(P2, T, 8).to_json())
    assert doc["verdict"] == "Fails" and doc["failed"] == ["discriminant bound"]
    assert doc["hypotheses"][2]["lhs"] == "5/4"
    assert doc["kernel_class"] == "6,-3,-3/2"


def test_hypotheses_report_non_positive_inputs():
    rep = check_theorem_hypotheses(P2, cc(1, 0, 0), 1)
    assert set(rep.failed) == {"degree bound", "ch2 positive", "discriminant bound"}
    assert rep.destabilizing_wall is None
    assert "not evaluable" in rep.render()
    with pytest.raises(ValueError):
        check_theorem_hypotheses(P2, cc(0, 1, 1), 3)
    with pytest.raises(ValueError):
        check_theorem_hypotheses(P2, T, 1)


def test_degree_bound_uses_canonical_degree():
    # on a degree-1 del Pezzo with H = -K the cap is h0 - rank
    s = make_surface("del-pezzo:1")
    rep = check_theorem_hypotheses(s, cc(1, 3, 4), 3)
    assert rep.degree_bound.rhs == 2 and not rep.degree_bound.holds


def test_destabilizer_filter_examples():
    chk = destabilizer_filter(P2, OMEGA1, 3 * OMEGA1)
    assert chk.ch2_ratio_ok and chk.ch2_ratio == (Fraction(1, 2), Fraction(1, 2))
    assert destabilizer_filter(P2, T2, T2).ch2_ratio_ok
    assert not destabilizer_filter(P2, cc(1, -1, -1), OMEGA1).ch2_ratio_ok
    with pytest.raises(ValueError):
        destabilizer_filter(P2, cc(1, 0, 0), OMEGA1)


def test_destabilizer_certificate():
    # chi(Omega(1)) = 0: no contradiction
    assert destabilizer_filter(P2, OMEGA1, 3 * OMEGA1).chi_sign_certificate is Certificate.NO_CONTRADICTION
    # O(-3) has chi = 1 and deg = -3
    n = cc(*oracles.line_bundle(-3))
    chk = destabilizer_filter(P2, n, 3 * OMEGA1)
    assert chk.chi_ratio == Fraction(-1, 3)
    assert chk.chi_sign_certificate is Certificate.CONTRADICTION_REACHED


def test_twist_bound_examples():
    assert twist_bound(cc(1, 0, 0), 0) == 2
    assert twist_bound(cc(1, 0, 0), Fraction(17, 3)) == 6
    assert twist_bound(T, -1) == 2
    with pytest.raises(ValueError):
        twist_bound(cc(2, 0, 1), 0)
    with pytest.raises(ValueError):
        twist_bound(cc(0, 1, 0), 0)


@given(lattice_classes(st.integers(1, 5)), st.integers(-10, 10))
def test_twist_bound_is_least(e, reg):
    assume(discriminant(e) >= 0)
    d = twist_bound(e, reg)
    disc, mu = discriminant(e), e.deg / e.rank
    q = 4 * disc / e.rank**2 + 1

    def ok(k):
        t = k + mu - Fraction(1, 2)
        return t >= 0 and t * t >= q and k >= disc - mu and k >= reg

    assert ok(d) and not ok(d - 1)


@given(lattice_classes(), st.integers(0, 40))
def test_kernel_sequence_is_additive(e, h0):
    assume(h0 >= e.rank)
    m = kernel_class(e, h0)
    assert linear_combine(1, m, 1, e) == cc(h0, 0, 0)
    assert euler_characteristic(P2, m) == h0 * P2.chi_o - euler_characteristic(P2, e)


@given(positive_classes())
def test_destabilizing_wall_is_wall_with_shifted_structure_sheaf(e):
    assert destabilizing_wall(e) == classify_wall(e, -STRUCTURE_SHEAF)


@given(positive_classes(), st.fractions(min_value=Fraction(1, 100), max_value=20))
def test_slope_gap_positive_and_matches_direct(e, eps):
    gap = slope_gap(e, eps)
    assert gap > 0 and gap == slope_gap_direct(e, eps)
