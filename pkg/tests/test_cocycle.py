"""Cocycle calculus: convolution, inverses, identities, twisted Hopf algebra."""

from fractions import Fraction

import pytest

from cotwist.cyclotomic import Cyc
from cotwist.cocycle import (
    CocycleData, NotInvertible, PairFunctional, bicharacter_cocycle, convolution_inverse,
    convolve, counit_functional, theta_cocycle, trivial_cocycle, twist_hopf,
    verify_cocycle_identities, verify_unitarity_suite)
from cotwist.hopf import GroupAlgebra, fun_s3
from cotwist.report import Report
from cotwist.vectors import Vec

THETA13 = [[0, Fraction(1, 3)], [Fraction(-1, 3), 0]]


def torus_hopf(order=12):
    return GroupAlgebra(2, scalar_order=order, name="C[Z^2]")


def test_theta_cocycle_values():
    A = torus_hopf()
    data = theta_cocycle(A, THETA13)
    # <<theta (1,0),(0,1)>> = -1/3
    assert data.gamma((1, 0), (0, 1)) == Cyc.root(3, 2)  # zeta_3^{-1}
    assert data.gamma((0, 1), (1, 0)) == Cyc.root(3, 1)
    for m in A.labels_box(2):
        assert data.gamma(m, m) == Cyc.one(12)
        # Vbar(u_m^*) = 1 by skewness
        assert data.Vbar(A._neg(m)) == Cyc.one(12)


def test_theta_rejects_non_skew():
    A = torus_hopf()
    with pytest.raises(ValueError):
        theta_cocycle(A, [[0, Fraction(1, 3)], [Fraction(1, 3), 0]])


def test_convolution_of_theta_with_inverse_is_counit():
    A = torus_hopf()
    data = theta_cocycle(A, THETA13)
    conv = convolve(data.gamma, data.gamma_bar, A)
    eps = counit_functional(A)
    for a in A.labels_box(2):
        for b in A.labels_box(2):
            assert conv(a, b) == eps(a, b)


def test_convolution_unit():
    A = fun_s3()
    eps = counit_functional(A)
    psi = PairFunctional(A, lambda a, b: Cyc.rational(Fraction(1, 2), 1)
                         if a == b else Cyc.zero(1))
    conv = convolve(eps, psi, A)
    for a in A.finite_labels():
        for b in A.finite_labels():
            assert conv(a, b) == psi(a, b)


def test_fun_s3_convolution_is_group_convolution():
    # functionals on Fun(G) x Fun(G) convolve like the group algebra of GxG
    A = fun_s3()
    els = A.finite_labels()
    s, t, u, v = els[1], els[2], els[3], els[4]
    phi = PairFunctional(A, lambda a, b: Cyc.one(1) if (a, b) == (s, t) else Cyc.zero(1))
    psi = PairFunctional(A, lambda a, b: Cyc.one(1) if (a, b) == (u, v) else Cyc.zero(1))
    conv = convolve(phi, psi, A)
    for a in els:
        for b in els:
            expected = Cyc.one(1) if (a, b) == (s * u, t * v) else Cyc.zero(1)
            assert conv(a, b) == expected


def test_pointwise_inverse_and_zero_error():
    A = torus_hopf()
    data = theta_cocycle(A, THETA13)
    for m in A.labels_box(2):
        for n in A.labels_box(2):
            assert data.gamma_bar(m, n) == data.gamma(m, n).inverse()
    broken = PairFunctional(
        A, lambda a, b: Cyc.zero(12) if (a, b) == ((1, 0), (0, 1)) else data.gamma(a, b))
    bad = convolution_inverse(broken, A, "grouplike_pointwise")
    with pytest.raises(NotInvertible) as exc:
        bad((1, 0), (0, 1))
    assert exc.value.pair == ((1, 0), (0, 1))


def test_table_solve_on_fun_s3():
    # oracle: delta functional at (s,t) inverts to the delta at (s^-1,t^-1)
    A = fun_s3()
    els = A.finite_labels()
    s, t = els[1], els[4]
    phi = PairFunctional(A, lambda a, b: Cyc.one(1) if (a, b) == (s, t) else Cyc.zero(1))
    psi = convolution_inverse(phi, A, "table_solve")
    for a in els:
        for b in els:
            expected = Cyc.one(1) if (a, b) == (s.inv(), t.inv()) else Cyc.zero(1)
            assert psi(a, b) == expected


def test_counit_self_inverse_table_solve():
    A = fun_s3()
    eps = counit_functional(A)
    psi = convolution_inverse(eps, A, "table_solve")
    for a in A.finite_labels():
        for b in A.finite_labels():
            assert psi(a, b) == eps(a, b)


def test_user_supplied_verifies():
    A = torus_hopf()
    data = theta_cocycle(A, THETA13)
    ok = convolution_inverse(data.gamma, A, "user_supplied",
                             candidate=data.gamma_bar, box=2)
    assert ok is data.gamma_bar
    with pytest.raises(NotInvertible):
        convolution_inverse(data.gamma, A, "user_supplied",
                            candidate=data.gamma, box=2)


def _box_triples(A, box):
    labels = A.labels_box(box)
    return [(a, b, c) for a in labels for b in labels for c in labels]


def test_cocycle_identities_theta():
    A = torus_hopf()
    data = theta_cocycle(A, THETA13)
    rep = Report()
    verify_cocycle_identities(data, A, _box_triples(A, 1), rep)
    assert rep.passed, rep.to_text()


def test_cocycle_identities_trivial_fun_s3_exhaustive():
    A = fun_s3()
    data = trivial_cocycle(A)
    rep = Report()
    verify_cocycle_identities(data, A, _box_triples(A, 0), rep)
    assert rep.passed, rep.to_text()


def test_perturbed_cocycle_fails_with_witness():
    A = torus_hopf()
    data = theta_cocycle(A, THETA13)
    zeta = Cyc.root(3)
    bad_pair = ((1, 0), (0, 1))
    gamma = PairFunctional(
        A, lambda a, b: data.gamma(a, b) * zeta if (a, b) == bad_pair else data.gamma(a, b))
    gamma_bar = convolution_inverse(gamma, A, "grouplike_pointwise")
    bad = CocycleData(A, gamma, gamma_bar, {"cocycle_verified": False, "unital": True})
    rep = Report()
    verify_cocycle_identities(bad, A, _box_triples(A, 1), rep)
    failing = {c.check_id for c in rep.failures()}
    assert "cocycle.equation" in failing
    assert any("fails at" in (c.witness or "") for c in rep.failures())


def test_unitarity_suite_theta():
    A = torus_hopf()
    data = theta_cocycle(A, THETA13)
    rep = Report()
    pairs = [(a, b) for a in A.labels_box(1) for b in A.labels_box(1)]
    verify_unitarity_suite(data, A, pairs, rep)
    assert rep.passed, rep.to_text()


def test_unitarity_suite_bicharacter_z5():
    A = GroupAlgebra(0, (5, 5), scalar_order=5)
    data = bicharacter_cocycle(A, [[0, 1], [-1, 0]])
    rep = Report()
    labels = A.finite_labels()[:8]
    pairs = [(a, b) for a in labels for b in labels]
    verify_unitarity_suite(data, A, pairs, rep)
    assert rep.passed, rep.to_text()


def test_scaled_gamma_breaks_unitarity():
    A = torus_hopf()
    data = theta_cocycle(A, THETA13)
    bad_pair = ((1, 0), (0, 1))
    gamma = PairFunctional(
        A, lambda a, b: data.gamma(a, b) * 2 if (a, b) == bad_pair else data.gamma(a, b))
    gamma_bar = convolution_inverse(gamma, A, "grouplike_pointwise")
    bad = CocycleData(A, gamma, gamma_bar, {"cocycle_verified": True, "unital": True})
    rep = Report()
    pairs = [(a, b) for a in A.labels_box(1) for b in A.labels_box(1)]
    verify_unitarity_suite(bad, A, pairs, rep)
    failing = {c.check_id for c in rep.failures()}
    assert "unitary.gamma-conjugation" in failing or "unitary.modulus" in failing


def test_twist_cocommutative_collapse():
    A = torus_hopf()
    data = theta_cocycle(A, THETA13)
    tw = twist_hopf(A, data)
    for a in A.labels_box(2):
        for b in A.labels_box(2):
            assert tw.mult(a, b) == A.mult(a, b)
        assert tw.star(a) == A.star(a)
        assert tw.antipode(a) == A.antipode(a)


def test_trivial_twist_identity():
    A = fun_s3()
    data = trivial_cocycle(A)
    tw = twist_hopf(A, data)
    for a in A.finite_labels():
        for b in A.finite_labels():
            assert tw.mult(a, b) == A.mult(a, b)
        assert tw.antipode(a) == A.antipode(a)
        assert tw.star(a) == A.star(a)


def test_twisted_antipode_inverse_nontrivial():
    # non-skew bicharacter: V and Vbar are nontrivial, S_g must still invert
    A = GroupAlgebra(0, (5, 5), scalar_order=5)
    data = bicharacter_cocycle(A, [[1, 1], [0, 0]])
    tw = twist_hopf(A, data)
    for l in A.finite_labels():
        v = tw.el(l)
        assert tw.antipode_inv_elem(tw.antipode_elem(v)) == v
        assert tw.antipode_elem(tw.antipode_inv_elem(v)) == v


def test_twisted_hopf_axioms_nontrivial():
    from cotwist.hopf import verify_hopf_axioms
    A = GroupAlgebra(0, (3, 3), scalar_order=3)
    data = bicharacter_cocycle(A, [[0, 1], [0, 0]])
    tw = twist_hopf(A, data)
    rep = Report()
    labels = tw.finite_labels()
    pairs = [(a, b) for a in labels for b in labels]
    verify_hopf_axioms(tw, labels, rep, prefix="twisted", pair_samples=pairs)
    assert rep.passed, rep.to_text()


def test_round_trip_recovers_tables():
    A = torus_hopf()
    data = theta_cocycle(A, THETA13)
    tw = twist_hopf(A, data)
    back = twist_hopf(tw, data.inverse_data(tw))
    for a in A.labels_box(1):
        for b in A.labels_box(1):
            assert back.mult(a, b) == A.mult(a, b)
        assert back.star(a) == A.star(a)
        assert back.antipode(a) == A.antipode(a)


def test_table_solve_singular_reports_pair():
    A = fun_s3()
    zero = PairFunctional(A, lambda a, b: Cyc.zero(1))
    with pytest.raises(NotInvertible) as exc:
        convolution_inverse(zero, A, "table_solve")
    assert exc.value.pair is not None
