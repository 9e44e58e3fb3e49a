import doctest

import pytest
from hypothesis import given
from hypothesis import strategies as st

import k3sections.decision
from k3sections import (
    DivisorClass,
    InvalidInputError,
    NonHyperbolicLatticeError,
    ResidueBranch,
    SurfaceSpec,
    bn_general,
    brute_force_decide,
    ceil_div,
    closed_form_decide,
    decide,
    degree,
    delta,
    forced_a,
    genus_threshold,
    lattice_health,
    lemma_branch,
    self_intersection,
    splitting_witness,
    witness_search_bound,
)
from oracles import enumerate_solutions, first_solution, satisfies_system

# Large n makes the witness search bound (roughly n / sqrt(d^2 - 4n(g-1)))
# large, so strategies that end up running the search stay small.
small_specs = st.builds(
    SurfaceSpec,
    n=st.integers(2, 300),
    d=st.integers(1, 600),
    g=st.integers(0, 2000),
)


@given(st.integers(-(10**9), 10**9), st.integers(1, 10**9))
def test_ceil_div_is_exact_ceiling(p, q):
    c = ceil_div(p, q)
    assert (c - 1) * q < p <= c * q


def test_delta_examples():
    assert delta(3, 8) == 2
    assert delta(2, 8) == 0
    assert delta(5, 3) == 3


def test_delta_rejects_bad_inputs():
    with pytest.raises(InvalidInputError):
        delta(1, 5)
    with pytest.raises(InvalidInputError):
        delta(3, 0)


@given(st.integers(2, 10**9), st.integers(1, 10**9))
def test_delta_range_and_threshold_integrality(n, d):
    dlt = delta(n, d)
    assert 0 <= dlt <= n
    assert (d * d - dlt * dlt) % (4 * n) == 0


@given(st.integers(2, 10**4), st.integers(1, 10**4), st.integers(0, 50))
def test_delta_periodicity(n, d, k):
    assert delta(n, d + 2 * n * k) == delta(n, d)


@given(st.integers(2, 10**6))
def test_delta_reflection(n):
    for d in range(1, 2 * n) if n < 30 else [1, n - 1, n, n + 1, 2 * n - 1]:
        assert delta(n, 2 * n - d) == delta(n, d)


def test_genus_threshold_examples():
    assert genus_threshold(3, 8) == 5
    assert genus_threshold(2, 5) == 3
    assert genus_threshold(3, 6) == 3  # delta = 0 corner


def test_closed_form_examples():
    assert closed_form_decide(SurfaceSpec(3, 8, 5)) is True
    assert closed_form_decide(SurfaceSpec(3, 8, 4)) is False
    assert closed_form_decide(SurfaceSpec(2, 5, 3)) is True


def test_bn_general_examples():
    assert bn_general(SurfaceSpec(3, 8, 4)) is True
    assert bn_general(SurfaceSpec(3, 8, 5)) is False
    assert bn_general(SurfaceSpec(2, 5, 2)) is True


@given(small_specs)
def test_bn_general_negates_closed_form(s):
    assert bn_general(s) != closed_form_decide(s)


def test_forced_a_examples():
    assert forced_a(3, 8, 1) == -1
    assert forced_a(3, 8, -1) is None
    assert forced_a(2, 4, 1) is None
    assert forced_a(2, 4, 0) is None  # b = 0 never satisfies the window


def test_forced_a_exhaustive_window():
    # compare against direct enumeration of the degree window, verbatim
    for n in range(2, 9):
        for d in range(1, 41):
            for b in range(-12, 13):
                center = -(b * d) // (2 * n)
                window = [
                    a
                    for a in range(center - 3, center + 4)
                    if 0 < 2 * n * a + b * d <= n
                ]
                assert len(window) <= 1
                a = forced_a(n, d, b)
                if window:
                    assert a == window[0]
                    assert 2 * n * a + b * d == (b * d) % (2 * n)
                else:
                    assert a is None


def test_witness_search_bound_examples():
    assert witness_search_bound(SurfaceSpec(3, 8, 5)) == 1
    # discriminant zero and positive are both rejected
    with pytest.raises(NonHyperbolicLatticeError):
        witness_search_bound(SurfaceSpec(2, 4, 3))  # d^2 = 4n(g-1) exactly
    with pytest.raises(NonHyperbolicLatticeError):
        witness_search_bound(SurfaceSpec(3, 6, 100))


def test_brute_force_examples():
    w = brute_force_decide(SurfaceSpec(3, 8, 5))
    assert w is not None
    assert (w.klass, w.degree, w.square, w.complement_degree) == (
        DivisorClass(-1, 1),
        2,
        -2,
        4,
    )
    w = brute_force_decide(SurfaceSpec(2, 5, 3))
    assert (w.klass, w.degree, w.square) == (DivisorClass(-1, 1), 1, -2)
    assert brute_force_decide(SurfaceSpec(2, 5, 2)) is None


def test_brute_force_rejects_non_hyperbolic():
    with pytest.raises(NonHyperbolicLatticeError):
        brute_force_decide(SurfaceSpec(3, 6, 100))


def test_brute_force_against_enumeration_oracle():
    # Exhaustive cross-check on a grid of hyperbolic specs.  The derived
    # search bound is at most sqrt(n^2 + 4n) <= 8 for n <= 6, so the
    # oracle's |b| <= 12 window dominates it.
    for n in range(2, 7):
        for d in range(1, 25):
            for g in range(0, (d * d - 1) // (4 * n) + 2):
                spec = SurfaceSpec(n, d, g)
                w = brute_force_decide(spec)
                expected = first_solution(n, d, g)
                if expected is None:
                    assert w is None, (n, d, g, w)
                else:
                    assert w is not None, (n, d, g)
                    assert (w.klass.a, w.klass.b) == expected, (n, d, g)
                    assert satisfies_system(n, d, g, w.klass.a, w.klass.b)
                    assert w.degree == degree(spec, w.klass)
                    assert w.square == self_intersection(spec, w.klass)
                    assert w.complement_degree == 2 * n - w.degree


def test_lemma_branch_examples():
    lb = lemma_branch(SurfaceSpec(3, 8, 5))
    assert (lb.r, lb.branch, lb.a1, lb.candidate, lb.condition_holds) == (
        2,
        ResidueBranch.R_LE_N,
        -1,
        DivisorClass(-1, 1),
        True,
    )
    lb = lemma_branch(SurfaceSpec(3, 10, 8))
    assert (lb.r, lb.branch, lb.a1, lb.candidate, lb.condition_holds) == (
        4,
        ResidueBranch.R_GT_N,
        2,
        DivisorClass(2, -1),
        True,
    )
    assert lemma_branch(SurfaceSpec(3, 10, 7)).condition_holds is False


@given(small_specs)
def test_lemma_candidate_degree_is_delta(s):
    lb = lemma_branch(s)
    assert degree(s, lb.candidate) == delta(s.n, s.d)
    assert (lb.branch is ResidueBranch.R_LE_N) == (lb.r <= s.n)
    assert lb.r == s.d % (2 * s.n)


@given(small_specs)
def test_lemma_condition_matches_closed_form(s):
    # the residue candidate test and the threshold test are equivalent on
    # every spec, healthy or not
    assert lemma_branch(s).condition_holds == closed_form_decide(s)


def test_splitting_witness_examples():
    spec = SurfaceSpec(3, 8, 5)
    w = brute_force_decide(spec)
    (d1, deg1), (d2, deg2) = splitting_witness(spec, w)
    assert (d1, deg1) == (DivisorClass(-1, 1), 2)
    assert (d2, deg2) == (DivisorClass(2, -1), 4)
    assert deg1 + deg2 == 6

    spec = SurfaceSpec(2, 5, 3)
    (d1, deg1), (d2, deg2) = splitting_witness(spec, brute_force_decide(spec))
    assert (d1, deg1) == (DivisorClass(-1, 1), 1)
    assert (d2, deg2) == (DivisorClass(2, -1), 3)


@given(small_specs)
def test_splitting_degrees_sum_to_2n(s):
    v = decide(s)
    if v.brute_force is None:
        return
    (d1, deg1), (d2, deg2) = splitting_witness(s, v.brute_force)
    assert d1 + d2 == DivisorClass(1, 0)
    assert deg1 + deg2 == 2 * s.n
    assert deg1 > 0 and deg2 > 0
    assert degree(s, d1) == deg1 and degree(s, d2) == deg2


def test_decide_spot_cases():
    v = decide(SurfaceSpec(3, 8, 5))
    assert v.closed_form and v.brute_force is not None and v.agree
    assert v.delta == 2 and v.genus_threshold == 5
    assert not v.bn_general_guaranteed

    v = decide(SurfaceSpec(3, 8, 4))
    assert not v.closed_form and v.brute_force is None and v.agree
    assert v.bn_general_guaranteed

    # the documented delta = 0 corner
    v = decide(SurfaceSpec(2, 4, 2))
    assert v.closed_form and v.brute_force is None
    assert v.agree is False
    assert v.health.degree_zero_minus_two_class == DivisorClass(-1, 1)
    assert v.lemma.condition_holds  # residue test sides with the closed form


def test_decide_non_hyperbolic_specs():
    # decide never rejects an unhealthy lattice; with delta > 0 the witness
    # exists at |b| = 1 (and is checked verbatim here), with delta = 0 the
    # degree window is unsatisfiable for every b
    v = decide(SurfaceSpec(2, 5, 50))
    assert not v.health.hyperbolic
    assert v.closed_form and v.brute_force is not None and v.agree
    w = v.brute_force
    assert satisfies_system(2, 5, 50, w.klass.a, w.klass.b)

    v = decide(SurfaceSpec(3, 6, 100))
    assert not v.health.hyperbolic
    assert v.closed_form and v.brute_force is None
    assert v.agree is False
    assert enumerate_solutions(3, 6, 100, b_window=8) == []


@given(small_specs)
def test_decide_agree_flag_invariant(s):
    v = decide(s)
    assert v.agree == (v.closed_form == (v.brute_force is not None))
    assert v.bn_general_guaranteed == (s.g < v.genus_threshold)
    assert v.health == lattice_health(s)


@given(small_specs)
def test_decide_disagreements_only_at_delta_zero(s):
    v = decide(s)
    if not v.agree:
        assert v.delta == 0
        if v.health.hyperbolic:
            assert 4 * s.n * s.g == s.d * s.d
            assert v.health.degree_zero_minus_two_class is not None


def test_witness_monotonic_in_genus():
    # once a witness exists it keeps existing as g grows (while the lattice
    # stays hyperbolic): the quadratic form value is nondecreasing in g
    for n in range(2, 6):
        for d in range(1, 20):
            seen = False
            for g in range(0, (d * d - 1) // (4 * n) + 2):
                has = brute_force_decide(SurfaceSpec(n, d, g)) is not None
                assert has or not seen, (n, d, g)
                seen = seen or has


def test_equivalence_on_healthy_specs():
    # delta > 0 and hyperbolic: the closed form and the search always agree
    for n in range(2, 7):
        for d in range(1, 30):
            if delta(n, d) == 0:
                continue
            for g in range(0, (d * d - 1) // (4 * n) + 2):
                spec = SurfaceSpec(n, d, g)
                assert closed_form_decide(spec) == (
                    brute_force_decide(spec) is not None
                ), (n, d, g)


def test_doctests():
    assert doctest.testmod(k3sections.decision).failed == 0
