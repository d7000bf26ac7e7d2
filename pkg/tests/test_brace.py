"""Tests for the brace core: validation, operations, ideals, isomorphism."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bracelab.abelian import AbelianGroup, validate_automorphism
from bracelab.brace import (
    BadLambdaZero,
    CocycleViolation,
    NotAnIdeal,
    brace_report,
    is_isomorphic,
    quotient_brace,
    trivial_brace,
    validate_brace,
)
from bracelab.constructions import diagonal_brace_m1, diagonal_brace_m2


def diag44_columns():
    g = AbelianGroup([4, 4])
    return g, [[(pow(3, b, 4), 0), (0, 1)] for (a, b) in g.elements]


def test_validate_trivial_table():
    g = AbelianGroup([4, 4])
    table = [[(1, 0), (0, 1)] for _ in range(16)]
    brace = validate_brace(g, table)
    assert brace.star((1, 2), (3, 1)) == (0, 0)


def test_validate_diagonal_family():
    g, table = diag44_columns()
    brace = validate_brace(g, table)
    assert brace.order == 16


def test_validate_rejects_bad_lambda_zero():
    g = AbelianGroup([4, 4])
    table = [[(1, 0), (0, 1)] for _ in range(16)]
    table[0] = [(3, 0), (0, 3)]
    with pytest.raises(BadLambdaZero):
        validate_brace(g, table)


def test_validate_rejects_broken_cocycle_with_witness():
    g, table = diag44_columns()
    table[g.rank((0, 2))] = [(0, 1), (1, 0)]  # swap map: valid automorphism, wrong cocycle
    with pytest.raises(CocycleViolation) as exc:
        validate_brace(g, table)
    a, b = exc.value.witness
    assert a in g.elements and b in g.elements


def test_brace_report_collects_violations():
    g, table = diag44_columns()
    table[g.rank((0, 2))] = [(0, 1), (1, 0)]
    report = brace_report(g, table)
    assert not report.passed
    assert report.violations[0][0] == "CocycleViolation"
    good = brace_report(*diag44_columns())
    assert good.passed and not good.violations


def test_star_circ_examples():
    A = diagonal_brace_m1(2)
    assert A.star((0, 1), (1, 0)) == (2, 0)
    assert A.circ((0, 1), (1, 0)) == (3, 1)
    assert A.circ_inverse((0, 1)) == (0, 3)
    T = trivial_brace([4, 4])
    assert T.star((1, 2), (3, 3)) == (0, 0)
    B = diagonal_brace_m2(3)
    assert B.star((1, 0), (0, 1)) == (0, 9)
    assert B.circ_power((0, 1), 9) == (0, 9)


def test_star_circ_consistency():
    B = diagonal_brace_m2(2)
    g = B.group
    for a in g.elements:
        for b in g.elements:
            assert B.circ(a, b) == g.add(g.add(B.star(a, b), a), b)


def test_circ_inverse_and_powers():
    B = diagonal_brace_m2(3)
    for r in range(0, B.order, 7):
        a = B.element(r)
        assert B.circ(a, B.circ_inverse(a)) == B.group.zero
        o = B.circ_order(a)
        assert B.circ_power(a, o) == B.group.zero
        assert B.circ_power(a, -3) == B.circ_inverse(B.circ_power(a, 3))


def test_commutator_examples():
    T = trivial_brace([4, 4])
    assert T.commutator((1, 2), (3, 1)) == (0, 0)
    B = diagonal_brace_m2(3)
    assert B.commutator((0, 1), (0, 1)) == (0, 0)
    c = B.commutator((0, 1), (1, 0))
    assert c == (0, 18)
    assert B.rank(c) in B.star_span().members()


def test_commutators_land_in_star_span():
    for brace in (diagonal_brace_m1(2), diagonal_brace_m2(2)):
        span = brace.star_span().members()
        for a in range(brace.order):
            for b in range(brace.order):
                ea, eb = brace.element(a), brace.element(b)
                assert brace.rank(brace.commutator(ea, eb)) in span


def test_star_right_distributive_exhaustive():
    B = diagonal_brace_m2(2)
    g = B.group
    add = g.add_rank
    for a in range(B.order):
        for b in range(B.order):
            for c in range(B.order):
                assert B.star_r(a, add(b, c)) == add(B.star_r(a, b), B.star_r(a, c))


def test_star_scalar_and_circ_expansion():
    B = diagonal_brace_m1(3)
    g = B.group
    for a in range(0, B.order, 5):
        for b in range(0, B.order, 7):
            for n in (-2, 0, 3, 10):
                lhs = B.star_r(a, g.rank(g.scalar_multiple(n, g.unrank(b))))
                rhs = g.rank(g.scalar_multiple(n, g.unrank(B.star_r(a, b))))
                assert lhs == rhs
            for c in range(0, B.order, 11):
                lhs = B.star_r(a, B.circ_r(b, c))
                rhs_parts = (B.star_r(a, B.star_r(b, c)), B.star_r(a, b), B.star_r(a, c))
                rhs = g.add_rank(g.add_rank(rhs_parts[0], rhs_parts[1]), rhs_parts[2])
                assert lhs == rhs


def test_lambda_multiplicativity():
    B = diagonal_brace_m2(3)
    for a in range(0, B.order, 4):
        for b in range(0, B.order, 4):
            composed = B.auts[B.lambda_ids[a]].compose(B.auts[B.lambda_ids[b]])
            assert B.auts[B.lambda_ids[B.circ_r(a, b)]].columns == composed.columns


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_star_distributivity_property(data):
    brace = data.draw(st.sampled_from([diagonal_brace_m1(2), diagonal_brace_m2(3), trivial_brace([2, 8])]))
    n = brace.order
    a = data.draw(st.integers(0, n - 1))
    b = data.draw(st.integers(0, n - 1))
    c = data.draw(st.integers(0, n - 1))
    add = brace.group.add_rank
    assert brace.star_r(a, add(b, c)) == add(brace.star_r(a, b), brace.star_r(a, c))


def test_subset_star_examples():
    A = diagonal_brace_m1(2)
    g = A.group
    assert A.subset_star([0], range(16)).ranks == (0,)
    assert set(A.subset_star(range(16), range(16)).elements(g)) == {(0, 0), (2, 0)}
    B = diagonal_brace_m2(3)
    assert set(B.star_span().elements(B.group)) == {(0, 0), (0, 9), (0, 18)}


def test_ideal_generated_examples():
    A = diagonal_brace_m1(2)
    assert set(A.ideal_generated((2, 0)).elements(A.group)) == {(0, 0), (2, 0)}
    assert A.ideal_generated((0, 0)).ranks == (0,)
    T = trivial_brace([4, 4])
    assert set(T.ideal_generated((1, 0)).elements(T.group)) == {(0, 0), (1, 0), (2, 0), (3, 0)}


def test_quotient_examples():
    from bracelab.abelian import Subgroup

    A = diagonal_brace_m1(2)
    q0, _ = quotient_brace(A, A.ideal_generated((0, 0)))
    assert q0.order == 16
    assert is_isomorphic(A, q0) is not None
    q_full, _ = quotient_brace(A, Subgroup(tuple(range(16))))
    assert q_full.order == 1
    mid, _ = quotient_brace(A, A.ideal_generated((2, 0)))
    assert mid.order == 8


def test_quotient_rejects_non_ideal():
    from bracelab.abelian import subgroup_generated

    A = diagonal_brace_m1(2)
    # additively closed and lambda-invariant, but (0,1)*(1,0) = (2,0) escapes
    bad = subgroup_generated(A.group, [(0, 1)])
    assert not A.is_ideal(bad)
    with pytest.raises(NotAnIdeal):
        quotient_brace(A, bad)


def test_is_isomorphic_identity_and_negative():
    A = diagonal_brace_m1(2)
    T = trivial_brace([4, 4])
    assert is_isomorphic(A, A) is not None
    assert is_isomorphic(T, A) is None
    assert is_isomorphic(T, trivial_brace([2, 8])) is None


def test_is_isomorphic_recovers_relabeling():
    A = diagonal_brace_m1(2)
    g = A.group
    phi = validate_automorphism(g, [(1, 2), (0, 3)])
    inv_cols = phi.inv_perm(g)
    # conjugate lambda table: lambda'_a = phi . lambda_{phi^-1(a)} . phi^-1
    table = []
    for r in range(16):
        src = A.auts[A.lambda_ids[inv_cols[r]]]
        cols = []
        for j, gen in enumerate([(1, 0), (0, 1)]):
            x = phi.apply(src.apply(g.unrank(phi.inv_perm(g)[g.rank(gen)])))
            cols.append(x)
        table.append(cols)
    relabeled = validate_brace(g, table)
    mapping = is_isomorphic(A, relabeled)
    assert mapping is not None
    for a in g.elements:
        for b in g.elements:
            assert mapping[A.circ(a, b)] == relabeled.circ(mapping[a], mapping[b])
            assert mapping[g.add(a, b)] == g.add(mapping[a], mapping[b])


def test_brace_equality_and_roundtrip_of_columns():
    A = diagonal_brace_m1(2)
    g, table = diag44_columns()
    again = validate_brace(g, table)
    assert A == again
