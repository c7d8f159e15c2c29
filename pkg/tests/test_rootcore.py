"""Axioms, pair trichotomy, chains, and reflection closure."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rootsplit.linalg import vec
from rootsplit.catalog import build, label
from rootsplit.rootcore import (
    ChainBroken,
    NormscalViolation,
    cartan_int,
    classify_pair,
    inner,
    is_root_subsystem,
    make_root_system,
    reflect,
    reflection_closure,
    root_chain,
    validate_root_system,
)

rationals = st.fractions(min_value=-12, max_value=12, max_denominator=6)
small_vecs = st.lists(rationals, min_size=2, max_size=4).map(lambda xs: vec(*xs))


class TestInner:
    def test_orthonormal_basis(self):
        assert inner(vec(1, 0, 0), vec(0, 1, 0)) == 0

    def test_length_squared(self):
        assert inner(vec(1, -1, 0), vec(1, -1, 0)) == 2

    def test_direct_expansion(self):
        assert inner(vec(1, 1, 1), vec(1, 1, -1)) == 1

    @given(small_vecs, small_vecs)
    def test_symmetric(self, u, v):
        if len(u) == len(v):
            assert inner(u, v) == inner(v, u)


class TestReflect:
    def test_negates_axis(self):
        a = vec(1, -1, 0)
        assert reflect(a, a) == vec(-1, 1, 0)

    def test_fixes_orthogonal_hyperplane(self):
        v = vec(1, 1, 0)
        assert reflect(v, vec(1, -1, 0)) == v

    def test_swaps_coordinates(self):
        assert reflect(vec(1, 0, 0), vec(1, -1, 0)) == vec(0, 1, 0)

    @given(small_vecs, small_vecs)
    def test_involution_and_isometry(self, v, a):
        if len(v) != len(a) or inner(a, a) == 0:
            return
        w = reflect(v, a)
        assert reflect(w, a) == v
        assert inner(w, w) == inner(v, v)


class TestCartanInt:
    def test_self_is_two(self):
        assert cartan_int(vec(1, -1, 0), vec(1, -1, 0)) == 2

    def test_adjacent_simple_roots(self):
        assert cartan_int(vec(1, -1, 0), vec(0, 1, -1)) == -1

    def test_exact_fraction(self):
        # Not an integer for arbitrary vectors: the function itself is exact.
        assert cartan_int(vec(3, 0), vec(1, 0)) == Fraction(2, 3)


class TestValidate:
    def test_catalog_b3_is_clean(self):
        assert validate_root_system(build(label("B", 3)).roots).ok

    def test_missing_negative_fails_reflection_closure(self):
        report = validate_root_system([vec(1)])
        assert not report.ok
        assert any(v.axiom == "R4" for v in report.violations)

    def test_forbidden_multiple(self):
        report = validate_root_system(
            [vec(1), vec(-1), vec(2), vec(-2)]
        )
        assert not report.ok
        assert any(v.axiom == "R2" for v in report.violations)

    def test_zero_vector_rejected(self):
        assert not validate_root_system([vec(0, 0), vec(1, 0), vec(-1, 0)]).ok


class TestClassifyPair:
    def test_equal_length_adjacent(self):
        pc = classify_pair(vec(1, -1, 0), vec(0, 1, -1))
        assert (pc.kind, pc.cartan_value) == ("ratio1", -1)

    def test_orthogonal(self):
        assert classify_pair(vec(1, -1), vec(1, 1)).kind == "orthogonal"

    def test_ratio_two(self):
        pc = classify_pair(vec(1, 0), vec(1, 1))
        assert pc.kind == "ratio2"
        assert abs(pc.cartan_value) == 2

    def test_ratio_three(self):
        g2 = build(label("G", 2))
        short = min(g2.roots, key=lambda r: inner(r, r))
        long_adj = next(
            r for r in g2.roots
            if inner(r, r) == 3 * inner(short, short) and inner(r, short) != 0
        )
        pc = classify_pair(short, long_adj)
        assert pc.kind == "ratio3"
        assert abs(pc.cartan_value) == 3

    def test_violation_raises(self):
        with pytest.raises(NormscalViolation):
            classify_pair(vec(1, 0), vec(1, 2))


class TestRootChain:
    def test_single_step(self):
        b2 = build(label("B", 2))
        assert root_chain(vec(1, 0), vec(1, -1), b2) == [vec(0, 1)]

    def test_orthogonal_rejected(self):
        b2 = build(label("B", 2))
        with pytest.raises(ValueError):
            root_chain(vec(1, 1), vec(1, -1), b2)

    def test_broken_chain_detected(self):
        # Remove the chain endpoint from the system.
        b2 = build(label("B", 2))
        pruned = make_root_system(
            [r for r in b2.roots if r not in (vec(0, 1), vec(0, -1))],
            validate=False,
        )
        with pytest.raises(ChainBroken):
            root_chain(vec(1, 0), vec(1, -1), pruned)


class TestReflectionClosure:
    def test_a2_from_simple_roots(self):
        closure = reflection_closure([vec(1, -1, 0), vec(0, 1, -1)])
        assert closure == build(label("A", 2)).root_set

    def test_idempotent_on_valid_system(self):
        roots = build(label("B", 2)).root_set
        assert reflection_closure(roots) == roots

    def test_rank_one(self):
        assert reflection_closure([vec(1), vec(-1)]) == frozenset(
            [vec(1), vec(-1)]
        )


class TestIsRootSubsystem:
    def test_b3_isotropy_weights_regenerate_b3(self):
        b3 = build(label("B", 3))
        w = [r for r in b3.roots if sum(r) != 0]
        assert is_root_subsystem(w)

    def test_forbidden_multiple(self):
        assert not is_root_subsystem([vec(1), vec(-1), vec(2), vec(-2)])

    def test_any_catalog_system(self):
        assert is_root_subsystem(build(label("F", 4)).roots)
