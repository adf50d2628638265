from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from antileibniz.core import (
    AlgebraBundle, DimensionError, FieldMismatchError, LinearMap, RepBundle, StructureTensor,
    Subspace, ideal_check, inverse, rank, span_closure_check,
)
from antileibniz.fields import FieldSpec
from antileibniz import fixtures


def test_from_table_and_evaluate(Q):
    t = fixtures.ml3(Q).mul
    e = [Q.basis_vector(3, i) for i in range(3)]
    assert list(t(e[0], e[0])) == [0, 1, 0]
    assert list(t(e[2], e[2])) == [0, 1, 0]
    assert list(t(e[0], e[2])) == [0, 0, 0]
    x = Q.array([1, 2, Fraction(1, 2)])
    # (e1 + 2 e2 + e3/2)^2 = e2 + e2/4
    assert list(t(x, x)) == [0, Fraction(5, 4), 0]


def test_tensor_is_immutable(Q):
    t = fixtures.ml3(Q).mul
    with pytest.raises(ValueError):
        t.coeffs[0, 0, 0] = 1


def test_bundle_validation(Q):
    t = StructureTensor.zeros(Q, 2)
    with pytest.raises(ValueError):
        AlgebraBundle(Q, 2, ("e1", "e2"), {"left": t}, "mock_lie")
    with pytest.raises(DimensionError):
        AlgebraBundle(Q, 3, ("e1", "e2", "e3"), {"mul": t}, "raw")
    with pytest.raises(DimensionError):
        AlgebraBundle(Q, 2, ("e1", "e1"), {"mul": t}, "raw")
    with pytest.raises(FieldMismatchError):
        AlgebraBundle(Q, 2, ("e1", "e2"), {"left": t, "right": StructureTensor.zeros(FieldSpec(5), 2)},
                      "anti_assoc_dialgebra")


def test_rep_validation(Q):
    a = fixtures.ml3(Q)
    with pytest.raises(DimensionError):
        RepBundle(a, 2, "mlie_rep", {"pi": Q.zeros((3, 3, 3))})
    with pytest.raises(ValueError):
        RepBundle(a, 3, "mlie_action", {"pi": Q.zeros((3, 3, 3))})
    with pytest.raises(ValueError):
        RepBundle(a, 3, "anti_leib_rep", {"pi": Q.zeros((3, 3, 3))})


def test_matrix_convention(Q):
    K = fixtures.averaging_K(Q)
    # column u is K(e_u)
    assert list(K(Q.basis_vector(4, 2))) == [1, 0, 0, 0]
    assert list(K(Q.basis_vector(4, 3))) == [0, 1, 0, 0]


def test_multiplication_matrices(Q):
    t = fixtures.ml4(Q).mul
    L, R = t.left_matrices(), t.right_matrices()
    e = [Q.basis_vector(4, i) for i in range(4)]
    for i in range(4):
        for j in range(4):
            assert list(Q.contract("ab,b->a", L[i], e[j])) == list(t(e[i], e[j]))
            assert list(Q.contract("ab,b->a", R[j], e[i])) == list(t(e[i], e[j]))


def test_transport_is_an_isomorphism(F5):
    t = fixtures.ml4(F5).mul
    phi = F5.array([[1, 2, 0, 0], [0, 1, 0, 0], [0, 3, 1, 0], [4, 0, 0, 2]])
    s = t.transport(phi)
    P = LinearMap(F5, phi)
    rng = np.random.default_rng(1)
    for _ in range(5):
        x, y = F5.random(rng, 4), F5.random(rng, 4)
        assert list(P(s(x, y))) == list(t(P(x), P(y)))


def test_linear_algebra(Q):
    m = Q.array([[1, 2], [3, 4]])
    assert rank(Q, m) == 2
    assert (Q.contract("ij,jk->ik", m, inverse(Q, m)) == Q.identity(2)).all()
    with pytest.raises(ZeroDivisionError):
        inverse(Q, Q.array([[1, 2], [2, 4]]))


def test_subspace_membership(Q):
    s = Subspace(Q, 3, [Q.array([1, 1, 0]), Q.array([2, 2, 0]), Q.array([0, 0, 1])])
    assert s.dim == 2
    assert s.contains(Q.array([3, 3, 5]))
    assert not s.contains(Q.array([1, 0, 0]))


def test_closure_checks(Q):
    t = fixtures.ml4(Q).mul
    center = Subspace(Q, 4, [Q.basis_vector(4, 1), Q.basis_vector(4, 3)])
    assert span_closure_check(t, center)
    assert ideal_check(t, center, "two_sided")
    gen = Subspace(Q, 4, [Q.basis_vector(4, 0)])
    res = span_closure_check(t, gen)
    assert not res
    assert [list(w) for w in res.witness] == [[1, 0, 0, 0]] * 2
    assert list(res.residual) == [0, 1, 0, 0]


@given(st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_opposite_is_involution(vals):
    f = FieldSpec()
    t = StructureTensor(f, f.array(np.array(vals).reshape(2, 2, 2)))
    assert t.opposite().opposite() == t
    assert t.symmetrized() == t.opposite().symmetrized()
