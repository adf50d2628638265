import numpy as np
import pytest
from hypothesis import given, strategies as st

from antileibniz import fixtures
from antileibniz.classify import TableEntry, instantiate_table
from antileibniz.core import AlgebraBundle, LinearMap, StructureTensor
from antileibniz.fields import FieldSpec
from antileibniz.functors import (
    HypothesisError, adjoint, anti_dicommutator, anticommutator, coadjoint,
    dicommutator_convention_survey, dual_representation, hemisemidirect, hemisemidirect_trialgebra,
    kernel_and_quotient, semidirect, trialgebra_collapse, zero_rep,
)
from antileibniz.generators import random_graded
from antileibniz.laws import check_law, check_representation
from antileibniz.operators import induced_antiassoc_trialgebra, induced_dialgebra

F5 = FieldSpec(5)


def single(Q, n, table, cls="raw"):
    return AlgebraBundle.single(StructureTensor.from_table(Q, n, table), cls)


def products_of(t):
    n = t.dim
    return {(i, j): {k: t.coeffs[i, j, k] for k in range(n) if t.coeffs[i, j, k]}
            for i in range(n) for j in range(n) if any(t.coeffs[i, j])}


def test_anticommutator_examples(Q):
    out = anticommutator(fixtures.square3(Q, "anti_assoc"))
    assert products_of(out.mul) == {(0, 0): {1: 2}}
    assert check_law(out, "mock_lie").passed
    out = anticommutator(single(Q, 3, {(0, 1): {2: 1}}, "anti_assoc"))
    assert products_of(out.mul) == {(0, 1): {2: 1}, (1, 0): {2: 1}}
    assert anticommutator(AlgebraBundle.single(StructureTensor.zeros(Q, 2))).mul.is_zero()


def test_anticommutator_refuses_bad_input(Q):
    bad = single(Q, 1, {(0, 0): {0: 1}})
    with pytest.raises(HypothesisError):
        anticommutator(bad)
    assert anticommutator(bad, force=True).mul.coeffs[0, 0, 0] == 2


def test_dicommutator_equal_products(Q):
    t = fixtures.square3(Q).mul
    d = AlgebraBundle.from_products("anti_assoc_dialgebra", left=t, right=t)
    out = anti_dicommutator(d)
    assert products_of(out.mul) == {(0, 0): {1: 2}}
    z = StructureTensor.zeros(Q, 2)
    assert anti_dicommutator(AlgebraBundle.from_products("anti_assoc_dialgebra", left=z, right=z)).mul.is_zero()


def test_dicommutator_of_induced_dialgebra_is_anticommutator(Q):
    a = fixtures.square3(Q, "anti_assoc")
    d = induced_dialgebra(LinearMap.identity(Q, 3), adjoint(a, "anti_assoc_rep"))
    assert anti_dicommutator(d).mul == anticommutator(a).mul


def test_conventions(Q):
    # x > y = e1 e1 = e2 only, x < y = 0: the two conventions give opposite brackets
    right = single(Q, 2, {(0, 0): {1: 1}}).mul
    d = AlgebraBundle.from_products("anti_assoc_dialgebra", left=StructureTensor.zeros(Q, 2), right=right)
    assert anti_dicommutator(d).mul == right
    assert anti_dicommutator(d, swap=True).mul == right.opposite()


def test_three_anti_associators_do_not_suffice(Q):
    """< = 0 with > anti-associative satisfies the three identities but not the bar axioms."""
    d = AlgebraBundle.from_products("anti_assoc_dialgebra", left=StructureTensor.zeros(Q, 3),
                                    right=fixtures.nilpotent3(Q).mul)
    assert check_law(d, "dialg_all").passed
    assert not check_law(d, "dialg_all", strict=True).passed
    for swap in (False, True):
        out = anti_dicommutator(d, swap=swap)
        r = check_law(out, "anti_leibniz_left")
        assert not r.passed
    with pytest.raises(HypothesisError):
        anti_dicommutator(d, strict=True)
    assert dicommutator_convention_survey([d]) == {"default": 0, "swap": 0, "total": 1}


def test_collapse_examples(Q):
    z = StructureTensor.zeros(Q, 3)
    zero = AlgebraBundle.from_products("anti_assoc_trialgebra", left=z, right=z, middle=z)
    out = trialgebra_collapse(zero)
    assert out.product("bracket").is_zero() and out.product("circ").is_zero()

    a = fixtures.square3(Q, "anti_assoc")
    tri = induced_antiassoc_trialgebra(LinearMap.identity(Q, 3), adjoint(a, "anti_assoc_action"))
    out = trialgebra_collapse(tri)
    assert products_of(out.product("bracket")) == products_of(out.product("circ")) == {(0, 0): {1: 2}}

    mid = AlgebraBundle.from_products("anti_assoc_trialgebra", left=z, right=z, middle=a.mul)
    out = trialgebra_collapse(mid)
    assert out.product("bracket").is_zero()
    assert products_of(out.product("circ")) == {(0, 0): {1: 2}}
    assert check_law(out, "anti_leib_trialg_full").passed


def test_semidirect_examples(Q):
    s = semidirect(adjoint(fixtures.ml3(Q)))
    assert s.dim == 6 and check_law(s, "mock_lie").passed
    e = lambda i: Q.basis_vector(6, i)
    assert list(s.mul(e(0), e(3))) == list(e(4))
    a3 = instantiate_table(TableEntry("A3"), Q)
    s = semidirect(adjoint(a3, "anti_leib_rep"))
    e = lambda i: Q.basis_vector(4, i)
    assert list(s.mul(e(0), e(2))) == list(e(3)) and list(s.mul(e(2), e(0))) == list(e(3))
    assert check_law(s, "anti_leibniz_left").passed
    zero = AlgebraBundle.single(StructureTensor.zeros(Q, 2))
    assert semidirect(zero_rep(zero, 3)).mul.is_zero()


def test_semidirect_of_anti_assoc_and_actions(Q):
    a = fixtures.nilpotent3(Q)
    assert check_law(semidirect(adjoint(a, "anti_assoc_rep")), "anti_associativity").passed
    act = adjoint(fixtures.square3(Q), "mlie_action")
    s = semidirect(act)
    assert check_law(s, "mock_lie").passed
    assert not s.mul.coeffs[3:, 3:, 3:].any() is False  # carrier product is present


def test_hemisemidirect_examples(Q):
    h = hemisemidirect(adjoint(fixtures.ml4(Q)))
    assert h.dim == 8 and check_law(h, "anti_leibniz_left").passed
    e = lambda i: Q.basis_vector(8, i)
    assert list(h.mul(e(0), e(4))) == list(e(5))
    assert not any(h.mul(e(4), e(0)))
    assert not check_law(h, "commutativity").passed
    h3 = hemisemidirect(adjoint(fixtures.ml3(Q)))
    assert list(h3.mul(Q.basis_vector(6, 2), Q.basis_vector(6, 5))) == list(Q.basis_vector(6, 4))


def test_hemisemidirect_trialgebra(Q):
    act = adjoint(fixtures.square3(Q), "mlie_action")
    assert check_law(hemisemidirect_trialgebra(act), "anti_leib_trialg_full").passed
    trivial = AlgebraBundle.single(StructureTensor.zeros(Q, 2), "mock_lie")
    b = fixtures.ml3(Q).mul
    t = hemisemidirect_trialgebra(zero_rep(trivial, 3, "mlie_action", b))
    assert t.product("bracket").is_zero()
    assert (t.product("circ").coeffs[2:, 2:, 2:] == b.coeffs).all()
    assert check_law(t, "anti_leib_trialg_full").passed


def test_dual_and_coadjoint(Q):
    d = dual_representation(adjoint(fixtures.ml4(Q)))
    assert check_representation(d).passed
    assert d.carrier_basis == ("e1*", "e2*", "e3*", "e4*")
    assert np.array_equal(d["pi"][0], adjoint(fixtures.ml4(Q))["pi"][0].T)
    for entry in (TableEntry("A2"), TableEntry("A1", (1, 1))):
        assert check_representation(coadjoint(instantiate_table(entry, Q))).passed
    zero = AlgebraBundle.single(StructureTensor.zeros(Q, 2), "anti_leibniz_left")
    c = coadjoint(zero)
    assert not c["l"].any() and not c["r"].any()
    assert not dual_representation(zero_rep(zero, 2, "anti_leib_rep"))["l"].any()


def test_kernel_and_quotient(Q):
    k, q = kernel_and_quotient(fixtures.ml4(Q))
    assert k.dim == 0 and q.mul == fixtures.ml4(Q).mul
    k, q = kernel_and_quotient(AlgebraBundle.single(StructureTensor.zeros(Q, 2)))
    assert k.dim == 0
    h = hemisemidirect(adjoint(fixtures.ml4(Q)))
    k, q = kernel_and_quotient(h)
    assert k.dim == 2 and q.dim == 6
    assert check_law(q, "mock_lie").passed


@given(st.integers(0, 10 ** 6))
def test_closure_on_random_algebras(seed):
    rng = np.random.default_rng(seed)
    aa = random_graded(F5, rng, "anti_assoc")
    assert check_law(anticommutator(aa), "mock_lie").passed
    ml = random_graded(F5, rng, "mock_lie")
    assert check_law(hemisemidirect(adjoint(ml)), "anti_leibniz_left").passed
    assert check_representation(dual_representation(adjoint(ml))).passed
    al = random_graded(F5, rng, "anti_leibniz_left")
    assert check_representation(coadjoint(al)).passed
    assert check_law(kernel_and_quotient(al)[1], "mock_lie").passed
    assert check_law(semidirect(adjoint(al, "anti_leib_rep")), "anti_leibniz_left").passed
