import numpy as np
import pytest
from hypothesis import given, strategies as st

from antileibniz import fixtures
from antileibniz.core import LinearMap, StructureTensor
from antileibniz.fields import FieldSpec
from antileibniz.functors import adjoint, anticommutator, trialgebra_collapse, zero_rep
from antileibniz.generators import random_graded, random_rep, sample_embedding_tensors
from antileibniz.laws import check_law, check_representation
from antileibniz.operators import (
    graph_subalgebra_check, induced_antiassoc_trialgebra, induced_bracket, induced_dialgebra,
    induced_rep_piLR, induced_trialgebra, is_averaging, is_crossed_module, is_embedding_tensor,
    is_homomorphic_embedding_tensor, is_nijenhuis, lift_nijenhuis, rep_sum,
)
import oracles

F5 = FieldSpec(5)


def table(t):
    n = t.dim
    return {(i + 1, j + 1): {k + 1: t.coeffs[i, j, k] for k in range(n) if t.coeffs[i, j, k]}
            for i in range(n) for j in range(n) if t.coeffs[i, j].any()}


@pytest.fixture
def ad4(Q):
    return adjoint(fixtures.ml4(Q))


@pytest.fixture
def act3(Q):
    return adjoint(fixtures.square3(Q), "mlie_action")


def test_embedding_tensor_examples(Q, ad4):
    assert is_embedding_tensor(fixtures.averaging_K(Q), ad4).passed
    assert is_embedding_tensor(LinearMap.zeros(Q, 4, 4), ad4).passed
    assert is_embedding_tensor(fixtures.derivation_d(Q), adjoint(fixtures.ml3(Q))).passed
    assert not is_embedding_tensor(fixtures.broken_K(Q), ad4).passed


def test_embedding_tensor_anti_assoc_reports_which_equality(Q):
    rep = adjoint(fixtures.square3(Q, "anti_assoc"), "anti_assoc_rep")
    assert is_embedding_tensor(LinearMap.identity(Q, 3), rep).passed
    # K(e2) = e1 only: K(u) * K(v) vanishes, K(rho(Ku)v) does not
    bad = LinearMap.from_images(Q, 3, {1: {0: 1}}, 3)
    r = is_embedding_tensor(bad, rep)
    assert not r.passed and len(r.failed_identities()) >= 1


def test_embedding_shape_mismatch(Q, ad4):
    from antileibniz.core import DimensionError
    with pytest.raises(DimensionError):
        is_embedding_tensor(LinearMap.zeros(Q, 3, 4), ad4)


def test_averaging_examples(Q):
    assert is_averaging(fixtures.averaging_K(Q), fixtures.ml4(Q)).passed
    assert is_averaging(LinearMap.identity(Q, 3), fixtures.ml3(Q)).passed
    sq = fixtures.square3(Q)
    K = LinearMap.from_images(Q, 3, {0: {0: 1}}, 3)
    r = is_averaging(K, sq)
    assert not r.passed
    assert r.witnesses[0].indices == (0, 0)


def test_homomorphic_embedding_tensor(Q, act3):
    assert is_homomorphic_embedding_tensor(fixtures.homomorphic_H(Q), act3).passed
    assert is_homomorphic_embedding_tensor(LinearMap.zeros(Q, 3, 3), act3).passed
    r = is_homomorphic_embedding_tensor(fixtures.broken_H(Q), act3)
    assert not r.passed
    assert "morphism" in r.failed_identities()


def test_morphism_only_failure_exists(Q, act3):
    # H(e2) = e3: both sides of the embedding equality vanish, H(e1 o e1) = e3 does not
    H = LinearMap.from_images(Q, 3, {1: {2: 1}}, 3)
    r = is_homomorphic_embedding_tensor(H, act3)
    assert is_embedding_tensor(H, act3).passed
    assert r.failed_identities() == {"morphism"}


def test_nijenhuis_examples(Q, ad4):
    for alg in (fixtures.ml4(Q), fixtures.nilpotent3(Q), fixtures.idempotent1(Q)):
        assert is_nijenhuis(LinearMap.identity(Q, alg.dim), alg).passed
        assert is_nijenhuis(LinearMap.zeros(Q, alg.dim, alg.dim), alg).passed
    h, N = lift_nijenhuis(fixtures.averaging_K(Q), ad4)
    assert h.dim == 8 and is_nijenhuis(N, h).passed
    assert (N.matrix[:4, 4:] == fixtures.averaging_K(Q).matrix).all()
    assert not N.matrix[:, :4].any() and not N.matrix[4:].any()
    h, N = lift_nijenhuis(LinearMap.zeros(Q, 4, 4), ad4)
    assert not N.matrix.any()
    h, N = lift_nijenhuis(fixtures.broken_K(Q), ad4)
    assert not is_nijenhuis(N, h).passed


def test_graph_examples(Q, ad4):
    assert graph_subalgebra_check(fixtures.averaging_K(Q), ad4).passed
    assert graph_subalgebra_check(LinearMap.zeros(Q, 4, 4), ad4).passed
    assert not graph_subalgebra_check(fixtures.broken_K(Q), ad4).passed


def test_induced_bracket(Q, ad4):
    b = induced_bracket(fixtures.averaging_K(Q), ad4)
    assert table(b.mul) == {(1, 1): {2: 1}, (1, 3): {4: 1}, (3, 1): {2: 1}, (3, 3): {4: 1}}
    assert check_law(b, "anti_leibniz_left").passed
    assert induced_bracket(LinearMap.zeros(Q, 4, 4), ad4).mul.is_zero()
    d = induced_bracket(fixtures.derivation_d(Q), adjoint(fixtures.ml3(Q)))
    assert check_law(d, "anti_leibniz_left").passed
    # d(x) lies in span(e2), which annihilates everything
    assert d.mul.is_zero()
    with pytest.raises(Exception):
        induced_bracket(fixtures.broken_K(Q), ad4)


def test_induced_rep(Q, ad4):
    assert check_representation(induced_rep_piLR(fixtures.averaging_K(Q), ad4)).passed
    z = induced_rep_piLR(LinearMap.zeros(Q, 4, 4), ad4)
    assert not z["l"].any() and not z["r"].any()
    assert check_representation(induced_rep_piLR(fixtures.derivation_d(Q), adjoint(fixtures.ml3(Q)))).passed


def test_induced_dialgebra(Q):
    a = fixtures.square3(Q, "anti_assoc")
    rep = adjoint(a, "anti_assoc_rep")
    d = induced_dialgebra(LinearMap.identity(Q, 3), rep)
    assert d.product("left") == a.mul and d.product("right") == a.mul
    z = induced_dialgebra(LinearMap.zeros(Q, 3, 3), rep)
    assert z.product("left").is_zero() and z.product("right").is_zero()
    assert check_law(d, "dialg_all", strict=True).passed


def test_induced_trialgebra(Q, act3):
    t = induced_trialgebra(fixtures.homomorphic_H(Q), act3)
    assert table(t.product("bracket"))[(1, 1)] == {2: 1}
    assert table(t.product("circ")) == {(1, 1): {2: 1}}
    assert check_law(t, "anti_leib_trialg_full").passed
    z = induced_trialgebra(LinearMap.zeros(Q, 3, 3), act3)
    assert z.product("bracket").is_zero() and check_law(z, "anti_leib_trialg_full").passed
    i = induced_trialgebra(LinearMap.identity(Q, 4), adjoint(fixtures.ml4(Q), "mlie_action"))
    assert i.product("bracket") == i.product("circ")


def test_induced_antiassoc_trialgebra_and_commuting_square(Q):
    a = fixtures.square3(Q, "anti_assoc")
    act = adjoint(a, "anti_assoc_action")
    t = induced_antiassoc_trialgebra(LinearMap.identity(Q, 3), act)
    assert all(t.product(k) == a.mul for k in ("left", "right", "middle"))
    z = induced_antiassoc_trialgebra(LinearMap.zeros(Q, 3, 3), act)
    assert z.product("middle") == a.mul and z.product("left").is_zero()
    assert check_law(z, "trialg_axioms").passed
    for H in (LinearMap.identity(Q, 3), LinearMap.zeros(Q, 3, 3)):
        collapsed = trialgebra_collapse(induced_antiassoc_trialgebra(H, act))
        direct = induced_trialgebra(H, rep_sum(act))
        assert collapsed.product("bracket") == direct.product("bracket")
        assert collapsed.product("circ") == direct.product("circ")


def test_rep_sum(Q):
    a = fixtures.square3(Q, "anti_assoc")
    s = rep_sum(adjoint(a, "anti_assoc_rep"))
    assert list(s["pi"][0][:, 0]) == [0, 2, 0]
    assert s.algebra.mul == anticommutator(a).mul
    assert check_representation(s).passed
    zero = rep_sum(zero_rep(a, 2, "anti_assoc_rep"))
    assert not zero["pi"].any()
    assert check_representation(rep_sum(adjoint(a, "anti_assoc_action"))).passed


def test_crossed_modules(Q, act3):
    assert is_crossed_module(act3.algebra, act3, LinearMap.identity(Q, 3)).passed
    zero_b = zero_rep(fixtures.ml3(Q), 2, "mlie_action", StructureTensor.zeros(Q, 2))
    assert is_crossed_module(zero_b.algebra, zero_b, LinearMap.zeros(Q, 3, 2)).passed
    ml3 = fixtures.ml3(Q)
    r = is_crossed_module(ml3, adjoint(ml3, "mlie_action"), fixtures.derivation_d(Q))
    assert not r.passed
    assert any(w.indices[:2] == (0, 0) and w.identity == "peiffer" for w in r.witnesses)


def test_operators_match_oracle(Q, ad4):
    c = fixtures.ml4(Q).mul.coeffs.tolist()
    pi = ad4["pi"].tolist()
    for K in (fixtures.averaging_K(Q), fixtures.broken_K(Q), LinearMap.identity(Q, 4)):
        assert oracles.embedding_ok(K.matrix.tolist(), c, pi, None) == is_embedding_tensor(K, ad4).passed


@given(st.integers(0, 10 ** 6))
def test_equivalences_on_random_instances(seed):
    rng = np.random.default_rng(seed)
    ml = random_graded(F5, rng, "mock_lie")
    rep = random_rep(ml, "mlie_rep", rng)
    cands = sample_embedding_tensors(rep, rng, 2, max_rounds=2)
    cands.append(LinearMap(F5, F5.random(rng, (ml.dim, rep.carrier_dim))))
    for K in cands:
        emb = is_embedding_tensor(K, rep).passed
        h, N = lift_nijenhuis(K, rep)
        assert emb == is_nijenhuis(N, h).passed == graph_subalgebra_check(K, rep).passed
        if emb:
            assert check_law(induced_bracket(K, rep), "anti_leibniz_left").passed
            assert check_representation(induced_rep_piLR(K, rep)).passed
