"""Embedding tensors, averaging and Nijenhuis operators, and what they induce.

A map ``K: V -> A`` is stored as a :class:`~antileibniz.core.LinearMap` whose
column ``u`` is ``K(e_u)``.  Predicates return :class:`LawReport` objects with
witnesses indexed by carrier (or algebra) basis pairs ``(u, v)``.
"""
from __future__ import annotations

import numpy as np

from .core import (
    AlgebraBundle,
    DimensionError,
    LinearMap,
    RepBundle,
    StructureTensor,
    Subspace,
)
from .fields import is_zero
from .functors import hemisemidirect, require
from .laws import (
    MAX_WITNESSES,
    LawReport,
    Witness,
    check_representation,
    merge,
    scan_residuals,
)

# -- residual builders (raw arrays, optional leading batch axes) --------------


def images_product(K, c):
    """``K(u) * K(v)`` for all carrier basis pairs, as ``[..., u, v, k]``."""
    t = np.einsum("...iu,...ijk->...ujk", K, c)
    return np.einsum("...jv,...ujk->...uvk", K, t)


def apply_map(K, t):
    """``K`` applied to the last axis of ``t``."""
    return np.einsum("...ka,...uva->...uvk", K, t)


def acting_image(K, P):
    """``P(K u) v`` as ``[..., u, v, a]``."""
    return np.einsum("...iu,...iav->...uva", K, P)


def acting_image_swapped(K, P):
    """``P(K v) u`` as ``[..., u, v, a]``."""
    return np.einsum("...iv,...iau->...uva", K, P)


def embedding_residuals(K, c, pi):
    return {"embedding": images_product(K, c) - apply_map(K, acting_image(K, pi))}


def antiassoc_embedding_residuals(K, c, rho, mu):
    kk = images_product(K, c)
    return {
        "embedding_rho": kk - apply_map(K, acting_image(K, rho)),
        "embedding_mu": kk - apply_map(K, acting_image_swapped(K, mu)),
    }


def averaging_residuals(K, c):
    kk = images_product(K, c)
    left = np.einsum("...ix,...iyk->...xyk", K, c)    # K(x) * y
    right = np.einsum("...jy,...xjk->...xyk", K, c)   # x * K(y)
    return {
        "averaging_left": kk - apply_map(K, left),
        "averaging_right": kk - apply_map(K, right),
    }


def nijenhuis_residuals(N, c):
    nn = images_product(N, c)
    t1 = np.einsum("...ax,...ayk->...xyk", N, c)
    t2 = np.einsum("...by,...xbk->...xyk", N, c)
    t3 = apply_map(N, c)
    return {"nijenhuis": nn - apply_map(N, t1 + t2 - t3)}


def morphism_residuals(H, ca, cb):
    """``H(a * b) - H(a) * H(b)``"""
    return {"morphism": apply_map(H, cb) - images_product(H, ca)}


# -- predicates ----------------------------------------------------------------


def _check_shape(K: LinearMap, rows: int, cols: int, what: str) -> None:
    if (K.rows, K.cols) != (rows, cols):
        raise DimensionError(f"{what}: expected a {rows}x{cols} matrix, got {K.rows}x{K.cols}")


def _alg_product(rep: RepBundle) -> np.ndarray:
    return rep.algebra.mul.coeffs


def is_embedding_tensor(K: LinearMap, rep: RepBundle, *,
                        max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """``K(u) o K(v) = K(pi(K u) v)``; for anti-associative reps both equalities
    ``K(u) * K(v) = K(rho(K u) v) = K(mu(K v) u)``."""
    _check_shape(K, rep.algebra.dim, rep.carrier_dim, "embedding tensor")
    c, M = _alg_product(rep), K.matrix
    if rep.kind in ("mlie_rep", "mlie_action"):
        res = embedding_residuals(M, c, rep["pi"])
    elif rep.kind in ("anti_assoc_rep", "anti_assoc_action"):
        res = antiassoc_embedding_residuals(M, c, rep["rho"], rep["mu"])
    else:
        raise ValueError(f"embedding tensors are not defined for {rep.kind}")
    return scan_residuals("embedding_tensor", rep.field, res, max_witnesses)


def is_averaging(K: LinearMap, bundle: AlgebraBundle, *, product: str = "mul",
                 max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """``K(x) K(y) = K(K(x) y) = K(x K(y))``."""
    _check_shape(K, bundle.dim, bundle.dim, "averaging operator")
    res = averaging_residuals(K.matrix, bundle.product(product).coeffs)
    return scan_residuals("averaging", bundle.field, res, max_witnesses)


def is_homomorphic_embedding_tensor(H: LinearMap, act: RepBundle, *,
                                    max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """Embedding tensor for the action and a morphism ``B -> A`` of products.

    Witness identities are ``embedding*`` for the first half and ``morphism``
    for the second.
    """
    if act.carrier_product is None:
        raise ValueError("homomorphic embedding tensors need an action")
    emb = is_embedding_tensor(H, act, max_witnesses=max_witnesses)
    mor = scan_residuals("morphism", act.field,
                         morphism_residuals(H.matrix, _alg_product(act), act.carrier_product.coeffs),
                         max_witnesses)
    return merge("homomorphic_embedding_tensor", emb, mor, max_witnesses=max_witnesses)


def is_nijenhuis(N: LinearMap, bundle: AlgebraBundle, *, product: str = "mul",
                 max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """``N(x) N(y) = N(N(x) y + x N(y) - N(x y))`` on all basis pairs."""
    _check_shape(N, bundle.dim, bundle.dim, "Nijenhuis operator")
    res = nijenhuis_residuals(N.matrix, bundle.product(product).coeffs)
    return scan_residuals("nijenhuis", bundle.field, res, max_witnesses)


def lift_map(K: LinearMap, n: int) -> LinearMap:
    """Block matrix ``x + u -> K(u)`` on ``A + V`` with ``dim A = n``."""
    f = K.field
    m = K.cols
    N = f.zeros((n + m, n + m))
    N[:n, n:] = K.matrix
    return LinearMap(f, N)


def lift_nijenhuis(K: LinearMap, rep: RepBundle, force: bool = False) -> tuple[AlgebraBundle, LinearMap]:
    """The hemisemidirect product and the lifted operator ``N_K``."""
    _check_shape(K, rep.algebra.dim, rep.carrier_dim, "lift")
    return hemisemidirect(rep, force=force), lift_map(K, rep.algebra.dim)


def graph(K: LinearMap) -> Subspace:
    """``{K u + u}`` inside ``A + V``."""
    f = K.field
    vecs = [np.concatenate([K.matrix[:, u], f.basis_vector(K.cols, u)]) for u in range(K.cols)]
    return Subspace(f, K.rows + K.cols, vecs)


def graph_subalgebra_check(K: LinearMap, rep: RepBundle, force: bool = False, *,
                           max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """Is the graph of ``K`` closed under the hemisemidirect bracket?

    Every pair of echelon basis vectors of the graph is bracketed and reduced
    modulo the graph; witnesses carry the off-graph residual.
    """
    _check_shape(K, rep.algebra.dim, rep.carrier_dim, "graph")
    t = hemisemidirect(rep, force=force).mul
    sub = graph(K)
    found = []
    for i, u in enumerate(sub.basis):
        for j, v in enumerate(sub.basis):
            res = sub.reduce(t(u, v))
            if not is_zero(res):
                found.append(Witness((i, j), tuple(res), "graph_closure"))
    return LawReport("graph_subalgebra", tuple(found[:max_witnesses]), sub.dim ** 2, len(found))


def is_crossed_module(A: AlgebraBundle, act: RepBundle, partial: LinearMap, *,
                      max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """Equivariance ``d(pi(x) a) = x o d(a)``, ``pi(d a) b = a o b`` and ``d`` a morphism.

    A passing crossed module is also checked to be a homomorphic embedding
    tensor; a disagreement raises ``AssertionError``.
    """
    if act.kind != "mlie_action":
        raise ValueError("crossed modules need a mock-Lie action")
    if A.dim != act.algebra.dim or A.mul != act.algebra.mul:
        raise ValueError("the action does not belong to this algebra")
    _check_shape(partial, A.dim, act.carrier_dim, "crossed module")
    f = A.field
    D, c, P, cb = partial.matrix, A.mul.coeffs, act["pi"], act.carrier_product.coeffs
    # [x, a, k]: d(pi(x) a) - x o d(a)
    equivariance = (np.einsum("ka,xab->xbk", D, P)
                    - np.einsum("jb,xjk->xbk", D, c))
    # [a, b, k]: pi(d a) b - a o b
    peiffer = acting_image(D, P) - cb
    res = {"equivariance": equivariance, "peiffer": peiffer,
           **morphism_residuals(D, c, cb)}
    report = scan_residuals("crossed_module", f, res, max_witnesses)
    if report.passed and not is_homomorphic_embedding_tensor(partial, act).passed:
        raise AssertionError("crossed module whose boundary is not a homomorphic embedding tensor")
    return report


# -- induced structures --------------------------------------------------------


def _require_embedding(K: LinearMap, rep: RepBundle, force: bool, homomorphic: bool = False) -> None:
    if force:
        return
    if homomorphic:
        require(is_homomorphic_embedding_tensor(K, rep), "map")
    else:
        require(check_representation(rep), "representation")
        require(is_embedding_tensor(K, rep), "map")


def _carrier_bundle(rep: RepBundle, products: dict, cls: str) -> AlgebraBundle:
    f = rep.field
    return AlgebraBundle(f, rep.carrier_dim, rep.carrier_basis,
                         {k: StructureTensor(f, f.reduce(v)) for k, v in products.items()}, cls)


def _bracket_from(K, P):
    # {u, v} = P(K u) v
    return acting_image(K, P)


def induced_bracket(K: LinearMap, rep: RepBundle, force: bool = False) -> AlgebraBundle:
    """Left anti-Leibniz bracket ``{u, v}_K = pi(K u) v`` on the carrier."""
    if rep.kind not in ("mlie_rep", "mlie_action"):
        raise ValueError("induced bracket needs a mock-Lie representation")
    _require_embedding(K, rep, force)
    return _carrier_bundle(rep, {"mul": _bracket_from(K.matrix, rep["pi"])}, "anti_leibniz_left")


def induced_rep_piLR(K: LinearMap, rep: RepBundle, force: bool = False) -> RepBundle:
    """``(A; pi^L, pi^R)`` as a representation of the induced anti-Leibniz algebra.

    ``pi^L(u) y = K u o y`` and ``pi^R(v) x = x o K v + K(pi(x) v)``.
    """
    bracket = induced_bracket(K, rep, force)
    f = rep.field
    M, c, P = K.matrix, _alg_product(rep), rep["pi"]
    pl = np.einsum("iu,iyk->uky", M, c)
    pr = np.einsum("jv,xjk->vkx", M, c) + np.einsum("ka,xav->vkx", M, P)
    return RepBundle(bracket, rep.algebra.dim, "anti_leib_rep",
                     {"l": f.reduce(pl), "r": f.reduce(pr)}, None, rep.algebra.basis)


def _dialgebra_products(M, rho, mu) -> dict:
    # u > v = rho(K u) v ; u < v = mu(K v) u
    return {"right": acting_image(M, rho), "left": acting_image_swapped(M, mu)}


def induced_dialgebra(K: LinearMap, rep: RepBundle, force: bool = False) -> AlgebraBundle:
    """Anti-associative dialgebra on the carrier of an anti-associative representation."""
    if rep.kind not in ("anti_assoc_rep", "anti_assoc_action"):
        raise ValueError("induced dialgebra needs an anti-associative representation")
    _require_embedding(K, rep, force)
    return _carrier_bundle(rep, _dialgebra_products(K.matrix, rep["rho"], rep["mu"]),
                           "anti_assoc_dialgebra")


def induced_trialgebra(H: LinearMap, act: RepBundle, force: bool = False) -> AlgebraBundle:
    """Anti-Leibniz trialgebra ``({a, b}_H = pi(H a) b, o_B)`` on the carrier."""
    if act.kind != "mlie_action":
        raise ValueError("induced trialgebra needs a mock-Lie action")
    _require_embedding(H, act, force, homomorphic=True)
    return _carrier_bundle(act, {"bracket": _bracket_from(H.matrix, act["pi"]),
                                 "circ": act.carrier_product.coeffs},
                           "anti_leibniz_trialgebra")


def induced_antiassoc_trialgebra(H: LinearMap, act: RepBundle, force: bool = False) -> AlgebraBundle:
    """Anti-associative trialgebra ``(<_H, >_H, *_B)`` on the carrier."""
    if act.kind != "anti_assoc_action":
        raise ValueError("induced anti-associative trialgebra needs an anti-associative action")
    _require_embedding(H, act, force, homomorphic=True)
    products = _dialgebra_products(H.matrix, act["rho"], act["mu"])
    products["middle"] = act.carrier_product.coeffs
    return _carrier_bundle(act, products, "anti_assoc_trialgebra")


def rep_sum(rep: RepBundle, force: bool = False) -> RepBundle:
    """``pi = rho + mu`` over the anticommutator algebra (and carrier, for actions)."""
    if rep.kind not in ("anti_assoc_rep", "anti_assoc_action"):
        raise ValueError("rep_sum needs an anti-associative representation or action")
    if not force:
        require(check_representation(rep), "representation")
    f = rep.field
    alg = rep.algebra
    mock = AlgebraBundle(f, alg.dim, alg.basis, {"mul": alg.mul.symmetrized()}, "mock_lie")
    pi = f.reduce(rep["rho"] + rep["mu"])
    if rep.kind == "anti_assoc_rep":
        return RepBundle(mock, rep.carrier_dim, "mlie_rep", {"pi": pi}, None, rep.carrier_basis)
    return RepBundle(mock, rep.carrier_dim, "mlie_action", {"pi": pi},
                     rep.carrier_product.symmetrized(), rep.carrier_basis)

