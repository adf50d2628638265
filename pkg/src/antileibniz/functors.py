"""Constructions producing new algebras and representations.

Each construction checks the hypothesis it needs and refuses uncertified
input unless ``force=True``; the output can always be re-checked with
:mod:`antileibniz.laws`.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .core import (
    REP_KINDS,
    AlgebraBundle,
    DimensionError,
    RepBundle,
    StructureTensor,
    Subspace,
    default_basis,
    ideal_check,
)
from .fields import is_zero
from .laws import LawReport, check_law, check_representation


class HypothesisError(ValueError):
    """An input failed the law a construction depends on."""

    def __init__(self, message: str, report: LawReport):
        super().__init__(message)
        self.report = report


def require(report: LawReport, what: str, force: bool = False) -> None:
    if not report.passed and not force:
        raise HypothesisError(f"{what} fails {report.law} ({report.violations} violations)", report)


def _require_law(bundle: AlgebraBundle, law: str, force: bool, **kw) -> None:
    if not force:
        require(check_law(bundle, law, **kw), "input algebra")


def _require_rep(rep: RepBundle, force: bool) -> None:
    if not force:
        require(check_representation(rep), "input representation")


def adjoint(bundle: AlgebraBundle, kind: str = "mlie_rep", product: str = "mul") -> RepBundle:
    """The algebra acting on itself by multiplications.

    ``mlie_rep``: pi = L; ``anti_leib_rep``: (l, r) = (L, R); ``anti_assoc_rep``:
    (rho, mu) = (L, R); the action kinds also carry the product itself.
    """
    t = bundle.product(product)
    L, R = t.left_matrices(), t.right_matrices()
    maps = {
        "mlie_rep": {"pi": L},
        "mlie_action": {"pi": L},
        "anti_leib_rep": {"l": L, "r": R},
        "anti_assoc_rep": {"rho": L, "mu": R},
        "anti_assoc_action": {"rho": L, "mu": R},
    }[kind]
    carrier = t if kind.endswith("action") else None
    return RepBundle(bundle, bundle.dim, kind, maps, carrier, bundle.basis)


def zero_rep(bundle: AlgebraBundle, carrier_dim: int, kind: str = "mlie_rep",
             carrier_product: StructureTensor | None = None) -> RepBundle:
    f = bundle.field
    z = f.zeros((bundle.dim, carrier_dim, carrier_dim))
    return RepBundle(bundle, carrier_dim, kind, {n: z for n in REP_KINDS[kind]}, carrier_product)


def anticommutator(bundle: AlgebraBundle, force: bool = False) -> AlgebraBundle:
    """``x o y = x * y + y * x``; anti-associative in, mock-Lie out."""
    _require_law(bundle, "anti_associativity", force)
    return AlgebraBundle(bundle.field, bundle.dim, bundle.basis,
                         {"mul": bundle.mul.symmetrized()}, "mock_lie")


def _dicommutator(left: StructureTensor, right: StructureTensor, swap: bool) -> StructureTensor:
    # default {x, y} = x > y + y < x ; swapped {x, y} = x < y + y > x
    if swap:
        return left + right.opposite()
    return right + left.opposite()


def anti_dicommutator(bundle: AlgebraBundle, swap: bool = False, force: bool = False,
                      strict: bool = False) -> AlgebraBundle:
    """Anti-dicommutator bracket of an anti-associative dialgebra."""
    _require_law(bundle, "dialg_all", force, strict=strict)
    bracket = _dicommutator(bundle.product("left"), bundle.product("right"), swap)
    return AlgebraBundle(bundle.field, bundle.dim, bundle.basis, {"mul": bracket},
                         "anti_leibniz_left")


def trialgebra_collapse(bundle: AlgebraBundle, swap: bool = False, force: bool = False,
                        strict: bool = False) -> AlgebraBundle:
    """Anti-dicommutator bracket plus symmetrized middle product."""
    _require_law(bundle, "trialg_axioms", force, strict=strict)
    bracket = _dicommutator(bundle.product("left"), bundle.product("right"), swap)
    circ = bundle.product("middle").symmetrized()
    return AlgebraBundle(bundle.field, bundle.dim, bundle.basis,
                         {"bracket": bracket, "circ": circ}, "anti_leibniz_trialgebra")


def dicommutator_convention_survey(dialgebras: Iterable[AlgebraBundle]) -> dict[str, int]:
    """Count, per bracket convention, how many dialgebras yield a left anti-Leibniz algebra."""
    counts = {"default": 0, "swap": 0, "total": 0}
    for d in dialgebras:
        counts["total"] += 1
        for key, swap in (("default", False), ("swap", True)):
            out = anti_dicommutator(d, swap=swap, force=True)
            counts[key] += check_law(out, "anti_leibniz_left").passed
    return counts


def _direct_sum_labels(a: Iterable[str], v: Iterable[str]) -> tuple[str, ...]:
    a, v = tuple(a), tuple(v)
    if set(a).isdisjoint(v):
        return a + v
    return a + tuple(f"{x}_V" for x in v)


def _block(field, n, m):
    return field.zeros((n + m, n + m, n + m))


def semidirect(rep: RepBundle, force: bool = False) -> AlgebraBundle:
    """Product on ``A + V`` whose laws are equivalent to the representation axioms."""
    _require_rep(rep, force)
    alg, f = rep.algebra, rep.field
    n, m = alg.dim, rep.carrier_dim
    T = _block(f, n, m)
    V = slice(n, n + m)
    kind = rep.kind
    if kind in ("mlie_rep", "mlie_action"):
        c, first, second, cls = alg.mul.coeffs, rep["pi"], rep["pi"], "mock_lie"
    elif kind == "anti_leib_rep":
        c, first, second, cls = alg.mul.coeffs, rep["l"], rep["r"], "anti_leibniz_left"
    else:
        c, first, second, cls = alg.mul.coeffs, rep["rho"], rep["mu"], "anti_assoc"
    T[:n, :n, :n] = c
    # (x, v) -> first(x) v ; (u, y) -> second(y) u
    T[:n, V, V] = np.einsum("xkv->xvk", first)
    T[V, :n, V] = np.einsum("ykv->vyk", second)
    if rep.carrier_product is not None:
        T[V, V, V] = rep.carrier_product.coeffs
    basis = _direct_sum_labels(alg.basis, rep.carrier_basis)
    return AlgebraBundle(f, n + m, basis, {"mul": StructureTensor(f, T)}, cls)


def _hemisemidirect_bracket(rep: RepBundle) -> np.ndarray:
    alg, f = rep.algebra, rep.field
    n, m = alg.dim, rep.carrier_dim
    T = _block(f, n, m)
    T[:n, :n, :n] = alg.mul.coeffs
    T[:n, n:, n:] = np.einsum("xkv->xvk", rep["pi"])
    return T


def hemisemidirect(rep: RepBundle, force: bool = False) -> AlgebraBundle:
    """``{x + u, y + v} = x o y + pi(x) v`` on ``A + V``."""
    if rep.kind not in ("mlie_rep", "mlie_action"):
        raise ValueError("hemisemidirect product needs a mock-Lie representation")
    _require_law(rep.algebra, "mock_lie", force)
    _require_rep(rep, force)
    f = rep.field
    basis = _direct_sum_labels(rep.algebra.basis, rep.carrier_basis)
    return AlgebraBundle(f, len(basis), basis,
                         {"mul": StructureTensor(f, _hemisemidirect_bracket(rep))},
                         "anti_leibniz_left")


def hemisemidirect_trialgebra(act: RepBundle, force: bool = False) -> AlgebraBundle:
    """Hemisemidirect bracket with the direct-sum circle product on ``A + B``."""
    if act.kind != "mlie_action":
        raise ValueError("hemisemidirect trialgebra needs a mock-Lie action")
    _require_rep(act, force)
    f = act.field
    n, m = act.algebra.dim, act.carrier_dim
    circ = _block(f, n, m)
    circ[:n, :n, :n] = act.algebra.mul.coeffs
    circ[n:, n:, n:] = act.carrier_product.coeffs
    basis = _direct_sum_labels(act.algebra.basis, act.carrier_basis)
    return AlgebraBundle(f, n + m, basis,
                         {"bracket": StructureTensor(f, _hemisemidirect_bracket(act)),
                          "circ": StructureTensor(f, circ)},
                         "anti_leibniz_trialgebra")


def _transposed(P: np.ndarray) -> np.ndarray:
    return np.einsum("iab->iba", P)


def dual_representation(rep: RepBundle, force: bool = False) -> RepBundle:
    """Dual on the coordinate dual basis: ``pi*`` or ``(l*, l* - r*)``."""
    _require_rep(rep, force)
    f = rep.field
    basis = tuple(f"{b}*" for b in rep.carrier_basis)
    if rep.kind == "mlie_rep":
        maps = {"pi": _transposed(rep["pi"])}
    elif rep.kind == "anti_leib_rep":
        lt = _transposed(rep["l"])
        maps = {"l": lt, "r": f.reduce(lt - _transposed(rep["r"]))}
    else:
        raise ValueError(f"no dual representation for {rep.kind}")
    return RepBundle(rep.algebra, rep.carrier_dim, rep.kind, maps, None, basis)


def coadjoint(bundle: AlgebraBundle, force: bool = False) -> RepBundle:
    """``(A*, L*, L* - R*)`` for a left anti-Leibniz algebra."""
    _require_law(bundle, "anti_leibniz_left", force)
    return dual_representation(adjoint(bundle, "anti_leib_rep"), force=True)


def kernel_and_quotient(bundle: AlgebraBundle, force: bool = False) -> tuple[Subspace, AlgebraBundle]:
    """The span of ``{x, y} - {y, x}`` and the quotient by it.

    The quotient lives on the non-pivot coordinates of the echelonized kernel.
    """
    _require_law(bundle, "anti_leibniz_left", force)
    f, n, t = bundle.field, bundle.dim, bundle.mul
    c = t.coeffs
    spanning = [f.reduce(c[i, j] - c[j, i]) for i in range(n) for j in range(i + 1, n)]
    kernel = Subspace(f, n, spanning)
    if not force:
        # the kernel annihilates A from the left, hence is a two-sided ideal
        for u in kernel.basis:
            for j in range(n):
                if not is_zero(t(u, f.basis_vector(n, j))):
                    raise AssertionError("anti-Leibniz kernel does not annihilate the algebra")
        if not ideal_check(t, kernel, "two_sided"):
            raise AssertionError("anti-Leibniz kernel is not an ideal")
    keep = [i for i in range(n) if i not in kernel.pivots]
    if not keep:
        raise DimensionError("quotient by the anti-Leibniz kernel is zero-dimensional")
    q = f.zeros((len(keep),) * 3)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            q[a, b] = kernel.reduce(c[i, j])[keep]
    basis = tuple(f"{bundle.basis[i]}+I" for i in keep) if kernel.dim else bundle.basis
    quotient = AlgebraBundle(f, len(keep), basis, {"mul": StructureTensor(f, q)}, "mock_lie")
    return kernel, quotient


def direct_sum_rep(a: RepBundle, b: RepBundle) -> RepBundle:
    """Block-diagonal sum of two representations of the same algebra."""
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise ValueError("representations of different algebras")
    if a.kind != b.kind:
        raise ValueError("representations of different kinds")
    f, n = a.field, a.algebra.dim
    m = a.carrier_dim + b.carrier_dim
    maps = {}
    for name in a.maps:
        P = f.zeros((n, m, m))
        P[:, :a.carrier_dim, :a.carrier_dim] = a[name]
        P[:, a.carrier_dim:, a.carrier_dim:] = b[name]
        maps[name] = P
    carrier = None
    if a.carrier_product is not None:
        C = f.zeros((m, m, m))
        C[:a.carrier_dim, :a.carrier_dim, :a.carrier_dim] = a.carrier_product.coeffs
        C[a.carrier_dim:, a.carrier_dim:, a.carrier_dim:] = b.carrier_product.coeffs
        carrier = StructureTensor(f, C)
    return RepBundle(a.algebra, m, a.kind, maps, carrier, default_basis(m, "v"))
