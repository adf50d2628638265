"""Zero-residual checkers for the defining identities and representation axioms.

Every identity is written as ``residual(x, y, z) = 0`` and evaluated on all
basis triples at once through ``einsum`` on the structure constants.  The
residual builders work on raw arrays with optional leading batch axes, so the
same formulas drive both single checks (object arrays of exact scalars) and
the vectorized finite-field scans in :mod:`antileibniz.scan`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .core import ACTION_KINDS, AlgebraBundle, DimensionError, RepBundle
from .fields import FieldSpec

MAX_WITNESSES = 16

LAWS = (
    "commutativity",
    "jacobi",
    "mock_lie",
    "anti_associativity",
    "anti_leibniz_left",
    "anti_leibniz_right",
    "anti_leibniz_symmetric",
    "dialg_left_antiassoc",
    "dialg_right_antiassoc",
    "dialg_inner_antiassoc",
    "dialg_all",
    "trialg_axioms",
    "anti_leib_trialg_compat_1",
    "anti_leib_trialg_compat_2",
    "anti_leib_trialg_full",
    "right_trileib_compat",
)

# Claimed algebra class -> the law that confirms it.
CLASS_LAW = {
    "mock_lie": "mock_lie",
    "anti_assoc": "anti_associativity",
    "anti_leibniz_left": "anti_leibniz_left",
    "anti_leibniz_right": "anti_leibniz_right",
    "anti_assoc_dialgebra": "dialg_all",
    "anti_assoc_trialgebra": "trialg_axioms",
    "anti_leibniz_trialgebra": "anti_leib_trialg_full",
}


@dataclass(frozen=True)
class Witness:
    indices: tuple[int, ...]
    residual: tuple
    identity: str


@dataclass(frozen=True)
class LawReport:
    law: str
    witnesses: tuple[Witness, ...]
    triples_checked: int
    violations: int = 0

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self) -> bool:
        return self.passed

    def failed_identities(self) -> set[str]:
        return {w.identity for w in self.witnesses}

    def to_dict(self, field: FieldSpec) -> dict:
        """Serializable form; witness indices are 1-based like basis labels."""
        return {
            "law": self.law,
            "status": self.status,
            "triples_checked": self.triples_checked,
            "violations": self.violations,
            "witnesses": [
                {
                    "indices": [i + 1 for i in w.indices],
                    "identity": w.identity,
                    "residual": [field.format(v) for v in w.residual],
                }
                for w in self.witnesses
            ],
        }


def scan_residuals(law: str, field: FieldSpec, residuals: Mapping[str, np.ndarray],
                   max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """Collect every index tuple whose residual vector (last axis) is nonzero."""
    found = []
    checked = 0
    for name, res in residuals.items():
        res = field.reduce(res)
        checked += int(np.prod(res.shape[:-1]))
        bad = np.count_nonzero(res, axis=-1) if res.size else np.zeros(res.shape[:-1])
        for idx in zip(*np.nonzero(bad)):
            idx = tuple(int(i) for i in idx)
            found.append(Witness(idx, tuple(res[idx]), name))
    found.sort(key=lambda w: (w.indices, w.identity))
    return LawReport(law, tuple(found[:max_witnesses]), checked, len(found))


def merge(law: str, *reports: LawReport, max_witnesses: int = MAX_WITNESSES) -> LawReport:
    ws = sorted((w for r in reports for w in r.witnesses), key=lambda w: (w.indices, w.identity))
    return LawReport(law, tuple(ws[:max_witnesses]), sum(r.triples_checked for r in reports),
                     sum(r.violations for r in reports))


# -- residual builders on raw structure-constant arrays ----------------------
# T[..., x, y, z, k] is the k-th coordinate of an expression in basis (x, y, z).

def outer_inner(outer, inner):
    """``outer(x, inner(y, z))``"""
    return np.einsum("...yzm,...xmk->...xyzk", inner, outer)


def inner_outer(outer, inner):
    """``outer(inner(x, y), z)``"""
    return np.einsum("...xym,...mzk->...xyzk", inner, outer)


def at(t, args: str):
    """Re-evaluate a trilinear expression at permuted arguments, e.g. ``"yxz"``."""
    return np.einsum(f"...{args}k->...xyzk", t)


def commutativity(c):
    return {"commutativity": c - np.einsum("...ijk->...jik", c)}


def jacobi(c):
    t = outer_inner(c, c)
    return {"jacobi": t + at(t, "yzx") + at(t, "zxy")}


def anti_associativity(c):
    return {"anti_associativity": inner_outer(c, c) + outer_inner(c, c)}


def anti_leibniz_left(b):
    t = outer_inner(b, b)
    return {"anti_leibniz_left": t + inner_outer(b, b) + at(t, "yxz")}


def anti_leibniz_right(b):
    t = inner_outer(b, b)
    return {"anti_leibniz_right": t + at(t, "xzy") + outer_inner(b, b)}


def dialgebra(left, right, strict: bool = False):
    """Anti-associators of a dialgebra; ``left`` is x<y, ``right`` is x>y."""
    res = {
        "left_antiassociator": inner_outer(left, left) + outer_inner(left, left),
        "right_antiassociator": inner_outer(right, right) + outer_inner(right, right),
        "inner_antiassociator": inner_outer(left, right) + outer_inner(right, left),
    }
    if strict:
        # x<(y>z) = x<(y<z) and (x>y)>z = (x<y)>z
        res["left_bar"] = outer_inner(left, right) - outer_inner(left, left)
        res["right_bar"] = inner_outer(right, right) - inner_outer(right, left)
    return res


def trialgebra_mixed(left, right, middle):
    """The five mixed vanishing conditions linking x<y, x>y and the middle product."""
    return {
        "mixed_1": inner_outer(left, left) + outer_inner(left, middle),
        "mixed_2": inner_outer(left, middle) + outer_inner(middle, left),
        "mixed_3": inner_outer(middle, left) + outer_inner(middle, right),
        "mixed_4": inner_outer(middle, right) + outer_inner(right, middle),
        "mixed_5": inner_outer(right, middle) + outer_inner(right, right),
    }


def trileib_compat_1(bracket, circ):
    """``{x, y o z} + y o {x, z} + z o {x, y}``"""
    t = outer_inner(circ, bracket)
    return {"compat_1": outer_inner(bracket, circ) + at(t, "yxz") + at(t, "zxy")}


def trileib_compat_2(bracket, circ):
    """``{x o y, z} - {{x, y}, z}``"""
    return {"compat_2": inner_outer(bracket, circ) - inner_outer(bracket, bracket)}


def right_trileib_compat(bracket, circ):
    t = outer_inner(circ, bracket)
    return {
        "right_compat_1": at(inner_outer(bracket, circ), "yzx") + at(t, "yzx") + at(t, "zyx"),
        "right_compat_2": at(outer_inner(bracket, circ) - outer_inner(bracket, bracket), "zxy"),
    }


def _single(fn):
    return lambda p, strict=False: fn(p["mul"])


IDENTITIES: dict[str, Callable] = {
    "commutativity": _single(commutativity),
    "jacobi": _single(jacobi),
    "mock_lie": lambda p, strict=False: {**commutativity(p["mul"]), **jacobi(p["mul"])},
    "anti_associativity": _single(anti_associativity),
    "anti_leibniz_left": _single(anti_leibniz_left),
    "anti_leibniz_right": _single(anti_leibniz_right),
    "anti_leibniz_symmetric": lambda p, strict=False: {
        **anti_leibniz_left(p["mul"]), **anti_leibniz_right(p["mul"])},
    "dialg_left_antiassoc": lambda p, strict=False: {
        "left_antiassociator": dialgebra(p["left"], p["right"])["left_antiassociator"]},
    "dialg_right_antiassoc": lambda p, strict=False: {
        "right_antiassociator": dialgebra(p["left"], p["right"])["right_antiassociator"]},
    "dialg_inner_antiassoc": lambda p, strict=False: {
        "inner_antiassociator": dialgebra(p["left"], p["right"])["inner_antiassociator"]},
    "dialg_all": lambda p, strict=False: dialgebra(p["left"], p["right"], strict),
    "trialg_axioms": lambda p, strict=False: {
        **dialgebra(p["left"], p["right"], strict),
        "middle_anti_associativity": anti_associativity(p["middle"])["anti_associativity"],
        **trialgebra_mixed(p["left"], p["right"], p["middle"]),
    },
    "anti_leib_trialg_compat_1": lambda p, strict=False: trileib_compat_1(p["bracket"], p["circ"]),
    "anti_leib_trialg_compat_2": lambda p, strict=False: trileib_compat_2(p["bracket"], p["circ"]),
    "anti_leib_trialg_full": lambda p, strict=False: {
        "circ_commutativity": commutativity(p["circ"])["commutativity"],
        "circ_jacobi": jacobi(p["circ"])["jacobi"],
        **anti_leibniz_left(p["bracket"]),
        **trileib_compat_1(p["bracket"], p["circ"]),
        **trileib_compat_2(p["bracket"], p["circ"]),
    },
    "right_trileib_compat": lambda p, strict=False: right_trileib_compat(p["bracket"], p["circ"]),
}

_ROLES = {
    "dialg": ("left", "right"),
    "trialg_axioms": ("left", "right", "middle"),
    "anti_leib_trialg": ("bracket", "circ"),
    "right_trileib_compat": ("bracket", "circ"),
}


def _roles(law: str) -> tuple[str, ...]:
    for prefix, roles in _ROLES.items():
        if law.startswith(prefix):
            return roles
    return ("mul",)


def _default_single_product(bundle: AlgebraBundle, law: str) -> str:
    if "mul" in bundle.products:
        return "mul"
    if "bracket" in bundle.products:
        return "circ" if law in ("commutativity", "jacobi", "mock_lie") else "bracket"
    if "middle" in bundle.products and law == "anti_associativity":
        return "middle"
    raise KeyError(f"{law} needs a single product; bundle has {sorted(bundle.products)}")


def check_law(bundle: AlgebraBundle, law: str, *, product: str | None = None,
              strict: bool = False, max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """Evaluate every identity of ``law`` on all basis triples of ``bundle``.

    Single-product laws use ``mul`` by default (or the matching product of a
    trialgebra bundle); ``product`` picks another.  ``strict`` additionally
    imposes the two bar identities on dialgebra and trialgebra laws.
    """
    if law not in IDENTITIES:
        raise ValueError(f"unknown law {law!r}")
    roles = _roles(law)
    if roles == ("mul",):
        name = product or _default_single_product(bundle, law)
        arrays = {"mul": bundle.product(name).coeffs}
    else:
        arrays = {r: bundle.product(r).coeffs for r in roles}
    return scan_residuals(law, bundle.field, IDENTITIES[law](arrays, strict), max_witnesses)


def certify(bundle: AlgebraBundle, **kw) -> LawReport:
    """Check the law that the bundle's claimed class asserts."""
    if bundle.claimed_class == "raw":
        return LawReport("raw", (), 0)
    return check_law(bundle, CLASS_LAW[bundle.claimed_class], **kw)


def holds(bundle: AlgebraBundle, law: str, **kw) -> bool:
    return check_law(bundle, law, **kw).passed


def law_residual_direct(bundle: AlgebraBundle, law: str, x, y, z) -> dict[str, np.ndarray]:
    """Residual of each identity at arbitrary vectors, by nested product evaluation.

    This is the per-vector route, independent of the basis-triple tensors;
    implemented for the single-product identities.
    """
    t = bundle.product(_default_single_product(bundle, law))
    f = bundle.field
    p = t

    def add(*vs):
        out = vs[0]
        for v in vs[1:]:
            out = out + v
        return f.reduce(out)

    if law == "jacobi":
        return {"jacobi": add(p(x, p(y, z)), p(y, p(z, x)), p(z, p(x, y)))}
    if law == "anti_associativity":
        return {"anti_associativity": add(p(p(x, y), z), p(x, p(y, z)))}
    if law == "anti_leibniz_left":
        return {"anti_leibniz_left": add(p(x, p(y, z)), p(p(x, y), z), p(y, p(x, z)))}
    if law == "anti_leibniz_right":
        return {"anti_leibniz_right": add(p(p(x, y), z), p(p(x, z), y), p(x, p(y, z)))}
    raise ValueError(f"no direct evaluation for {law!r}")


# -- representations ---------------------------------------------------------
# R[..., x, y, a, b] is entry (a, b) of a matrix-valued expression in (x, y).

def rep_of_product(P, c):
    """``P(x * y)``"""
    return np.einsum("...xyk,...kab->...xyab", c, P)


def compose(P1, P2):
    """``P1(x) P2(y)``"""
    return np.einsum("...xab,...ybc->...xyac", P1, P2)


def swap_xy(M):
    return np.einsum("...yxab->...xyab", M)


def mlie_rep_residuals(c, pi):
    pp = compose(pi, pi)
    return {"pi_of_product": rep_of_product(pi, c) + pp + swap_xy(pp)}


def anti_leib_rep_residuals(b, l, r, cross_check: bool = True):
    ll = compose(l, l)
    res = {
        "l_of_bracket": rep_of_product(l, b) + ll + swap_xy(ll),
        "r_of_bracket": rep_of_product(r, b) + compose(l, r) + swap_xy(compose(r, l)),
        "r_absorbs_l": swap_xy(compose(r, l) - compose(r, r)),
    }
    if cross_check:
        res["r_of_bracket_via_r"] = rep_of_product(r, b) + compose(l, r) + swap_xy(compose(r, r))
    return res


def anti_assoc_rep_residuals(c, rho, mu):
    return {
        "rho_rho": compose(rho, rho) + rep_of_product(rho, c),
        "mu_mu": swap_xy(compose(mu, mu)) + rep_of_product(mu, c),
        "mu_rho": compose(mu, rho) + swap_xy(compose(rho, mu)),
    }


def mlie_action_residuals(pi, cb):
    """``pi(x)(a o b) + a o pi(x)b + b o pi(x)a`` on triples (x, a, b)."""
    t2 = np.einsum("...xmb,...amk->...xabk", pi, cb)
    return {"pi_antiderivation": np.einsum("...abm,...xkm->...xabk", cb, pi) + t2
            + np.einsum("...xbak->...xabk", t2)}


def anti_assoc_action_residuals(rho, mu, cb):
    def act_product(P):   # P(x)(a * b)
        return np.einsum("...abm,...xkm->...xabk", cb, P)

    def act_left(P):      # (P(x)a) * b
        return np.einsum("...xma,...mbk->...xabk", P, cb)

    def act_right(P):     # a * (P(x)b)
        return np.einsum("...xmb,...amk->...xabk", P, cb)

    return {
        "rho_on_product": act_product(rho) + act_left(rho),
        "mu_on_product": act_product(mu) + act_right(mu),
        "mu_rho_balance": act_left(mu) + act_right(rho),
    }


def _matrix_columns(res: Mapping[str, np.ndarray]) -> dict[str, np.ndarray]:
    # Witness (x, y, b) carries column b of the residual matrix.
    return {k: np.einsum("...xyab->...xyba", v) for k, v in res.items()}


def _prefixed(prefix: str, res: Mapping[str, np.ndarray]) -> dict[str, np.ndarray]:
    return {f"{prefix}{k}": v for k, v in res.items()}


def representation_residuals(rep: RepBundle) -> dict[str, np.ndarray]:
    """All axiom residuals of ``rep``, witness-ready (last axis = a coordinate vector)."""
    alg = rep.algebra
    kind = rep.kind
    law = "anti_leibniz_left" if kind == "anti_leib_rep" else (
        "anti_associativity" if kind.startswith("anti_assoc") else "mock_lie")
    c = alg.product(_default_single_product(alg, law)).coeffs
    if kind in ("mlie_rep", "mlie_action"):
        res = _matrix_columns(mlie_rep_residuals(c, rep["pi"]))
    elif kind == "anti_leib_rep":
        res = _matrix_columns(anti_leib_rep_residuals(c, rep["l"], rep["r"]))
    elif kind in ("anti_assoc_rep", "anti_assoc_action"):
        res = _matrix_columns(anti_assoc_rep_residuals(c, rep["rho"], rep["mu"]))
    else:
        raise ValueError(f"unknown representation kind {kind!r}")
    if kind == "mlie_action":
        cb = rep.carrier_product.coeffs
        res.update(_prefixed("carrier_", {**commutativity(cb), **jacobi(cb)}))
        res.update(mlie_action_residuals(rep["pi"], cb))
    elif kind == "anti_assoc_action":
        cb = rep.carrier_product.coeffs
        res.update(_prefixed("carrier_", anti_associativity(cb)))
        res.update(anti_assoc_action_residuals(rep["rho"], rep["mu"], cb))
    return res


def check_representation(rep: RepBundle, *, max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """Verify the axiom system of ``rep.kind`` on all basis pairs and carrier vectors."""
    if rep.kind in ACTION_KINDS and rep.carrier_product is None:
        raise DimensionError("action without a carrier product")
    return scan_residuals(rep.kind, rep.field, representation_residuals(rep), max_witnesses)
