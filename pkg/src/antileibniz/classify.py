"""Low-dimensional anti-Leibniz algebras.

Dimension 1 is settled by a single polynomial constraint.  Dimension 2 is
handled by exact checks of the parameterized table plus exhaustive search
over a small prime field, reduced to isomorphism classes by brute force over
``GL_2(F_p)``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
import sympy

from .core import AlgebraBundle, DimensionError, StructureTensor
from .fields import FieldError, FieldSpec
from .functors import kernel_and_quotient
from .laws import IDENTITIES, check_law
from .scan import canonical_codes, digits, encode, general_linear, inverse_mod, scan_tensors

SEARCH_BOUND = 10 ** 8

UNMATCHED = "unmatched"


class SearchSpaceError(ValueError):
    """The requested exhaustive search is larger than the configured bound."""


# -- dimension 1 ----------------------------------------------------------------


@dataclass(frozen=True)
class Dim1Report:
    field: FieldSpec
    constraint: str
    solutions: tuple
    candidates_checked: int | None

    def to_dict(self) -> dict:
        return {
            "field": str(self.field),
            "constraint": self.constraint,
            "solutions": [self.field.format(s) for s in self.solutions],
            "candidates_checked": self.candidates_checked,
        }


_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _format_monomials(expr: sympy.Expr, var: sympy.Symbol) -> str:
    terms = []
    for (k,), coeff in sorted(sympy.Poly(expr, var).terms(), reverse=True):
        power = "" if k == 0 else var.name + ("" if k == 1 else str(k).translate(_SUPERSCRIPTS))
        coef = "" if coeff == 1 and power else "-" if coeff == -1 and power else str(coeff)
        terms.append(coef + power)
    return " + ".join(terms).replace("+ -", "- ") or "0"


def dim1_constraint() -> sympy.Expr:
    """The left anti-Leibniz residual of ``{e, e} = c e``, as a polynomial in ``c``."""
    c = sympy.Symbol("c")
    t = np.array([[[c]]], dtype=object)
    res = IDENTITIES["anti_leibniz_left"]({"mul": t})["anti_leibniz_left"]
    return sympy.expand(res[0, 0, 0, 0])


def classify_dim1(field: FieldSpec = FieldSpec(), allow_small_characteristic: bool = False) -> Dim1Report:
    """All ``c`` for which ``{e, e} = c e`` is a left anti-Leibniz algebra."""
    field.require_large_characteristic(allow_small_characteristic)
    c = sympy.Symbol("c")
    expr = dim1_constraint()
    lhs = _format_monomials(expr, c)
    if field.p is None:
        roots = sorted(set(sympy.solve(sympy.Eq(expr, 0), c)))
        solutions = tuple(Fraction(int(r.p), int(r.q)) for r in roots)
        rhs = " or ".join(f"c = {s}" for s in solutions) if solutions else "no solution"
        return Dim1Report(field, f"{lhs} = 0 ⇒ {rhs}", solutions, None)
    found = []
    for value in field.elements():
        t = StructureTensor(field, field.array([[[value]]]))
        if check_law(AlgebraBundle.single(t), "anti_leibniz_left").passed:
            found.append(value)
    rhs = " or ".join(f"c = {s}" for s in found) if len(found) < field.p else "c arbitrary"
    return Dim1Report(field, f"{lhs} = 0 ⇒ {rhs}", tuple(found), field.p)


# -- the dimension 2 table ------------------------------------------------------


@dataclass(frozen=True)
class TableEntry:
    name: str
    params: tuple = ()

    def __post_init__(self):
        if self.name not in ("A1", "A2", "A3"):
            raise ValueError(f"unknown table entry {self.name!r}")
        if (self.name == "A1") != (len(self.params) == 2):
            raise ValueError("A1 takes exactly the parameters (a, b); A2 and A3 take none")

    def __str__(self) -> str:
        if self.params:
            return f"{self.name}({', '.join(str(p) for p in self.params)})"
        return self.name


def table_tensor(entry: TableEntry, field: FieldSpec) -> StructureTensor:
    if entry.name == "A2":
        return StructureTensor.from_table(field, 2, {(1, 1): {0: 1}})
    if entry.name == "A3":
        return StructureTensor.from_table(field, 2, {(0, 0): {1: 1}})
    a, b = (field(x) for x in entry.params)
    if a == 0 or b == 0:
        raise FieldError(f"A1 needs a and b invertible in {field}, got a={a}, b={b}")
    div = field.div
    return StructureTensor.from_table(field, 2, {
        (0, 0): {0: -a, 1: -div(a * a, b)},
        (0, 1): {0: b, 1: a},
        (1, 0): {0: b, 1: a},
        (1, 1): {0: -div(b * b, a), 1: -b},
    })


def instantiate_table(entry: TableEntry, field: FieldSpec) -> AlgebraBundle:
    """The table algebra as a bundle; asserts that it is left anti-Leibniz."""
    bundle = AlgebraBundle.single(table_tensor(entry, field), "anti_leibniz_left")
    report = check_law(bundle, "anti_leibniz_left")
    if not report.passed:
        raise AssertionError(f"{entry} over {field} fails anti_leibniz_left")
    return bundle


def table_entries(field: FieldSpec) -> list[TableEntry]:
    """Every table entry over a prime field, in matching order: A1 by (a, b), A2, A3."""
    if field.p is None:
        raise FieldError("the A1 family is infinite over the rationals")
    units = range(1, field.p)
    return [TableEntry("A1", (a, b)) for a in units for b in units] + [TableEntry("A2"), TableEntry("A3")]


# -- exhaustive enumeration -------------------------------------------------------


def _prime_field(field: Union[FieldSpec, int]) -> FieldSpec:
    f = FieldSpec(field) if isinstance(field, int) else field
    if f.p is None:
        raise FieldError("enumeration needs a prime field")
    return f


def tensor_from_code(code: int, field: FieldSpec, dim: int = 2) -> StructureTensor:
    vals = digits(np.array([code]), field.p, dim ** 3)[0].reshape(dim, dim, dim)
    return StructureTensor(field, field.array(vals))


def tensor_code(t: StructureTensor) -> int:
    return int(encode(np.array(t.flat(), dtype=np.int64), t.field.p))


def enumerate_codes(field: Union[FieldSpec, int], law: str = "anti_leibniz_left", *,
                    allow_small_characteristic: bool = False, workers: int = 1) -> np.ndarray:
    f = _prime_field(field)
    f.require_large_characteristic(allow_small_characteristic)
    if f.p ** 8 > SEARCH_BOUND:
        raise SearchSpaceError(f"{f.p}^8 candidates exceed the search bound {SEARCH_BOUND}")
    if law not in IDENTITIES or law.startswith(("dialg", "trialg", "anti_leib_trialg", "right_trileib")):
        raise ValueError(f"{law} is not a single-product law")
    return scan_tensors(law, f.p, 2, workers=workers)


def enumerate_dim2(field: Union[FieldSpec, int], law: str = "anti_leibniz_left", *,
                   allow_small_characteristic: bool = False, workers: int = 1) -> list[StructureTensor]:
    """Every 2-dimensional tensor over F_p passing ``law``, in lexicographic order."""
    f = _prime_field(field)
    codes = enumerate_codes(f, law, allow_small_characteristic=allow_small_characteristic,
                            workers=workers)
    return [tensor_from_code(int(c), f) for c in codes]


# -- orbits ------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitClass:
    representative: StructureTensor
    orbit_size: int
    matched_table_entry: Union[TableEntry, str]

    def to_dict(self) -> dict:
        f = self.representative.field
        return {
            "representative": [f.format(v) for v in self.representative.flat()],
            "orbit_size": self.orbit_size,
            "matched_table_entry": str(self.matched_table_entry),
        }


class _Table:
    """Canonical codes of the table entries over one prime field, cached."""

    _cache: dict[int, list[tuple[TableEntry, int]]] = {}

    @classmethod
    def codes(cls, field: FieldSpec) -> list[tuple[TableEntry, int]]:
        if field.p not in cls._cache:
            entries = table_entries(field)
            stack = np.array([np.array(table_tensor(e, field).coeffs, dtype=np.int64)
                              for e in entries])
            canon = canonical_codes(stack, field.p)
            cls._cache[field.p] = list(zip(entries, (int(c) for c in canon)))
        return cls._cache[field.p]


def _as_int_stack(tensors: Sequence[StructureTensor]) -> np.ndarray:
    return np.array([np.array(t.coeffs, dtype=np.int64) for t in tensors]).reshape(-1, 2, 2, 2)


def canonical_form(t: StructureTensor) -> StructureTensor:
    """The lexicographically least tensor isomorphic to ``t``."""
    _check_dim2(t)
    code = int(canonical_codes(_as_int_stack([t]), t.field.p)[0])
    return tensor_from_code(code, t.field)


def _check_dim2(t: StructureTensor) -> None:
    if t.dim != 2:
        raise DimensionError(f"expected a 2-dimensional tensor, got dimension {t.dim}")
    _prime_field(t.field)


def table_matches(t: StructureTensor) -> list[TableEntry]:
    """Every table entry isomorphic to ``t`` over its prime field, in matching order."""
    _check_dim2(t)
    code = int(canonical_codes(_as_int_stack([t]), t.field.p)[0])
    return [e for e, c in _Table.codes(t.field) if c == code]


def match_table(t: StructureTensor) -> Union[TableEntry, str]:
    """First isomorphic table entry (A1 by lexicographic (a, b), then A2, A3) or ``"unmatched"``."""
    matches = table_matches(t)
    return matches[0] if matches else UNMATCHED


def find_isomorphism(t1: StructureTensor, t2: StructureTensor) -> np.ndarray | None:
    """A change of basis ``phi`` with ``t1.transport(phi) == t2``, or None after trying all of GL_2."""
    _check_dim2(t1)
    _check_dim2(t2)
    p = t1.field.p
    target = tensor_code(t2)
    gl = general_linear(p, 2)
    gl_inv = inverse_mod(gl, p)
    base = _as_int_stack([t1])[0]
    t = np.einsum("gai,abm->gibm", gl, base) % p
    t = np.einsum("gbj,gibm->gijm", gl, t) % p
    moved = np.einsum("gkm,gijm->gijk", gl_inv, t) % p
    hits = np.nonzero(encode(moved.reshape(len(gl), -1), p) == target)[0]
    if not len(hits):
        return None
    phi = t1.field.array(gl[hits[0]])
    if t1.transport(phi) != t2:
        raise AssertionError("vectorized transport disagrees with the exact one")
    return phi


def equivalent(t1: StructureTensor, t2: StructureTensor) -> bool:
    return find_isomorphism(t1, t2) is not None


def orbit_reduce(tensors: Sequence[StructureTensor], field: FieldSpec | None = None) -> list[OrbitClass]:
    """Group the input by isomorphism class; sizes count input tensors per class."""
    if not tensors:
        return []
    f = field or tensors[0].field
    for t in tensors:
        _check_dim2(t)
        if t.field != f:
            raise FieldError("tensors over different fields")
    canon = canonical_codes(_as_int_stack(tensors), f.p)
    sizes = Counter(int(c) for c in canon)
    table = _Table.codes(f)
    out = []
    for code in sorted(sizes):
        match = next((e for e, c in table if c == code), UNMATCHED)
        out.append(OrbitClass(tensor_from_code(code, f), sizes[code], match))
    return out


# -- the full dimension 2 run ---------------------------------------------------


@dataclass
class Dim2Report:
    field: FieldSpec
    law: str
    candidates: int
    tensors: list[StructureTensor]
    orbits: list[OrbitClass]
    table_present: dict[str, bool] = dc_field(default_factory=dict)
    quotient_failures: list[int] = dc_field(default_factory=list)

    @property
    def unmatched(self) -> list[OrbitClass]:
        return [o for o in self.orbits if o.matched_table_entry == UNMATCHED]

    def to_dict(self) -> dict:
        return {
            "field": str(self.field),
            "law": self.law,
            "candidates": self.candidates,
            "count": len(self.tensors),
            "orbit_count": len(self.orbits),
            "orbit_size_total": sum(o.orbit_size for o in self.orbits),
            "orbits": [o.to_dict() for o in self.orbits],
            "unmatched": [o.to_dict() for o in self.unmatched],
            "table_present": self.table_present,
            "quotient_failures": self.quotient_failures,
        }


def classify_dim2(field: Union[FieldSpec, int] = 5, law: str = "anti_leibniz_left", *,
                  allow_small_characteristic: bool = False, workers: int = 1,
                  check_quotients: bool = True) -> Dim2Report:
    """Enumerate, reduce to orbits, locate the table entries, check the quotients."""
    f = _prime_field(field)
    tensors = enumerate_dim2(f, law, allow_small_characteristic=allow_small_characteristic,
                             workers=workers)
    present = {tensor_code(t) for t in tensors}
    table_present = {str(e): tensor_code(table_tensor(e, f)) in present for e in table_entries(f)}
    failures = []
    if check_quotients and law in ("anti_leibniz_left", "mock_lie"):
        for t in tensors:
            _, q = kernel_and_quotient(AlgebraBundle.single(t, "anti_leibniz_left"))
            if not check_law(q, "mock_lie").passed:
                failures.append(tensor_code(t))
    return Dim2Report(f, law, f.p ** 8, tensors, orbit_reduce(tensors, f), table_present, failures)

