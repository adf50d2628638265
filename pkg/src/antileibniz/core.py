"""Structure-constant algebras, representations and exact linear algebra.

Conventions used throughout the package:

* a product on an ``n``-dimensional space is a :class:`StructureTensor` ``c``
  with ``e_i * e_j = sum_k c[i, j, k] e_k``;
* matrices of linear maps are row-major with rows indexing target
  coordinates, so column ``u`` of ``K`` is ``K(e_u)``;
* a representation stores one matrix per basis element of the acting
  algebra, as an array ``P`` of shape ``(dim A, m, m)`` with ``P[i] = pi(e_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

import numpy as np

from .fields import FieldSpec, Scalar, is_zero

ALGEBRA_CLASSES = {
    "mock_lie": ("mul",),
    "anti_assoc": ("mul",),
    "anti_leibniz_left": ("mul",),
    "anti_leibniz_right": ("mul",),
    "anti_assoc_dialgebra": ("left", "right"),
    "anti_assoc_trialgebra": ("left", "right", "middle"),
    "anti_leibniz_trialgebra": ("bracket", "circ"),
    "raw": None,
}

REP_KINDS = {
    "mlie_rep": ("pi",),
    "anti_leib_rep": ("l", "r"),
    "anti_assoc_rep": ("rho", "mu"),
    "mlie_action": ("pi",),
    "anti_assoc_action": ("rho", "mu"),
}

ACTION_KINDS = ("mlie_action", "anti_assoc_action")


class DimensionError(ValueError):
    pass


class FieldMismatchError(ValueError):
    pass


def _check_field(a: FieldSpec, b: FieldSpec) -> None:
    if a != b:
        raise FieldMismatchError(f"field mismatch: {a} vs {b}")


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def default_basis(n: int, prefix: str = "e") -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(n))


class StructureTensor:
    """A bilinear product on ``F^n`` given by its structure constants."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        arr = field.array(coeffs)
        if arr.ndim != 3 or len(set(arr.shape)) != 1 or arr.shape[0] == 0:
            raise DimensionError(f"structure constants must be n x n x n, got {arr.shape}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", _freeze(arr))

    def __setattr__(self, name, value):
        raise AttributeError("StructureTensor is immutable")

    @classmethod
    def zeros(cls, field: FieldSpec, dim: int) -> "StructureTensor":
        return cls(field, field.zeros((dim, dim, dim)))

    @classmethod
    def from_table(cls, field: FieldSpec, dim: int, table: Mapping) -> "StructureTensor":
        """Build from ``{(i, j): {k: coefficient}}`` with 0-based indices.

        Omitted pairs are zero products.
        """
        coeffs = field.zeros((dim, dim, dim))
        for (i, j), out in table.items():
            for k, value in out.items():
                coeffs[i, j, k] = field(value)
        return cls(field, coeffs)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def __call__(self, x, y) -> np.ndarray:
        return evaluate_product(self, x, y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field, self.flat()))

    def __repr__(self) -> str:
        nz = {
            (i, j): {k: str(v) for k, v in enumerate(self.coeffs[i, j]) if v != 0}
            for i in range(self.dim)
            for j in range(self.dim)
            if not is_zero(self.coeffs[i, j])
        }
        return f"StructureTensor({self.field}, dim={self.dim}, {nz})"

    def flat(self) -> tuple:
        return tuple(self.coeffs.ravel())

    def is_zero(self) -> bool:
        return is_zero(self.coeffs)

    def __add__(self, other: "StructureTensor") -> "StructureTensor":
        _check_field(self.field, other.field)
        if self.dim != other.dim:
            raise DimensionError("cannot add products of different dimension")
        return StructureTensor(self.field, self.field.reduce(self.coeffs + other.coeffs))

    def scaled(self, s: Scalar) -> "StructureTensor":
        return StructureTensor(self.field, self.field.reduce(self.coeffs * self.field(s)))

    def opposite(self) -> "StructureTensor":
        """The product ``(x, y) -> y * x``."""
        return StructureTensor(self.field, np.einsum("ijk->jik", self.coeffs))

    def symmetrized(self) -> "StructureTensor":
        """``(x, y) -> x * y + y * x``."""
        return self + self.opposite()

    def left(self, x) -> np.ndarray:
        """Matrix of ``y -> x * y``."""
        x = _vector(self.field, x, self.dim)
        return self.field.contract("i,ijk->kj", x, self.coeffs)

    def right(self, y) -> np.ndarray:
        """Matrix of ``x -> x * y``."""
        y = _vector(self.field, y, self.dim)
        return self.field.contract("j,ijk->ki", y, self.coeffs)

    def left_matrices(self) -> np.ndarray:
        """``L[i] = left(e_i)``, stacked."""
        return np.einsum("ijk->ikj", self.coeffs)

    def right_matrices(self) -> np.ndarray:
        """``R[j] = right(e_j)``, stacked."""
        return np.einsum("ijk->jki", self.coeffs)

    def transport(self, phi) -> "StructureTensor":
        """Structure constants of the product pulled back along invertible ``phi``.

        The result ``c'`` satisfies ``phi(x *' y) = phi(x) * phi(y)``.
        """
        phi = self.field.array(phi)
        phi_inv = inverse(self.field, phi)
        t = self.field.contract("ai,abm->ibm", phi, self.coeffs)
        t = self.field.contract("bj,ibm->ijm", phi, t)
        return StructureTensor(self.field, self.field.contract("km,ijm->ijk", phi_inv, t))


def _vector(field: FieldSpec, x, n: int) -> np.ndarray:
    x = field.array(x) if not (isinstance(x, np.ndarray) and x.dtype == object) else x
    if x.shape != (n,):
        raise DimensionError(f"expected a coordinate vector of length {n}, got shape {x.shape}")
    return x


def evaluate_product(tensor: StructureTensor, x, y) -> np.ndarray:
    """``sum_{i,j} x_i y_j c[i, j, :]``, exactly."""
    f = tensor.field
    x = _vector(f, x, tensor.dim)
    y = _vector(f, y, tensor.dim)
    return f.contract("j,jk->k", y, f.contract("i,ijk->jk", x, tensor.coeffs))


@dataclass(frozen=True)
class AlgebraBundle:
    """A based space with one to three named products and a claimed class."""

    field: FieldSpec
    dim: int
    basis: tuple[str, ...]
    products: Mapping[str, StructureTensor]
    claimed_class: str = "raw"

    def __post_init__(self):
        if self.claimed_class not in ALGEBRA_CLASSES:
            raise ValueError(f"unknown algebra class {self.claimed_class!r}")
        if len(self.basis) != self.dim or len(set(self.basis)) != self.dim:
            raise DimensionError("basis labels must be unique and match the dimension")
        if not 1 <= len(self.products) <= 3:
            raise ValueError("an algebra carries between one and three products")
        expected = ALGEBRA_CLASSES[self.claimed_class]
        if expected is not None and set(self.products) != set(expected):
            raise ValueError(
                f"class {self.claimed_class} expects products {sorted(expected)}, "
                f"got {sorted(self.products)}"
            )
        for name, t in self.products.items():
            _check_field(self.field, t.field)
            if t.dim != self.dim:
                raise DimensionError(f"product {name!r} has dimension {t.dim}, expected {self.dim}")
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "products", dict(self.products))

    @classmethod
    def single(cls, tensor: StructureTensor, claimed_class: str = "raw",
               basis: Sequence[str] | None = None) -> "AlgebraBundle":
        return cls(tensor.field, tensor.dim, tuple(basis or default_basis(tensor.dim)),
                   {"mul": tensor}, claimed_class)

    @classmethod
    def from_products(cls, claimed_class: str, basis: Sequence[str] | None = None,
                      **products: StructureTensor) -> "AlgebraBundle":
        t = next(iter(products.values()))
        return cls(t.field, t.dim, tuple(basis or default_basis(t.dim)), products, claimed_class)

    @property
    def mul(self) -> StructureTensor:
        return self.products["mul"]

    def product(self, name: str) -> StructureTensor:
        try:
            return self.products[name]
        except KeyError:
            raise KeyError(f"algebra has no product named {name!r} (has {sorted(self.products)})") from None

    def relabel(self, claimed_class: str) -> "AlgebraBundle":
        return AlgebraBundle(self.field, self.dim, self.basis, self.products, claimed_class)


@dataclass(frozen=True)
class LinearMap:
    """Matrix of a linear map between based spaces (rows = target coordinates)."""

    field: FieldSpec
    matrix: np.ndarray
    source: str | None = None
    target: str | None = None

    def __post_init__(self):
        m = self.field.array(self.matrix)
        if m.ndim != 2:
            raise DimensionError(f"a linear map needs a 2-d matrix, got shape {m.shape}")
        object.__setattr__(self, "matrix", _freeze(m))

    @classmethod
    def identity(cls, field: FieldSpec, n: int, **kw) -> "LinearMap":
        return cls(field, field.identity(n), **kw)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int, **kw) -> "LinearMap":
        return cls(field, field.zeros((rows, cols)), **kw)

    @classmethod
    def from_images(cls, field: FieldSpec, rows: int, images: Mapping[int, Mapping[int, Scalar]],
                    cols: int, **kw) -> "LinearMap":
        """Build from ``{source index: {target index: coefficient}}`` (0-based)."""
        m = field.zeros((rows, cols))
        for u, out in images.items():
            for k, v in out.items():
                m[k, u] = field(v)
        return cls(field, m, **kw)

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    def __call__(self, v) -> np.ndarray:
        v = _vector(self.field, v, self.cols)
        return self.field.contract("ij,j->i", self.matrix, v)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.cols != other.rows:
            raise DimensionError("cannot compose maps with mismatched dimensions")
        return LinearMap(self.field, self.field.contract("ij,jk->ik", self.matrix, other.matrix),
                         source=other.source, target=self.target)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.matrix, other.matrix)

    __hash__ = None

    def transpose(self) -> "LinearMap":
        return LinearMap(self.field, self.matrix.T.copy(), source=self.target, target=self.source)


@dataclass(frozen=True)
class RepBundle:
    """Action maps of an algebra on a carrier space, optionally with a carrier product."""

    algebra: AlgebraBundle
    carrier_dim: int
    kind: str
    maps: Mapping[str, np.ndarray]
    carrier_product: StructureTensor | None = None
    carrier_basis: tuple[str, ...] = dc_field(default=())

    def __post_init__(self):
        if self.kind not in REP_KINDS:
            raise ValueError(f"unknown representation kind {self.kind!r}")
        names = REP_KINDS[self.kind]
        if set(self.maps) != set(names):
            raise ValueError(f"{self.kind} expects maps {list(names)}, got {sorted(self.maps)}")
        f, n, m = self.algebra.field, self.algebra.dim, self.carrier_dim
        frozen = {}
        for name in names:
            arr = f.array(self.maps[name])
            if arr.shape != (n, m, m):
                raise DimensionError(
                    f"map {name!r} must be {n} matrices of size {m}x{m}, got shape {arr.shape}"
                )
            frozen[name] = _freeze(arr)
        object.__setattr__(self, "maps", frozen)
        if self.kind in ACTION_KINDS:
            if self.carrier_product is None:
                raise ValueError(f"{self.kind} requires a carrier product")
            _check_field(f, self.carrier_product.field)
            if self.carrier_product.dim != m:
                raise DimensionError("carrier product dimension differs from carrier_dim")
        elif self.carrier_product is not None:
            raise ValueError(f"{self.kind} does not take a carrier product")
        basis = tuple(self.carrier_basis) or default_basis(m, "v")
        if len(basis) != m or len(set(basis)) != m:
            raise DimensionError("carrier basis labels must be unique and match carrier_dim")
        object.__setattr__(self, "carrier_basis", basis)

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def __getitem__(self, name: str) -> np.ndarray:
        return self.maps[name]

    def act(self, name: str, x) -> np.ndarray:
        """Matrix of the named action evaluated at algebra element ``x``."""
        x = _vector(self.field, x, self.algebra.dim)
        return self.field.contract("i,iab->ab", x, self.maps[name])


class Subspace:
    """A subspace of ``F^n`` held as a reduced row echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, vectors: Sequence = ()):
        rows = [_vector(field, v, ambient_dim) for v in vectors]
        basis, pivots = rref(field, rows, ambient_dim)
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(_freeze(b) for b in basis)
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v) -> np.ndarray:
        """Residual of ``v`` after eliminating every pivot coordinate."""
        v = _vector(self.field, v, self.ambient_dim).copy()
        for b, p in zip(self.basis, self.pivots):
            if v[p] != 0:
                v = self.field.reduce(v - v[p] * b)
        return v

    def contains(self, v) -> bool:
        return is_zero(self.reduce(v))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots
                and all(np.array_equal(a, b) for a, b in zip(self.basis, other.basis)))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, pivots={self.pivots})"


def rref(field: FieldSpec, rows: Sequence[np.ndarray], ncols: int) -> tuple[list, list]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    m = [np.array(r, dtype=object) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = field.reduce(m[r] * field.inv(m[r][c]))
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                m[i] = field.reduce(m[i] - m[i][c] * m[r])
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(field: FieldSpec, matrix: np.ndarray) -> int:
    return len(rref(field, list(field.array(matrix)), matrix.shape[1])[1])


def inverse(field: FieldSpec, matrix) -> np.ndarray:
    """Inverse of a square matrix by Gauss-Jordan elimination."""
    m = field.array(matrix)
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionError("only square matrices are invertible")
    aug = np.concatenate([m, field.identity(n)], axis=1)
    rows, pivots = rref(field, list(aug), 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("matrix is singular")
    return np.array([row[n:] for row in rows], dtype=object)


@dataclass(frozen=True)
class Closure:
    """Outcome of a closure test; falsy with a witness pair when it fails."""

    closed: bool
    witness: tuple[np.ndarray, np.ndarray] | None = None
    residual: np.ndarray | None = None
    side: str | None = None

    def __bool__(self) -> bool:
        return self.closed


def span_closure_check(tensor: StructureTensor, sub: Subspace) -> Closure:
    """Is ``sub`` closed under the product?  Witnesses are basis pairs of ``sub``."""
    if sub.ambient_dim != tensor.dim:
        raise DimensionError("subspace and product live in different dimensions")
    _check_field(tensor.field, sub.field)
    for u in sub.basis:
        for v in sub.basis:
            res = sub.reduce(tensor(u, v))
            if not is_zero(res):
                return Closure(False, (u, v), res)
    return Closure(True)


def ideal_check(tensor: StructureTensor, sub: Subspace, side: str = "left") -> Closure:
    """``left``: product(I, A) in I; ``right``: product(A, I) in I; or ``two_sided``."""
    if side not in ("left", "right", "two_sided"):
        raise ValueError(f"unknown side {side!r}")
    if sub.ambient_dim != tensor.dim:
        raise DimensionError("subspace and product live in different dimensions")
    f = tensor.field
    ambient = [f.basis_vector(tensor.dim, j) for j in range(tensor.dim)]
    for u in sub.basis:
        for a in ambient:
            if side in ("left", "two_sided"):
                res = sub.reduce(tensor(u, a))
                if not is_zero(res):
                    return Closure(False, (u, a), res, "left")
            if side in ("right", "two_sided"):
                res = sub.reduce(tensor(a, u))
                if not is_zero(res):
                    return Closure(False, (a, u), res, "right")
    return Closure(True)
