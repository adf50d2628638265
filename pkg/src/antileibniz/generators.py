"""Seeded random instances of every structure, valid by construction or by search.

Single-product algebras are built graded and nilpotent: on ``A1 + A2 + A3``
a random product ``A1 x A1 -> A2`` is completed by the ``A1 x A2``, ``A2 x A1 -> A3``
parts, which every quadratic identity constrains linearly.  A random kernel
vector of that linear system gives a valid algebra; a random change of basis
then hides the grading.  Operators are found by rejection sampling with the
vectorized residuals of :mod:`antileibniz.scan`.
"""
from __future__ import annotations

from typing import Iterator

import numpy as np

from .core import AlgebraBundle, LinearMap, RepBundle, StructureTensor, rref
from .fields import FieldSpec
from .functors import adjoint, direct_sum_rep, zero_rep
from .laws import IDENTITIES
from .operators import (
    antiassoc_embedding_residuals,
    embedding_residuals,
    morphism_residuals,
)
from .scan import nonzero_mask, to_int

# law each generated class must satisfy, and whether the product is symmetric
_CLASS = {
    "anti_assoc": ("anti_associativity", False),
    "mock_lie": ("mock_lie", True),
    "anti_leibniz_left": ("anti_leibniz_left", False),
}


def random_kernel_vector(field: FieldSpec, M: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Uniform random solution of ``M x = 0`` over F_p."""
    p = field.p
    ncols = M.shape[1]
    basis, pivots = rref(field, list(M), ncols)
    x = field.zeros(ncols)
    free = [j for j in range(ncols) if j not in pivots]
    for j in free:
        x[j] = int(rng.integers(0, p))
    for row, j in zip(basis, pivots):
        x[j] = field.reduce_scalar(-sum(row[k] * x[k] for k in free))
    return x


def _random_invertible(field: FieldSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        phi = field.random(rng, (n, n))
        if len(rref(field, list(phi), n)[1]) == n:
            return phi


def random_graded(field: FieldSpec, rng: np.random.Generator, cls: str,
                  dims: tuple[int, int, int] | None = None, hide_grading: bool = True) -> AlgebraBundle:
    """A random nilpotent algebra of class ``cls`` over a prime field."""
    law, symmetric = _CLASS[cls]
    if dims is None:
        dims = (int(rng.integers(1, 3)), int(rng.integers(1, 3)), int(rng.integers(0, 3)))
    d1, d2, d3 = dims
    n = d1 + d2 + d3
    A1, A2, A3 = range(d1), range(d1, d1 + d2), range(d1 + d2, n)
    base = field.zeros((n, n, n))
    for i in A1:
        for j in A1:
            if symmetric and j < i:
                base[i, j] = base[j, i]
                continue
            for k in A2:
                base[i, j, k] = int(rng.integers(0, field.p))
    # unknown slots: (A1, A2 -> A3) and (A2, A1 -> A3)
    slots = [(i, j, k) for i in A1 for j in A2 for k in A3] + \
            [(i, j, k) for i in A2 for j in A1 for k in A3]
    laws = [law] + (["commutativity"] if symmetric and law != "mock_lie" else [])

    def residual(t):
        out = []
        for name in laws:
            out.extend(r.ravel() for r in IDENTITIES[name]({"mul": t}).values())
        return field.reduce(np.concatenate(out))

    r0 = residual(base)
    if slots:
        cols = []
        for s in slots:
            t = base.copy()
            t[s] = field.one
            cols.append(field.reduce(residual(t) - r0))
        M = np.array(cols, dtype=object).T
        x = random_kernel_vector(field, M, rng)
        for s, v in zip(slots, x):
            base[s] = v
    t = StructureTensor(field, base)
    if hide_grading:
        t = t.transport(_random_invertible(field, n, rng))
    return AlgebraBundle.single(t, cls)


def random_algebras(field: FieldSpec, cls: str, count: int, seed: int = 0) -> Iterator[AlgebraBundle]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_graded(field, rng, cls)


def random_rep(bundle: AlgebraBundle, kind: str, rng: np.random.Generator) -> RepBundle:
    """Adjoint, zero, or adjoint plus zero, chosen at random."""
    choice = int(rng.integers(0, 3))
    if choice == 0:
        return adjoint(bundle, kind)
    m = 1 if choice == 2 else int(rng.integers(1, 3))
    carrier = StructureTensor.zeros(bundle.field, m) if kind.endswith("action") else None
    z = zero_rep(bundle, m, kind, carrier)
    if choice == 1:
        return z
    return direct_sum_rep(adjoint(bundle, kind), z)


# -- rejection sampling of operators ------------------------------------------


def _sample_maps(p: int, rows: int, cols: int, rng: np.random.Generator, batch: int) -> np.ndarray:
    K = rng.integers(0, p, size=(batch, rows, cols))
    # sparse candidates pass far more often than dense ones
    K *= rng.random(size=(batch, 1, cols)) < 0.5
    return K


def sample_embedding_tensors(rep: RepBundle, rng: np.random.Generator, count: int,
                             homomorphic: bool = False, batch: int = 4096,
                             max_rounds: int = 50) -> list[LinearMap]:
    """Up to ``count`` distinct nonzero embedding tensors for ``rep`` found at random."""
    f = rep.field
    p = f.p
    c = to_int(rep.algebra.mul.coeffs)
    n, m = rep.algebra.dim, rep.carrier_dim
    found: dict[bytes, np.ndarray] = {}
    for _ in range(max_rounds):
        K = _sample_maps(p, n, m, rng, batch)
        if rep.kind.startswith("mlie"):
            res = embedding_residuals(K, c, to_int(rep["pi"]))
        else:
            res = antiassoc_embedding_residuals(K, c, to_int(rep["rho"]), to_int(rep["mu"]))
        if homomorphic:
            res.update(morphism_residuals(K, c, to_int(rep.carrier_product.coeffs)))
        good = K[~nonzero_mask(res, p) & K.reshape(batch, -1).any(axis=1)]
        for k in good:
            found.setdefault(k.tobytes(), k)
            if len(found) >= count:
                break
        if len(found) >= count:
            break
    return [LinearMap(f, f.array(k)) for k in found.values()]
