"""Worked examples: the algebras, operators and maps used throughout the tests."""
from __future__ import annotations

from .core import AlgebraBundle, LinearMap, StructureTensor
from .fields import FieldSpec

Q = FieldSpec()


def _single(field: FieldSpec, dim: int, table: dict, cls: str) -> AlgebraBundle:
    return AlgebraBundle.single(StructureTensor.from_table(field, dim, table), cls)


def ml3(field: FieldSpec = Q) -> AlgebraBundle:
    """Mock-Lie: ``e1 o e1 = e2``, ``e3 o e3 = e2``."""
    return _single(field, 3, {(0, 0): {1: 1}, (2, 2): {1: 1}}, "mock_lie")


def ml4(field: FieldSpec = Q) -> AlgebraBundle:
    """Mock-Lie: ``e1 o e1 = e2``, ``e1 o e3 = e3 o e1 = e4``."""
    return _single(field, 4, {(0, 0): {1: 1}, (0, 2): {3: 1}, (2, 0): {3: 1}}, "mock_lie")


def square3(field: FieldSpec = Q, cls: str = "mock_lie") -> AlgebraBundle:
    """``e1 e1 = e2`` on three generators; mock-Lie and anti-associative at once."""
    return _single(field, 3, {(0, 0): {1: 1}}, cls)


def idempotent1(field: FieldSpec = Q) -> AlgebraBundle:
    """``e1 e1 = e1``: not anti-Leibniz, the residual is ``3 e1``."""
    return _single(field, 1, {(0, 0): {0: 1}}, "raw")


def nilpotent3(field: FieldSpec = Q) -> AlgebraBundle:
    """Anti-associative: ``e1 e1 = e2``, ``e1 e2 = e3``, ``e2 e1 = -e3``."""
    return _single(field, 3, {(0, 0): {1: 1}, (0, 1): {2: 1}, (1, 0): {2: -1}}, "anti_assoc")


def averaging_K(field: FieldSpec = Q) -> LinearMap:
    """``K(e1) = K(e3) = e1``, ``K(e2) = K(e4) = e2`` on :func:`ml4`."""
    return LinearMap.from_images(field, 4, {0: {0: 1}, 1: {1: 1}, 2: {0: 1}, 3: {1: 1}}, 4)


def broken_K(field: FieldSpec = Q) -> LinearMap:
    """``K'(e2) = e1``, everything else to zero; not an averaging operator on :func:`ml4`."""
    return LinearMap.from_images(field, 4, {1: {0: 1}}, 4)


def derivation_d(field: FieldSpec = Q) -> LinearMap:
    """Square-zero derivation of :func:`ml3`: ``d(e1) = d(e3) = e2``, ``d(e2) = 0``."""
    return LinearMap.from_images(field, 3, {0: {1: 1}, 2: {1: 1}}, 3)


def homomorphic_H(field: FieldSpec = Q) -> LinearMap:
    """``H(e1) = e1``, ``H(e2) = H(e3) = e2`` on :func:`square3` with its adjoint action."""
    return LinearMap(field, field.array([[1, 0, 0], [0, 1, 1], [0, 0, 0]]))


def broken_H(field: FieldSpec = Q) -> LinearMap:
    """``H'(e1) = e1``, ``H'(e2) = H'(e3) = 0``."""
    return LinearMap.from_images(field, 3, {0: {0: 1}}, 3)


def worked_algebras(field: FieldSpec = Q) -> dict[str, AlgebraBundle]:
    """Every fixture algebra with its claimed class (the idempotent excluded)."""
    from .classify import TableEntry, instantiate_table

    out = {"ml3": ml3(field), "ml4": ml4(field), "square3": square3(field),
           "square3_assoc": square3(field, "anti_assoc"), "nilpotent3": nilpotent3(field)}
    out["A2"] = instantiate_table(TableEntry("A2"), field)
    out["A3"] = instantiate_table(TableEntry("A3"), field)
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            if field.p is None or (a % field.p and b % field.p):
                out[f"A1_{a}_{b}"] = instantiate_table(TableEntry("A1", (a, b)), field)
    return out
