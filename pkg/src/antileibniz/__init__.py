"""Exact-arithmetic toolkit for anti-Leibniz and mock-Lie algebras."""
from .fields import CharacteristicError, FieldError, FieldSpec
from .core import AlgebraBundle, LinearMap, RepBundle, StructureTensor, Subspace
from .laws import LAWS, LawReport, check_law, check_representation

__version__ = "0.1.0"

__all__ = [
    "AlgebraBundle",
    "CharacteristicError",
    "FieldError",
    "FieldSpec",
    "LAWS",
    "LawReport",
    "LinearMap",
    "RepBundle",
    "StructureTensor",
    "Subspace",
    "check_law",
    "check_representation",
]
