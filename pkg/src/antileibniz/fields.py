"""Exact scalar fields.

Two kinds of field are supported: the rationals, whose elements are
:class:`fractions.Fraction` values, and prime fields F_p, whose elements are
plain Python ints in ``range(p)``.  Arrays of scalars are numpy arrays with
``dtype=object`` so that no value ever passes through floating point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import numpy as np

Scalar = Union[Fraction, int]

_SCALAR_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


class FieldError(ValueError):
    """Raised for malformed scalars or an inadmissible field."""


class CharacteristicError(FieldError):
    """Raised when a characteristic-sensitive routine meets p in {2, 3}."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A field of exact scalars: ``FieldSpec()`` is Q, ``FieldSpec(p)`` is F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or isinstance(self.p, bool) or not is_prime(self.p):
                raise FieldError(f"modulus {self.p!r} is not a prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls()

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else 1

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"

    def require_large_characteristic(self, allow_small: bool = False) -> None:
        """Refuse characteristic 2 or 3 unless explicitly overridden."""
        if self.p in (2, 3) and not allow_small:
            raise CharacteristicError(
                f"{self} has characteristic {self.p}; identities with coefficient 3 "
                "degenerate there (pass allow_small_characteristic to override)"
            )

    # -- scalars -----------------------------------------------------------

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction, or scalar string into this field."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise FieldError(f"not a scalar: {value!r}")
        if isinstance(value, float):
            raise FieldError(f"floating point value {value!r} is not an exact scalar")
        if isinstance(value, (int, np.integer)):
            value = int(value)
            return Fraction(value) if self.p is None else value % self.p
        if isinstance(value, Fraction):
            if self.p is None:
                return value
            den = value.denominator % self.p
            if den == 0:
                raise FieldError(f"{value} has a denominator divisible by {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        raise FieldError(f"not a scalar: {value!r}")

    def parse(self, text: str) -> Scalar:
        """Parse ``"4"``, ``"-3/7"`` (a Unicode minus is accepted) exactly."""
        m = _SCALAR_RE.match(text.strip().replace("−", "-"))
        if m is None:
            raise FieldError(f"malformed scalar {text!r}")
        sign, num, den = m.groups()
        if den is not None and int(den) == 0:
            raise FieldError(f"zero denominator in {text!r}")
        value = Fraction(int(sign + num), int(den) if den else 1)
        return self(value)

    def format(self, value: Scalar) -> str:
        value = self(value)
        return str(value)

    def inv(self, value: Scalar) -> Scalar:
        value = self(value)
        if value == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.p is None:
            return 1 / value
        return pow(value, -1, self.p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.reduce_scalar(a * self.inv(b))

    def reduce_scalar(self, value: Scalar) -> Scalar:
        return value if self.p is None else value % self.p

    def elements(self) -> Iterator[int]:
        if self.p is None:
            raise FieldError("the rationals cannot be enumerated")
        return iter(range(self.p))

    # -- arrays ------------------------------------------------------------

    def array(self, values) -> np.ndarray:
        """Object array of field elements from a (nested) sequence."""
        arr = np.array(values, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx, v in np.ndenumerate(arr):
            out[idx] = self(v)
        return out

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(self.zero)
        return out

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def basis_vector(self, n: int, i: int) -> np.ndarray:
        out = self.zeros(n)
        out[i] = self.one
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Bring the result of ring arithmetic back to canonical residues."""
        if self.p is None:
            return arr
        return arr % self.p

    def contract(self, subscripts: str, *operands: np.ndarray) -> np.ndarray:
        return self.reduce(np.einsum(subscripts, *operands))

    def random(self, rng: np.random.Generator, shape, *, height: int = 3) -> np.ndarray:
        """Random array; rationals are drawn as small integers over small denominators."""
        if self.p is None:
            nums = rng.integers(-height, height + 1, size=shape)
            dens = rng.integers(1, height + 1, size=shape)
            return self.array(np.vectorize(Fraction, otypes=[object])(nums, dens))
        return self.array(rng.integers(0, self.p, size=shape))


def is_zero(arr: np.ndarray) -> bool:
    return np.count_nonzero(arr) == 0



RATIONALS = FieldSpec()
