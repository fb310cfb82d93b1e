"""Exact scalar domains used by the cumulant engine.

Three rings are supported:
    - RATIONAL: plain ``fractions.Fraction`` values
    - POLY: sparse multivariate polynomials over the rationals, used for formal moments ``m_w``
    - MATRIX: square matrices of Fractions, stored as numpy object arrays

RATIONAL and POLY commute with every constant; MATRIX does not, which decides
whether the commutative or the nested multiplicative extension is legal.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Union

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

# A monomial is a sorted tuple of (indeterminate, exponent) pairs.
Monomial = tuple[tuple[str, int], ...]


def _mul_monomials(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers = dict(a)
    for name, exp in b:
        powers[name] = powers.get(name, 0) + exp
    return tuple(sorted(powers.items()))


class Poly:
    """Use this class to hold a sparse polynomial with rational coefficients.

    Zero coefficients are never stored, so the zero polynomial is the empty mapping
    and ``is_zero`` is an exact identity test.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None) -> None:
        """Use to build a polynomial from a monomial to coefficient mapping."""
        self._terms: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            value = Fraction(coeff)
            if value != 0:
                self._terms[tuple(sorted(mono))] = value

    @classmethod
    def variable(cls, name: str) -> Poly:
        """Use to create the polynomial consisting of a single indeterminate."""
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def constant(cls, value: Fraction | int) -> Poly:
        """Use to create a constant polynomial."""
        return cls({(): Fraction(value)})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        """Use to get a copy of the term mapping."""
        return dict(self._terms)

    def is_zero(self) -> bool:
        """Use to test whether every coefficient cancelled."""
        return not self._terms

    def _coerce(self, other: object) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other)
        return None

    def __add__(self, other: object) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in rhs._terms.items():  # noqa: SLF001
            out[mono] = out.get(mono, Fraction(0)) + coeff
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: object) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Poly:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.is_zero() or rhs.is_zero():
            return Poly()
        out: dict[Monomial, Fraction] = {}
        for mono_a, coeff_a in self._terms.items():
            for mono_b, coeff_b in rhs._terms.items():  # noqa: SLF001
                mono = _mul_monomials(mono_a, mono_b)
                out[mono] = out.get(mono, Fraction(0)) + coeff_a * coeff_b
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms  # noqa: SLF001

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms):
            coeff = self._terms[mono]
            factors = "*".join(name if exp == 1 else f"{name}^{exp}" for name, exp in mono)
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(factors)
            elif coeff == -1:
                parts.append(f"-{factors}")
            else:
                parts.append(f"{coeff}*{factors}")
        return " + ".join(parts).replace("+ -", "- ")


class RatMatrix:
    """Use this class to hold a square matrix with exact rational entries."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[Iterable[Fraction | int | str]] | np.ndarray) -> None:
        """Use to build a matrix from row-major entries; every entry becomes a Fraction."""
        rows = [[Fraction(value) for value in row] for row in entries]
        array = np.empty((len(rows), len(rows)), dtype=object)
        for i, row in enumerate(rows):
            if len(row) != len(rows):
                error = f"Matrix must be square, row {i} has {len(row)} entries for dimension {len(rows)}."
                raise ValueError(error)
            for j, value in enumerate(row):
                array[i, j] = value
        self._entries = array

    @classmethod
    def _wrap(cls, array: np.ndarray) -> RatMatrix:
        out = cls.__new__(cls)
        out._entries = array  # noqa: SLF001
        return out

    @classmethod
    def zeros(cls, d: int) -> RatMatrix:
        """Use to create the d×d zero matrix."""
        return cls([[0] * d for _ in range(d)])

    @classmethod
    def identity(cls, d: int) -> RatMatrix:
        """Use to create the d×d identity matrix."""
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def diagonal(cls, values: Iterable[Fraction | int]) -> RatMatrix:
        """Use to create a diagonal matrix from its diagonal entries."""
        vals = list(values)
        return cls([[vals[i] if i == j else 0 for j in range(len(vals))] for i in range(len(vals))])

    @classmethod
    def random(cls, rng: np.random.Generator, d: int, bound: int = 5) -> RatMatrix:
        """Use to draw a matrix with entries p/q, |p| ≤ bound and 1 ≤ q ≤ bound."""
        nums = rng.integers(-bound, bound + 1, size=(d, d))
        dens = rng.integers(1, bound + 1, size=(d, d))
        return cls([[Fraction(int(nums[i, j]), int(dens[i, j])) for j in range(d)] for i in range(d)])

    @property
    def d(self) -> int:
        """Use to get the dimension."""
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Use to get a copy of the underlying object array."""
        return self._entries.copy()

    def key(self) -> tuple[Fraction, ...]:
        """Use to get a hashable exact key of the matrix."""
        return tuple(self._entries.flat)

    def rows(self) -> list[list[Fraction]]:
        """Use to get the entries as nested lists."""
        return [list(row) for row in self._entries]

    def is_zero(self) -> bool:
        """Use to test whether every entry is zero."""
        return all(value == 0 for value in self._entries.flat)

    def _check(self, other: RatMatrix) -> None:
        if other.d != self.d:
            error = f"Dimension mismatch: {self.d}x{self.d} against {other.d}x{other.d}."
            raise ValueError(error)

    def __add__(self, other: object) -> RatMatrix:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        self._check(other)
        return RatMatrix._wrap(self._entries + other._entries)

    def __sub__(self, other: object) -> RatMatrix:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        self._check(other)
        return RatMatrix._wrap(self._entries - other._entries)

    def __neg__(self) -> RatMatrix:
        return RatMatrix._wrap(-self._entries)

    def __matmul__(self, other: object) -> RatMatrix:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        self._check(other)
        return RatMatrix._wrap(self._entries.dot(other._entries))

    def __mul__(self, other: object) -> RatMatrix:
        if isinstance(other, RatMatrix):
            return self @ other
        if isinstance(other, (int, Fraction)):
            return RatMatrix._wrap(self._entries * Fraction(other))
        return NotImplemented

    def __rmul__(self, other: object) -> RatMatrix:
        if isinstance(other, (int, Fraction)):
            return RatMatrix._wrap(self._entries * Fraction(other))
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.d == other.d and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"RatMatrix({[[str(v) for v in row] for row in self.rows()]})"


Scalar = Union[Fraction, Poly, RatMatrix]  # noqa: UP007


def diag_projection(m: RatMatrix) -> RatMatrix:
    """Use to project a matrix onto its diagonal part (the conditional expectation onto diagonal matrices)."""
    return RatMatrix.diagonal(m.entries.diagonal())


class DomainTag(Enum):
    """Tags of the supported scalar rings."""

    RATIONAL = "rational"
    POLY = "poly"
    MATRIX = "matrix"


@dataclass(frozen=True)
class ScalarDomain:
    """Use this class to describe which scalar ring a functional takes values in."""

    tag: DomainTag
    dimension: int | None = None

    def __post_init__(self) -> None:
        """Use to validate that only MATRIX carries a dimension."""
        if self.tag is DomainTag.MATRIX and (self.dimension is None or self.dimension < 1):
            error = f"MATRIX domain needs a positive dimension, got {self.dimension}."
            raise ValueError(error)
        if self.tag is not DomainTag.MATRIX and self.dimension is not None:
            error = f"Domain {self.tag.value} does not take a dimension."
            raise ValueError(error)

    @classmethod
    def rational(cls) -> ScalarDomain:
        """Use to get the RATIONAL domain."""
        return cls(DomainTag.RATIONAL)

    @classmethod
    def poly(cls) -> ScalarDomain:
        """Use to get the POLY domain."""
        return cls(DomainTag.POLY)

    @classmethod
    def matrix(cls, d: int) -> ScalarDomain:
        """Use to get the MATRIX(d) domain."""
        return cls(DomainTag.MATRIX, d)

    @property
    def commutative_with_constants(self) -> bool:
        """Use to check whether constants commute with every element, so blocks may be multiplied in any order."""
        return self.tag is not DomainTag.MATRIX

    def zero(self) -> Scalar:
        """Use to get the additive identity of the domain."""
        if self.tag is DomainTag.POLY:
            return Poly()
        if self.tag is DomainTag.MATRIX:
            return RatMatrix.zeros(self.dimension)
        return Fraction(0)

    def one(self) -> Scalar:
        """Use to get the multiplicative identity of the domain."""
        if self.tag is DomainTag.POLY:
            return Poly.constant(1)
        if self.tag is DomainTag.MATRIX:
            return RatMatrix.identity(self.dimension)
        return Fraction(1)

    def __str__(self) -> str:
        if self.tag is DomainTag.MATRIX:
            return f"matrix({self.dimension})"
        return self.tag.value


def is_zero(value: Scalar) -> bool:
    """Use to test a scalar of any domain for exact zero."""
    if isinstance(value, (Poly, RatMatrix)):
        return value.is_zero()
    return value == 0
