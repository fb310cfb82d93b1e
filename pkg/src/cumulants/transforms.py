"""Use to move between moments and weighted cumulants.

The weighted moment-cumulant formula reads F(a_1⋯a_n) = Σ_π ω(π)·c_π(a_1,…,a_n),
summed over the partitions where the weight is nonzero. Solving it for the
top-block cumulant is triangular in n; each solver memoizes per word (or per
tuple of matrix arguments) for the life of one transform call.
"""
from __future__ import annotations

import math
from itertools import product
from typing import TYPE_CHECKING

from src.algebra.scalars import RatMatrix, Scalar, is_zero
from src.cumulants.extensions import mult_ext_commutative, mult_ext_nested, nested_extension
from src.cumulants.functional import CONSTANT_SYMBOL, MatrixFunctional, MomentFunctional, TabulatedFunctional, Word
from src.cumulants.table import CumulantTable
from src.partitions.families import FamilyId, enumerate_family
from src.partitions.partition import Partition
from src.poset.family_poset import NotALatticeError, family_poset
from src.weights.catalogue import WeightId, evaluate, weight_support

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

MOEBIUS_FAMILIES = (FamilyId.ALL, FamilyId.NC, FamilyId.INTERVAL, FamilyId.ALMOST_INTERVAL)


def check_invertible(w: WeightId, max_order: int) -> None:
    """Use to raise when ω(1_n) = 0 for some n ≤ max_order."""
    for n in range(1, max_order + 1):
        if evaluate(w, Partition.full(n)) == 0:
            error = f"Weight {w.name} is not invertible: ω(1_{n}) = 0, cumulants of order {n} are undefined."
            raise ValueError(error)


class CumulantSolver:
    """Use this class to solve ω(1_n)·c_{1_n} = F − Σ_{π≠1_n} ω(π)·c_π lazily, one word at a time."""

    def __init__(self, functional: MomentFunctional, weight: WeightId, max_order: int) -> None:
        """Use to bind a functional to a weight; the weight must be invertible up to max_order."""
        if max_order < 1:
            error = f"max_order must be at least 1, got {max_order}."
            raise ValueError(error)
        check_invertible(weight, max_order)
        if not functional.domain.commutative_with_constants and not weight.inside_nc:
            error = f"Weight {weight.name} is supported off NC; nested cumulants need non-crossing partitions."
            raise ValueError(error)
        self.functional = functional
        self.weight = weight
        self.max_order = max_order
        self._memo: dict[Word, Scalar] = {}
        self._matrix_memo: dict[tuple, RatMatrix] = {}

    def _check_order(self, n: int) -> None:
        if n > self.max_order:
            error = f"Order {n} exceeds the solver cap {self.max_order}."
            raise ValueError(error)

    def _inverse_top(self, n: int) -> Scalar:
        return 1 / evaluate(self.weight, Partition.full(n))

    def cumulant(self, word: Sequence[str]) -> Scalar:
        """Use to get c_{1_n}(a_{w1},…,a_{wn}) for a word over the alphabet and the constant symbol."""
        word = self.functional.check_word(word)
        if not self.functional.domain.commutative_with_constants:
            return self.matrix_cumulant(tuple(self.functional.matrix_of(s) for s in word))
        if word in self._memo:
            return self._memo[word]
        n = len(word)
        self._check_order(n)
        top = Partition.full(n)
        rest = self.functional.moment(word)
        for p, omega in weight_support(self.weight, n):
            if p == top:
                continue
            factors = [self.cumulant(p.restrict(word, block)) for block in p.blocks]
            if any(is_zero(f) for f in factors):
                continue
            rest = rest - omega * math.prod(factors[1:], start=factors[0])
        value = rest * self._inverse_top(n)
        self._memo[word] = value
        return value

    def matrix_cumulant(self, args: tuple[RatMatrix, ...]) -> RatMatrix:
        """Use to get c_{1_n}(a_1,…,a_n) on arbitrary matrix arguments through the nested extension."""
        if not isinstance(self.functional, MatrixFunctional):
            error = "Matrix cumulants need a matrix functional."
            raise TypeError(error)
        key = tuple(a.key() for a in args)
        if key in self._matrix_memo:
            return self._matrix_memo[key]
        n = len(args)
        self._check_order(n)
        top = Partition.full(n)
        rest = self.functional.evaluate_product(args)
        for p, omega in weight_support(self.weight, n):
            if p == top:
                continue
            term = nested_extension(p, args, lambda a: self.matrix_cumulant(tuple(a)), lambda v, a: v @ a, lambda a, v: a @ v)
            rest = rest - omega * term
        value = rest * self._inverse_top(n)
        self._matrix_memo[key] = value
        return value


def _table_words(alphabet: Sequence[str], max_order: int, *, include_constant: bool) -> list[Word]:
    symbols = (*alphabet, CONSTANT_SYMBOL) if include_constant else tuple(alphabet)
    return [w for order in range(1, max_order + 1) for w in product(symbols, repeat=order)]


def moments_to_cumulants(functional: MomentFunctional,
                         weight: WeightId,
                         max_order: int,
                         *,
                         include_constant: bool = False) -> CumulantTable:
    """Use to solve every top-block cumulant up to max_order.

    With ``include_constant`` the table also holds words containing the constant
    symbol, which is what the constants-independence check inspects.
    """
    solver = CumulantSolver(functional, weight, max_order)
    table = CumulantTable(weight, functional.domain, functional.alphabet, max_order, include_constant=include_constant)
    if isinstance(functional, MatrixFunctional):
        table.functional = functional
        table.matrix_cumulant = solver.matrix_cumulant
    for word in _table_words(functional.alphabet, max_order, include_constant=include_constant):
        table.entries[word] = solver.cumulant(word)
    return table


def cumulants_to_moments(c: CumulantTable, max_order: int) -> TabulatedFunctional:
    """Use to sum F(word) = Σ_π ω(π)·c_π(word) directly; needs no invertibility."""
    if max_order > c.max_order:
        error = f"Table holds cumulants up to order {c.max_order}, moments up to {max_order} were asked."
        raise ValueError(error)
    values: dict[Word, Scalar] = {}
    for word in _table_words(c.alphabet, max_order, include_constant=False):
        total = c.domain.zero()
        for p, omega in weight_support(c.weight, len(word)):
            if c.domain.commutative_with_constants:
                term = mult_ext_commutative(c, p, word)
            else:
                term = mult_ext_nested(c, p, word)
            total = total + omega * term
        values[word] = total
    return TabulatedFunctional(c.alphabet, c.domain, values, name=f"moments[{c.weight.name}]")


def moment_product(functional: MomentFunctional, p: Partition, word: Sequence[str]) -> Scalar:
    """Use to get F_π(word) = ∏_V F(word|V) in a commutative domain."""
    factors = [functional.moment(p.restrict(word, block)) for block in p.blocks]
    return math.prod(factors[1:], start=factors[0])


def moebius_inversion_cumulants(functional: MomentFunctional,
                                family: FamilyId,
                                max_order: int,
                                *,
                                include_constant: bool = False) -> CumulantTable:
    """Use to compute c_{1_n}(word) = Σ_{π∈f(n)} μ_f(π, 1_n)·F_π(word) without solving.

    Only families whose lower intervals factor over blocks are accepted, and each
    family poset must be a lattice at every order used.
    """
    if not functional.domain.commutative_with_constants:
        error = f"Möbius inversion needs commuting constants, got the {functional.domain} domain."
        raise ValueError(error)
    if family not in MOEBIUS_FAMILIES:
        allowed = ", ".join(f.value for f in MOEBIUS_FAMILIES)
        error = f"Möbius inversion is not available for family {family.value}; use one of {allowed}."
        raise ValueError(error)

    columns: dict[int, tuple[tuple[Partition, ...], list]] = {}
    for n in range(1, max_order + 1):
        poset = family_poset(family, n)
        if not poset.is_lattice:
            error = f"{family.value}({n}) is not a lattice here."
            raise NotALatticeError(error)
        mu = poset.moebius_column(poset.top)
        columns[n] = (poset.elements, list(mu))

    table = CumulantTable(WeightId.ind(family), functional.domain, functional.alphabet, max_order, include_constant=include_constant)
    for word in _table_words(functional.alphabet, max_order, include_constant=include_constant):
        elements, mu = columns[len(word)]
        total = functional.domain.zero()
        for p, m in zip(elements, mu, strict=True):
            if m != 0:
                total = total + m * moment_product(functional, p, word)
        table.entries[word] = total
    return table


def moments_by_summation(cumulant_of: Callable[[Word], Scalar],
                         family: FamilyId,
                         word: Sequence[str],
                         one: Scalar) -> Scalar:
    """Use to sum ∏_V κ(word|V) over every member of family(n) by brute force; a reference for faster expansions."""
    total = one * 0
    for p in enumerate_family(family, len(word)):
        term = one
        for block in p.blocks:
            term = term * cumulant_of(p.restrict(word, block))
        total = total + term
    return total
