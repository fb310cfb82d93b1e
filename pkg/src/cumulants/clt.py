"""Use to compute exact moments of normalised sums of independent copies.

Cumulants of a sum of N independent copies are N times the cumulants of one
copy, for the cumulants that linearise the independence at hand (interval for
boolean, almost-interval for Fermi-boolean). The normalised sum keeps the first
cumulant and scales the k-th one by N^{1-k/2}.
"""
from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING

from src.algebra.scalars import ScalarDomain, is_zero
from src.cumulants.functional import TabulatedFunctional
from src.cumulants.table import CumulantTable
from src.cumulants.transforms import cumulants_to_moments, moments_to_cumulants
from src.partitions.families import FamilyId
from src.utilis.helper import get_constant
from src.weights.catalogue import WeightId

if TYPE_CHECKING:
    from src.algebra.scalars import Scalar
    from src.cumulants.functional import MomentFunctional


class CLTKind(Enum):
    """Independence kinds with a central limit computation."""

    BOOLEAN = "boolean"
    FERMI_BOOLEAN = "fermi-boolean"

    @property
    def weight(self) -> WeightId:
        """Use to get the indicator weight whose cumulants add up over independent copies."""
        return WeightId.ind(FamilyId.INTERVAL if self is CLTKind.BOOLEAN else FamilyId.ALMOST_INTERVAL)


def _scale(k: int, n_copies: int) -> Fraction:
    """Use to get N^{1-k/2} exactly; odd k needs N to be a perfect square."""
    if k % 2 == 0:
        return Fraction(1, n_copies ** (k // 2 - 1))
    root = math.isqrt(n_copies)
    if root * root != n_copies:
        error = f"Odd cumulant of order {k} is nonzero and N={n_copies} is not a perfect square; √N is irrational."
        raise ValueError(error)
    return Fraction(root, n_copies ** ((k - 1) // 2))


def clt_moments(kind: CLTKind,
                marginal: MomentFunctional,
                n_copies: int,
                max_order: int,
                *,
                allow_non_centered: bool = False) -> list[Scalar]:
    """Use to get the moments m_1..m_max_order of the normalised sum of n_copies independent copies.

    Boolean sums are only normalised for centred copies unless ``allow_non_centered``
    is set, since shifting by a constant changes every boolean cumulant.
    """
    if len(marginal.alphabet) != 1:
        error = f"CLT moments need a single-symbol marginal, got alphabet {list(marginal.alphabet)}."
        raise ValueError(error)
    if not marginal.domain.commutative_with_constants:
        error = f"CLT moments need a commutative domain, got {marginal.domain}."
        raise ValueError(error)
    if n_copies < 1:
        error = f"N must be a positive integer, got {n_copies}."
        raise ValueError(error)

    symbol = marginal.alphabet[0]
    table = moments_to_cumulants(marginal, kind.weight, max_order)
    mean = table.value((symbol,))
    if kind is CLTKind.BOOLEAN and not is_zero(mean) and not allow_non_centered:
        error = f"Boolean CLT expects a centred marginal, got mean {mean}; pass allow_non_centered to keep the mean."
        raise ValueError(error)

    scaled = {(symbol,): mean}
    for k in range(2, max_order + 1):
        word = (symbol,) * k
        value = table.value(word)
        scaled[word] = value if is_zero(value) else _scale(k, n_copies) * value
    summed = CumulantTable.from_values(kind.weight, marginal.domain, marginal.alphabet, max_order, scaled)
    moments = cumulants_to_moments(summed, max_order)
    return [moments.moment((symbol,) * k) for k in range(1, max_order + 1)]


def shifted_bernoulli_moments(mean: Fraction, variance: Fraction, max_order: int) -> list[Fraction]:
    """Use to get the moments of mean + ε·√variance with ε = ±1 equally likely.

    Only even powers of ε survive, so E[X^n] = Σ_{k even} C(n, k)·mean^{n-k}·variance^{k/2}.
    """
    mean, variance = Fraction(mean), Fraction(variance)
    return [
        sum((math.comb(n, k) * mean ** (n - k) * variance ** (k // 2) for k in range(0, n + 1, 2)), Fraction(0))
        for n in range(1, max_order + 1)
    ]


def reference_marginal(kind: CLTKind, max_order: int) -> TabulatedFunctional:
    """Use to get the one-symbol marginal kept in the reference constants for each CLT kind.

    The boolean marginal is given by its moments, the Fermi-boolean one by its
    almost-interval cumulants.
    """
    key = "clt_boolean_moments" if kind is CLTKind.BOOLEAN else "clt_fermi_cumulants"
    values = [Fraction(v) for v in get_constant("reference", key)]
    if max_order > len(values):
        error = f"The {kind.value} reference marginal is known up to order {len(values)}, order {max_order} was asked."
        raise ValueError(error)
    words = {("x",) * k: v for k, v in enumerate(values[:max_order], start=1)}
    domain = ScalarDomain.rational()
    if kind is CLTKind.BOOLEAN:
        return TabulatedFunctional(("x",), domain, words, name="boolean-clt")
    table = CumulantTable.from_values(kind.weight, domain, ("x",), max_order, words)
    return cumulants_to_moments(table, max_order)
