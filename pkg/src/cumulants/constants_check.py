"""Use to check that cumulants vanish as soon as one argument is a constant.

Three instruments:

- ``constants_independence_check`` solves the cumulants of a generic (POLY),
  random rational or random matrix functional and inspects every word that
  contains the constant symbol;
- ``cancellation_audit`` replays the induction behind the vanishing term by term;
- ``balancedness_check`` compares left and right attachment in the nested extension.
"""
from __future__ import annotations

from itertools import product
from typing import TYPE_CHECKING

import numpy as np

from src.algebra.scalars import DomainTag, ScalarDomain, is_zero
from src.cumulants.extensions import mult_ext_commutative, mult_ext_nested
from src.cumulants.functional import (
    CONSTANT_SYMBOL,
    GenericFunctional,
    MatrixFunctional,
    MomentFunctional,
    random_rational_functional,
    strip_constants,
    word_text,
)
from src.cumulants.transforms import moments_to_cumulants
from src.partitions.families import FamilyId, enumerate_family
from src.partitions.partition import Partition, format_partition, insert_singleton
from src.poset.structure import StructureCheck
from src.weights.catalogue import WeightId, evaluate

if TYPE_CHECKING:
    from collections.abc import Sequence

MAX_WITNESSES = 10


def _functionals(domain: ScalarDomain, alphabet: Sequence[str], max_order: int, seed: int, seeds: int, bound: int) -> list[MomentFunctional]:
    if domain.tag is DomainTag.POLY:
        return [GenericFunctional(alphabet)]
    rngs = [np.random.default_rng(seed + k) for k in range(seeds)]
    if domain.tag is DomainTag.MATRIX:
        return [MatrixFunctional.random(alphabet, domain.dimension, rng, bound) for rng in rngs]
    return [random_rational_functional(alphabet, max_order, rng, bound) for rng in rngs]


def constants_independence_check(w: WeightId,
                                 max_order: int,
                                 domain: ScalarDomain,
                                 *,
                                 alphabet: Sequence[str] = ("x", "y"),
                                 seed: int = 0,
                                 seeds: int = 1,
                                 bound: int = 5) -> StructureCheck:
    """Use to verify c_{1_n}(…, 1, …) = 0 for every word of length 2..max_order containing the constant symbol.

    POLY uses the fully generic functional (exact polynomial identity). RATIONAL and
    MATRIX draw ``seeds`` random functionals starting from ``seed``. Violations are
    reported as witnesses, never raised.
    """
    check = StructureCheck(f"constants {w.name} {domain} order≤{max_order}")
    check.details = {"weight": w.name, "domain": str(domain), "max_order": max_order, "witnesses": []}
    for k, functional in enumerate(_functionals(domain, alphabet, max_order, seed, seeds, bound)):
        table = moments_to_cumulants(functional, w, max_order, include_constant=True)
        for word in table.constant_words():
            check.checked += 1
            value = table.value(word)
            if is_zero(value):
                continue
            if check.holds:
                check.fail(word=word_text(word), value=value, sample=k)
            if len(check.details["witnesses"]) < MAX_WITNESSES:
                check.details["witnesses"].append({"word": word_text(word), "value": str(value), "sample": k})
    return check


def cancellation_audit(w: WeightId, max_order: int, *, alphabet: Sequence[str] = ("x",)) -> StructureCheck:
    """Use to replay the vanishing argument term by term on the generic functional.

    For a word with the constant at position r, every term of the moment-cumulant
    sum whose partition has {r} as a singleton must equal its Ψ_r-preimage term on
    the word without the constant, and every other term below the top must vanish.
    Both facts together force the top cumulant to be zero.
    """
    check = StructureCheck(f"cancellation-audit {w.name} order≤{max_order}")
    check.details = {"paired": 0, "vanishing": 0}
    table = moments_to_cumulants(GenericFunctional(alphabet), w, max_order, include_constant=True)
    pool = FamilyId.NC if w.inside_nc else FamilyId.ALL
    for n in range(2, max_order + 1):
        top = Partition.full(n)
        for r in range(1, n + 1):
            for rest in product(alphabet, repeat=n - 1):
                word = (*rest[: r - 1], CONSTANT_SYMBOL, *rest[r - 1:])
                images = set()
                for sigma in enumerate_family(pool, n - 1):
                    image = insert_singleton(sigma, r)
                    images.add(image)
                    lhs = evaluate(w, image) * mult_ext_commutative(table, image, word)
                    rhs = evaluate(w, sigma) * mult_ext_commutative(table, sigma, strip_constants(word))
                    check.checked += 1
                    check.details["paired"] += 1
                    if lhs != rhs:
                        check.fail(word=word_text(word), r=r, partition=format_partition(image), lhs=lhs, rhs=rhs)
                        return check
                for p in enumerate_family(pool, n):
                    if p == top or p in images or evaluate(w, p) == 0:
                        continue
                    term = mult_ext_commutative(table, p, word)
                    check.checked += 1
                    check.details["vanishing"] += 1
                    if not is_zero(term):
                        check.fail(word=word_text(word), r=r, partition=format_partition(p), term=term)
                        return check
    return check


def balancedness_check(w: WeightId,
                       max_order: int,
                       *,
                       dimension: int = 3,
                       alphabet: Sequence[str] = ("x", "y"),
                       seed: int = 0,
                       seeds: int = 1,
                       bound: int = 5) -> StructureCheck:
    """Use to check that left and right attachment give the same nested extension on every NC(n), n ≤ max_order."""
    check = StructureCheck(f"balancedness {w.name} matrix({dimension}) order≤{max_order}")
    for k in range(seeds):
        functional = MatrixFunctional.random(alphabet, dimension, np.random.default_rng(seed + k), bound)
        table = moments_to_cumulants(functional, w, max_order)
        for n in range(1, max_order + 1):
            for p in enumerate_family(FamilyId.NC, n):
                for word in product(alphabet, repeat=n):
                    check.checked += 1
                    right = mult_ext_nested(table, p, word, side="right")
                    left = mult_ext_nested(table, p, word, side="left")
                    if right != left:
                        check.fail(partition=format_partition(p), word=word_text(word), sample=k)
                        return check
    return check
