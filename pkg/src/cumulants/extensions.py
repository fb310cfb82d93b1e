"""Use to extend top-block cumulants multiplicatively to arbitrary partitions.

Commutative extension: multiply the block values. Nested extension: repeatedly
collapse an interval block into a constant and attach it to a neighbouring
argument, which is the only meaningful reading when constants do not commute.
"""
from __future__ import annotations

import math
from typing import TYPE_CHECKING, Literal, TypeVar

from src.algebra.scalars import Scalar, is_zero
from src.partitions.partition import Partition, is_noncrossing

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from src.cumulants.table import CumulantTable

Arg = TypeVar("Arg")
Side = Literal["right", "left"]


def _check_shape(p: Partition, size: int) -> None:
    if p.n != size:
        error = f"Partition of {{1..{p.n}}} applied to {size} arguments."
        raise ValueError(error)


def mult_ext_commutative(c: CumulantTable, p: Partition, word: Sequence[str]) -> Scalar:
    """Use to get ∏_V c(word|V), legal only when constants commute."""
    if not c.domain.commutative_with_constants:
        error = f"Commutative multiplicative extension is not defined on the {c.domain} domain."
        raise ValueError(error)
    _check_shape(p, len(word))
    factors = []
    for block in p.blocks:
        value = c.value(p.restrict(word, block))
        if is_zero(value):
            return c.domain.zero()
        factors.append(value)
    return math.prod(factors[1:], start=factors[0])


def nested_extension(p: Partition,
                     args: Sequence[Arg],
                     block_value: Callable[[Sequence[Arg]], Scalar],
                     left_mult: Callable[[Scalar, Arg], Arg],
                     right_mult: Callable[[Arg, Scalar], Arg],
                     side: Side = "right") -> Scalar:
    """Use to evaluate a non-crossing partition by collapsing interval blocks one at a time.

    The leftmost interval block is collapsed first. Its value is attached to the next
    argument on the right (``side="right"``), or to the previous one on the left
    (``side="left"``); when no neighbour exists on that side the other side is used.
    """
    _check_shape(p, len(args))
    if not is_noncrossing(p):
        error = f"Nested extension needs a non-crossing partition, got {p}."
        raise ValueError(error)

    owner = list(p.block_of)
    values = list(args)
    while len(set(owner)) > 1:
        for label in dict.fromkeys(owner):
            positions = [k for k, o in enumerate(owner) if o == label]
            if positions[-1] - positions[0] + 1 == len(positions):
                break
        start, end = positions[0], positions[-1] + 1
        value = block_value(values[start:end])
        del values[start:end]
        del owner[start:end]
        attach_right = start < len(values) if side == "right" else start == 0
        if attach_right:
            values[start] = left_mult(value, values[start])
        else:
            values[start - 1] = right_mult(values[start - 1], value)
    return block_value(values)


def mult_ext_nested(c: CumulantTable, p: Partition, word: Sequence[str], side: Side = "right") -> Scalar:
    """Use to get the nested multiplicative extension c_π(word) from a cumulant table."""
    if c.domain.commutative_with_constants:
        def block_value(args: Sequence[tuple[Scalar, str]]) -> Scalar:
            coefficient = math.prod((a[0] for a in args[1:]), start=args[0][0])
            return coefficient * c.value(tuple(a[1] for a in args))

        one = c.domain.one()
        return nested_extension(
            p,
            [(one, s) for s in word],
            block_value,
            lambda v, a: (v * a[0], a[1]),
            lambda a, v: (a[0] * v, a[1]),
            side,
        )

    if c.functional is None or c.matrix_cumulant is None:
        error = "Matrix-domain table carries no functional to evaluate nested cumulants."
        raise ValueError(error)
    args = [c.functional.matrix_of(s) for s in word]
    return nested_extension(
        p,
        args,
        lambda a: c.matrix_cumulant(tuple(a)),
        lambda v, a: v @ a,
        lambda a, v: a @ v,
        side,
    )
