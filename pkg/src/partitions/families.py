"""Use to enumerate and test membership in the six partition families.

Every family is produced by one restricted-growth-string generator. Families
inside NC run it with non-crossing pruning; membership predicates then filter.
"""
from __future__ import annotations

import math
from enum import Enum
from functools import lru_cache
from typing import TYPE_CHECKING

from src.partitions.partition import (
    Partition,
    is_cyclic_interval,
    is_interval,
    is_noncrossing,
    remove_singletons,
)
from src.utilis.helper import get_param

if TYPE_CHECKING:
    from collections.abc import Iterator


class FamilyId(Enum):
    """Identifiers of the partition families."""

    ALL = "all"
    NC = "nc"
    INTERVAL = "interval"
    CYCLIC_INTERVAL = "cyclic-interval"
    ALMOST_INTERVAL = "almost-interval"
    ALMOST_CYCLIC_INTERVAL = "almost-cyclic-interval"

    @classmethod
    def parse(cls, text: str) -> FamilyId:
        """Use to resolve a family name or alias such as "ci" or "almost-interval"."""
        key = text.strip().lower().replace("_", "-")
        if key in _ALIASES:
            return _ALIASES[key]
        error = f"Unknown family '{text}'. Known: {', '.join(sorted(_ALIASES))}."
        raise ValueError(error)

    @property
    def base(self) -> FamilyId | None:
        """Use to get the family that RS must land in for the ALMOST_* families."""
        return {
            FamilyId.ALMOST_INTERVAL: FamilyId.INTERVAL,
            FamilyId.ALMOST_CYCLIC_INTERVAL: FamilyId.CYCLIC_INTERVAL,
        }.get(self)

    @property
    def inside_nc(self) -> bool:
        """Use to check whether every member is non-crossing."""
        return self is not FamilyId.ALL


_ALIASES = {
    "all": FamilyId.ALL,
    "p": FamilyId.ALL,
    "nc": FamilyId.NC,
    "interval": FamilyId.INTERVAL,
    "i": FamilyId.INTERVAL,
    "cyclic-interval": FamilyId.CYCLIC_INTERVAL,
    "ci": FamilyId.CYCLIC_INTERVAL,
    "almost-interval": FamilyId.ALMOST_INTERVAL,
    "ai": FamilyId.ALMOST_INTERVAL,
    "almost-cyclic-interval": FamilyId.ALMOST_CYCLIC_INTERVAL,
    "aci": FamilyId.ALMOST_CYCLIC_INTERVAL,
}


def contains(f: FamilyId, p: Partition) -> bool:
    """Use to test membership of p in family f."""
    if f is FamilyId.ALL:
        return True
    if f is FamilyId.NC:
        return is_noncrossing(p)
    if f is FamilyId.INTERVAL:
        return is_interval(p)
    if f is FamilyId.CYCLIC_INTERVAL:
        return is_cyclic_interval(p)
    return is_noncrossing(p) and contains(f.base, remove_singletons(p))


def restricted_growth_strings(n: int, *, noncrossing: bool = False) -> Iterator[tuple[int, ...]]:
    """Use to generate every restricted growth string of length n, optionally only non-crossing ones.

    With pruning, position i may join block b only if every block holding an element after
    b's last one starts after it; those blocks are then closed for good.
    """
    labels = [0] * n
    first: list[int] = []
    last: list[int] = []
    closed: list[bool] = []

    def place(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(labels)
            return
        for b in range(len(first)):
            newly_closed = []
            if noncrossing:
                if closed[b]:
                    continue
                later = [c for c in range(len(first)) if c != b and last[c] > last[b]]
                if any(first[c] < last[b] for c in later):
                    continue
                newly_closed = [c for c in later if not closed[c]]
            labels[i] = b
            previous = last[b]
            last[b] = i
            for c in newly_closed:
                closed[c] = True
            yield from place(i + 1)
            for c in newly_closed:
                closed[c] = False
            last[b] = previous

        labels[i] = len(first)
        first.append(i)
        last.append(i)
        closed.append(False)
        yield from place(i + 1)
        first.pop()
        last.pop()
        closed.pop()

    if n >= 1:
        yield from place(0)


def _check_size(n: int, max_n: int | None) -> None:
    cap = max_n if max_n is not None else get_param("enumeration", "max_n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        error = f"Family size must be a positive integer, got {n!r}."
        raise ValueError(error)
    if n > cap:
        error = f"Size {n} exceeds the enumeration cap {cap}."
        raise ValueError(error)


def iter_family(f: FamilyId, n: int, *, max_n: int | None = None) -> Iterator[Partition]:
    """Use to stream the members of f(n) in generator order without materializing them."""
    _check_size(n, max_n)
    for rgs in restricted_growth_strings(n, noncrossing=f.inside_nc):
        p = Partition.from_rgs(rgs)
        if f in (FamilyId.ALL, FamilyId.NC) or contains(f, p):
            yield p


@lru_cache(maxsize=None)
def _enumerate(f: FamilyId, n: int) -> tuple[Partition, ...]:
    return tuple(sorted(iter_family(f, n, max_n=n)))


def enumerate_family(f: FamilyId, n: int, *, max_n: int | None = None) -> tuple[Partition, ...]:
    """Use to list all members of f(n), each once, sorted by canonical form."""
    _check_size(n, max_n)
    return _enumerate(f, n)


def cardinality(f: FamilyId, n: int, *, max_n: int | None = None) -> int:
    """Use to count the members of f(n)."""
    return sum(1 for _ in iter_family(f, n, max_n=max_n))


def bell(n: int) -> int:
    """Use to compute the Bell number B_n with the Bell triangle."""
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[-1]


def catalan(n: int) -> int:
    """Use to compute the Catalan number C_n."""
    return math.comb(2 * n, n) // (n + 1)


def fibonacci(k: int) -> int:
    """Use to compute F_k with F_1 = F_2 = 1."""
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def closed_form(f: FamilyId, n: int) -> int | None:
    """Use to get the known closed-form size of f(n); none is known for the almost-cyclic-interval family."""
    return {
        FamilyId.ALL: bell(n),
        FamilyId.NC: catalan(n),
        FamilyId.INTERVAL: 2 ** (n - 1),
        FamilyId.CYCLIC_INTERVAL: 2**n - n,
        FamilyId.ALMOST_INTERVAL: fibonacci(2 * n - 1),
    }.get(f)


def first_right_neighbour(p: Partition) -> int:
    """Use to get the element following 1 in its block, or 1 when {1} is a singleton."""
    block = p.blocks[0]
    return block[1] if len(block) > 1 else 1


def almost_interval_classes(n: int, *, max_n: int | None = None) -> dict[int, int]:
    """Use to count Ĩ(n) by the first right-neighbour of 1 (class 1 means {1} is a singleton)."""
    counts = dict.fromkeys(range(1, n + 1), 0)
    for p in enumerate_family(FamilyId.ALMOST_INTERVAL, n, max_n=max_n):
        counts[first_right_neighbour(p)] += 1
    return counts
