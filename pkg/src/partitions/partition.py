"""Use to represent set partitions of {1..n} and the elementary maps on them.

Blocks are stored as sorted tuples ordered by their minimum element, so equality,
hashing and ordering are structural and a Partition can key any cache.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import TYPE_CHECKING

from src.utilis.helper import get_constant

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

BLOCK_SEPARATOR = str(get_constant("symbols", "block_separator"))
ELEMENT_SEPARATOR = str(get_constant("symbols", "element_separator"))

Block = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Partition:
    """A set partition of {1..n}; n = 0 only for the empty partition produced by singleton removal."""

    n: int
    blocks: tuple[Block, ...]

    @classmethod
    def full(cls, n: int) -> Partition:
        """Use to get the one-block partition 1_n."""
        return cls(n, (tuple(range(1, n + 1)),))

    @classmethod
    def singletons(cls, n: int) -> Partition:
        """Use to get the all-singleton partition 0_n."""
        return cls(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def empty(cls) -> Partition:
        """Use to get the partition of the empty set."""
        return cls(0, ())

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> Partition:
        """Use to build a partition from a restricted growth string (0-based block labels)."""
        groups: dict[int, list[int]] = {}
        for position, label in enumerate(rgs, start=1):
            groups.setdefault(label, []).append(position)
        return cls(len(rgs), tuple(tuple(groups[label]) for label in sorted(groups)))

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        """Use to map element i (index i-1) to the index of its block."""
        owner = [0] * self.n
        for index, block in enumerate(self.blocks):
            for element in block:
                owner[element - 1] = index
        return tuple(owner)

    @cached_property
    def pair_mask(self) -> int:
        """Use to encode the set of pairs i<j sharing a block as a bitmask."""
        mask = 0
        for block in self.blocks:
            for i, j in combinations(block, 2):
                mask |= 1 << pair_index(i, j)
        return mask

    @property
    def num_blocks(self) -> int:
        """Use to get the number of blocks."""
        return len(self.blocks)

    @property
    def is_pairing(self) -> bool:
        """Use to check whether every block has exactly two elements."""
        return all(len(block) == 2 for block in self.blocks)

    def singleton_positions(self) -> tuple[int, ...]:
        """Use to list the elements forming singleton blocks."""
        return tuple(block[0] for block in self.blocks if len(block) == 1)

    def restrict(self, word: Sequence[str], block: Block) -> tuple[str, ...]:
        """Use to read the letters of a word at the positions of one block."""
        return tuple(word[i - 1] for i in block)

    def __str__(self) -> str:
        return format_partition(self)


def pair_index(i: int, j: int) -> int:
    """Use to number the pair i<j (1-based) as 0, 1, 2, ... in colex order."""
    return (j - 1) * (j - 2) // 2 + (i - 1)


def new_partition(n: int, blocks: Iterable[Iterable[int]]) -> Partition:
    """Use to validate blocks claiming to partition {1..n} and return the canonical Partition."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        error = f"Partition size must be a positive integer, got {n!r}."
        raise ValueError(error)

    seen: set[int] = set()
    canonical = []
    for raw in blocks:
        block = sorted(raw)
        if not block:
            error = f"Empty block in partition of {{1..{n}}}."
            raise ValueError(error)
        for element in block:
            if isinstance(element, bool) or not isinstance(element, int) or not 1 <= element <= n:
                error = f"Element {element!r} out of range 1..{n}."
                raise ValueError(error)
            if element in seen:
                error = f"Element {element} repeated."
                raise ValueError(error)
            seen.add(element)
        canonical.append(tuple(block))

    missing = [i for i in range(1, n + 1) if i not in seen]
    if missing:
        error = f"Element {missing[0]} uncovered."
        raise ValueError(error)
    return Partition(n, tuple(sorted(canonical)))


def parse_partition(text: str, n: int | None = None) -> Partition:
    """Use to parse the text form "1,3/2,4"; n defaults to the largest element."""
    text = text.strip()
    if not text:
        error = "Empty partition text."
        raise ValueError(error)
    blocks = []
    for chunk in text.split(BLOCK_SEPARATOR):
        try:
            blocks.append([int(item) for item in chunk.split(ELEMENT_SEPARATOR) if item.strip()])
        except ValueError as exc:
            error = f"Invalid partition text {text!r}: {exc}"
            raise ValueError(error) from exc
    size = n if n is not None else max((max(b) for b in blocks if b), default=0)
    return new_partition(size, blocks)


def format_partition(p: Partition) -> str:
    """Use to render a partition in the "1,3/2,4" text form."""
    return BLOCK_SEPARATOR.join(ELEMENT_SEPARATOR.join(str(e) for e in block) for block in p.blocks)


def _arcs(p: Partition) -> list[tuple[int, int, int]]:
    return [(a, b, index) for index, block in enumerate(p.blocks) for a, b in zip(block, block[1:], strict=False)]


def is_noncrossing(p: Partition) -> bool:
    """Use to check that no two blocks interleave; consecutive-element arcs of distinct blocks suffice."""
    arcs = _arcs(p)
    for k, (a, b, u) in enumerate(arcs):
        for c, d, v in arcs[k + 1:]:
            if u != v and (a < c < b < d or c < a < d < b):
                return False
    return True


def is_interval(p: Partition) -> bool:
    """Use to check that every block is a run of consecutive integers."""
    return all(block[-1] - block[0] + 1 == len(block) for block in p.blocks)


def is_cyclic_interval(p: Partition) -> bool:
    """Use to check that every block is an arc of the cycle 1..n..1."""
    for block in p.blocks:
        members = set(block)
        exits = sum(1 for i in block if (i % p.n) + 1 not in members)
        if exits > 1:
            return False
    return True


def remove_singletons(p: Partition) -> Partition:
    """Use to delete singleton blocks and relabel the survivors order-isomorphically (RS)."""
    kept = [block for block in p.blocks if len(block) > 1]
    rank = {element: k for k, element in enumerate(sorted(e for block in kept for e in block), start=1)}
    return Partition(len(rank), tuple(tuple(rank[e] for e in block) for block in kept))


def insert_singleton(p: Partition, r: int) -> Partition:
    """Use to insert the singleton {r} and shift elements ≥ r up by one (the map Ψ_r)."""
    if not 1 <= r <= p.n + 1:
        error = f"Insertion position {r} out of range 1..{p.n + 1}."
        raise ValueError(error)
    shifted = [tuple(e + 1 if e >= r else e for e in block) for block in p.blocks]
    shifted.append((r,))
    return Partition(p.n + 1, tuple(sorted(shifted)))


def delete_singleton(p: Partition, r: int) -> Partition:
    """Use to invert insert_singleton: drop the singleton {r} and shift elements > r down."""
    if (r,) not in p.blocks:
        error = f"{{{r}}} is not a singleton block of {p}."
        raise ValueError(error)
    kept = [tuple(e - 1 if e > r else e for e in block) for block in p.blocks if block != (r,)]
    return Partition(p.n - 1, tuple(sorted(kept)))


def crossing_count(p: Partition) -> int:
    """Use to count quadruples a<b<c<d with a,c in one block and b,d in another."""
    count = 0
    for first, second in permutations(p.blocks, 2):
        for b, d in combinations(second, 2):
            before = sum(1 for a in first if a < b)
            between = sum(1 for c in first if b < c < d)
            count += before * between
    return count


def join_in_p(s: Partition, p: Partition) -> Partition:
    """Use to compute the join in the full partition lattice (transitive closure of both block relations)."""
    if s.n != p.n:
        error = f"Cannot join partitions of different sizes {s.n} and {p.n}."
        raise ValueError(error)
    parent = list(range(s.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in (*s.blocks, *p.blocks):
        root = find(block[0])
        for element in block[1:]:
            parent[find(element)] = root

    groups: dict[int, list[int]] = {}
    for element in range(1, s.n + 1):
        groups.setdefault(find(element), []).append(element)
    return Partition(s.n, tuple(sorted(tuple(g) for g in groups.values())))


@dataclass(frozen=True)
class NestingForest:
    """Use this class to hold a rooted forest on the blocks of a partition."""

    blocks: tuple[Block, ...]
    parent: tuple[int | None, ...]
    subtree_size: tuple[int, ...]

    @classmethod
    def from_parents(cls, blocks: Sequence[Block], parents: Sequence[int | None]) -> NestingForest:
        """Use to build a forest from a parent array, computing subtree sizes."""
        sizes = [0] * len(blocks)
        for node in range(len(blocks)):
            current: int | None = node
            steps = 0
            while current is not None:
                sizes[current] += 1
                current = parents[current]
                steps += 1
                if steps > len(blocks):
                    error = f"Parent array {list(parents)} contains a cycle."
                    raise ValueError(error)
        return cls(tuple(blocks), tuple(parents), tuple(sizes))

    @property
    def roots(self) -> tuple[int, ...]:
        """Use to list the nodes without a parent."""
        return tuple(i for i, parent in enumerate(self.parent) if parent is None)

    def children(self, node: int) -> tuple[int, ...]:
        """Use to list the children of a node."""
        return tuple(i for i, parent in enumerate(self.parent) if parent == node)


def nesting_forest(p: Partition) -> NestingForest:
    """Use to build the nesting forest of a non-crossing partition: parent is the innermost nesting block."""
    if not is_noncrossing(p):
        error = f"Nesting forest needs a non-crossing partition, got {p}."
        raise ValueError(error)
    parents: list[int | None] = []
    for block in p.blocks:
        nesting = [j for j, other in enumerate(p.blocks) if other[0] < block[0] and block[-1] < other[-1]]
        parents.append(max(nesting, key=lambda j: p.blocks[j][0]) if nesting else None)
    return NestingForest.from_parents(p.blocks, parents)


def tree_factorial(f: NestingForest) -> int:
    """Use to get the product of all subtree sizes."""
    return math.prod(f.subtree_size)
