"""Use to build the nesting forest of a non-crossing partition drawn on a circle.

Points 1..n sit equally spaced on a circle. The gaps of a block are the arcs
between its cyclically consecutive elements; a block whose gaps are all at most
half the circle contains the centre and is the unique root. Any other block C
sits behind D when C lies in a gap of D that does not face the centre (a gap is
facing the centre when it is longer than half the circle). The parent of C is
the candidate D lying behind every other candidate, i.e. the closest one.
"""
from src.partitions.partition import Block, NestingForest, Partition, is_noncrossing


def _gaps(block: Block, n: int) -> list[tuple[int, int, int]]:
    """Return (start, end, length) for each gap of a block, the wrap-around gap last."""
    gaps = [(a, b, b - a) for a, b in zip(block, block[1:], strict=False)]
    gaps.append((block[-1], block[0], n - block[-1] + block[0]))
    return gaps


def _gap_containing(block: Block, n: int, element: int) -> tuple[int, int, int]:
    for start, end, length in _gaps(block, n)[:-1]:
        if start < element < end:
            return start, end, length
    return _gaps(block, n)[-1]


def contains_centre(block: Block, n: int) -> bool:
    """Use to check whether a block's convex hull contains the circle centre."""
    return all(2 * length <= n for _, _, length in _gaps(block, n))


def is_behind(inner: Block, outer: Block, n: int) -> bool:
    """Use to check whether inner lies in a gap of outer that does not face the centre."""
    _, _, length = _gap_containing(outer, n, inner[0])
    return 2 * length <= n


def cyclic_nesting_forest(p: Partition) -> NestingForest:
    """Use to build the circle nesting forest of a non-crossing partition."""
    if not is_noncrossing(p):
        error = f"Cyclic nesting forest needs a non-crossing partition, got {p}."
        raise ValueError(error)
    blocks = p.blocks
    parents: list[int | None] = []
    for i, block in enumerate(blocks):
        candidates = [j for j, other in enumerate(blocks) if j != i and is_behind(block, other, p.n)]
        parent = None
        for j in candidates:
            if all(k == j or is_behind(blocks[j], blocks[k], p.n) for k in candidates):
                parent = j
                break
        parents.append(parent)
    return NestingForest.from_parents(blocks, parents)
