"""Use to study a partition family as a sub-poset of the refinement order.

Each family f(n) becomes a FamilyPoset: a read-only boolean ``leq`` matrix over the
members (built from pair bitmasks), its cover relation, Möbius values by the
standard recursion, and joins/meets found by minimal-upper-bound search inside
the family, so lattice-hood is reported rather than assumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING

import graphviz
import networkx as nx
import numpy as np

from src.partitions.families import FamilyId, contains, enumerate_family
from src.partitions.partition import BLOCK_SEPARATOR, Partition, format_partition
from src.utilis.helper import get_param

if TYPE_CHECKING:
    from collections.abc import Sequence

# pair bitmasks fit a uint64 up to this many points
_UINT64_MAX_N = 11


class NotALatticeError(ValueError):
    """Raised when a pair has no unique join (or meet) inside the family."""


def leq(s: Partition, p: Partition) -> bool:
    """Use to test s ≤ p in reverse refinement: every block of s lies inside a block of p."""
    if s.n != p.n:
        error = f"Cannot compare partitions of different sizes {s.n} and {p.n}."
        raise ValueError(error)
    return s.pair_mask & ~p.pair_mask == 0


@dataclass(frozen=True)
class PosetInterval:
    """Use this class to hold a validated interval [lower, upper] of a family."""

    family: FamilyId
    lower: Partition
    upper: Partition

    def __post_init__(self) -> None:
        """Use to check membership and comparability of the end points."""
        for end in (self.lower, self.upper):
            if not contains(self.family, end):
                error = f"{end} is not a member of {self.family.value}({end.n})."
                raise ValueError(error)
        if not leq(self.lower, self.upper):
            error = f"Not an interval: {self.lower} is not below {self.upper}."
            raise ValueError(error)


class FamilyPoset:
    """Use this class to hold the refinement order restricted to the members of one family."""

    def __init__(self, family: FamilyId, n: int, elements: Sequence[Partition], max_elements: int | None = None) -> None:
        """Use to build the comparability matrix of the given members."""
        cap = max_elements if max_elements is not None else get_param("poset", "max_elements")
        if len(elements) > cap:
            error = f"{family.value}({n}) has {len(elements)} members, above the poset cap {cap}."
            raise ValueError(error)

        self.family = family
        self.n = n
        self.elements = tuple(elements)
        self.index = {p: i for i, p in enumerate(self.elements)}
        self._moebius_rows: dict[int, np.ndarray] = {}

        if n <= _UINT64_MAX_N:
            masks = np.array([p.pair_mask for p in self.elements], dtype=np.uint64)
        else:
            masks = np.array([p.pair_mask for p in self.elements], dtype=object)
        leq_matrix = (masks[:, None] & ~masks[None, :]) == 0
        leq_matrix = np.asarray(leq_matrix, dtype=bool)
        leq_matrix.flags.writeable = False
        self.leq = leq_matrix

    def __len__(self) -> int:
        return len(self.elements)

    def position(self, p: Partition) -> int:
        """Use to get the matrix index of a member."""
        if p not in self.index:
            error = f"{p} is not a member of {self.family.value}({self.n})."
            raise ValueError(error)
        return self.index[p]

    @cached_property
    def ranks(self) -> np.ndarray:
        """Use to get the number of blocks of each member."""
        return np.array([p.num_blocks for p in self.elements])

    @cached_property
    def linear_extension(self) -> np.ndarray:
        """Use to get member indices ordered from finest to coarsest."""
        return np.argsort(-self.ranks, kind="stable")

    @property
    def bottom(self) -> int:
        """Use to get the index of 0_n."""
        return self.position(Partition.singletons(self.n))

    @property
    def top(self) -> int:
        """Use to get the index of 1_n."""
        return self.position(Partition.full(self.n))

    @cached_property
    def covers(self) -> np.ndarray:
        """Use to get the cover relation: covers[i, j] iff j covers i."""
        lt = self.leq.astype(np.float32)
        np.fill_diagonal(lt, 0)
        between = (lt @ lt) > 0
        return (lt > 0) & ~between

    def moebius_row(self, lower: int) -> np.ndarray:
        """Use to get μ(lower, y) for every member y (zero where lower ≰ y)."""
        if lower in self._moebius_rows:
            return self._moebius_rows[lower]
        above = self.leq[lower]
        mu = np.zeros(len(self), dtype=object)
        for y in self.linear_extension:
            if not above[y]:
                continue
            if y == lower:
                mu[y] = 1
                continue
            below = above & self.leq[:, y]
            below[y] = False
            mu[y] = -mu[below].sum()
        self._moebius_rows[lower] = mu
        return mu

    def moebius_column(self, upper: int) -> np.ndarray:
        """Use to get μ(x, upper) for every member x (zero where x ≰ upper)."""
        below = self.leq[:, upper]
        mu = np.zeros(len(self), dtype=object)
        for x in self.linear_extension[::-1]:
            if not below[x]:
                continue
            if x == upper:
                mu[x] = 1
                continue
            between = below & self.leq[x]
            between[x] = False
            mu[x] = -mu[between].sum()
        return mu

    @cached_property
    def moebius_matrix(self) -> np.ndarray:
        """Use to get μ on every interval, column by column along the linear extension."""
        m = len(self)
        mu = np.zeros((m, m), dtype=object)
        for y in self.linear_extension:
            below = self.leq[:, y].copy()
            below[y] = False
            mu[:, y] = -mu[:, below].sum(axis=1) if below.any() else 0
            mu[y, y] = 1
        return mu

    def _extremal_bounds(self, i: int, j: int, *, upper: bool) -> np.ndarray:
        rel = self.leq if upper else self.leq.T
        bounds = np.flatnonzero(rel[i] & rel[j])
        sub = rel[np.ix_(bounds, bounds)]
        # z is extremal iff it is the only bound on its side of itself
        return bounds[sub.sum(axis=0) == 1]

    def join(self, i: int, j: int) -> int:
        """Use to get the least upper bound of two members inside the family."""
        minimal = self._extremal_bounds(i, j, upper=True)
        if len(minimal) != 1:
            error = (f"not a lattice here: {self.elements[i]} and {self.elements[j]} have {len(minimal)} "
                     f"minimal upper bounds in {self.family.value}({self.n})")
            raise NotALatticeError(error)
        return int(minimal[0])

    def meet(self, i: int, j: int) -> int:
        """Use to get the greatest lower bound of two members inside the family."""
        maximal = self._extremal_bounds(i, j, upper=False)
        if len(maximal) != 1:
            error = (f"not a lattice here: {self.elements[i]} and {self.elements[j]} have {len(maximal)} "
                     f"maximal lower bounds in {self.family.value}({self.n})")
            raise NotALatticeError(error)
        return int(maximal[0])

    @cached_property
    def is_lattice(self) -> bool:
        """Use to check by exhaustion that every pair has a unique join and meet."""
        m = len(self)
        for i in range(m):
            for j in range(i + 1, m):
                if len(self._extremal_bounds(i, j, upper=True)) != 1:
                    return False
                if len(self._extremal_bounds(i, j, upper=False)) != 1:
                    return False
        return True

    def hasse_diagram(self) -> nx.DiGraph:
        """Use to build the Hasse diagram with edges pointing from a member to the members covering it."""
        graph = nx.DiGraph()
        for p in self.elements:
            graph.add_node(format_partition(p), blocks=p.num_blocks)
        for i, j in zip(*np.nonzero(self.covers), strict=True):
            graph.add_edge(format_partition(self.elements[i]), format_partition(self.elements[j]))
        return graph


@lru_cache(maxsize=32)
def family_poset(f: FamilyId, n: int) -> FamilyPoset:
    """Use to get the (cached) poset of f(n)."""
    return FamilyPoset(f, n, enumerate_family(f, n))


def join_in_family(f: FamilyId, s: Partition, p: Partition) -> Partition:
    """Use to get the join of s and p among the members of f."""
    if s.n != p.n:
        error = f"Cannot join partitions of different sizes {s.n} and {p.n}."
        raise ValueError(error)
    poset = family_poset(f, s.n)
    return poset.elements[poset.join(poset.position(s), poset.position(p))]


def meet_in_family(f: FamilyId, s: Partition, p: Partition) -> Partition:
    """Use to get the meet of s and p among the members of f."""
    if s.n != p.n:
        error = f"Cannot meet partitions of different sizes {s.n} and {p.n}."
        raise ValueError(error)
    poset = family_poset(f, s.n)
    return poset.elements[poset.meet(poset.position(s), poset.position(p))]


def moebius(f: FamilyId, lower: Partition, upper: Partition) -> int:
    """Use to get μ_f(lower, upper) by the recursion over the family sub-poset."""
    if lower.n != upper.n:
        error = f"Interval ends have different sizes {lower.n} and {upper.n}."
        raise ValueError(error)
    interval = PosetInterval(f, lower, upper)
    poset = family_poset(f, interval.lower.n)
    row = poset.moebius_row(poset.position(interval.lower))
    return int(row[poset.position(interval.upper)])


def moebius_sequence(f: FamilyId, n_values: Sequence[int]) -> dict[int, int]:
    """Use to get μ_f(0_n, 1_n) for each requested n."""
    return {n: moebius(f, Partition.singletons(n), Partition.full(n)) for n in n_values}


def is_lattice(f: FamilyId, n: int) -> bool:
    """Use to report whether f(n) is a lattice, checked exhaustively."""
    return family_poset(f, n).is_lattice


def lattice_report(f: FamilyId, n_max: int) -> dict[int, bool]:
    """Use to report lattice-hood of f(n) for every n up to n_max."""
    return {n: is_lattice(f, n) for n in range(1, n_max + 1)}


@dataclass(frozen=True)
class WeisnerResult:
    """Use this class to report one Weisner sum."""

    family: FamilyId
    n: int
    sigma: Partition
    holds: bool
    total: int
    contributors: tuple[Partition, ...]

    def to_dict(self) -> dict:
        """Use to serialize the result for reports."""
        return {
            "family": self.family.value,
            "n": self.n,
            "sigma": format_partition(self.sigma),
            "holds": self.holds,
            "total": self.total,
            "contributors": [format_partition(p) for p in self.contributors],
        }


def weisner_check(f: FamilyId, n: int, sigma: Partition) -> WeisnerResult:
    """Use to check that Σ μ(0, π) over members π with π ∨ σ = 1_n vanishes."""
    if sigma.n != n:
        error = f"Sigma {sigma} is not a partition of {{1..{n}}}."
        raise ValueError(error)
    if sigma == Partition.singletons(n):
        error = "Weisner's sum needs sigma different from the bottom element."
        raise ValueError(error)
    poset = family_poset(f, n)
    s = poset.position(sigma)
    top = poset.top
    mu = poset.moebius_row(poset.bottom)
    total = 0
    contributors = []
    for i, p in enumerate(poset.elements):
        if poset.join(i, s) == top:
            total += int(mu[i])
            if mu[i] != 0:
                contributors.append(p)
    return WeisnerResult(f, n, sigma, total == 0, total, tuple(contributors))


def hasse_diagram(f: FamilyId, n: int) -> nx.DiGraph:
    """Use to get the Hasse diagram of f(n)."""
    return family_poset(f, n).hasse_diagram()


def hasse_to_dot(graph: nx.DiGraph, name: str = "hasse") -> str:
    """Use to render a Hasse diagram as Graphviz DOT source, finest elements at the bottom."""
    dot = graphviz.Digraph(name=name, graph_attr={"rankdir": "BT"}, node_attr={"shape": "plaintext"})
    for node in sorted(graph.nodes):
        dot.node(node, label="{" + node.replace(BLOCK_SEPARATOR, "}{") + "}")
    for tail, head in sorted(graph.edges):
        dot.edge(tail, head, arrowhead="none")
    return dot.source
