"""Use to verify structural claims about family posets by exhaustion at small n."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from src.partitions.families import FamilyId, enumerate_family
from src.partitions.partition import Partition, format_partition
from src.poset.family_poset import family_poset, moebius

TOP = "top"


@dataclass
class StructureCheck:
    """Use this class to report one exhaustive structural check."""

    name: str
    holds: bool = True
    checked: int = 0
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def fail(self, **witness: object) -> None:
        """Use to record the first counterexample."""
        if self.holds:
            self.holds = False
            self.witness = {key: str(value) for key, value in witness.items()}

    def to_dict(self) -> dict:
        """Use to serialize the check."""
        return {"name": self.name, "holds": self.holds, "checked": self.checked, "witness": self.witness, "details": self.details}


def button_word(p: Partition) -> str:
    """Use to encode a cyclic-interval partition by its pressed buttons r~r+1 (cyclically); 1_n is the top."""
    if p.num_blocks == 1:
        return TOP
    owner = p.block_of
    return "".join("1" if owner[r] == owner[(r + 1) % p.n] else "0" for r in range(p.n))


def collapsed_cube(n: int) -> nx.DiGraph:
    """Use to build the Hasse diagram of {0,1}^n with its two highest levels collapsed into one top."""
    graph = nx.DiGraph()
    words = [format(k, f"0{n}b") for k in range(2**n)]
    kept = [w for w in words if w.count("0") >= 2]
    graph.add_nodes_from([*kept, TOP])
    for w in kept:
        for i, bit in enumerate(w):
            if bit == "0":
                up = w[:i] + "1" + w[i + 1:]
                graph.add_edge(w, up if up.count("0") >= 2 else TOP)
    return graph


def cyclic_interval_buttons_check(n: int, *, isomorphism: bool = True) -> StructureCheck:
    """Use to compare CI(n) with the cube {0,1}^n whose top two levels are collapsed."""
    check = StructureCheck(f"cyclic-interval-buttons n={n}")
    poset = family_poset(FamilyId.CYCLIC_INTERVAL, n)
    words = [button_word(p) for p in poset.elements]
    cube = collapsed_cube(n)

    if len(set(words)) != len(words) or set(words) != set(cube.nodes):
        check.fail(n=n, reason="button map is not a bijection onto the collapsed cube")
        return check

    def below(u: str, v: str) -> bool:
        return v == TOP or (u != TOP and all(a <= b for a, b in zip(u, v, strict=True)))

    for i, u in enumerate(words):
        for j, v in enumerate(words):
            check.checked += 1
            if bool(poset.leq[i, j]) != below(u, v):
                check.fail(n=n, lower=format_partition(poset.elements[i]), upper=format_partition(poset.elements[j]))
                return check

    hasse = {(words[i], words[j]) for i, j in zip(*np.nonzero(poset.covers), strict=True)}
    if hasse != set(cube.edges):
        check.fail(n=n, reason="Hasse edges differ from the collapsed cube")
    elif isomorphism and not nx.is_isomorphic(poset.hasse_diagram(), cube):
        check.fail(n=n, reason="Hasse diagrams not isomorphic")
    return check


def cyclic_interval_intervals_check(n: int) -> StructureCheck:
    """Use to check that [σ, 1_n] in CI(n) looks like CI(k) and [σ, π ≠ 1_n] like I(k) (size and Möbius value)."""
    check = StructureCheck(f"cyclic-interval-intervals n={n}")
    poset = family_poset(FamilyId.CYCLIC_INTERVAL, n)
    mu = poset.moebius_matrix
    top = poset.top
    for s in range(len(poset)):
        for p in np.flatnonzero(poset.leq[s]):
            size = int((poset.leq[s] & poset.leq[:, p]).sum())
            lower, upper = poset.elements[s], poset.elements[p]
            if p == top:
                k = lower.num_blocks
                reference = FamilyId.CYCLIC_INTERVAL
            else:
                k = lower.num_blocks - upper.num_blocks + 1
                reference = FamilyId.INTERVAL
            expected_mu = moebius(reference, Partition.singletons(k), Partition.full(k))
            expected_size = len(enumerate_family(reference, k))
            check.checked += 1
            if size != expected_size or mu[s, p] != expected_mu:
                check.fail(lower=format_partition(lower), upper=format_partition(upper), size=size, mu=mu[s, p],
                           expected=f"{reference.value}({k}): size {expected_size}, mu {expected_mu}")
                return check
    return check


def almost_interval_powers_check(n: int) -> StructureCheck:
    """Use to check that every Möbius value on intervals of Ĩ(n) is ±2^k."""
    check = StructureCheck(f"almost-interval-powers n={n}")
    poset = family_poset(FamilyId.ALMOST_INTERVAL, n)
    mu = poset.moebius_matrix
    values: set[int] = set()
    for s, p in zip(*np.nonzero(poset.leq), strict=True):
        value = int(mu[s, p])
        check.checked += 1
        values.add(value)
        magnitude = abs(value)
        if magnitude == 0 or magnitude & (magnitude - 1):
            check.fail(lower=format_partition(poset.elements[s]), upper=format_partition(poset.elements[p]), mu=value)
            return check
    check.details["values"] = sorted(values)
    return check


def moebius_multiplicativity_check(f: FamilyId, n: int) -> StructureCheck:
    """Use to check μ_f(0_n, π) = ∏_V μ_f(0_|V|, 1_|V|) for every member π."""
    check = StructureCheck(f"moebius-multiplicativity {f.value} n={n}")
    poset = family_poset(f, n)
    row = poset.moebius_row(poset.bottom)
    for i, p in enumerate(poset.elements):
        expected = math.prod(moebius(f, Partition.singletons(len(b)), Partition.full(len(b))) for b in p.blocks)
        check.checked += 1
        if row[i] != expected:
            check.fail(partition=format_partition(p), mu=row[i], expected=expected)
            return check
    return check


def weisner_top_reduction(f: FamilyId, n: int) -> int:
    """Use to get Σ μ(0_n, π) over π ≠ 1_n in I(n) or CI(n) as an alternating binomial sum.

    Below the top, I(n) is the cube on its n-1 adjacencies and CI(n) the cube on
    its n cyclic adjacencies, so a member joining k of them has μ(0_n, π) = (-1)^k.
    """
    adjacencies = {FamilyId.INTERVAL: n - 1, FamilyId.CYCLIC_INTERVAL: n}
    if f not in adjacencies:
        error = f"No binomial reduction of Weisner's sum for {f.value}; only interval and cyclic-interval."
        raise ValueError(error)
    return sum((-1) ** k * math.comb(adjacencies[f], k) for k in range(n - 1))
