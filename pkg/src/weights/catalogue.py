"""Use to evaluate and classify the catalogued partition weights.

A weight assigns an exact rational to every partition. The catalogue holds the
indicator weights of the partition families, the monotone weight (reciprocal
nesting tree factorial), its circle version, q-crossing weights on pairings,
the singleton weight, and the "modified" versions that first remove singletons.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from src.partitions.families import FamilyId, contains, enumerate_family
from src.partitions.partition import (
    Partition,
    crossing_count,
    format_partition,
    is_noncrossing,
    nesting_forest,
    remove_singletons,
    tree_factorial,
)
from src.weights.cyclic_nesting import cyclic_nesting_forest


class WeightKind(Enum):
    """Kinds of catalogued weights."""

    IND = "ind"
    MONOTONE = "monotone"
    MODIFIED_MONOTONE = "modified-monotone"
    CYCLIC_MONOTONE = "cyclic-monotone"
    MODIFIED_CYCLIC_MONOTONE = "modified-cyclic-monotone"
    Q_CROSSING = "q-crossing"
    MODIFIED_Q_CROSSING = "modified-q-crossing"
    SINGLETON = "singleton"

    @property
    def modified(self) -> bool:
        """Use to check whether the weight is composed with singleton removal."""
        return self in (WeightKind.MODIFIED_MONOTONE, WeightKind.MODIFIED_CYCLIC_MONOTONE, WeightKind.MODIFIED_Q_CROSSING)


_UNMODIFIED = {
    WeightKind.MODIFIED_MONOTONE: WeightKind.MONOTONE,
    WeightKind.MODIFIED_CYCLIC_MONOTONE: WeightKind.CYCLIC_MONOTONE,
    WeightKind.MODIFIED_Q_CROSSING: WeightKind.Q_CROSSING,
}


@dataclass(frozen=True)
class WeightId:
    """Use this class to name a catalogued weight together with its parameter."""

    kind: WeightKind
    family: FamilyId | None = None
    q: Fraction | None = field(default=None)

    def __post_init__(self) -> None:
        """Use to check that exactly the needed parameter is present."""
        if (self.kind is WeightKind.IND) != (self.family is not None):
            error = f"Weight {self.kind.value} {'needs' if self.kind is WeightKind.IND else 'takes no'} family."
            raise ValueError(error)
        takes_q = self.kind in (WeightKind.Q_CROSSING, WeightKind.MODIFIED_Q_CROSSING)
        if takes_q != (self.q is not None):
            error = f"Weight {self.kind.value} {'needs' if takes_q else 'takes no'} rational parameter q."
            raise ValueError(error)
        if self.q is not None:
            object.__setattr__(self, "q", Fraction(self.q))

    @classmethod
    def parse(cls, text: str) -> WeightId:
        """Use to parse names such as "ind:nc", "modified-monotone" or "q-crossing:1/2"."""
        head, _, arg = text.strip().lower().replace("_", "-").partition(":")
        try:
            kind = WeightKind(head)
        except ValueError:
            known = ", ".join(k.value for k in WeightKind)
            error = f"Unknown weight '{text}'. Known kinds: {known} (ind:<family>, q-crossing:<q>)."
            raise ValueError(error) from None
        if kind is WeightKind.IND:
            return cls(kind, family=FamilyId.parse(arg) if arg else None)
        if kind in (WeightKind.Q_CROSSING, WeightKind.MODIFIED_Q_CROSSING):
            if not arg:
                error = f"Weight '{text}' needs a parameter, e.g. {kind.value}:1/2."
                raise ValueError(error)
            try:
                return cls(kind, q=Fraction(arg))
            except (ValueError, ZeroDivisionError) as exc:
                error = f"Invalid q in weight '{text}': {exc}"
                raise ValueError(error) from exc
        if arg:
            error = f"Weight {kind.value} takes no parameter, got '{text}'."
            raise ValueError(error)
        return cls(kind)

    @classmethod
    def ind(cls, family: FamilyId) -> WeightId:
        """Use to get the indicator weight of a family."""
        return cls(WeightKind.IND, family=family)

    @property
    def name(self) -> str:
        """Use to get the canonical text name."""
        if self.family is not None:
            return f"{self.kind.value}:{self.family.value}"
        if self.q is not None:
            return f"{self.kind.value}:{self.q}"
        return self.kind.value

    @property
    def inside_nc(self) -> bool:
        """Use to check whether the weight vanishes off non-crossing partitions."""
        if self.kind is WeightKind.IND:
            return self.family.inside_nc
        return self.kind not in (WeightKind.Q_CROSSING, WeightKind.MODIFIED_Q_CROSSING)

    @property
    def declared_monic(self) -> bool:
        """Use to get the catalogue claim ω_n(1_n) = 1 for every n."""
        return self.kind not in (WeightKind.Q_CROSSING, WeightKind.MODIFIED_Q_CROSSING, WeightKind.SINGLETON)

    @property
    def declared_invertible(self) -> bool:
        """Use to get the catalogue claim ω_n(1_n) ≠ 0 for every n."""
        return self.declared_monic

    def __str__(self) -> str:
        return self.name


def _monotone(p: Partition) -> Fraction:
    if not is_noncrossing(p):
        return Fraction(0)
    return Fraction(1, tree_factorial(nesting_forest(p)))


def _cyclic_monotone(p: Partition) -> Fraction:
    if not is_noncrossing(p):
        return Fraction(0)
    return Fraction(1, tree_factorial(cyclic_nesting_forest(p)))


def _q_crossing(p: Partition, q: Fraction) -> Fraction:
    # {1} carries the normalisation ω_1 = 1; the empty partition counts as a pairing
    if p.n == 1:
        return Fraction(1)
    if not p.is_pairing:
        return Fraction(0)
    return q ** crossing_count(p)


@lru_cache(maxsize=200_000)
def evaluate(w: WeightId, p: Partition) -> Fraction:
    """Use to evaluate a catalogued weight on a partition exactly."""
    if w.kind.modified:
        return evaluate(WeightId(_UNMODIFIED[w.kind], q=w.q), remove_singletons(p))
    if w.kind is WeightKind.IND:
        return Fraction(1) if p.n == 0 or contains(w.family, p) else Fraction(0)
    if w.kind is WeightKind.MONOTONE:
        return _monotone(p)
    if w.kind is WeightKind.CYCLIC_MONOTONE:
        return _cyclic_monotone(p)
    if w.kind is WeightKind.Q_CROSSING:
        return _q_crossing(p, w.q)
    return Fraction(1) if p == Partition.singletons(p.n) else Fraction(0)


@lru_cache(maxsize=256)
def weight_support(w: WeightId, n: int) -> tuple[tuple[Partition, Fraction], ...]:
    """Use to list (partition, weight) over P(n) where the weight is nonzero, in canonical order."""
    pool = enumerate_family(FamilyId.NC if w.inside_nc else FamilyId.ALL, n)
    return tuple((p, value) for p in pool if (value := evaluate(w, p)) != 0)


def weight_table(w: WeightId, n: int, family: FamilyId = FamilyId.NC) -> list[dict[str, str]]:
    """Use to list the weight of every member of family(n) as text rows."""
    return [{"partition": format_partition(p), "weight": str(evaluate(w, p))} for p in enumerate_family(family, n)]


@dataclass(frozen=True)
class WeightClassification:
    """Use this class to report monic/invertible/support flags verified up to n_max."""

    weight: WeightId
    n_max: int
    monic: bool
    invertible: bool
    support: FamilyId | None
    top_values: tuple[Fraction, ...]

    @property
    def invertible_up_to(self) -> int:
        """Use to get the largest n such that ω_k(1_k) ≠ 0 for all k ≤ n."""
        count = 0
        for value in self.top_values:
            if value == 0:
                break
            count += 1
        return count

    def to_dict(self) -> dict:
        """Use to serialize the classification for reports."""
        return {
            "weight": self.weight.name,
            "n_max": self.n_max,
            "monic": self.monic,
            "invertible": self.invertible,
            "invertible_up_to": self.invertible_up_to,
            "support": self.support.value if self.support else None,
            "top_values": [str(v) for v in self.top_values],
        }


def classify(w: WeightId, n_max: int) -> WeightClassification:
    """Use to verify the monic/invertible flags and find the supporting family by exhaustion up to n_max."""
    tops = tuple(evaluate(w, Partition.full(n)) for n in range(1, n_max + 1))
    support = None
    for family in FamilyId:
        if all(
            (evaluate(w, p) != 0) == contains(family, p)
            for n in range(1, n_max + 1)
            for p in enumerate_family(FamilyId.ALL, n)
        ):
            support = family
            break
    return WeightClassification(
        weight=w,
        n_max=n_max,
        monic=all(v == 1 for v in tops),
        invertible=all(v != 0 for v in tops),
        support=support,
        top_values=tops,
    )
