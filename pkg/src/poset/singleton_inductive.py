"""Use to check the singleton-inductive property for families and for weights.

A family L is singleton-inductive when every insertion map Ψ_r maps L(n)
bijectively and order-isomorphically onto the members of L(n+1) having {r} as
a singleton. A weight is singleton-inductive when ω_1({1}) = 1 and every Ψ_r
preserves it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from src.partitions.families import FamilyId, enumerate_family
from src.partitions.partition import Partition, format_partition, insert_singleton
from src.poset.family_poset import leq
from src.weights.catalogue import WeightId, evaluate


@dataclass(frozen=True)
class SIWitness:
    """Use this class to record one violation of the singleton-inductive property."""

    n: int
    r: int
    partition: Partition
    image: Partition | None
    reason: str
    values: tuple[Fraction, Fraction] | None = None

    def to_dict(self) -> dict:
        """Use to serialize the witness for reports."""
        return {
            "n": self.n,
            "r": self.r,
            "partition": format_partition(self.partition),
            "image": format_partition(self.image) if self.image is not None else None,
            "reason": self.reason,
            "values": [str(v) for v in self.values] if self.values else None,
        }


@dataclass(frozen=True)
class SIReport:
    """Use this class to report the outcome of a singleton-inductive check."""

    subject: str
    holds: bool
    max_n_checked: int
    witness: SIWitness | None = None

    def to_dict(self) -> dict:
        """Use to serialize the report."""
        return {
            "subject": self.subject,
            "holds": self.holds,
            "max_n_checked": self.max_n_checked,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def _family_violation(f: FamilyId, n: int, r: int) -> SIWitness | None:
    source = enumerate_family(f, n)
    target = {p for p in enumerate_family(f, n + 1) if (r,) in p.blocks}
    images = []
    for p in source:
        image = insert_singleton(p, r)
        if image not in target:
            return SIWitness(n, r, p, image, f"image not in {f.value}({n + 1})")
        images.append(image)
    missing = target - set(images)
    if missing:
        return SIWitness(n + 1, r, min(missing), None, f"member with singleton {{{r}}} has no preimage in {f.value}({n})")
    for a, image_a in zip(source, images, strict=True):
        for b, image_b in zip(source, images, strict=True):
            if leq(a, b) != leq(image_a, image_b):
                return SIWitness(n, r, a, image_a, f"order not preserved against {format_partition(b)}")
    return None


def si_check_family(f: FamilyId, n_max: int) -> SIReport:
    """Use to check that singleton insertion gives poset isomorphisms L(n) ≅ {π ∈ L(n+1): {r} ∈ π} for n < n_max."""
    if Partition.full(1) not in enumerate_family(f, 1):
        witness = SIWitness(0, 1, Partition.empty(), Partition.full(1), f"{{1}} missing from {f.value}(1)")
        return SIReport(f.value, holds=False, max_n_checked=1, witness=witness)
    for n in range(1, n_max):
        for r in range(1, n + 2):
            witness = _family_violation(f, n, r)
            if witness is not None:
                return SIReport(f.value, holds=False, max_n_checked=n + 1, witness=witness)
    return SIReport(f.value, holds=True, max_n_checked=n_max)


def si_check_weight(w: WeightId, n_max: int) -> SIReport:
    """Use to check ω_1({1}) = 1 and ω_n(π) = ω_{n+1}(Ψ_r(π)) for every π ∈ P(n), n < n_max."""
    unit = evaluate(w, Partition.full(1))
    if unit != 1:
        witness = SIWitness(1, 1, Partition.full(1), None, "normalisation ω_1({1}) ≠ 1", (unit, Fraction(1)))
        return SIReport(w.name, holds=False, max_n_checked=1, witness=witness)
    for n in range(1, n_max):
        for p in enumerate_family(FamilyId.ALL, n):
            before = evaluate(w, p)
            for r in range(1, n + 2):
                image = insert_singleton(p, r)
                after = evaluate(w, image)
                if after != before:
                    witness = SIWitness(n, r, p, image, "weight not preserved", (after, before))
                    return SIReport(w.name, holds=False, max_n_checked=n + 1, witness=witness)
    return SIReport(w.name, holds=True, max_n_checked=n_max)
