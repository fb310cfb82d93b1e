"""Use to build joint functionals of independent marginals for each notion of independence.

Marginals live on pairwise disjoint alphabets and take scalar (commuting) values.
Each product kind turns a joint word into marginal moments:

- tensor: letters commute, group them by marginal;
- boolean: multiply over maximal runs of one marginal;
- monotone: evaluate runs of the highest marginal first, let the rest merge;
- free: kill alternating centred products and recurse on shorter words;
- fermi-boolean: mixed almost-interval cumulants vanish.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product
from typing import TYPE_CHECKING

from src.algebra.scalars import DomainTag, ScalarDomain, is_zero
from src.cumulants.functional import DerivedFunctional, MomentFunctional, Word, word_text
from src.cumulants.transforms import CumulantSolver, moments_by_summation, moments_to_cumulants
from src.partitions.families import FamilyId
from src.weights.catalogue import WeightId

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from src.algebra.scalars import Scalar


class ProductKind(Enum):
    """Notions of independence with a product construction."""

    TENSOR = "tensor"
    FREE = "free"
    BOOLEAN = "boolean"
    MONOTONE = "monotone"
    FERMI_BOOLEAN = "fermi-boolean"

    @classmethod
    def parse(cls, text: str) -> ProductKind:
        """Use to read a kind name, accepting underscores."""
        try:
            return cls(text.strip().lower().replace("_", "-"))
        except ValueError:
            known = ", ".join(k.value for k in cls)
            error = f"Unknown product kind '{text}'. Known kinds: {known}."
            raise ValueError(error) from None

    @property
    def cumulant_family(self) -> FamilyId | None:
        """Use to get the family whose mixed cumulants vanish for this kind; monotone has none."""
        return {
            ProductKind.TENSOR: FamilyId.ALL,
            ProductKind.FREE: FamilyId.NC,
            ProductKind.BOOLEAN: FamilyId.INTERVAL,
            ProductKind.FERMI_BOOLEAN: FamilyId.ALMOST_INTERVAL,
        }.get(self)


def _owner_map(marginals: Sequence[MomentFunctional]) -> dict[str, int]:
    owner: dict[str, int] = {}
    for index, marginal in enumerate(marginals):
        if not marginal.domain.commutative_with_constants:
            error = f"Product functionals need a commutative scalar domain, marginal {marginal.name} is {marginal.domain}."
            raise ValueError(error)
        for symbol in marginal.alphabet:
            if symbol in owner:
                error = f"Symbol '{symbol}' appears in marginals {owner[symbol]} and {index}; alphabets must be disjoint."
                raise ValueError(error)
            owner[symbol] = index
    return owner


def runs(word: Sequence[str], owner: dict[str, int]) -> list[tuple[int, Word]]:
    """Use to split a word into maximal runs of letters from one marginal."""
    out: list[tuple[int, Word]] = []
    for s in word:
        if out and out[-1][0] == owner[s]:
            out[-1] = (out[-1][0], (*out[-1][1], s))
        else:
            out.append((owner[s], (s,)))
    return out


class _Evaluator:
    """Use this class to hold the marginals and the owner map shared by the product rules."""

    def __init__(self, marginals: Sequence[MomentFunctional], domain: ScalarDomain, max_order: int) -> None:
        self.marginals = list(marginals)
        self.owner = _owner_map(marginals)
        self.domain = domain
        self.max_order = max_order
        self._free_memo: dict[Word, Scalar] = {}
        self._solvers: dict[int, CumulantSolver] = {}

    def _prod(self, values: list[Scalar]) -> Scalar:
        return math.prod(values, start=self.domain.one())

    def tensor(self, word: Word) -> Scalar:
        groups: dict[int, list[str]] = {}
        for s in word:
            groups.setdefault(self.owner[s], []).append(s)
        return self._prod([self.marginals[i].moment(letters) for i, letters in sorted(groups.items())])

    def boolean(self, word: Word) -> Scalar:
        return self._prod([self.marginals[i].moment(run) for i, run in runs(word, self.owner)])

    def monotone(self, word: Word) -> Scalar:
        letters = list(word)
        factors: list[Scalar] = []
        for level in sorted({self.owner[s] for s in word}, reverse=True):
            remaining: list[str] = []
            current: list[str] = []
            for s in letters:
                if self.owner[s] == level:
                    current.append(s)
                    continue
                if current:
                    factors.append(self.marginals[level].moment(current))
                    current = []
                remaining.append(s)
            if current:
                factors.append(self.marginals[level].moment(current))
            letters = remaining
        return self._prod(factors)

    def free(self, word: Word) -> Scalar:
        if not word:
            return self.domain.one()
        if word in self._free_memo:
            return self._free_memo[word]
        pieces = runs(word, self.owner)
        if len(pieces) == 1:
            index, run = pieces[0]
            value = self.marginals[index].moment(run)
        else:
            # 0 = F(∏(r_i − F(r_i))) expanded over the runs kept
            means = [self.marginals[i].moment(run) for i, run in pieces]
            m = len(pieces)
            value = self.domain.zero()
            for size in range(m):
                for kept in combinations(range(m), size):
                    dropped = [-means[i] for i in range(m) if i not in kept]
                    sub = tuple(s for i in kept for s in pieces[i][1])
                    value = value - self._prod(dropped) * self.free(sub)
        self._free_memo[word] = value
        return value

    def fermi_cumulant(self, index: int, letters: Word) -> Scalar:
        """Use to get the almost-interval cumulant b̃ of one marginal, solved on demand."""
        if index not in self._solvers:
            self._solvers[index] = CumulantSolver(self.marginals[index], WeightId.ind(FamilyId.ALMOST_INTERVAL), self.max_order)
        return self._solvers[index].cumulant(letters)

    def fermi_boolean(self, word: Word) -> Scalar:
        n = len(word)
        first = [self.fermi_cumulant(self.owner[s], (s,)) for s in word]
        tail: list[Scalar] = [self.domain.zero()] * (n + 1)
        tail[n] = self.domain.one()
        for i in range(n - 1, -1, -1):
            # position i is a singleton, or the minimum of the next non-singleton block
            total = first[i] * tail[i + 1]
            same = [j for j in range(i + 1, n) if self.owner[word[j]] == self.owner[word[i]]]
            for size in range(1, len(same) + 1):
                for rest in combinations(same, size):
                    block = (i, *rest)
                    kappa = self.fermi_cumulant(self.owner[word[i]], tuple(word[j] for j in block))
                    if is_zero(kappa):
                        continue
                    inside = [first[j] for j in range(i + 1, block[-1]) if j not in rest]
                    total = total + kappa * self._prod(inside) * tail[block[-1] + 1]
            tail[i] = total
        return tail[0]


def product_functional(kind: ProductKind, marginals: Sequence[MomentFunctional], max_order: int) -> DerivedFunctional:
    """Use to build the joint functional of independent marginals for the given kind, up to max_order."""
    if not marginals:
        error = "A product needs at least one marginal."
        raise ValueError(error)
    tags = {m.domain.tag for m in marginals}
    domain = ScalarDomain.poly() if DomainTag.POLY in tags else ScalarDomain.rational()
    evaluator = _Evaluator(marginals, domain, max_order)
    rule: Callable[[Word], Scalar] = {
        ProductKind.TENSOR: evaluator.tensor,
        ProductKind.FREE: evaluator.free,
        ProductKind.BOOLEAN: evaluator.boolean,
        ProductKind.MONOTONE: evaluator.monotone,
        ProductKind.FERMI_BOOLEAN: evaluator.fermi_boolean,
    }[kind]
    alphabet = tuple(s for m in marginals for s in m.alphabet)
    name = f"{kind.value}(" + ", ".join(m.name for m in marginals) + ")"
    return DerivedFunctional(alphabet, domain, rule, max_order=max_order, name=name)


def fermi_boolean_reference(marginals: Sequence[MomentFunctional], word: Sequence[str], max_order: int) -> Scalar:
    """Use to get a Fermi-boolean joint moment by summing over every almost-interval partition; slow, for cross-checks."""
    owner = _owner_map(marginals)
    solvers = [CumulantSolver(m, WeightId.ind(FamilyId.ALMOST_INTERVAL), max_order) for m in marginals]

    def kappa(letters: Word) -> Scalar:
        if is_mixed(letters, owner):
            return 0
        return solvers[owner[letters[0]]].cumulant(letters)

    domain = ScalarDomain.poly() if any(m.domain.tag is DomainTag.POLY for m in marginals) else ScalarDomain.rational()
    one = domain.one()
    return moments_by_summation(kappa, FamilyId.ALMOST_INTERVAL, word, one)


def is_mixed(word: Sequence[str], owner: dict[str, int]) -> bool:
    """Use to check whether a word uses letters of at least two marginals."""
    return len({owner[s] for s in word}) > 1


@dataclass
class MixedCumulantReport:
    """Use this class to report vanishing of mixed cumulants and reproduction of marginal ones."""

    kind: ProductKind
    marginals: int
    max_order: int
    mixed_checked: int = 0
    marginal_checked: int = 0
    holds: bool = True
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """Use to serialize the report."""
        return {
            "kind": self.kind.value,
            "marginals": self.marginals,
            "max_order": self.max_order,
            "mixed_checked": self.mixed_checked,
            "marginal_checked": self.marginal_checked,
            "holds": self.holds,
            "witness": self.witness,
        }


def mixed_cumulants_check(kind: ProductKind, marginals: Sequence[MomentFunctional], max_order: int) -> MixedCumulantReport:
    """Use to check that the cumulants of the product vanish on mixed words and match the marginals elsewhere."""
    family = kind.cumulant_family
    if family is None:
        error = f"Independence kind {kind.value} has no vanishing-mixed-cumulant characterisation."
        raise ValueError(error)
    weight = WeightId.ind(family)
    joint = product_functional(kind, marginals, max_order)
    table = moments_to_cumulants(joint, weight, max_order)
    owner = _owner_map(marginals)
    solvers = [CumulantSolver(m, weight, max_order) for m in marginals]
    report = MixedCumulantReport(kind, len(marginals), max_order)
    for order in range(1, max_order + 1):
        for word in product(joint.alphabet, repeat=order):
            value = table.value(word)
            if is_mixed(word, owner):
                report.mixed_checked += 1
                if not is_zero(value):
                    report.holds = False
                    report.witness = {"word": word_text(word), "value": str(value)}
                    return report
            else:
                report.marginal_checked += 1
                expected = solvers[owner[word[0]]].cumulant(word)
                if value != expected:
                    report.holds = False
                    report.witness = {"word": word_text(word), "value": str(value), "expected": str(expected)}
                    return report
    return report
