"""Use to hold solved top-block cumulants c_{1_n}(word) for one weight."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import TYPE_CHECKING

from src.algebra.encoding import encode_scalar
from src.cumulants.functional import CONSTANT_SYMBOL, Word, word_text

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping, Sequence

    from src.algebra.scalars import RatMatrix, Scalar, ScalarDomain
    from src.cumulants.functional import MatrixFunctional
    from src.weights.catalogue import WeightId


@dataclass
class CumulantTable:
    """Use this class to store cumulant values per word together with the weight that defines them.

    Matrix-domain tables also keep the solver for cumulants on arbitrary matrix
    arguments, which the nested extension needs once constants get attached.
    """

    weight: WeightId
    domain: ScalarDomain
    alphabet: tuple[str, ...]
    max_order: int
    entries: dict[Word, Scalar] = field(default_factory=dict)
    include_constant: bool = False
    functional: MatrixFunctional | None = None
    matrix_cumulant: Callable[[tuple[RatMatrix, ...]], RatMatrix] | None = None

    @classmethod
    def from_values(cls,
                    weight: WeightId,
                    domain: ScalarDomain,
                    alphabet: Sequence[str],
                    max_order: int,
                    values: Mapping[Word, Scalar]) -> CumulantTable:
        """Use to build a table from prescribed cumulants; words not listed get zero."""
        entries = {}
        for order in range(1, max_order + 1):
            for word in product(alphabet, repeat=order):
                entries[word] = values.get(word, domain.zero())
        unknown = [w for w in values if w not in entries]
        if unknown:
            error = f"Cumulant given for word {word_text(unknown[0])} outside the alphabet or order cap."
            raise ValueError(error)
        return cls(weight, domain, tuple(alphabet), max_order, entries)

    def value(self, word: Sequence[str]) -> Scalar:
        """Use to look up c_{1_n}(word)."""
        word = tuple(word)
        if word not in self.entries:
            error = f"No cumulant stored for word {word_text(word)} (max order {self.max_order}, constants {self.include_constant})."
            raise KeyError(error)
        return self.entries[word]

    def words(self, order: int | None = None) -> list[Word]:
        """Use to list stored words, optionally of one length."""
        return [w for w in self.entries if order is None or len(w) == order]

    def constant_words(self) -> list[Word]:
        """Use to list stored words of length ≥ 2 containing the constant symbol."""
        return [w for w in self.entries if len(w) >= 2 and CONSTANT_SYMBOL in w]

    def to_dict(self) -> dict:
        """Use to serialize the table."""
        return {
            "weight": self.weight.name,
            "domain": str(self.domain),
            "alphabet": list(self.alphabet),
            "max_order": self.max_order,
            "entries": [{"word": word_text(w), "value": encode_scalar(v)} for w, v in self.entries.items()],
        }
