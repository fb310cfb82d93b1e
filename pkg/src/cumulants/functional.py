"""Use to represent moment functionals F on words over a finite alphabet.

A word is a tuple of symbols; the distinguished symbol "1" stands for the unit
(scalar domains) or for a fixed constant of the algebra of constants (matrix
domain). For scalar domains F(w·1·w') = F(w·w'), so constants are stripped
before any value lookup.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction
from itertools import product
from typing import TYPE_CHECKING

from src.algebra.scalars import Poly, RatMatrix, Scalar, ScalarDomain, diag_projection
from src.utilis.helper import get_constant

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator, Mapping, Sequence

    import numpy as np

CONSTANT_SYMBOL = str(get_constant("symbols", "constant"))
MOMENT_PREFIX = str(get_constant("symbols", "moment_prefix"))

Word = tuple[str, ...]


def word_text(word: Sequence[str]) -> str:
    """Use to render a word: letters juxtaposed when all are single characters, dot-joined otherwise."""
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return ".".join(word)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Use to read a word given as juxtaposed single-character symbols or as space/dot separated symbols."""
    text = text.strip()
    if " " in text or "." in text:
        symbols = tuple(s for s in text.replace(".", " ").split() if s)
    else:
        symbols = tuple(text)
    known = set(alphabet) | {CONSTANT_SYMBOL}
    for s in symbols:
        if s not in known:
            error = f"Unknown symbol '{s}' in word '{text}'; alphabet is {list(alphabet)}."
            raise ValueError(error)
    if not symbols:
        error = "Empty word."
        raise ValueError(error)
    return symbols


def strip_constants(word: Sequence[str]) -> Word:
    """Use to delete every constant symbol from a word."""
    return tuple(s for s in word if s != CONSTANT_SYMBOL)


class MomentFunctional(ABC):
    """Use this class as the base of every moment functional."""

    def __init__(self, alphabet: Sequence[str], domain: ScalarDomain, name: str = "F") -> None:
        """Use to validate the alphabet and record the scalar domain."""
        symbols = tuple(alphabet)
        if not symbols:
            error = "Alphabet must not be empty."
            raise ValueError(error)
        if len(set(symbols)) != len(symbols):
            error = f"Alphabet has repeated symbols: {list(symbols)}."
            raise ValueError(error)
        if CONSTANT_SYMBOL in symbols:
            error = f"The constant symbol '{CONSTANT_SYMBOL}' cannot be part of the alphabet."
            raise ValueError(error)
        self.alphabet = symbols
        self.domain = domain
        self.name = name

    def check_word(self, word: Sequence[str]) -> Word:
        """Use to validate a word against the alphabet."""
        word = tuple(word)
        if not word:
            error = "Moments are defined on nonempty words only."
            raise ValueError(error)
        for s in word:
            if s != CONSTANT_SYMBOL and s not in self.alphabet:
                error = f"Unknown symbol '{s}' in word {word_text(word)}; alphabet is {list(self.alphabet)}."
                raise ValueError(error)
        return word

    def moment(self, word: Sequence[str]) -> Scalar:
        """Use to get F(a_{w1}⋯a_{wn})."""
        word = self.check_word(word)
        if self.domain.commutative_with_constants:
            word = strip_constants(word)
            if not word:
                return self.domain.one()
        return self._moment(word)

    @abstractmethod
    def _moment(self, word: Word) -> Scalar:
        """Use to evaluate a validated word (constant-free for scalar domains)."""

    def words(self, order: int, *, with_constant: bool = False) -> Iterator[Word]:
        """Use to list all words of one length over the alphabet, optionally with the constant symbol."""
        symbols = (*self.alphabet, CONSTANT_SYMBOL) if with_constant else self.alphabet
        yield from product(symbols, repeat=order)


class TabulatedFunctional(MomentFunctional):
    """Use this class for a functional given by an explicit table of moments."""

    def __init__(self, alphabet: Sequence[str], domain: ScalarDomain, values: Mapping[Word, Scalar], name: str = "F") -> None:
        """Use to store the table; for scalar domains keys are simplified by deleting constants."""
        super().__init__(alphabet, domain, name)
        self.values: dict[Word, Scalar] = {}
        for raw, value in values.items():
            word = self.check_word(raw)
            if domain.commutative_with_constants:
                word = strip_constants(word)
                if not word:
                    if value != domain.one():
                        error = f"F(1) must be 1, got {value}."
                        raise ValueError(error)
                    continue
            if word in self.values and self.values[word] != value:
                error = f"Conflicting moments for word {word_text(word)} after constant simplification."
                raise ValueError(error)
            self.values[word] = value

    @property
    def max_order(self) -> int:
        """Use to get the longest tabulated word length."""
        return max((len(w) for w in self.values), default=0)

    def _moment(self, word: Word) -> Scalar:
        if word not in self.values:
            error = f"No moment given for word {word_text(word)}."
            raise KeyError(error)
        return self.values[word]


class GenericFunctional(MomentFunctional):
    """Use this class for the fully generic functional: each constant-free word w is the indeterminate m_w.

    With ``centered`` every single-letter word has moment 0 instead.
    """

    def __init__(self, alphabet: Sequence[str], *, centered: bool = False, name: str = "F") -> None:
        """Use to set up formal moments over the alphabet."""
        super().__init__(alphabet, ScalarDomain.poly(), name)
        self.centered = centered

    def _moment(self, word: Word) -> Scalar:
        if self.centered and len(word) == 1:
            return Poly()
        return Poly.variable(MOMENT_PREFIX + word_text(word))


class DerivedFunctional(MomentFunctional):
    """Use this class for a functional computed on demand by a procedure, memoized per word."""

    def __init__(self,
                 alphabet: Sequence[str],
                 domain: ScalarDomain,
                 evaluator: Callable[[Word], Scalar],
                 max_order: int | None = None,
                 name: str = "F") -> None:
        """Use to wrap an evaluator of constant-free words."""
        super().__init__(alphabet, domain, name)
        self._evaluator = evaluator
        self.max_order = max_order
        self._memo: dict[Word, Scalar] = {}

    def _moment(self, word: Word) -> Scalar:
        if self.max_order is not None and len(word) > self.max_order:
            error = f"Word {word_text(word)} of length {len(word)} exceeds the order cap {self.max_order}."
            raise ValueError(error)
        if word not in self._memo:
            self._memo[word] = self._evaluator(word)
        return self._memo[word]


class MatrixFunctional(MomentFunctional):
    """Use this class for the desk-scale operator-valued model: symbols are rational matrices, F is the diagonal part."""

    def __init__(self, matrices: Mapping[str, RatMatrix], constant: RatMatrix, name: str = "F") -> None:
        """Use to bind each symbol to a matrix and the constant symbol to a diagonal matrix."""
        dims = {m.d for m in matrices.values()} | {constant.d}
        if len(dims) != 1:
            error = f"All matrices must share one dimension, got {sorted(dims)}."
            raise ValueError(error)
        if diag_projection(constant) != constant:
            error = "The constant must be a diagonal matrix."
            raise ValueError(error)
        super().__init__(tuple(matrices), ScalarDomain.matrix(dims.pop()), name)
        self.matrices = dict(matrices)
        self.constant = constant

    @classmethod
    def random(cls, alphabet: Sequence[str], d: int, rng: np.random.Generator, bound: int = 5) -> MatrixFunctional:
        """Use to draw random symbol matrices and a random diagonal constant."""
        matrices = {s: RatMatrix.random(rng, d, bound) for s in alphabet}
        diagonal = [Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1))) for _ in range(d)]
        return cls(matrices, RatMatrix.diagonal(diagonal))

    def matrix_of(self, symbol: str) -> RatMatrix:
        """Use to get the matrix standing for a symbol."""
        return self.constant if symbol == CONSTANT_SYMBOL else self.matrices[symbol]

    def evaluate_product(self, args: Sequence[RatMatrix]) -> RatMatrix:
        """Use to get F(a_1⋯a_n) = diag(a_1⋯a_n)."""
        out = args[0]
        for a in args[1:]:
            out = out @ a
        return diag_projection(out)

    def _moment(self, word: Word) -> Scalar:
        return self.evaluate_product([self.matrix_of(s) for s in word])


def random_rational_functional(alphabet: Sequence[str], max_order: int, rng: np.random.Generator, bound: int = 9) -> TabulatedFunctional:
    """Use to draw a functional with random rational moments p/q on every word up to max_order."""
    domain = ScalarDomain.rational()
    values: dict[Word, Scalar] = {}
    for order in range(1, max_order + 1):
        for word in product(alphabet, repeat=order):
            values[word] = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))
    return TabulatedFunctional(alphabet, domain, values, name="random")
