"""Use to read a moment problem from a JSON file.

Schema::

    {
      "domain": "rational" | "poly" | "matrix",
      "alphabet": ["x", "y"],
      "weight": "modified-monotone",
      "max_order": 4,
      "moments": [{"word": "xy", "value": "1/2"}, ...],     # rational / poly
      "centered": false,                                   # poly without moments
      "dimension": 3,                                      # matrix
      "matrices": {"x": [["1", "0", ...], ...], ...},      # matrix
      "constant": [["1/2", "0", ...], ...]                 # matrix, diagonal
    }

A poly problem without moments becomes the generic functional whose moments are
the indeterminates m_w.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import TYPE_CHECKING, NoReturn

from src.algebra.encoding import decode_scalar
from src.algebra.scalars import DomainTag, ScalarDomain
from src.cumulants.functional import (
    GenericFunctional,
    MatrixFunctional,
    MomentFunctional,
    TabulatedFunctional,
    parse_word,
    strip_constants,
    word_text,
)
from src.weights.catalogue import WeightId

if TYPE_CHECKING:
    from logging import Logger


@dataclass(frozen=True)
class MomentProblem:
    """Use this class to carry a validated functional with the weight and order it should be solved for."""

    functional: MomentFunctional
    weight: WeightId
    max_order: int
    source: str


def _fail(logger: Logger, path: Path, message: str) -> NoReturn:
    error = f"{path}: {message}"
    logger.error(error)
    raise ValueError(error)


def _field(raw: dict, name: str, kind: type, logger: Logger, path: Path) -> object:
    if name not in raw:
        _fail(logger, path, f"missing field '{name}'.")
    value = raw[name]
    if not isinstance(value, kind) or (isinstance(value, bool) and kind is not bool):
        _fail(logger, path, f"field '{name}' must be {kind.__name__}, got {value!r}.")
    return value


def _domain(raw: dict, logger: Logger, path: Path) -> ScalarDomain:
    tag = _field(raw, "domain", str, logger, path)
    try:
        tag = DomainTag(tag.lower())
    except ValueError:
        _fail(logger, path, f"field 'domain' must be one of {[t.value for t in DomainTag]}, got {tag!r}.")
    if tag is DomainTag.MATRIX:
        return ScalarDomain.matrix(_field(raw, "dimension", int, logger, path))
    return ScalarDomain(tag)


def _matrix_functional(raw: dict, alphabet: list[str], domain: ScalarDomain, logger: Logger, path: Path) -> MatrixFunctional:
    matrices = _field(raw, "matrices", dict, logger, path)
    missing = [s for s in alphabet if s not in matrices]
    if missing:
        _fail(logger, path, f"field 'matrices' has no matrix for symbol '{missing[0]}'.")
    extra = [s for s in matrices if s not in alphabet]
    if extra:
        _fail(logger, path, f"field 'matrices' names unknown symbol '{extra[0]}'.")
    raw_constant = _field(raw, "constant", list, logger, path)
    try:
        bound = {s: decode_scalar(domain, matrices[s]) for s in alphabet}
        constant = decode_scalar(domain, raw_constant)
        return MatrixFunctional(bound, constant, name=path.stem)
    except ValueError as exc:
        _fail(logger, path, f"invalid matrix data: {exc}")


def _tabulated_functional(raw: dict, alphabet: list[str], domain: ScalarDomain, max_order: int,
                          logger: Logger, path: Path) -> TabulatedFunctional:
    entries = _field(raw, "moments", list, logger, path)
    values = {}
    for k, entry in enumerate(entries):
        if not isinstance(entry, dict) or "word" not in entry or "value" not in entry:
            _fail(logger, path, f"moments[{k}] needs 'word' and 'value' fields, got {entry!r}.")
        try:
            word = parse_word(str(entry["word"]), alphabet)
            values[word] = decode_scalar(domain, entry["value"])
        except ValueError as exc:
            _fail(logger, path, f"moments[{k}]: {exc}")
    try:
        functional = TabulatedFunctional(alphabet, domain, values, name=path.stem)
    except ValueError as exc:
        _fail(logger, path, str(exc))
    for order in range(1, max_order + 1):
        for word in product(alphabet, repeat=order):
            if strip_constants(word) not in functional.values:
                _fail(logger, path, f"no moment given for word {word_text(word)} (needed up to max_order {max_order}).")
    return functional


def ingest_moment_problem(path: str | Path, logger: Logger) -> MomentProblem:
    """Use to load, validate and build the functional of a moment-problem file."""
    path = Path(path)
    if not path.exists():
        error = f"Moment problem file not found: {path}"
        logger.error(error)
        raise FileNotFoundError(error)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        _fail(logger, path, f"not valid JSON ({exc}).")
    if not isinstance(raw, dict):
        _fail(logger, path, "top level must be an object.")

    domain = _domain(raw, logger, path)
    alphabet = _field(raw, "alphabet", list, logger, path)
    if not alphabet or not all(isinstance(s, str) and s for s in alphabet):
        _fail(logger, path, f"field 'alphabet' must be a nonempty list of symbol names, got {alphabet!r}.")
    max_order = _field(raw, "max_order", int, logger, path)
    if max_order < 1:
        _fail(logger, path, f"field 'max_order' must be positive, got {max_order}.")
    weight_name = _field(raw, "weight", str, logger, path)
    try:
        weight = WeightId.parse(weight_name)
    except ValueError as exc:
        _fail(logger, path, f"field 'weight': {exc}")

    try:
        if domain.tag is DomainTag.MATRIX:
            functional = _matrix_functional(raw, alphabet, domain, logger, path)
        elif domain.tag is DomainTag.POLY and "moments" not in raw:
            functional = GenericFunctional(alphabet, centered=bool(raw.get("centered", False)), name=path.stem)
        else:
            functional = _tabulated_functional(raw, alphabet, domain, max_order, logger, path)
    except ValueError as exc:
        if str(exc).startswith(str(path)):
            raise
        _fail(logger, path, str(exc))

    logger.info(f"Loaded {domain} moment problem from {path}: alphabet {alphabet}, weight {weight.name}, max order {max_order}")
    return MomentProblem(functional, weight, max_order, str(path))
