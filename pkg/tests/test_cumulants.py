"""Unit tests for the moment-cumulant transforms, the multiplicative extensions and the CLT moments."""

from fractions import Fraction

import numpy as np
import pytest

from src.algebra.scalars import Poly, ScalarDomain
from src.cumulants.clt import CLTKind, clt_moments, reference_marginal, shifted_bernoulli_moments
from src.cumulants.constants_check import balancedness_check, cancellation_audit, constants_independence_check
from src.cumulants.extensions import mult_ext_commutative, mult_ext_nested, nested_extension
from src.cumulants.functional import (
    GenericFunctional,
    MatrixFunctional,
    TabulatedFunctional,
    parse_word,
    random_rational_functional,
    strip_constants,
    word_text,
)
from src.cumulants.table import CumulantTable
from src.cumulants.transforms import (
    CumulantSolver,
    check_invertible,
    cumulants_to_moments,
    moebius_inversion_cumulants,
    moments_to_cumulants,
)
from src.partitions.families import FamilyId
from src.partitions.partition import parse_partition
from src.weights.catalogue import WeightId, WeightKind


def one_variable(*moments: str) -> TabulatedFunctional:
    """Use to build a single-symbol rational functional from its moments m_1, m_2, ..."""
    values = {("x",) * k: Fraction(v) for k, v in enumerate(moments, start=1)}
    return TabulatedFunctional(("x",), ScalarDomain.rational(), values)


@pytest.fixture
def random_functional() -> TabulatedFunctional:
    """Use to provide a seeded random functional on two symbols up to order 4."""
    return random_rational_functional(("x", "y"), 4, np.random.default_rng(11))


def test_words_and_symbols() -> None:
	"""Use to test word parsing, rendering and constant stripping."""
	assert parse_word("x1y", ("x", "y")) == ("x", "1", "y")
	assert parse_word("a1 b", ("a1", "b")) == ("a1", "b")
	assert word_text(("a1", "b")) == "a1.b"
	assert strip_constants(("1", "x", "1")) == ("x",)
	with pytest.raises(ValueError, match="Unknown symbol"):
		parse_word("xz", ("x", "y"))


def test_functional_validation() -> None:
	"""Use to test alphabet checks and the unit normalisation of tabulated moments."""
	with pytest.raises(ValueError, match="constant symbol"):
		GenericFunctional(("x", "1"))
	with pytest.raises(ValueError, match="repeated"):
		GenericFunctional(("x", "x"))
	with pytest.raises(ValueError, match="F\\(1\\) must be 1"):
		TabulatedFunctional(("x",), ScalarDomain.rational(), {("1",): Fraction(2)})
	f = one_variable("1/2", "3")
	assert f.moment(("x", "1", "x")) == 3
	assert f.moment(("1",)) == 1
	with pytest.raises(KeyError, match="No moment"):
		f.moment(("x", "x", "x"))


@pytest.mark.parametrize(("weight", "moments"), [
	("ind:all", ("0", "1", "0", "3")),
	("ind:nc", ("0", "1", "0", "2")),
	("ind:interval", ("0", "1", "0", "1")),
	("monotone", ("0", "1", "0", "3/2")),
])
def test_fourth_cumulant_of_central_limit_laws(weight: str, moments: tuple[str, ...]) -> None:
	"""Use to test that the Gaussian, semicircle, Bernoulli and arcsine laws have vanishing fourth cumulant in their theory."""
	table = moments_to_cumulants(one_variable(*moments), WeightId.parse(weight), 4)
	assert table.value(("x", "x")) == 1
	assert table.value(("x",) * 4) == 0


@pytest.mark.parametrize("weight", ["ind:all", "ind:nc", "ind:interval", "ind:almost-interval", "monotone", "modified-monotone"])
def test_moments_cumulants_round_trip(weight: str, random_functional: TabulatedFunctional) -> None:
	"""Use to test that summing the solved cumulants gives back the moments."""
	table = moments_to_cumulants(random_functional, WeightId.parse(weight), 4)
	assert cumulants_to_moments(table, 4).values == random_functional.values


@pytest.mark.parametrize("family", [FamilyId.ALL, FamilyId.NC, FamilyId.INTERVAL])
def test_moebius_inversion_matches_solver(family: FamilyId, random_functional: TabulatedFunctional) -> None:
	"""Use to test the closed Möbius formula against the triangular solver."""
	inverted = moebius_inversion_cumulants(random_functional, family, 4)
	solved = moments_to_cumulants(random_functional, WeightId.ind(family), 4)
	assert inverted.entries == solved.entries


def test_moebius_inversion_refuses_other_families(random_functional: TabulatedFunctional) -> None:
	"""Use to test the family restriction of Möbius inversion."""
	with pytest.raises(ValueError, match="not available"):
		moebius_inversion_cumulants(random_functional, FamilyId.CYCLIC_INTERVAL, 3)


def test_solver_preconditions(random_functional: TabulatedFunctional) -> None:
	"""Use to test the invertibility, order and support checks of the solver."""
	with pytest.raises(ValueError, match="not invertible"):
		check_invertible(WeightId(WeightKind.SINGLETON), 2)
	solver = CumulantSolver(random_functional, WeightId.ind(FamilyId.NC), 2)
	with pytest.raises(ValueError, match="exceeds the solver cap"):
		solver.cumulant(("x", "x", "x"))
	matrices = MatrixFunctional.random(("x",), 2, np.random.default_rng(3))
	with pytest.raises(ValueError, match="off NC"):
		CumulantSolver(matrices, WeightId.parse("q-crossing:1/2"), 2)


def test_table_lookup() -> None:
	"""Use to test prescribed cumulant tables and their error paths."""
	table = CumulantTable.from_values(WeightId.ind(FamilyId.NC), ScalarDomain.rational(), ("x",), 3, {("x", "x"): Fraction(1)})
	assert table.value(("x",)) == 0
	assert table.words(2) == [("x", "x")]
	with pytest.raises(KeyError, match="No cumulant"):
		table.value(("x",) * 4)
	with pytest.raises(ValueError, match="outside the alphabet"):
		CumulantTable.from_values(WeightId.ind(FamilyId.NC), ScalarDomain.rational(), ("x",), 2, {("y",): Fraction(1)})


def test_q_gaussian_moments() -> None:
	"""Use to test the q-Gaussian moments from a lone second cumulant at q = 1/2."""
	table = CumulantTable.from_values(WeightId.parse("q-crossing:1/2"), ScalarDomain.rational(), ("x",), 6, {("x", "x"): Fraction(1)})
	moments = cumulants_to_moments(table, 6)
	assert moments.moment(("x",) * 4) == Fraction(5, 2)
	assert moments.moment(("x",) * 6) == Fraction(71, 8)
	assert moments.moment(("x",) * 5) == 0


def test_generic_functional_cumulants() -> None:
	"""Use to test classical cumulants as exact polynomials in the formal moments."""
	table = moments_to_cumulants(GenericFunctional(("x",)), WeightId.ind(FamilyId.ALL), 2)
	m_x, m_xx = Poly.variable("m_x"), Poly.variable("m_xx")
	assert table.value(("x", "x")) == m_xx - m_x * m_x
	centered = moments_to_cumulants(GenericFunctional(("x",), centered=True), WeightId.ind(FamilyId.ALL), 2)
	assert centered.value(("x",)) == 0


def test_nested_extension_attaches_collapsed_blocks() -> None:
	"""Use to test the attachment side on {1,3},{2} with symbolic arguments."""
	def block(args: list[str]) -> str:
		return "(" + "".join(args) + ")"

	def left_mult(v: str, a: str) -> str:
		return f"[{v}>{a}]"

	def right_mult(a: str, v: str) -> str:
		return f"[{a}<{v}]"

	p = parse_partition("1,3/2")
	assert nested_extension(p, ["a", "b", "c"], block, left_mult, right_mult) == "(a[(b)>c])"
	assert nested_extension(p, ["a", "b", "c"], block, left_mult, right_mult, side="left") == "([a<(b)]c)"
	with pytest.raises(ValueError, match="non-crossing"):
		nested_extension(parse_partition("1,3/2,4"), ["a", "b", "c", "d"], block, left_mult, right_mult)
	with pytest.raises(ValueError, match="arguments"):
		nested_extension(p, ["a", "b"], block, left_mult, right_mult)


def test_nested_extension_is_commutative_on_scalars(random_functional: TabulatedFunctional) -> None:
	"""Use to test that nested and commutative extensions agree for rational cumulants."""
	table = moments_to_cumulants(random_functional, WeightId(WeightKind.MONOTONE), 4)
	for text, word in (("1,3/2", ("x", "y", "y")), ("1,4/2,3", ("y", "x", "x", "y")), ("1/2,3", ("x", "x", "y"))):
		p = parse_partition(text)
		assert mult_ext_nested(table, p, word) == mult_ext_commutative(table, p, word)
		assert mult_ext_nested(table, p, word, side="left") == mult_ext_commutative(table, p, word)


def test_matrix_round_trip_and_commutative_guard() -> None:
	"""Use to test nested cumulants of a random matrix functional."""
	functional = MatrixFunctional.random(("x", "y"), 2, np.random.default_rng(5))
	table = moments_to_cumulants(functional, WeightId(WeightKind.MONOTONE), 3)
	moments = cumulants_to_moments(table, 3)
	for word in (("x",), ("x", "y"), ("y", "x", "y")):
		assert moments.moment(word) == functional.moment(word)
	with pytest.raises(ValueError, match="not defined"):
		mult_ext_commutative(table, parse_partition("1/2"), ("x", "y"))


def test_constants_vanish_for_singleton_inductive_weights() -> None:
	"""Use to test constant arguments in generic, random rational and random matrix functionals."""
	modified = WeightId(WeightKind.MODIFIED_MONOTONE)
	assert constants_independence_check(modified, 4, ScalarDomain.poly()).holds
	assert constants_independence_check(WeightId.ind(FamilyId.ALMOST_INTERVAL), 4, ScalarDomain.rational(), seeds=2).holds
	assert constants_independence_check(modified, 3, ScalarDomain.matrix(2), alphabet=("x",), seed=1).holds


def test_constants_survive_for_monotone_weight() -> None:
	"""Use to test the first surviving constant word of the monotone weight."""
	check = constants_independence_check(WeightId(WeightKind.MONOTONE), 3, ScalarDomain.poly())
	assert not check.holds
	assert check.witness["word"] == "x1x"
	assert check.details["witnesses"][0]["word"] == "x1x"


def test_cancellation_audit_and_balancedness() -> None:
	"""Use to test the term-by-term cancellation and left/right attachment agreement."""
	audit = cancellation_audit(WeightId(WeightKind.MODIFIED_MONOTONE), 4)
	assert audit.holds
	assert audit.details["paired"] > 0
	assert not cancellation_audit(WeightId(WeightKind.MONOTONE), 3).holds
	assert balancedness_check(WeightId.ind(FamilyId.NC), 3, dimension=2, alphabet=("x",)).holds


def test_boolean_central_limit_moments() -> None:
	"""Use to test the boolean CLT on the reference marginal at N = 100."""
	marginal = reference_marginal(CLTKind.BOOLEAN, 4)
	assert clt_moments(CLTKind.BOOLEAN, marginal, 100, 4) == [0, 1, 0, Fraction(801, 800)]
	with pytest.raises(ValueError, match="known up to order"):
		reference_marginal(CLTKind.BOOLEAN, 9)


def test_central_limit_input_checks() -> None:
	"""Use to test the centring requirement and the perfect-square rule for odd cumulants."""
	with pytest.raises(ValueError, match="centred"):
		clt_moments(CLTKind.BOOLEAN, one_variable("1", "2"), 4, 2)
	assert clt_moments(CLTKind.BOOLEAN, one_variable("1", "2"), 4, 2, allow_non_centered=True)[0] == 1
	skewed = one_variable("0", "1", "1")
	with pytest.raises(ValueError, match="perfect square"):
		clt_moments(CLTKind.BOOLEAN, skewed, 10, 3)
	assert clt_moments(CLTKind.BOOLEAN, skewed, 100, 3) == [0, 1, Fraction(1, 10)]
	with pytest.raises(ValueError, match="single-symbol"):
		clt_moments(CLTKind.BOOLEAN, GenericFunctional(("x", "y")), 4, 2)


def test_fermi_boolean_central_limit_keeps_mean() -> None:
	"""Use to test that the Fermi-boolean sum keeps the mean and the variance of the reference marginal."""
	marginal = reference_marginal(CLTKind.FERMI_BOOLEAN, 2)
	m1, m2 = clt_moments(CLTKind.FERMI_BOOLEAN, marginal, 4, 2)
	assert m1 == marginal.moment(("x",))
	assert m2 == marginal.moment(("x", "x"))


def test_shifted_bernoulli_moments() -> None:
	"""Use to test the moments of 1/2 ± 1."""
	assert shifted_bernoulli_moments(Fraction(1, 2), Fraction(1), 3) == [Fraction(1, 2), Fraction(5, 4), Fraction(13, 8)]
