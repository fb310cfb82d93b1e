"""Unit tests for family posets, Möbius functions and the singleton-inductive checks."""

import math
from fractions import Fraction

import pytest

from src.partitions.families import FamilyId, catalan
from src.partitions.partition import Partition, parse_partition
from src.poset.family_poset import (
    FamilyPoset,
    NotALatticeError,
    family_poset,
    hasse_diagram,
    hasse_to_dot,
    is_lattice,
    join_in_family,
    leq,
    meet_in_family,
    moebius,
    moebius_sequence,
    weisner_check,
)
from src.poset.singleton_inductive import si_check_family, si_check_weight
from src.poset.structure import (
    almost_interval_powers_check,
    button_word,
    cyclic_interval_buttons_check,
    cyclic_interval_intervals_check,
    moebius_multiplicativity_check,
    weisner_top_reduction,
)
from src.weights.catalogue import WeightId, WeightKind


def test_refinement_order() -> None:
	"""Use to test leq on comparable and incomparable pairs."""
	assert leq(Partition.singletons(3), Partition.full(3))
	assert leq(parse_partition("1,2/3"), Partition.full(3))
	assert not leq(parse_partition("1,2/3"), parse_partition("1/2,3"))
	with pytest.raises(ValueError, match="different sizes"):
		leq(Partition.full(2), Partition.full(3))


@pytest.mark.parametrize(("family", "start", "formula"), [
	(FamilyId.ALL, 1, lambda n: (-1) ** (n - 1) * math.factorial(n - 1)),
	(FamilyId.NC, 1, lambda n: (-1) ** (n - 1) * catalan(n - 1)),
	(FamilyId.INTERVAL, 1, lambda n: (-1) ** (n - 1)),
	(FamilyId.CYCLIC_INTERVAL, 2, lambda n: (-1) ** (n + 1) * (n - 1)),
])
def test_moebius_closed_forms(family: FamilyId, start: int, formula: object) -> None:
	"""Use to test μ(0_n, 1_n) against the standard sequences."""
	n_values = list(range(start, 6))
	assert list(moebius_sequence(family, n_values).values()) == [formula(n) for n in n_values]


def test_almost_interval_moebius_doubles() -> None:
	"""Use to test the almost-interval row 1 -1 2 -4 8 -16 32."""
	values = list(moebius_sequence(FamilyId.ALMOST_INTERVAL, range(1, 8)).values())
	assert values == [1, -1, 2, -4, 8, -16, 32]


def test_moebius_on_an_inner_interval() -> None:
	"""Use to test μ on an interval not starting at the bottom, and the membership check."""
	assert moebius(FamilyId.NC, parse_partition("1/2/3/4"), parse_partition("1,2/3,4")) == 1
	assert moebius(FamilyId.ALL, parse_partition("1,2/3/4"), Partition.full(4)) == 2
	with pytest.raises(ValueError, match="not a member"):
		moebius(FamilyId.NC, parse_partition("1,3/2,4"), Partition.full(4))
	with pytest.raises(ValueError, match="Not an interval"):
		moebius(FamilyId.ALL, Partition.full(3), Partition.singletons(3))


def test_moebius_matrix_is_inverse_of_zeta() -> None:
	"""Use to test that the Möbius matrix inverts the comparability matrix of NC(4)."""
	poset = family_poset(FamilyId.NC, 4)
	zeta = poset.leq.astype(int)
	product = zeta.dot(poset.moebius_matrix)
	assert (product == [[int(i == j) for j in range(len(poset))] for i in range(len(poset))]).all()


def test_joins_and_meets_inside_families() -> None:
	"""Use to test that the family join can be coarser than the join in P."""
	left, right = parse_partition("1,3/2/4"), parse_partition("1/2,4/3")
	assert join_in_family(FamilyId.ALL, left, right) == parse_partition("1,3/2,4")
	assert join_in_family(FamilyId.NC, left, right) == Partition.full(4)
	assert join_in_family(FamilyId.CYCLIC_INTERVAL, parse_partition("1,2/3"), parse_partition("1/2,3")) == Partition.full(3)
	assert meet_in_family(FamilyId.INTERVAL, parse_partition("1,2,3/4"), parse_partition("1/2,3,4")) == parse_partition("1/2,3/4")


def test_lattice_reports() -> None:
	"""Use to test lattice-hood of the classical families."""
	for family in (FamilyId.ALL, FamilyId.NC, FamilyId.INTERVAL):
		assert all(is_lattice(family, n) for n in range(1, 6))
	assert issubclass(NotALatticeError, ValueError)


def test_poset_size_cap() -> None:
	"""Use to test that oversized posets are refused before allocation."""
	with pytest.raises(ValueError, match="poset cap"):
		FamilyPoset(FamilyId.ALL, 4, [Partition.full(4)] * 3, max_elements=2)


def test_weisner_sums() -> None:
	"""Use to test Weisner's sum for σ = {1,2} and the three almost-interval contributors."""
	sigma = parse_partition("1,2/3/4")
	assert weisner_check(FamilyId.INTERVAL, 4, sigma).holds
	result = weisner_check(FamilyId.ALMOST_INTERVAL, 4, sigma)
	assert result.holds
	assert set(result.contributors) == {Partition.full(4), parse_partition("1/2,3,4"), parse_partition("1,3,4/2")}
	with pytest.raises(ValueError, match="bottom"):
		weisner_check(FamilyId.INTERVAL, 3, Partition.singletons(3))


@pytest.mark.parametrize(("family", "top", "below_top", "members"), [
	(FamilyId.INTERVAL, -1, 1, 8),
	(FamilyId.CYCLIC_INTERVAL, -3, 3, 12),
])
def test_weisner_sum_at_the_top(family: FamilyId, top: int, below_top: int, members: int) -> None:
	"""Use to test σ = 1_4, where the sum runs over the whole poset and reduces to alternating binomials."""
	result = weisner_check(family, 4, Partition.full(4))
	assert result.holds
	assert result.total == 0
	assert len(result.contributors) == members
	assert moebius(family, Partition.singletons(4), Partition.full(4)) == top
	assert weisner_top_reduction(family, 4) == below_top
	assert result.total - top == below_top


def test_weisner_top_reduction_families() -> None:
	"""Use to test the binomial reductions for several n and the refusal of other families."""
	for n in range(2, 8):
		assert weisner_top_reduction(FamilyId.INTERVAL, n) == (-1) ** n
		assert weisner_top_reduction(FamilyId.CYCLIC_INTERVAL, n) == (-1) ** n * (n - 1)
	with pytest.raises(ValueError, match="No binomial reduction"):
		weisner_top_reduction(FamilyId.ALMOST_INTERVAL, 4)


def test_hasse_diagram_of_cyclic_intervals() -> None:
	"""Use to test that CI(3) has the bottom, three atoms and the top."""
	graph = hasse_diagram(FamilyId.CYCLIC_INTERVAL, 3)
	assert graph.number_of_nodes() == 5
	assert graph.number_of_edges() == 6
	assert graph.has_edge("1/2/3", "1,2/3")
	dot = hasse_to_dot(graph, name="ci_3")
	assert dot.startswith("digraph ci_3")
	assert "rankdir=BT" in dot


def test_cyclic_interval_structure() -> None:
	"""Use to test the button-word model and the interval shapes of CI(n)."""
	assert button_word(parse_partition("1,2/3/4")) == "1000"
	assert button_word(parse_partition("1,4/2,3")) == "0101"
	for n in range(3, 6):
		assert cyclic_interval_buttons_check(n).holds
		assert cyclic_interval_intervals_check(n).holds


def test_almost_interval_moebius_powers_and_multiplicativity() -> None:
	"""Use to test that Möbius values of Ĩ(n) are ±2^k and lower intervals factor over blocks."""
	check = almost_interval_powers_check(6)
	assert check.holds
	assert all(abs(v) & (abs(v) - 1) == 0 for v in check.details["values"])
	for family in (FamilyId.ALL, FamilyId.NC, FamilyId.INTERVAL, FamilyId.ALMOST_INTERVAL):
		assert moebius_multiplicativity_check(family, 5).holds


@pytest.mark.parametrize(("family", "expected"), [
	(FamilyId.ALL, True),
	(FamilyId.NC, True),
	(FamilyId.ALMOST_INTERVAL, True),
	(FamilyId.INTERVAL, False),
	(FamilyId.CYCLIC_INTERVAL, False),
])
def test_singleton_inductive_families(family: FamilyId, expected: bool) -> None:  # noqa: FBT001
	"""Use to test the singleton-inductive classification of the families."""
	report = si_check_family(family, 5)
	assert report.holds is expected
	assert (report.witness is None) is expected


def test_singleton_inductive_weight_witnesses() -> None:
	"""Use to test the monotone and interval-indicator witnesses at {1,3},{2} and the cyclic-interval one at {1},{2,4},{3}."""
	monotone = si_check_weight(WeightId(WeightKind.MONOTONE), 5)
	assert not monotone.holds
	assert monotone.witness.image == parse_partition("1,3/2")
	assert monotone.witness.values == (Fraction(1, 2), Fraction(1))
	interval = si_check_weight(WeightId.ind(FamilyId.INTERVAL), 5)
	assert interval.witness.image == parse_partition("1,3/2")
	assert interval.witness.values == (Fraction(0), Fraction(1))
	cyclic = si_check_weight(WeightId.ind(FamilyId.CYCLIC_INTERVAL), 5)
	assert not cyclic.holds
	assert (cyclic.witness.n, cyclic.witness.r) == (3, 3)
	assert cyclic.witness.image == parse_partition("1/2,4/3")
	assert cyclic.witness.values == (Fraction(0), Fraction(1))
	assert si_check_weight(WeightId(WeightKind.MODIFIED_MONOTONE), 5).holds
	assert si_check_weight(WeightId(WeightKind.SINGLETON), 5).holds
