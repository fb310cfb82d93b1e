"""Unit tests for the partition families and their counts."""

import pytest

from src.partitions.families import (
    FamilyId,
    almost_interval_classes,
    bell,
    cardinality,
    catalan,
    closed_form,
    contains,
    enumerate_family,
    fibonacci,
    first_right_neighbour,
    restricted_growth_strings,
)
from src.partitions.partition import Partition, parse_partition


def test_family_aliases() -> None:
	"""Use to test that short names resolve to the families."""
	assert FamilyId.parse("ci") is FamilyId.CYCLIC_INTERVAL
	assert FamilyId.parse("almost_interval") is FamilyId.ALMOST_INTERVAL
	assert FamilyId.parse("P") is FamilyId.ALL
	with pytest.raises(ValueError, match="Unknown family"):
		FamilyId.parse("dyck")


def test_sequence_helpers() -> None:
	"""Use to test the Bell, Catalan and Fibonacci helpers."""
	assert [bell(n) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]
	assert [catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]
	assert [fibonacci(2 * n - 1) for n in range(1, 7)] == [1, 2, 5, 13, 34, 89]


def test_restricted_growth_strings_with_pruning() -> None:
	"""Use to test that pruning keeps exactly the non-crossing strings."""
	assert len(list(restricted_growth_strings(4))) == 15
	pruned = [Partition.from_rgs(r) for r in restricted_growth_strings(4, noncrossing=True)]
	assert len(pruned) == 14
	assert parse_partition("1,3/2,4") not in pruned


@pytest.mark.parametrize("family", [f for f in FamilyId if f is not FamilyId.ALMOST_CYCLIC_INTERVAL])
def test_cardinalities_match_closed_forms(family: FamilyId) -> None:
	"""Use to test the counting claims for every family with a closed form."""
	for n in range(1, 9):
		assert cardinality(family, n) == closed_form(family, n)


def test_small_family_sizes() -> None:
	"""Use to test the quoted small cases."""
	assert len(enumerate_family(FamilyId.CYCLIC_INTERVAL, 3)) == 5
	assert len(enumerate_family(FamilyId.ALMOST_INTERVAL, 3)) == 5
	assert len(enumerate_family(FamilyId.ALMOST_INTERVAL, 4)) == 13
	assert closed_form(FamilyId.ALMOST_CYCLIC_INTERVAL, 4) is None


def test_enumeration_is_sorted_unique_and_closed() -> None:
	"""Use to test that every listed member belongs to its family, once, in canonical order."""
	for family in FamilyId:
		members = enumerate_family(family, 5)
		assert list(members) == sorted(set(members))
		assert all(contains(family, p) for p in members)


def test_family_membership() -> None:
	"""Use to test membership of the almost-interval families."""
	nested = parse_partition("1,3/2")
	assert contains(FamilyId.ALMOST_INTERVAL, nested)
	assert not contains(FamilyId.INTERVAL, nested)
	assert not contains(FamilyId.ALMOST_INTERVAL, parse_partition("1,4/2,3"))
	assert contains(FamilyId.ALMOST_CYCLIC_INTERVAL, parse_partition("1,5/2,3/4"))
	assert not contains(FamilyId.NC, parse_partition("1,3/2,4"))


def test_enumeration_cap() -> None:
	"""Use to test that sizes above the cap or below one are refused."""
	with pytest.raises(ValueError, match="enumeration cap"):
		enumerate_family(FamilyId.ALL, 5, max_n=4)
	with pytest.raises(ValueError, match="positive integer"):
		enumerate_family(FamilyId.NC, 0)


def test_almost_interval_classes() -> None:
	"""Use to test the class sizes by the first right-neighbour of 1."""
	assert almost_interval_classes(4) == {1: 5, 2: 5, 3: 2, 4: 1}
	assert first_right_neighbour(parse_partition("1,3/2")) == 3
	assert first_right_neighbour(parse_partition("1/2,3")) == 1
