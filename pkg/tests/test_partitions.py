"""Unit tests for the partition type and its elementary maps."""

import pytest

from src.partitions.partition import (
    Partition,
    crossing_count,
    delete_singleton,
    format_partition,
    insert_singleton,
    is_cyclic_interval,
    is_interval,
    is_noncrossing,
    join_in_p,
    nesting_forest,
    new_partition,
    parse_partition,
    remove_singletons,
    tree_factorial,
)


@pytest.fixture
def crossing() -> Partition:
    """Use to provide the smallest crossing partition {1,3},{2,4}."""
    return parse_partition("1,3/2,4")


def test_parse_partition_canonicalises_blocks() -> None:
	"""Use to test that blocks are sorted internally and ordered by their minimum."""
	p = parse_partition("4,2/3,1")
	assert p.n == 4
	assert p.blocks == ((1, 3), (2, 4))
	assert format_partition(p) == "1,3/2,4"


def test_parse_partition_with_explicit_size() -> None:
	"""Use to test that an explicit n is checked against the blocks."""
	assert parse_partition("1,2", 2) == Partition.full(2)
	with pytest.raises(ValueError, match="uncovered"):
		parse_partition("1,2", 3)


@pytest.mark.parametrize(("n", "blocks", "message"), [
	(3, [[1, 2], [2, 3]], "repeated"),
	(3, [[1], [2]], "uncovered"),
	(2, [[1, 3]], "out of range"),
	(0, [], "positive integer"),
	(2, [[1, 2], []], "Empty block"),
])
def test_new_partition_rejects_invalid_blocks(n: int, blocks: list, message: str) -> None:
	"""Use to test that malformed block lists raise ValueError with a precise message."""
	with pytest.raises(ValueError, match=message):
		new_partition(n, blocks)


def test_from_rgs_groups_positions_by_label() -> None:
	"""Use to test that restricted growth strings map to the expected blocks."""
	assert Partition.from_rgs((0, 1, 0)) == parse_partition("1,3/2")
	assert Partition.from_rgs((0, 0, 0)) == Partition.full(3)


def test_crossing_detection(crossing: Partition) -> None:
	"""Use to test the non-crossing predicate and the crossing count."""
	assert not is_noncrossing(crossing)
	assert crossing_count(crossing) == 1
	assert is_noncrossing(parse_partition("1,4/2,3"))
	assert crossing_count(parse_partition("1,4/2,3")) == 0
	assert crossing_count(parse_partition("1,4/2,5/3,6")) == 3


def test_interval_and_cyclic_interval_predicates() -> None:
	"""Use to test that I ⊂ CI ⊂ NC on hand-picked partitions."""
	assert is_interval(parse_partition("1,2/3"))
	assert not is_interval(parse_partition("1,3/2"))
	wrap = parse_partition("1,4/2,3")
	assert not is_interval(wrap)
	assert is_cyclic_interval(wrap)
	assert not is_cyclic_interval(parse_partition("1,3/2/4"))
	assert is_cyclic_interval(parse_partition("1,2"))


def test_remove_singletons_relabels_survivors() -> None:
	"""Use to test that RS deletes singleton blocks and closes the gaps."""
	assert remove_singletons(parse_partition("1,3/2")) == Partition.full(2)
	assert remove_singletons(parse_partition("1,4/2/3,5")) == parse_partition("1,3/2,4")
	assert remove_singletons(Partition.singletons(3)) == Partition.empty()


def test_insert_and_delete_singleton_are_inverse() -> None:
	"""Use to test Ψ_r on the one-block partition and its inverse."""
	image = insert_singleton(Partition.full(2), 2)
	assert image == parse_partition("1,3/2")
	assert delete_singleton(image, 2) == Partition.full(2)
	for r in range(1, 5):
		p = parse_partition("1,3/2")
		assert delete_singleton(insert_singleton(p, r), r) == p


def test_singleton_maps_reject_bad_positions() -> None:
	"""Use to test the range check of Ψ_r and the singleton check of its inverse."""
	with pytest.raises(ValueError, match="out of range"):
		insert_singleton(Partition.full(2), 4)
	with pytest.raises(ValueError, match="not a singleton"):
		delete_singleton(Partition.full(2), 1)


def test_join_in_full_lattice_merges_overlapping_blocks() -> None:
	"""Use to test the union-find join."""
	s = parse_partition("1,2/3/4")
	p = parse_partition("1/2,3/4")
	assert join_in_p(s, p) == parse_partition("1,2,3/4")
	with pytest.raises(ValueError, match="different sizes"):
		join_in_p(s, Partition.full(3))


@pytest.mark.parametrize(("text", "factorial"), [
	("1,4/2,3", 2),
	("1,6/2,3/4,5", 3),
	("1,2/3,4", 1),
	("1,6/2,5/3,4", 6),
])
def test_tree_factorial_of_nesting_forest(text: str, factorial: int) -> None:
	"""Use to test subtree-size products of nesting forests."""
	assert tree_factorial(nesting_forest(parse_partition(text))) == factorial


def test_nesting_forest_parents_and_crossing_input(crossing: Partition) -> None:
	"""Use to test that the innermost nesting block is the parent and crossing input is refused."""
	forest = nesting_forest(parse_partition("1,6/2,5/3,4"))
	assert forest.parent == (None, 0, 1)
	assert forest.roots == (0,)
	assert forest.children(0) == (1,)
	with pytest.raises(ValueError, match="non-crossing"):
		nesting_forest(crossing)
