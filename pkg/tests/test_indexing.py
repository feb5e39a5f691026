"""Flat/multi-index round trips and layout invariants."""

import itertools

import pytest

from sumfac import TensorLayout, flatten, unflatten


def test_origin_flattens_to_zero():
    for extents in [(4,), (4, 4), (4, 4, 4), (2, 3, 4, 5)]:
        layout = TensorLayout(extents)
        assert flatten((0,) * layout.d, layout) == 0
        assert unflatten(0, layout) == (0,) * layout.d


def test_ordered_triple_example():
    # direction 0 fastest: (3, 2, 1) on a 4-cube sits at 1*16 + 2*4 + 3
    layout = TensorLayout((4, 4, 4))
    assert flatten((3, 2, 1), layout) == 27
    assert unflatten(27, layout) == (3, 2, 1)


def test_strides_increase_with_direction():
    assert TensorLayout((4, 4, 4)).strides == (1, 4, 16)
    layout = TensorLayout((3, 5, 2))
    assert layout.strides == (1, 3, 15)
    assert layout.size == 30
    for a, b in zip(layout.strides, layout.strides[1:]):
        assert a < b
    assert flatten((2, 4, 1), layout) == 1 * 15 + 4 * 3 + 2


@pytest.mark.parametrize(
    "extents",
    [(7,), (9, 11), (3, 3, 3), (2, 3, 4), (21, 21, 21), (10, 10, 10, 10)],
)
def test_round_trip_exhaustive(extents):
    # both compositions are the identity; extents cover d = 1..4 with
    # products up to 10**4
    layout = TensorLayout(extents)
    for multi in itertools.product(*(range(e) for e in reversed(extents))):
        multi = tuple(reversed(multi))
        assert unflatten(flatten(multi, layout), layout) == multi
    for flat in range(layout.size):
        assert flatten(unflatten(flat, layout), layout) == flat


def test_flatten_rejects_out_of_range_components():
    layout = TensorLayout((2, 4))
    with pytest.raises(IndexError):
        flatten((0, 4), layout)
    with pytest.raises(IndexError):
        flatten((-1, 0), layout)
    with pytest.raises(ValueError):
        flatten((0, 0, 0), layout)


def test_unflatten_rejects_out_of_range_flat_index():
    layout = TensorLayout((2, 4))
    with pytest.raises(IndexError):
        unflatten(8, layout)
    with pytest.raises(IndexError):
        unflatten(-1, layout)


def test_layout_validation():
    with pytest.raises(ValueError):
        TensorLayout(())
    with pytest.raises(ValueError):
        TensorLayout((0, 3))
    with pytest.raises(ValueError):
        TensorLayout((2**40, 2**40))  # product overflows the index type


def test_layout_equality():
    assert TensorLayout((2, 3)) == TensorLayout((2, 3))
    assert TensorLayout((2, 3)) != TensorLayout((3, 2))
    assert TensorLayout((2,)).d == 1
