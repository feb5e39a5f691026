"""Flat/multi-index conversions for tensor-product node grids.

Direction 0 always varies fastest: a multi-index (i_0, ..., i_{d-1})
over extents (e_0, ..., e_{d-1}) flattens to

    i_0 + i_1 * e_0 + i_2 * e_0 * e_1 + ...

so for a cube of d directions with n points each, direction j has
stride n**j.
"""

import numpy as np

_INDEX_MAX = np.iinfo(np.int64).max


class TensorLayout:
    """Row-major-over-reversed-axes layout: direction 0 is the fastest.

    Parameters
    ----------
    extents : sequence of int
        Number of points per direction, all >= 1.
    """

    def __init__(self, extents):
        extents = tuple(int(e) for e in extents)
        if len(extents) == 0:
            raise ValueError("layout needs at least one direction")
        if any(e < 1 for e in extents):
            raise ValueError(f"extents must be positive, got {extents}")
        size = 1
        strides = []
        for e in extents:
            strides.append(size)
            size *= e
        if size > _INDEX_MAX:
            raise ValueError(
                f"extents {extents} overflow the index type "
                f"(product {size} > {_INDEX_MAX})"
            )
        self.extents = extents
        self.strides = tuple(strides)
        self.size = size

    @property
    def d(self):
        return len(self.extents)

    def __repr__(self):
        return f"TensorLayout(extents={self.extents})"

    def __eq__(self, other):
        return isinstance(other, TensorLayout) and self.extents == other.extents


def flatten(multi, layout):
    """Flat index of a multi-index under the layout.

    Raises IndexError if any component is out of range.
    """
    if len(multi) != layout.d:
        raise ValueError(
            f"multi-index has {len(multi)} components, layout has {layout.d}"
        )
    flat = 0
    for idx, ext, stride in zip(multi, layout.extents, layout.strides):
        idx = int(idx)
        if idx < 0 or idx >= ext:
            raise IndexError(f"index {idx} out of range [0, {ext}) in {layout}")
        flat += idx * stride
    return flat


def unflatten(flat, layout):
    """Multi-index (direction 0 first) of a flat index under the layout."""
    flat = int(flat)
    if flat < 0 or flat >= layout.size:
        raise IndexError(f"flat index {flat} out of range [0, {layout.size})")
    multi = []
    for ext in layout.extents:
        flat, r = divmod(flat, ext)
        multi.append(r)
    return tuple(multi)
