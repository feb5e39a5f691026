# Walk through the sparsity pattern of a tiny 3D case (n=2) and show
# that each direction's (row, column) pairs are exactly the nonzeros of
# the corresponding Kronecker factor.
#
# $ python demos/pattern_walkthrough.py

import numpy as np

from sumfac import build_sparsity_pattern, dense_direction_factor, scatter
from sumfac.indexing import TensorLayout, unflatten

n, d = 2, 3
pattern = build_sparsity_pattern(n, n, d)
layout = TensorLayout((n,) * d)

print(f"n={n}, d={d}: {pattern.entry_count} entries per direction "
      f"(n^(d+1) = {n ** (d + 1)})")
print()
print("entry  row (digits)   col dir0   col dir1   col dir2")
for k in range(pattern.entry_count):
    row = pattern.rows[k, 0]
    cols = pattern.columns[k]
    digits = unflatten(row, layout)
    print(f"{k:5d}  {row:3d} {str(digits):10s}"
          + "".join(f"  {c:3d} {str(unflatten(c, layout)):9s}" for c in cols))

# each column index differs from the row only in its direction's digit;
# scattering a factor of ones paints the Kronecker sparsity picture
print()
for j in range(d):
    dense = dense_direction_factor(np.ones((n, n)), np.ones(n), j, d)
    ones = np.ones((pattern.row_space_size, n))
    assert np.array_equal(scatter(ones, pattern, j) != 0, dense != 0)
    print(f"direction {j}: {np.count_nonzero(dense)} nonzeros in the "
          f"{dense.shape[0]}x{dense.shape[1]} dense factor, "
          f"{n} per row -- pattern matches exactly")
