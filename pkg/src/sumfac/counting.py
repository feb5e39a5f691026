"""Operation and storage accounting for the sum-factorized kernel.

Two process-global tallies live here:

* a multiplication counter, incremented by every library routine that
  performs floating-point multiplications on operand data, by the exact
  number of scalar multiplications the routine's algorithm executes, and
* an allocation ledger, incremented by every kernel-side container
  (sparsity patterns, compressed factor sets, row-sum outputs) with the
  number of stored scalars it materializes.

Counts are analytic: each routine knows how many scalar multiplications
its loops perform and reports that number, so the tallies are exact and
deterministic regardless of how the arithmetic is vectorized.  Neither
tally is synchronized across threads.
"""

_multiplications = 0
_allocated_numbers = 0


def reset_multiplication_count():
    """Zero the global multiplication tally."""
    global _multiplications
    _multiplications = 0


def multiplication_count():
    """Scalar multiplications performed by library routines since the last reset."""
    return _multiplications


def add_multiplications(count):
    global _multiplications
    if count < 0:
        raise ValueError(f"multiplication count must be nonnegative, got {count}")
    _multiplications += int(count)


def reset_allocation_ledger():
    """Zero the global allocation ledger."""
    global _allocated_numbers
    _allocated_numbers = 0


def allocated_numbers():
    """Scalars materialized by kernel containers since the last reset."""
    return _allocated_numbers


def register_allocation(count):
    global _allocated_numbers
    if count < 0:
        raise ValueError(f"allocation size must be nonnegative, got {count}")
    _allocated_numbers += int(count)
