import pytest

from sumfac import counting


@pytest.fixture(autouse=True)
def _fresh_counters():
    # exact-equality assertions on the global counters need a clean slate
    counting.reset_multiplication_count()
    counting.reset_allocation_ledger()
    yield
