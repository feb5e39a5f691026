"""Scaling benchmark and command-line front end.

Times the assembly-plus-evaluation of the d-direction Hadamard product
(I x ... x D x ... x I) o C, with D a nodal differentiation matrix and
C the rank-one operand c c^T, two ways: through the sparse
sum-factorized kernel (O(n**(d+1)) work) and through the dense oracle
(O(n**(2d)) work).  Every (method, n) point is gated on an oracle
equivalence check before it is timed; fitted log-log slopes of the
median timings expose the asymptotic exponents.

Timing protocol: the sparsity pattern and the dense Kronecker factors
are input-independent structure and stay outside the timed region
(--include-pattern moves pattern construction inside); operand-dependent
work (factor assembly, operand gathering, entrywise products) is inside.
One warm-up evaluation per point is discarded, which also absorbs JIT
compilation, and the multiplication counter is read during the warm-up
around the evaluation stage only.  Single-threaded.
"""

import argparse
import csv
import sys
import time
import warnings
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import counting
from .burgers import (
    BurgersState,
    average_flux,
    entropy_time_derivative,
    time_derivative,
    total_entropy,
)
from .kernel import (
    TwoPointOperand,
    assemble_basis_factors,
    assemble_operand_factors,
    build_sparsity_pattern,
    hadamard_evaluate,
    hadamard_row_sum,
)
from .operators import (
    gauss_legendre,
    kronecker_apply,
    lagrange_diff_matrix,
    tensor_product_weights,
)
from .oracle import (
    DEFAULT_CAPACITY,
    dense_direction_factor,
    dense_hadamard,
    dense_rank_one_operand,
    scatter,
)

METHODS = ("dense", "sumfac")
CSV_FIELDS = ("d", "n", "method", "rep", "elapsed_s", "mul_count", "timestamp")

DENSE_GATE_MAX_N = 6
GATE_RTOL = 1e-13


class CorrectnessGateError(Exception):
    """A benchmark point failed its oracle pre-check; nothing was timed."""


@dataclass
class BenchConfig:
    """Sweep settings; validate() raises ValueError on bad combinations."""

    d: int = 3
    n_min: int = 3
    n_max: int = 15
    repetitions: int = 5
    seed: int = 0
    methods: tuple = METHODS
    low: float = 1e-8
    high: float = 30.0
    include_pattern: bool = False

    def validate(self):
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ValueError(
                f"need 1 <= n_min <= n_max, got [{self.n_min}, {self.n_max}]"
            )
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        if not self.methods:
            raise ValueError("at least one method is required")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}, expected one of {METHODS}")
        if not (np.isfinite(self.low) and np.isfinite(self.high)):
            raise ValueError("operand bounds must be finite")
        if self.low > self.high:
            raise ValueError(f"need low <= high, got [{self.low}, {self.high}]")


@dataclass
class BenchRecord:
    """One timed repetition of one (d, n, method) point."""

    d: int
    n: int
    method: str
    rep: int
    elapsed_s: float
    mul_count: int
    timestamp: str


def _timestamp():
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


def _relative_error(got, ref):
    scale = np.max(np.abs(ref))
    if scale == 0.0:
        return float(np.max(np.abs(got)))
    return float(np.max(np.abs(got - ref)) / scale)


def _operand_vector(config, n):
    rng = np.random.default_rng((config.seed, config.d, n))
    return rng.uniform(config.low, config.high, n**config.d)


def _gate_point(config, n, pattern, diff, weights, c):
    """Oracle pre-check for one sweep size; raises CorrectnessGateError."""
    d = config.d
    basis = assemble_basis_factors(pattern, diff, weights)
    operand_factors = assemble_operand_factors(pattern, TwoPointOperand(c))
    product = hadamard_evaluate(basis, operand_factors)
    if n <= DENSE_GATE_MAX_N:
        operand_matrix = dense_rank_one_operand(c, c)
        for j in range(d):
            dense_factor = dense_direction_factor(diff, weights, j, d)
            ref = dense_hadamard(dense_factor, operand_matrix)
            err = _relative_error(scatter(product.factor(j), pattern, j), ref)
            if err > GATE_RTOL:
                raise CorrectnessGateError(
                    f"sum-factorized product deviates from the dense oracle "
                    f"at n={n}, direction {j}: relative error {err:.3e}"
                )
    else:
        # row-sum identity for the rank-one operand:
        # (K_j o c c^T) 1 = c * (K_j c)
        sums = hadamard_row_sum(product, pattern)
        for j in range(d):
            factors = [weights] * d
            factors[j] = diff
            ref = c * kronecker_apply(factors, c)
            err = _relative_error(sums[j], ref)
            if err > GATE_RTOL:
                raise CorrectnessGateError(
                    f"row-sum self-consistency check failed at n={n}, "
                    f"direction {j}: relative error {err:.3e}"
                )


def _sumfac_region(config, n, pattern, diff, weights, operand, measure):
    if config.include_pattern:
        pattern = build_sparsity_pattern(n, n, config.d)
    basis = assemble_basis_factors(pattern, diff, weights)
    operand_factors = assemble_operand_factors(pattern, operand)
    if measure:
        before = counting.multiplication_count()
        hadamard_evaluate(basis, operand_factors)
        return counting.multiplication_count() - before
    hadamard_evaluate(basis, operand_factors)
    return None


def _dense_region(config, dense_factors, c, scratch, measure):
    operand_buffer, product_buffer = scratch
    operand_matrix = dense_rank_one_operand(c, c, out=operand_buffer)
    if measure:
        before = counting.multiplication_count()
        for factor in dense_factors:
            dense_hadamard(factor, operand_matrix, out=product_buffer)
        return counting.multiplication_count() - before
    for factor in dense_factors:
        dense_hadamard(factor, operand_matrix, out=product_buffer)
    return None


def _time_reps(repetitions, region, *args):
    timings = []
    for _ in range(repetitions):
        start = time.perf_counter()
        region(*args, False)
        timings.append(time.perf_counter() - start)
    return timings


def run_benchmark(config, capacity=DEFAULT_CAPACITY):
    """Run the sweep and return one BenchRecord per (n, method, rep).

    Points whose dense matrices would exceed the capacity cap are
    skipped with a warning instead of aborting the sweep.
    """
    config.validate()
    d = config.d
    records = []
    for n in range(config.n_min, config.n_max + 1):
        c = _operand_vector(config, n)
        rule = gauss_legendre(n)
        diff = lagrange_diff_matrix(rule)
        weights = np.ones(n)
        pattern = build_sparsity_pattern(n, n, d)
        _gate_point(config, n, pattern, diff, weights, c)
        for method in config.methods:
            if method == "dense":
                if (n**d) ** 2 > capacity:
                    warnings.warn(
                        f"skipping dense at n={n}: {(n ** d) ** 2} entries "
                        f"exceed the capacity cap of {capacity}",
                        stacklevel=2,
                    )
                    continue
                dense_factors = [
                    dense_direction_factor(diff, weights, j, d, capacity)
                    for j in range(d)
                ]
                # scratch buffers live outside the timed region, like the
                # prebuilt factors, so repetitions measure arithmetic and
                # memory traffic rather than allocator churn
                scratch = (np.empty((n**d, n**d)), np.empty((n**d, n**d)))
                # warm-up, discarded; reads the evaluation-stage counter
                mul_count = _dense_region(config, dense_factors, c, scratch, True)
                timings = _time_reps(
                    config.repetitions, _dense_region, config, dense_factors, c, scratch
                )
            else:
                operand = TwoPointOperand(c)
                mul_count = _sumfac_region(
                    config, n, pattern, diff, weights, operand, True
                )
                timings = _time_reps(
                    config.repetitions,
                    _sumfac_region, config, n, pattern, diff, weights, operand,
                )
            for rep, elapsed in enumerate(timings):
                records.append(
                    BenchRecord(
                        d=d,
                        n=n,
                        method=method,
                        rep=rep,
                        elapsed_s=elapsed,
                        mul_count=mul_count,
                        timestamp=_timestamp(),
                    )
                )
    return records


def median_timings(records, method):
    """Median elapsed seconds per n for one method, as {n: median}."""
    per_n = {}
    for rec in records:
        if rec.method == method:
            per_n.setdefault(rec.n, []).append(rec.elapsed_s)
    return {n: float(np.median(times)) for n, times in sorted(per_n.items())}


def fit_slope(records, method):
    """Least-squares slope of log(median elapsed) against log(n)."""
    medians = median_timings(records, method)
    if len(medians) < 3:
        raise ValueError(
            f"slope fit needs at least 3 distinct sizes for {method!r}, "
            f"got {len(medians)}"
        )
    sizes = np.array(sorted(medians))
    times = np.array([medians[n] for n in sizes])
    return float(np.polyfit(np.log(sizes), np.log(times), 1)[0])


def emit_csv(records, path):
    """Write records to CSV, sorted by (d, n, method, rep).

    Floats are written with repr precision so parsing the file back
    recovers the records exactly.
    """
    ordered = sorted(records, key=lambda r: (r.d, r.n, r.method, r.rep))
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_FIELDS)
        for rec in ordered:
            writer.writerow(
                [
                    rec.d,
                    rec.n,
                    rec.method,
                    rec.rep,
                    repr(rec.elapsed_s),
                    rec.mul_count,
                    rec.timestamp,
                ]
            )


def read_csv(path):
    """Parse a CSV written by emit_csv back into BenchRecord objects."""
    records = []
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if tuple(reader.fieldnames) != CSV_FIELDS:
            raise ValueError(
                f"unexpected CSV header {reader.fieldnames}, "
                f"expected {list(CSV_FIELDS)}"
            )
        for row in reader:
            records.append(
                BenchRecord(
                    d=int(row["d"]),
                    n=int(row["n"]),
                    method=row["method"],
                    rep=int(row["rep"]),
                    elapsed_s=float(row["elapsed_s"]),
                    mul_count=int(row["mul_count"]),
                    timestamp=row["timestamp"],
                )
            )
    return records


def run_entropy_demo(seed=0, states_per_case=20, stream=None):
    """Entropy-conservation spot check across d and n; returns True on pass.

    For each (d, n) case: the entropy-conservative flux must keep
    |dS/dt| below 1e-12 (1 + |S|) and conserve mass on every random
    state, while the naive average flux must break entropy conservation
    (|dS/dt| > 1e-6) on at least 95 percent of them.
    """
    if stream is None:
        stream = sys.stdout
    rng = np.random.default_rng(seed)
    all_ok = True
    for d in (1, 2, 3):
        for n in (3, 4, 5, 6):
            worst_ec = 0.0
            worst_mass = 0.0
            broken = 0
            for _ in range(states_per_case):
                state = BurgersState(d, n, rng.uniform(-1.0, 1.0, n**d))
                entropy = total_entropy(state)
                rate = entropy_time_derivative(state)
                worst_ec = max(worst_ec, abs(rate) / (1.0 + abs(entropy)))
                omega_dot = _mass_rate(state)
                worst_mass = max(worst_mass, abs(omega_dot))
                if abs(entropy_time_derivative(state, average_flux)) > 1e-6:
                    broken += 1
            control = broken / states_per_case
            ok = worst_ec <= 1e-12 and worst_mass <= 1e-12 and control >= 0.95
            all_ok = all_ok and ok
            print(
                f"entropy d={d} n={n}: |dS/dt|/(1+|S|) <= {worst_ec:.2e}, "
                f"mass rate <= {worst_mass:.2e}, control broken on "
                f"{control:.0%} [{'ok' if ok else 'FAIL'}]",
                file=stream,
            )
    return all_ok


def _mass_rate(state):
    omega = tensor_product_weights(state.rule.weights, state.d)
    return float(np.dot(omega, time_derivative(state)))


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; remap to 1 so status 2
    # stays reserved for correctness-gate failures
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser():
    parser = _Parser(
        prog="sumfac-bench",
        description="Scaling benchmark of sum-factorized vs dense Hadamard products.",
    )
    parser.add_argument("--dim", type=int, default=3, help="tensor dimension d")
    parser.add_argument("--n-min", type=int, default=3, help="smallest 1D size")
    parser.add_argument("--n-max", type=int, default=15, help="largest 1D size")
    parser.add_argument("--reps", type=int, default=5, help="timed repetitions per point")
    parser.add_argument("--seed", type=int, default=0, help="operand RNG seed")
    parser.add_argument(
        "--methods",
        default="dense,sumfac",
        help="comma-separated subset of: dense, sumfac",
    )
    parser.add_argument("--out", default=None, help="write raw records to this CSV")
    parser.add_argument(
        "--include-pattern",
        action="store_true",
        help="move sparsity-pattern construction inside the timed region",
    )
    parser.add_argument("--low", type=float, default=1e-8, help="operand lower bound")
    parser.add_argument("--high", type=float, default=30.0, help="operand upper bound")
    parser.add_argument(
        "--demo-entropy",
        action="store_true",
        help="run the entropy-conservation demo instead of the sweep",
    )
    return parser


def _print_summary(config, records, stream):
    for method in config.methods:
        medians = median_timings(records, method)
        if not medians:
            print(f"{method}: no timed points", file=stream)
            continue
        print(f"{method}:", file=stream)
        for n, med in medians.items():
            print(f"  n={n:3d}  median {med:.6e} s", file=stream)
        try:
            slope = fit_slope(records, method)
        except ValueError:
            print("  slope: not enough sizes to fit", file=stream)
        else:
            print(f"  fitted log-log slope: {slope:.3f}", file=stream)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.demo_entropy:
        return 0 if run_entropy_demo(seed=args.seed) else 2
    config = BenchConfig(
        d=args.dim,
        n_min=args.n_min,
        n_max=args.n_max,
        repetitions=args.reps,
        seed=args.seed,
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        low=args.low,
        high=args.high,
        include_pattern=args.include_pattern,
    )
    try:
        config.validate()
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 1
    try:
        records = run_benchmark(config)
    except CorrectnessGateError as exc:
        print(f"correctness gate failed: {exc}", file=sys.stderr)
        return 2
    _print_summary(config, records, sys.stdout)
    if args.out is not None:
        try:
            emit_csv(records, args.out)
        except OSError as exc:
            print(f"could not write {args.out}: {exc}", file=sys.stderr)
            return 3
        print(f"wrote {len(records)} records to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
