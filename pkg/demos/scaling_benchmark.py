# A reduced run of the scaling benchmark: time both evaluation routes
# over a short range of n and fit log-log slopes.  The sum-factorized
# path should come out near 4 (d n^(d+1) work at d=3) and the dense path
# near 6 (d n^(2d)).  The full sweep lives in the sumfac-bench CLI:
#
# $ sumfac-bench --dim 3 --n-min 3 --n-max 15 --reps 5 --out results.csv
#
# $ python demos/scaling_benchmark.py

from sumfac.bench import BenchConfig, fit_slope, median_timings, run_benchmark

config = BenchConfig(d=3, n_min=3, n_max=12, repetitions=3, seed=0)
records = run_benchmark(config)

print(" n    sumfac median [s]   dense median [s]")
sumfac = median_timings(records, "sumfac")
dense = median_timings(records, "dense")
for n in sorted(sumfac):
    print(f"{n:2d}    {sumfac[n]:.6e}        {dense[n]:.6e}")

print()
print(f"fitted slopes: sumfac {fit_slope(records, 'sumfac'):.2f} "
      f"(theory 4), dense {fit_slope(records, 'dense'):.2f} (theory 6)")
print("every timed point passed its oracle gate before timing.")
