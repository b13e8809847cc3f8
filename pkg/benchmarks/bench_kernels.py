"""Compare the jitted kernels against their pure-numpy twins.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

Each kernel is timed on a workload shaped like real library use: the
dominance sweep at the resolution of the oracle grid runs, the Hermitian
eigenvalue solver on a batch of 2x2 positivity checks, and the cubic
interpolator at grid-action size.  The jitted variants are warmed up
before timing so compilation is not billed to the measurement.
"""

import time

import numpy as np

from gaussatlas._kernels import HAS_NUMBA, implementations

N_REPEAT = 5


def _time(fn, *args, repeat=N_REPEAT):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_dominance():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(2, 2))
    A = rng.normal(size=(2, 2))
    Y = A @ A.T + 2.0 * np.eye(2)
    u_grid = np.exp(2.0 * np.linspace(0.0, 6.0, 3001))
    theta = np.linspace(0.0, np.pi, 32, endpoint=False)
    args = (np.ascontiguousarray(X), np.ascontiguousarray(Y),
            u_grid, np.cos(theta), np.sin(theta))
    return "dominance sweep (3001 x 32)", args


def bench_hermitian():
    rng = np.random.default_rng(2)
    a = rng.normal(size=(2, 2))
    a = a + a.T
    b = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return "hermitian eigvals (2000 calls)", (np.ascontiguousarray(a), b)


def bench_interp():
    rng = np.random.default_rng(3)
    n = 1025
    values = rng.normal(size=(n, n))
    fx = rng.uniform(2.0, n - 3.0, size=n * n)
    fy = rng.uniform(2.0, n - 3.0, size=n * n)
    return "cubic interpolation (1025^2 points)", (values, fx, fy)


def main():
    rows = []

    name, args = bench_dominance()
    impls = implementations("dominance_best")
    t_np = _time(impls["numpy"], *args)
    t_nb = None
    if HAS_NUMBA:
        impls["numba"](*args)  # JIT warm-up
        t_nb = _time(impls["numba"], *args)
    rows.append((name, t_np, t_nb))

    name, args = bench_hermitian()
    impls = implementations("hermitian_eigvals")

    def run(fn):
        for _ in range(2000):
            fn(*args)

    t_np = _time(lambda: run(impls["numpy"]))
    t_nb = None
    if HAS_NUMBA:
        impls["numba"](*args)
        t_nb = _time(lambda: run(impls["numba"]))
    rows.append((name, t_np, t_nb))

    name, args = bench_interp()
    impls = implementations("interp_cubic2d")
    t_np = _time(impls["numpy"], *args)
    t_nb = None
    if HAS_NUMBA:
        impls["numba"](*args)
        t_nb = _time(impls["numba"], *args)
    rows.append((name, t_np, t_nb))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for name, t_np, t_nb in rows:
        if t_nb is None:
            print(f"{name:<{width}}  {t_np * 1e3:>8.2f}ms  {'n/a':>10}  {'n/a':>8}")
        else:
            print(f"{name:<{width}}  {t_np * 1e3:>8.2f}ms  {t_nb * 1e3:>8.2f}ms"
                  f"  {t_np / t_nb:>7.1f}x")
    if not HAS_NUMBA:
        print("numba unavailable; only the numpy path was timed")


if __name__ == "__main__":
    main()
