#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Two workloads dominate real runs:
  * signed permutation-product sums (matrix multibrackets, nested identity)
  * Jacobi-condition residual accumulation over entry pairs

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from sexpand import _pure

try:
    from sexpand import _core
except ImportError:
    _core = None

from sexpand.expansion import s_expand
from sexpand.multialgebra import MultiAlgebra, StructureTensor
from sexpand.semigroup import gen_se


def timed(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bracket_workload():
    """All inner/outer products of one arity-4 nested-identity evaluation."""
    rng = random.Random(0)
    mats = tuple(
        tuple(rng.randint(-2, 2) for _ in range(9)) for _ in range(4)
    )

    def run(backend):
        out = None
        for _ in range(70):  # 35 splits, inner + outer bracket each
            out = backend.signed_product_sum(mats, 3)
        return out

    return run


def residual_workload():
    """Jacobi residuals of an order-4 expansion: dim 20, 2500 entries."""
    base = MultiAlgebra(
        ("a", "b", "c", "d"),
        StructureTensor.from_entries(
            4, 4, [((0, 1, 2, 3), upper, upper + 1) for upper in range(4)]
        ),
    )
    expanded = s_expand(base, gen_se(3)).algebra
    lowers, uppers, values = [], [], []
    for lower, upper, value in expanded.tensor.items():
        lowers.append(lower)
        uppers.append(upper)
        values.append(int(value))
    args = (tuple(lowers), tuple(uppers), tuple(values), 4)

    def run(backend):
        return backend.gji_pair_terms(*args)

    return run


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    opts = parser.parse_args()

    workloads = [
        ("multibracket sums (70 calls, 4 mats, 3x3)", bracket_workload()),
        ("jacobi residuals (dim 20, 2500 entries)", residual_workload()),
    ]
    print(f"{'workload':<45} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for label, run in workloads:
        pure_t = timed(run, (_pure,), opts.repeat)
        if _core is None:
            print(f"{label:<45} {pure_t:>9.4f}s {'n/a':>10} {'n/a':>8}")
            continue
        core_t = timed(run, (_core,), opts.repeat)
        assert run(_core) == run(_pure)  # identical results, always
        print(
            f"{label:<45} {pure_t:>9.4f}s {core_t:>9.4f}s {pure_t / core_t:>7.1f}x"
        )
    if _core is None:
        print("compiled extension not available; showing pure timings only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
