#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python twins.

Times the three hot paths behind the lattice sweeps and the word engine:
subgroup closure, pairwise commutator generation, and syllable
normalization. Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import random
import time

from finact._kernels import pyref

try:
    from finact._kernels import _speedups
except ImportError:
    _speedups = None

from finact.groups import dihedral, symmetric


def bench(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def closure_workload(mod, group, handle):
    def run():
        for x in group.elements():
            for y in group.elements():
                mod.closure(handle, (x, y), group.identity)

    return run


def commutator_workload(mod, group, handle):
    members = tuple(group.elements())

    def run():
        for _ in range(50):
            mod.pair_commutators(handle, members, members)
            mod.normal_closure(handle, members[: group.order // 2], group.identity)

    return run


def normalize_workload(mod, group, handle):
    rng = random.Random(1)
    batches = [
        [(rng.randint(0, 1), rng.randint(0, group.order - 1)) for _ in range(24)]
        for _ in range(4000)
    ]
    handles = (handle, handle)
    idents = (group.identity, group.identity)

    def run():
        for syl in batches:
            mod.normalize_syllables(handles, idents, syl)

    return run


def main():
    rows = []
    cases = [
        ("closure sweep S4", symmetric(4), closure_workload),
        ("closure sweep D12", dihedral(12), closure_workload),
        ("commutators+normal closure D12", dihedral(12), commutator_workload),
        ("normalize 4000 words (S3 factors)", symmetric(3), normalize_workload),
    ]
    for name, group, make in cases:
        hp = pyref.prepare(group.cayley, group.inverse)
        t_py = bench(make(pyref, group, hp))
        if _speedups is not None:
            hc = _speedups.prepare(group.cayley, group.inverse)
            t_c = bench(make(_speedups, group, hc))
            rows.append((name, t_py, t_c, t_py / t_c))
        else:
            rows.append((name, t_py, None, None))

    print(f"{'workload':<38} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, t_py, t_c, ratio in rows:
        if t_c is None:
            print(f"{name:<38} {t_py * 1e3:>8.1f}ms {'-':>10} {'-':>8}")
        else:
            print(f"{name:<38} {t_py * 1e3:>8.1f}ms {t_c * 1e3:>8.1f}ms {ratio:>7.1f}x")
    if _speedups is None:
        print("\ncompiled backend not built; run `pip install -e .` first")


if __name__ == "__main__":
    main()
