"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each case runs both backends on identical inputs, checks that the outputs
agree, and reports the best of N wall-clock times.
"""
import argparse
import time

import numpy as np

from fuscat.cohomology import coboundary, d2_matrix, d3_matrix, random_2cochain
from fuscat.groups import cyclic_group, dihedral_group, symmetric_group
from fuscat.kernels import available_backends, get_backend


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    rng = np.random.default_rng(0)
    s4 = symmetric_group(4)
    d6 = dihedral_group(6)
    alpha = coboundary(s4, random_2cochain(s4, 24, rng), 24)
    yield ("cocycle_defect S4", "cocycle_defect", (s4.table, alpha.values, 24))
    yield ("coboundary2 D6", "coboundary2", (d6.table, random_2cochain(d6, 12, rng), 12))
    yield ("smith_diagonal_mod d3(Z8)", "smith_diagonal_mod", (d3_matrix(cyclic_group(8)), 8))
    s3 = symmetric_group(3)
    target = coboundary(s4, random_2cochain(s4, 576, rng), 576).values[1:, 1:, 1:].ravel()
    yield ("solve_mod d2(S4)", "solve_mod", (d2_matrix(s4), target, 576))
    yield ("smith_diagonal_mod d3(S3)", "smith_diagonal_mod", (d3_matrix(s3), 6))


def same(a, b):
    if a is None or b is None:
        return a is b
    if isinstance(a, (list, tuple)) and not isinstance(a, np.ndarray):
        return list(a) == list(b)
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'case':30s}" + "".join(f"{b:>12s}" for b in backends) + f"{'speedup':>10s}")
    for name, func, inputs in cases():
        timings, outs = {}, {}
        for b in backends:
            timings[b], outs[b] = best_of(lambda: getattr(get_backend(b), func)(*inputs), args.repeat)
        if func == "solve_mod":
            # solutions may differ; both must solve the system
            a, rhs, m = inputs
            agree = all(o is not None and np.array_equal((np.asarray(a) @ o) % m, rhs % m)
                        for o in outs.values())
        else:
            ref = outs["python"]
            agree = all(same(ref, o) for o in outs.values())
        speed = (f"{timings['python'] / timings['compiled']:9.1f}x" if "compiled" in timings else "       n/a")
        flag = "" if agree else "  MISMATCH"
        print(f"{name:30s}" + "".join(f"{timings[b]:12.4f}" for b in backends) + f" {speed}{flag}")


if __name__ == "__main__":
    main()
