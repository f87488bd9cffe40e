"""Compare the compiled and pure-Python kernels on realistic workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Workloads: echelon reduction against a relation table from the theta
bimodule generators, sparse axpy on those rows, and Fock mode products on
all words of weight <= 6.  Results are checked equal across backends.
"""

import argparse
import time

from twisted_zhu.fock import FockVOA, words_up_to
from twisted_zhu.grades import parse_grade
from twisted_zhu.kernels import load
from twisted_zhu.products import OGenerator


def _workload(B: int):
    voa = FockVOA("theta")
    g0, g1 = parse_grade("0", 2), parse_grade("1/2", 2)
    gen = OGenerator(voa, g0, g1, "prime")
    vecs = [v for t in range(B + 1) for v in gen.layer(t)]
    return vecs


def _build_table(mod, vecs):
    table = {}
    for v in vecs:
        r = mod.reduce_vec(v, table)
        if r:
            piv = max(r)
            inv = 1 / r[piv]
            table[piv] = {k: c * inv for k, c in r.items()}
    return table


def bench_reduce(mod, vecs):
    t = time.perf_counter()
    table = _build_table(mod, vecs)
    return time.perf_counter() - t, len(table)


def bench_axpy(mod, vecs):
    t = time.perf_counter()
    acc = {}
    for i, v in enumerate(vecs):
        mod.axpy(acc, (i % 7) - 3, v)
    return time.perf_counter() - t, len(acc)


def bench_modes(mod, weight: int):
    words = words_up_to(weight)
    mod.clear_mode_cache()
    t = time.perf_counter()
    count = 0
    for u in words:
        for v in words:
            s = sum(u) + sum(v)
            if s > weight:
                continue
            for n in range(-3, s):
                count += len(mod.mode_word(u, n, v))
    return time.perf_counter() - t, count


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--B", type=int, default=10, help="generator bound for the reduction workload")
    ap.add_argument("--weight", type=int, default=8, help="weight cap for the mode workload")
    args = ap.parse_args(argv)

    vecs = _workload(args.B)
    backends = {"python": load("py"), "cython": load("c")}
    if backends["cython"] is backends["python"]:
        print("compiled kernels not built; only the fallback is available")
        backends.pop("cython")
    rows = []
    for name, fn, arg in (("reduce_vec", bench_reduce, vecs), ("axpy", bench_axpy, vecs), ("mode_word", bench_modes, args.weight)):
        times = {}
        outs = {}
        for bname, mod in backends.items():
            best = None
            for _ in range(args.repeat):
                dt, out = fn(mod, arg)
                best = dt if best is None else min(best, dt)
            times[bname] = best
            outs[bname] = out
        assert len(set(outs.values())) == 1, f"{name}: backends disagree {outs}"
        rows.append((name, times))
    print(f"{'kernel':<12}" + "".join(f"{b:>12}" for b in backends) + (f"{'speedup':>10}" if len(backends) > 1 else ""))
    for name, times in rows:
        line = f"{name:<12}" + "".join(f"{times[b] * 1000:>10.1f}ms" for b in backends)
        if len(backends) > 1:
            line += f"{times['python'] / times['cython']:>9.2f}x"
        print(line)


if __name__ == "__main__":
    main()
