"""Compare the compiled and pure-Python word-problem kernels.

    python3 benchmarks/bench_engine.py [--repeat 5] [--random 2000]

Every workload runs on a fresh store and engine, so each timing includes
building the terms. The best of ``--repeat`` runs is reported.
"""
import argparse
import random
import time

from freelat.construct import make_ab, make_ab_variant, make_primed
from freelat.engine import Engine, available_backends
from freelat.freegen import freely_generates
from freelat.terms import Kind, TermStore, dual


def _keylemma(n):
    def run(backend):
        store = TermStore(n)
        a, b = make_ab(store)
        return freely_generates(Engine(store, backend), [a, dual(a), b, dual(b), store.gens[0]]).verdict
    return run


def _variant(backend):
    store = TermStore(3)
    a, b = make_ab_variant(store)
    return freely_generates(Engine(store, backend), [a, dual(a), b, dual(b), store.gens[0]]).verdict


def _primed(backend):
    store = TermStore(3)
    _, ap, bp = make_primed(store)
    return freely_generates(Engine(store, backend), [ap, dual(ap), bp, dual(bp), store.gens[0]]).verdict


def _random_term(store, rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice(store.gens)
    kind = rng.choice((Kind.JOIN, Kind.MEET))
    kids = [_random_term(store, rng, depth - 1) for _ in range(rng.choice((2, 2, 3)))]
    return store.make(kind, kids) if len({k.id for k in kids}) > 1 else kids[0]


def _random_pairs(count):
    def run(backend):
        rng = random.Random(1)
        store = TermStore(4)
        e = Engine(store, backend)
        return sum(e.leq(_random_term(store, rng, 6), _random_term(store, rng, 6)) for _ in range(count))
    return run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--random", type=int, default=2000, help="random pairs in the last workload")
    args = ap.parse_args(argv)

    backends = available_backends()
    workloads = [
        ("key set, n=3", _keylemma(3)),
        ("key set, n=4", _keylemma(4)),
        ("variant set, n=3", _variant),
        ("primed set + x, n=3", _primed),
        (f"{args.random} random pairs, n=4", _random_pairs(args.random)),
    ]
    print(f"{'workload':<28}" + "".join(f"{b:>14}" for b in backends) + ("    speedup" if len(backends) > 1 else ""))
    for name, fn in workloads:
        best = {}
        results = set()
        for b in backends:
            times = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results.add(fn(b))
                times.append(time.perf_counter() - t0)
            best[b] = min(times)
        if len(results) != 1:
            raise SystemExit(f"backends disagree on {name!r}")
        row = f"{name:<28}" + "".join(f"{best[b] * 1e3:>11.2f} ms" for b in backends)
        if "cython" in best and "python" in best:
            row += f"   {best['python'] / best['cython']:>6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
