"""Time the compiled and pure-Python word kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from gew._kernels import compiled_backend, python_backend
from gew.groups.surface import surface_relator


def workloads(seed=7):
    rng = random.Random(seed)
    letters = [tuple(rng.choice((1, -1, 2, -2, 3, -3)) for _ in range(400)) for _ in range(50)]
    pairs = [tuple((abs(a) - 1, 1 if a > 0 else -1) for a in w) for w in letters]
    rel = surface_relator(2)
    dehn = []
    for _ in range(50):
        w = []
        for _ in range(6):
            k = rng.randrange(8)
            piece = rel[k:] + rel[:k]
            if rng.random() < 0.5:
                piece = tuple(-a for a in reversed(piece))
            w.extend(piece)
            w.extend(rng.choice((1, -1, 2, -2, 3, -3, 4, -4)) for _ in range(3))
        dehn.append(tuple(w))
    return pairs, letters, rel, dehn


def bench(backend, pairs, letters, rel, dehn, repeat):
    red = [backend.reduce_syllables(p) for p in pairs]
    cases = {
        "reduce": lambda: [backend.reduce_syllables(p) for p in pairs],
        "multiply": lambda: [backend.mul_syllables(u, v) for u, v in zip(red, reversed(red))],
        "free_reduce": lambda: [backend.free_reduce(w) for w in letters],
        "dehn_reduce": lambda: [backend.dehn_reduce(w, rel) for w in dehn],
    }
    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in cases.items()}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    data = workloads()
    py = bench(python_backend, *data, args.repeat)
    cy = bench(compiled_backend, *data, args.repeat) if compiled_backend is not None else None
    print(f"{'kernel':<12} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, t in py.items():
        if cy is None:
            print(f"{name:<12} {t * 1e3:>10.2f} {'n/a':>10} {'':>8}")
        else:
            print(f"{name:<12} {t * 1e3:>10.2f} {cy[name] * 1e3:>10.2f} {t / cy[name]:>7.1f}x")


if __name__ == "__main__":
    main()
