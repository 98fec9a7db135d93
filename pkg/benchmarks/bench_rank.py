"""Compare the compiled and pure-Python rank kernels.

    python3 benchmarks/bench_rank.py [--size 120] [--repeat 3]

Matrices are the boundary maps the package actually builds (classical
Hochschild complexes and E(n)) plus random sparse integer matrices.
"""
import argparse
import random
import timeit

from ophh.exactlin import BACKEND, Field, Q, SparseMatrix, rank
from ophh.hochschild import Bounds, classical_complex
from ophh.oalg import FreeAlgebra, GeneratorSpace
from ophh.operads import BarrattEccles


def random_matrix(fld, n, density, seed):
    rng = random.Random(seed)
    ent = [(i, j, rng.randint(-5, 5)) for i in range(n) for j in range(n) if rng.random() < density]
    return SparseMatrix.from_entries(fld, n, n, ent)


def workloads(size):
    out = []
    for fld in (Q, Field(101)):
        out.append((f"random {size}x{size} over {fld.name}", [random_matrix(fld, size, 0.05, 1)]))
    x2 = FreeAlgebra(GeneratorSpace(["x", "y"], [2, 3]))
    c = classical_complex(x2, Bounds(4, 6))
    out.append(("classical HH boundaries", [c.d(n) for n in c.degrees()]))
    e = BarrattEccles(3, 5, Q).module(3, 5)
    out.append(("E(3) boundaries", [e.d(n) for n in e.degrees()]))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=120)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"compiled backend: {BACKEND}")
    print(f"{'workload':40s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for name, mats in workloads(args.size):
        want = [rank(m, backend="python") for m in mats]
        assert [rank(m) for m in mats] == want, name
        tp = min(timeit.repeat(lambda: [rank(m, backend="python") for m in mats], number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: [rank(m) for m in mats], number=1, repeat=args.repeat))
        print(f"{name:40s} {tp:10.4f} {tc:11.4f} {tp / tc if tc else float('inf'):8.1f}x")


if __name__ == "__main__":
    main()
