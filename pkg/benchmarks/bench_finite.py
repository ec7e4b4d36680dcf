"""Compare the numba and numpy scanning kernels on exhaustive finite searches.

    python3 benchmarks/bench_finite.py [--repeat N]

UNSAT cases scan the whole assignment space; SAT cases stop at the first
witness.  The numba kernel is compiled once before timing.
"""

from __future__ import annotations

import argparse
import time

from grpeq.core import System, word
from grpeq.permfin import Perm, _kernels, closure, solve_finite


def cases():
    S4 = closure([Perm((1, 2, 3, 0)), Perm((1, 0, 2, 3))])
    four = S4.index_of(Perm((1, 2, 3, 0)))
    # a 4-cycle is never a square in S4
    yield "S4, 4 vars, (WXYZ)^2 = 4-cycle", S4, System(
        ["W", "X", "Y", "Z"], [word("W", "X", "Y", "Z", "W", "X", "Y", "Z", S4.inv(four))])
    S5 = closure([Perm((1, 2, 3, 4, 0)), Perm((1, 0, 2, 3, 4))])
    tr = S5.index_of(Perm((1, 0, 2, 3, 4)))
    # squares are even, a transposition is odd
    yield "S5, 3 vars, (XYZ)^2 = transposition", S5, System(
        ["X", "Y", "Z"], [word("X", "Y", "Z", "X", "Y", "Z", S5.inv(tr))])
    five = S5.index_of(Perm((1, 2, 3, 4, 0)))
    yield "S5, 3 vars, (XYZ)^2 = 5-cycle^2", S5, System(
        ["X", "Y", "Z"], [word("X", "Y", "Z", "X", "Y", "Z", S5.inv(S5.mul(five, five)))],
        [word("X"), word("Y"), word("Z")])
    C2wrC3 = closure([Perm((1, 0, 2, 3, 4, 5)), Perm((2, 3, 4, 5, 0, 1))])
    yield "C2 wr C3, 4 vars, involution chain", C2wrC3, System(
        ["W", "X", "Y", "Z"], [word("W", "W"), word("X", "X"), word("W", "X", "Y", "Y", "Z", "Z")],
        [word("W"), word("X"), word("Y"), word("Z"), word("Y", "Z", "W", "X", "Z")])

def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if "numba" in backends:
        _kernels.set_backend("numba")
        for _, G, S in cases():
            solve_finite(G, S)  # compile
    print(f"{'case':40s} {'space':>9s} " + " ".join(f"{b:>10s}" for b in backends) + "  verdict")
    for name, G, S in cases():
        space = G.order ** len(S.variables)
        times, verdicts = [], set()
        for b in backends:
            _kernels.set_backend(b)
            t, v = timed(lambda: solve_finite(G, S), args.repeat)
            times.append(t)
            verdicts.add((v.kind, tuple(sorted((v.assignment or {}).items()))))
        assert len(verdicts) == 1, "backends disagree"
        kind = next(iter(verdicts))[0]
        print(f"{name:40s} {space:9d} " + " ".join(f"{t * 1000:8.1f}ms" for t in times)
              + f"  {kind}")


if __name__ == "__main__":
    main()
