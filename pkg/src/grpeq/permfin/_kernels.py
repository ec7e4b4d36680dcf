"""Assignment-scanning kernels for exhaustive search over finite groups.

Both implementations take the same compiled system and return the linear
indices (mixed radix, first variable most significant) of satisfying
assignments in ``[start, stop)``, at most ``max_hits`` of them, in increasing
order.

Set ``GRPEQ_NUMBA=0`` to force the vectorised numpy path.

Compiled form:
    ops          (k, 3) int64: (kind, a, b) with kind 0 = constant a,
                 kind 1/2 = variable slot a with twist table b, exponent +1/-1
    word_starts  (w + 1,) offsets into ops; the first n_eq words are equations
    dom_vals     concatenated allowed values per variable
    dom_starts   (m + 1,) offsets into dom_vals
"""

from __future__ import annotations

import os

import numpy as np

CHUNK = 1 << 16


def _env_wants_numba() -> bool:
    return os.environ.get("GRPEQ_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _env_wants_numba()


def scan_numpy(table, inv, identity, twists, ops, word_starts, n_eq, dom_vals, dom_starts,
               start, stop, max_hits):
    m = len(dom_starts) - 1
    sizes = np.diff(dom_starts)
    nwords = len(word_starts) - 1
    found = []
    remaining = max_hits
    for lo in range(start, stop, CHUNK):
        hi = min(stop, lo + CHUNK)
        idx = np.arange(lo, hi, dtype=np.int64)
        values = np.empty((m, hi - lo), dtype=np.int64)
        rem = idx.copy()
        for v in range(m - 1, -1, -1):
            digit = rem % sizes[v]
            rem //= sizes[v]
            values[v] = dom_vals[dom_starts[v] + digit]
        ok = np.ones(hi - lo, dtype=bool)
        for w in range(nwords):
            acc = np.full(hi - lo, identity, dtype=np.int64)
            for o in range(word_starts[w], word_starts[w + 1]):
                kind, a, b = ops[o]
                if kind == 0:
                    acc = table[acc, a]
                else:
                    x = twists[b][values[a]]
                    if kind == 2:
                        x = inv[x]
                    acc = table[acc, x]
            if w < n_eq:
                ok &= acc == identity
            else:
                ok &= acc != identity
        hits = idx[ok]
        if len(hits) >= remaining:
            found.append(hits[:remaining])
            break
        found.append(hits)
        remaining -= len(hits)
    if not found:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(found)


def _scan_loop(table, inv, identity, twists, ops, word_starts, n_eq, dom_vals, dom_starts,
               start, stop, max_hits):
    m = dom_starts.shape[0] - 1
    nwords = word_starts.shape[0] - 1
    sizes = np.empty(m, dtype=np.int64)
    for v in range(m):
        sizes[v] = dom_starts[v + 1] - dom_starts[v]
    out = np.empty(max_hits, dtype=np.int64)
    hits = 0
    digits = np.zeros(m, dtype=np.int64)
    rem = start
    for v in range(m - 1, -1, -1):
        digits[v] = rem % sizes[v]
        rem //= sizes[v]
    for idx in range(start, stop):
        ok = True
        for w in range(nwords):
            acc = identity
            for o in range(word_starts[w], word_starts[w + 1]):
                kind = ops[o, 0]
                if kind == 0:
                    x = ops[o, 1]
                else:
                    slot = ops[o, 1]
                    x = twists[ops[o, 2], dom_vals[dom_starts[slot] + digits[slot]]]
                    if kind == 2:
                        x = inv[x]
                acc = table[acc, x]
            if w < n_eq:
                if acc != identity:
                    ok = False
                    break
            elif acc == identity:
                ok = False
                break
        if ok:
            out[hits] = idx
            hits += 1
            if hits == max_hits:
                break
        v = m - 1
        while v >= 0:
            digits[v] += 1
            if digits[v] < sizes[v]:
                break
            digits[v] = 0
            v -= 1
    return out[:hits]


if HAVE_NUMBA:
    scan_numba = njit(cache=True, nogil=True)(_scan_loop)
else:  # pragma: no cover
    scan_numba = None


def scan(*args):
    """Dispatch to the configured kernel (see module docstring)."""
    if USE_NUMBA:
        return scan_numba(*args)
    return scan_numpy(*args)


def set_backend(name: str) -> None:
    global USE_NUMBA
    if name == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba is not installed")
        USE_NUMBA = True
    elif name == "numpy":
        USE_NUMBA = False
    else:
        raise ValueError(f"unknown backend {name!r}")


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
