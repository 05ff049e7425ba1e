"""Dense linear algebra over the prime field F_p with numpy int64 arrays.

Entries are kept in ``[0, p)``; ``p`` must be small enough that
``n * p**2`` fits in an int64 (true for every prime this package picks).
"""

from __future__ import annotations

import numpy as np


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[-1]
    if inner * (p - 1) ** 2 < 2**53:
        return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    return (a @ b) % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        f = a[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[hit] = (a[hit] - np.outer(f[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x = 0}``."""
    cols = a.shape[1]
    red, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        if piv:
            out[i, piv] = (-red[:, f]) % p
    return out


def krylov_minpoly(u: np.ndarray, r: np.ndarray, p: int) -> np.ndarray:
    """Monic minimal polynomial of row vector ``u`` under ``u -> u @ r``.

    Returned as coefficients, lowest degree first.
    """
    k = u.shape[0]
    ech = np.zeros((0, k), dtype=np.int64)
    comb = np.zeros((0, k + 1), dtype=np.int64)
    piv: list[int] = []
    cur = u % p
    for j in range(k + 1):
        v = cur
        t = np.zeros(k + 1, dtype=np.int64)
        t[j] = 1
        if piv:
            c = v[piv]
            v = (v - matmul(c[None, :], ech, p)[0]) % p
            t = (t - matmul(c[None, :], comb, p)[0]) % p
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return t[: j + 1]
        pc = int(nz[0])
        inv = pow(int(v[pc]), -1, p)
        w, t = v * inv % p, t * inv % p
        col = ech[:, pc].copy()
        ech = np.vstack([(ech - np.outer(col, w)) % p, w])
        comb = np.vstack([(comb - np.outer(col, t)) % p, t])
        piv.append(pc)
        cur = matmul(cur[None, :], r, p)[0]
    raise AssertionError("minimal polynomial degree exceeded dimension")


def poly_roots(coeffs: np.ndarray, p: int) -> list[int]:
    """All roots in F_p of a polynomial (coefficients lowest degree first)."""
    roots: list[int] = []
    step = 1 << 16
    for s in range(0, p, step):
        xs = np.arange(s, min(p, s + step), dtype=np.int64)
        vals = np.zeros_like(xs)
        for c in coeffs[::-1]:
            vals = (vals * xs + int(c)) % p
        roots.extend(xs[vals == 0].tolist())
    return roots
