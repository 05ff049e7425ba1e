"""Permutations and permutation groups enumerated by closure.

Convention: ``compose(a, b)`` is ``a o b``, i.e. it maps ``x`` to
``a(b(x))``; the group product ``a*b`` means the same thing.  So
``compose((0 1), (1 2))`` sends 0->1, 1->2, 2->0.

A :class:`PermGroup` keeps its full element list as a 2-D numpy array
(one image sequence per row) sorted lexicographically, so row 0 is always
the identity.  Membership and products are answered through a 64-bit
linear hash of the rows; every hash hit is confirmed against the stored
row, so a collision raises instead of silently misidentifying elements.
"""

from __future__ import annotations

import math
import threading
from functools import reduce
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CapExceeded, InputError, InternalError
from .limits import limits

_HASH_CHUNK = 1 << 15


class Permutation:
    """An immutable bijection of ``{0, ..., degree-1}``."""

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        n = len(images)
        if n == 0:
            raise InputError("a permutation needs degree >= 1")
        if sorted(images) != list(range(n)):
            raise InputError(f"not a bijection on {n} points: {images}")
        self._images = images

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if x in seen or not 0 <= x < degree:
                    raise InputError(f"bad cycle {cyc} on {degree} points")
                seen.add(x)
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    def __call__(self, x: int) -> int:
        return self._images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __lt__(self, other: Permutation) -> bool:
        return self._images < other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __repr__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation{body}[{self.degree}]"

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles, fixed points included, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self._images[x]
            out.append(tuple(cyc))
        return out

    def inverse(self) -> Permutation:
        return inverse(self)

    def order(self) -> int:
        return element_order(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._images))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a o b``: apply ``b`` first, then ``a``."""
    if a.degree != b.degree:
        raise InputError(f"degree mismatch: {a.degree} vs {b.degree}")
    ai = a.images
    return Permutation(ai[x] for x in b.images)


def inverse(a: Permutation) -> Permutation:
    out = [0] * a.degree
    for i, x in enumerate(a.images):
        out[x] = i
    return Permutation(out)


def element_order(g: Permutation) -> int:
    """Least ``k >= 1`` with ``g**k == id``, as the lcm of cycle lengths."""
    return reduce(math.lcm, (len(c) for c in g.cycles()), 1)


def element_order_by_powers(g: Permutation) -> int:
    """Same as :func:`element_order`, by repeated composition."""
    k, x = 1, g
    while not x.is_identity():
        x = compose(x, g)
        k += 1
    return k


def _dtype_for(degree: int):
    if degree <= 256:
        return np.uint8
    if degree <= 65536:
        return np.uint16
    return np.uint32


def _hash_vector(degree: int) -> np.ndarray:
    rng = np.random.default_rng(0xC0FFEE)
    return rng.integers(1, 2**63, size=degree, dtype=np.uint64) * np.uint64(2) + np.uint64(1)


def hash_rows(rows: np.ndarray, vec: np.ndarray) -> np.ndarray:
    out = np.empty(rows.shape[0], dtype=np.uint64)
    for s in range(0, rows.shape[0], _HASH_CHUNK):
        block = rows[s:s + _HASH_CHUNK].astype(np.uint64)
        block *= vec
        out[s:s + _HASH_CHUNK] = block.sum(axis=1, dtype=np.uint64)
    return out


def lex_sort(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] <= 1:
        return rows
    return rows[np.lexsort(rows.T[::-1])]


class PermGroup:
    """A group generated by permutations of ``degree`` points.

    Elements are enumerated on first use and then cached; the cache is
    built under a lock so concurrent readers see one consistent result.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (), *,
                 name: str | None = None, _elements: np.ndarray | None = None):
        if degree < 1:
            raise InputError("degree must be positive")
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise InputError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(
            g if isinstance(g, Permutation) else Permutation(g) for g in gens)
        self.name = name
        self._lock = threading.RLock()
        self._array: np.ndarray | None = None
        self._hashes = self._hash_order = self._sorted_hashes = None
        self._vec = _hash_vector(degree)
        self._cache: dict = {}
        if _elements is not None:
            self._install(np.ascontiguousarray(_elements, dtype=_dtype_for(degree)))

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        order = self._array.shape[0] if self._array is not None else "?"
        return f"<{label} degree={self.degree} order={order}>"

    # -- enumeration -------------------------------------------------------

    @property
    def array(self) -> np.ndarray:
        """All elements as rows, lexicographically sorted (row 0 = identity)."""
        if self._array is None:
            with self._lock:
                if self._array is None:
                    self._install(self._enumerate())
        return self._array

    @property
    def order(self) -> int:
        return int(self.array.shape[0])

    def _enumerate(self) -> np.ndarray:
        cap = limits().max_elements
        dt = _dtype_for(self.degree)
        ident = np.arange(self.degree, dtype=dt)[None, :]
        gens = [np.array(g.images, dtype=np.intp) for g in self.generators if not g.is_identity()]
        found = [ident]
        seen = hash_rows(ident, self._vec)
        frontier = ident
        total = 1
        while frontier.shape[0] and gens:
            cand = np.concatenate([frontier[:, g] for g in gens])
            h = hash_rows(cand, self._vec)
            h, first = np.unique(h, return_index=True)
            fresh = ~_sorted_contains(seen, h)
            frontier = cand[first[fresh]]
            if not frontier.shape[0]:
                break
            total += frontier.shape[0]
            if total > cap:
                raise CapExceeded("element", cap, None)
            found.append(frontier)
            seen = np.union1d(seen, h[fresh])
        rows = lex_sort(np.concatenate(found))
        if rows.shape[0] > 1 and not np.any(rows[1:] != rows[:-1], axis=1).all():
            raise InternalError("duplicate element rows after enumeration")
        return rows

    def _install(self, rows: np.ndarray) -> None:
        h = hash_rows(rows, self._vec)
        order = np.argsort(h, kind="stable")
        sh = h[order]
        if sh.shape[0] > 1 and np.any(sh[1:] == sh[:-1]):
            raise InternalError("64-bit element hash collision")
        self._hashes, self._hash_order, self._sorted_hashes = h, order, sh
        self._array = rows

    # -- lookups and index arithmetic -------------------------------------

    def index(self, rows: np.ndarray, strict: bool = True) -> np.ndarray:
        """Element indices of ``rows``; ``-1`` for non-members unless strict."""
        arr = self.array
        rows = np.asarray(rows)
        single = rows.ndim == 1
        if single:
            rows = rows[None, :]
        h = hash_rows(rows, self._vec)
        pos = np.searchsorted(self._sorted_hashes, h)
        pos[pos >= self._sorted_hashes.shape[0]] = 0
        idx = self._hash_order[pos]
        ok = self._sorted_hashes[pos] == h
        if ok.any():
            ok[ok] = np.all(arr[idx[ok]] == rows[ok], axis=1)
        if not ok.all():
            if strict:
                raise InputError("permutation is not an element of the group")
            idx = np.where(ok, idx, -1)
        return idx[0] if single else idx

    def index_of(self, g: Permutation) -> int:
        return int(self.index(np.array(g.images, dtype=self.array.dtype)))

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        return int(self.index(np.array(g.images, dtype=self.array.dtype), strict=False)) >= 0

    def element(self, i: int) -> Permutation:
        return Permutation(self.array[int(i)].tolist())

    def elements(self) -> list[Permutation]:
        return [Permutation(r) for r in self.array.tolist()]

    def rows(self, idx) -> np.ndarray:
        return self.array[np.asarray(idx, dtype=np.intp)]

    def mul(self, i, j) -> np.ndarray:
        """Indices of ``e_i * e_j`` (broadcasting over index arrays)."""
        i, j = np.broadcast_arrays(np.asarray(i, dtype=np.intp), np.asarray(j, dtype=np.intp))
        arr = self.array
        fi, fj = i.ravel(), j.ravel()
        out = np.empty(fi.shape[0], dtype=np.intp)
        for s in range(0, fi.shape[0], _HASH_CHUNK):
            a = arr[fi[s:s + _HASH_CHUNK]]
            b = arr[fj[s:s + _HASH_CHUNK]]
            out[s:s + _HASH_CHUNK] = self.index(np.take_along_axis(a, b, axis=1))
        return out.reshape(i.shape)

    def inv(self, i) -> np.ndarray:
        i = np.asarray(i, dtype=np.intp)
        fi = i.ravel()
        out = np.empty(fi.shape[0], dtype=np.intp)
        for s in range(0, fi.shape[0], _HASH_CHUNK):
            a = self.array[fi[s:s + _HASH_CHUNK]]
            out[s:s + _HASH_CHUNK] = self.index(np.argsort(a, axis=1).astype(a.dtype))
        return out.reshape(i.shape)

    def conj(self, i, g: int) -> np.ndarray:
        """Indices of ``g^-1 * e_i * g``."""
        arr = self.array
        i = np.asarray(i, dtype=np.intp)
        gr = arr[g]
        ginv = np.argsort(gr).astype(arr.dtype)
        fi = i.ravel()
        out = np.empty(fi.shape[0], dtype=np.intp)
        for s in range(0, fi.shape[0], _HASH_CHUNK):
            a = arr[fi[s:s + _HASH_CHUNK]]
            out[s:s + _HASH_CHUNK] = self.index(ginv[a[:, gr]])
        return out.reshape(i.shape)

    def power(self, i, k: int) -> np.ndarray:
        i = np.asarray(i, dtype=np.intp)
        result = np.zeros_like(i)
        base = i
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def inverse_map(self) -> np.ndarray:
        """``inverse_map()[i]`` is the index of ``e_i^-1``."""
        return self.cached("inverse_map", lambda: self.inv(np.arange(self.order)))

    def power_map(self, k: int) -> np.ndarray:
        """``power_map(k)[i]`` is the index of ``e_i^k``."""
        return self.cached(("power_map", k), lambda: self.power(np.arange(self.order), k))

    def conjugates_of(self, a: int) -> np.ndarray:
        """Indices of ``x^-1 * e_a * x`` for every element ``x``."""
        arr = self.array
        ar = arr[int(a)]
        inv = self.inverse_map()
        out = np.empty(self.order, dtype=np.intp)
        for s in range(0, self.order, _HASH_CHUNK):
            x = arr[s:s + _HASH_CHUNK]
            xi = arr[inv[s:s + _HASH_CHUNK]]
            out[s:s + _HASH_CHUNK] = self.index(np.take_along_axis(xi, ar[x], axis=1))
        return out

    @property
    def generator_indices(self) -> np.ndarray:
        def build():
            if not self.generators:
                return np.zeros(0, dtype=np.intp)
            return self.index(np.array([g.images for g in self.generators], dtype=self.array.dtype))
        return self.cached("generator_indices", build)

    def is_abelian(self) -> bool:
        gi = self.generator_indices
        return bool(np.all(self.mul(gi[:, None], gi[None, :]) == self.mul(gi[None, :], gi[:, None])))

    def cached(self, key, build: Callable):
        """Memoize ``build()`` on this group under ``key`` (thread safe)."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]


def _sorted_contains(sorted_arr: np.ndarray, values: np.ndarray) -> np.ndarray:
    if sorted_arr.shape[0] == 0:
        return np.zeros(values.shape, dtype=bool)
    pos = np.searchsorted(sorted_arr, values)
    pos[pos >= sorted_arr.shape[0]] = 0
    return sorted_arr[pos] == values


def enumerate_group(group: PermGroup) -> tuple[list[Permutation], int]:
    """The element list (lexicographic on image sequences) and the order."""
    return group.elements(), group.order


def symmetric(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, name="S1")
    gens = [Permutation.from_cycles(n, (0, 1))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    return PermGroup(n, gens, name=f"S{n}")
