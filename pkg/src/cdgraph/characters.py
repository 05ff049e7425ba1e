"""Conjugacy classes and irreducible character degrees.

Degrees come from the class-matrix (Burnside-Dixon) method: the class
multiplication matrices are reduced modulo a prime ``l = 1 (mod exp G)``,
their common eigenvectors are split out one matrix at a time, and each
eigenvector's normalisation gives ``chi(1)^2`` modulo ``l``.  Because
``l > 2 sqrt|G|`` the integer degree is recovered uniquely among the
divisors ``d`` of ``|G|`` with ``d^2 <= |G|``.
"""

from __future__ import annotations

import dataclasses
import math
from collections import Counter
from functools import reduce
from typing import Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import modp
from .errors import CapExceeded, InternalError
from .limits import limits
from .numtheory import divisors, next_prime_congruent, prime_factors
from .perm import PermGroup, element_order


@dataclasses.dataclass(frozen=True, eq=False)
class ConjClassTable:
    group: PermGroup
    representatives: np.ndarray   # element indices, ascending; class 0 is the identity
    sizes: np.ndarray
    class_of: np.ndarray          # element index -> class index
    rep_orders: np.ndarray
    inverse_class: np.ndarray

    def __len__(self) -> int:
        return int(self.representatives.shape[0])

    def members(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == k)

    def representative_perms(self):
        return [self.group.element(i) for i in self.representatives]

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.rep_orders.tolist(), 1)


def orbit_labels(n: int, maps: Iterable[np.ndarray]) -> tuple[int, np.ndarray]:
    """Connected components of the graph ``i -- m[i]`` over the given maps."""
    maps = list(maps)
    if not maps:
        return n, np.arange(n)
    src = np.concatenate([np.arange(n)] * len(maps))
    dst = np.concatenate(maps)
    graph = coo_matrix((np.ones(src.shape[0], dtype=np.int8), (src, dst)), shape=(n, n))
    return connected_components(graph, directed=True, connection="weak")


def conjugacy_classes(g: PermGroup) -> ConjClassTable:
    return g.cached("classes", lambda: _classes(g))


def _classes(g: PermGroup) -> ConjClassTable:
    n = g.order
    allidx = np.arange(n)
    count, labels = orbit_labels(n, (g.conj(allidx, int(x)) for x in g.generator_indices))
    reps = np.full(count, n, dtype=np.intp)
    np.minimum.at(reps, labels, allidx)
    order = np.argsort(reps)
    relabel = np.empty(count, dtype=np.intp)
    relabel[order] = np.arange(count)
    class_of = relabel[labels]
    reps = reps[order]
    sizes = np.bincount(class_of, minlength=count)
    rep_orders = np.array([element_order(g.element(i)) for i in reps], dtype=np.int64)
    inv_class = class_of[g.inv(reps)]
    return ConjClassTable(g, reps, sizes, class_of, rep_orders, inv_class)


@dataclasses.dataclass(frozen=True)
class DegreeMultiset:
    degrees: tuple[int, ...]
    group_order: int

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))

    def __len__(self) -> int:
        return len(self.degrees)

    def counts(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degrees).items()))

    def cd(self) -> set[int]:
        return set(self.degrees)

    def invariant_failures(self, class_count: int | None = None,
                           linear_count: int | None = None) -> list[str]:
        """Names of violated identities (empty when all hold)."""
        bad = []
        if sum(d * d for d in self.degrees) != self.group_order:
            bad.append("sum-of-squares")
        if any(self.group_order % d for d in self.degrees):
            bad.append("divisibility")
        if not self.degrees or self.degrees[0] != 1:
            bad.append("trivial-character")
        if class_count is not None and len(self.degrees) != class_count:
            bad.append("class-count")
        if linear_count is not None and self.degrees.count(1) != linear_count:
            bad.append("linear-count")
        return bad


def cd_set(dm: DegreeMultiset | Iterable[int]) -> set[int]:
    degs = dm.degrees if isinstance(dm, DegreeMultiset) else dm
    return set(degs)


def rho(dm: DegreeMultiset | Iterable[int]) -> set[int]:
    """Primes dividing some degree."""
    out: set[int] = set()
    for d in cd_set(dm):
        if d > 1:
            out.update(prime_factors(d))
    return out


def degrees_direct_product(a: DegreeMultiset, b: DegreeMultiset) -> DegreeMultiset:
    return DegreeMultiset(tuple(x * y for x in a.degrees for y in b.degrees),
                          a.group_order * b.group_order)


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime ``l = 1 (mod exponent)`` with ``l > 2 sqrt(order)``."""
    return next_prime_congruent(1, exponent, 2 * math.isqrt(order) + 1)


def class_matrix(cl: ConjClassTable, i: int) -> np.ndarray:
    """``M[j, k] = #{x in C_i : x^-1 z_k in C_j}`` (structure constants ``c_ijk``)."""
    g = cl.group
    k = len(cl)
    xs = g.inv(cl.members(i))
    reps = cl.representatives
    out = np.zeros(k * k, dtype=np.int64)
    step = max(1, (1 << 20) // k)
    for s in range(0, xs.shape[0], step):
        prod = g.mul(xs[s:s + step, None], reps[None, :])
        j = cl.class_of[prod]
        out += np.bincount((j * k + np.arange(k)[None, :]).ravel(), minlength=k * k)
    return out.reshape(k, k)


def character_degrees(g: PermGroup) -> DegreeMultiset:
    return g.cached("degrees", lambda: _dixon_degrees(g))


def _dixon_degrees(g: PermGroup) -> DegreeMultiset:
    cl = conjugacy_classes(g)
    k = len(cl)
    cap = limits().max_classes
    if k > cap:
        raise CapExceeded("class", cap, k)
    n = g.order
    if k == n:
        return DegreeMultiset((1,) * n, n)
    ell = dixon_prime(n, cl.exponent)
    rng = np.random.default_rng(20240611)

    spaces = [np.eye(k, dtype=np.int64)]
    todo = sorted(range(1, k), key=lambda i: (int(cl.sizes[i]), i))
    for i in todo:
        if all(s.shape[0] == 1 for s in spaces):
            break
        a = class_matrix(cl, i).T % ell
        nxt = []
        for basis in spaces:
            nxt.extend([basis] if basis.shape[0] == 1 else _split(basis, a, ell, rng))
        spaces = nxt
    if any(s.shape[0] != 1 for s in spaces):
        raise InternalError("class matrices failed to split the centre of the group algebra")

    sizes_inv = np.array([pow(int(s), -1, ell) for s in cl.sizes], dtype=np.int64)
    cands = [d for d in divisors(n) if d * d <= n]
    degrees = []
    for basis in spaces:
        v = basis[0]
        if v[0] == 0:
            raise InternalError("eigenvector vanishes on the identity class")
        v = v * pow(int(v[0]), -1, ell) % ell
        s = int(np.sum(v * v[cl.inverse_class] % ell * sizes_inv % ell) % ell)
        target = n % ell * pow(s, -1, ell) % ell
        hits = [d for d in cands if d * d % ell == target]
        if len(hits) != 1:
            raise InternalError(f"degree lift ambiguous or missing: {hits}")
        degrees.append(hits[0])
    dm = DegreeMultiset(tuple(degrees), n)
    if dm.invariant_failures(class_count=k):
        raise InternalError(f"degree identities fail: {dm.invariant_failures(class_count=k)}")
    return dm


def _split(basis: np.ndarray, a: np.ndarray, ell: int, rng) -> list[np.ndarray]:
    """Split the ``a``-invariant row space ``basis`` (RREF) into eigenspaces of ``a``."""
    dim = basis.shape[0]
    _, piv = modp.rref(basis, ell)
    r = modp.matmul(basis, a, ell)[:, piv]
    if np.all(r == np.diag(np.full(dim, r[0, 0]))):
        return [basis]
    found: dict[int, np.ndarray] = {}
    total = 0
    for _ in range(32):
        u = rng.integers(0, ell, size=dim, dtype=np.int64)
        roots = modp.poly_roots(modp.krylov_minpoly(u, r, ell), ell)
        for lam in roots:
            if lam in found:
                continue
            shifted = (r - lam * np.eye(dim, dtype=np.int64)) % ell
            coords = modp.nullspace(shifted.T, ell)
            sub, _ = modp.rref(modp.matmul(coords, basis, ell), ell)
            found[lam] = sub
            total += sub.shape[0]
        if total == dim:
            return [found[lam] for lam in sorted(found)]
    raise InternalError("eigenspaces do not span the invariant subspace")


def linear_character_count(g: PermGroup) -> int:
    from .structure import derived_subgroup
    return g.order // derived_subgroup(g).order
