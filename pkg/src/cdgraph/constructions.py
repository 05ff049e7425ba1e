"""Builders for the concrete groups the analyses run on.

Every builder returns a faithful :class:`PermGroup`.  Semidirect products
are checked eagerly: an action that is not a homomorphism into the
automorphism group is rejected, never silently accepted.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Sequence

import numpy as np

from .characters import orbit_labels
from .errors import CapExceeded, InputError, InternalError
from .limits import limits
from .numtheory import is_prime, is_prime_power
from .perm import PermGroup, Permutation, compose
from .subgroup import Subgroup, generate, is_normal, whole

IDENTITY_SEED = 0
REGULAR_FALLBACK_CAP = 20_000


def perm_power(g: Permutation, k: int) -> Permutation:
    out = Permutation.identity(g.degree)
    for _ in range(k % max(1, g.order())):
        out = compose(out, g)
    return out


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise InputError("cyclic(n) needs n >= 1")
    if n == 1:
        return PermGroup(1, name="C1")
    return PermGroup(n, [Permutation.from_cycles(n, tuple(range(n)))], name=f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order ``2n``."""
    if n < 1:
        raise InputError("dihedral(n) needs n >= 1")
    if n == 1:
        return PermGroup(2, [Permutation.from_cycles(2, (0, 1))], name="D2")
    if n == 2:
        return PermGroup(4, [Permutation.from_cycles(4, (0, 1)), Permutation.from_cycles(4, (2, 3))],
                         name="D4")
    rot = Permutation.from_cycles(n, tuple(range(n)))
    ref = Permutation([(-i) % n for i in range(n)])
    return PermGroup(n, [rot, ref], name=f"D{2 * n}")


def elementary_abelian(p: int, k: int) -> PermGroup:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if k < 1:
        raise InputError("elementary_abelian needs k >= 1")
    deg = p * k
    gens = [Permutation.from_cycles(deg, tuple(range(i * p, (i + 1) * p))) for i in range(k)]
    return PermGroup(deg, gens, name=f"{p}^{k}")


_QUAT = {  # unit product table on (1, i, j, k): (sign, unit)
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion8() -> PermGroup:
    """Q8 in its regular representation; point ``u + 4*s`` is ``(-1)^s * unit[u]``."""
    def left(u: int) -> Permutation:
        images = []
        for pt in range(8):
            v, s = pt % 4, pt // 4
            sign, w = _QUAT[(u, v)]
            neg = (sign < 0) ^ bool(s)
            images.append(w + 4 * neg)
        return Permutation(images)
    return PermGroup(8, [left(1), left(2)], name="Q8")


def extraspecial(p: int) -> PermGroup:
    """Heisenberg group of order ``p^3`` and exponent ``p`` (``p`` odd).

    It acts on the ``p^2`` cosets of the non-central subgroup ``<Y>``; the
    coset of ``(a, b, c)`` is labelled ``(a, c - ab)``.  Generators are
    ``X, Y, Z`` with ``Z = [X, Y]^(+-1)`` central.
    """
    if p == 2 or not is_prime(p):
        raise InputError("extraspecial(p) needs an odd prime p")
    if p > 13:
        raise InputError("extraspecial(p) is limited to p <= 13")

    def perm(f) -> Permutation:
        return Permutation(
            (f(a, u)[0] % p) * p + f(a, u)[1] % p for a in range(p) for u in range(p))

    x = perm(lambda a, u: (a + 1, u))
    y = perm(lambda a, u: (a, u - a))
    z = perm(lambda a, u: (a, u + 1))
    return PermGroup(p * p, [x, y, z], name=f"{p}^(1+2)")


def _f3_matrices(name: str) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    sl = [((1, 1), (0, 1)), ((1, 0), (1, 1))]
    if name == "SL(2,3)":
        return sl
    if name == "GL(2,3)":
        return sl + [((2, 0), (0, 1))]
    raise InputError(f"unknown named group {name!r} (expected 'SL(2,3)' or 'GL(2,3)')")


_F3_VECTORS = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]


def _matrix_perm(m) -> Permutation:
    index = {v: i for i, v in enumerate(_F3_VECTORS)}
    return Permutation(
        index[((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3)]
        for x, y in _F3_VECTORS)


def named(name: str) -> PermGroup:
    """``SL(2,3)`` or ``GL(2,3)`` on the 8 nonzero vectors of ``F_3^2``."""
    return PermGroup(8, [_matrix_perm(m) for m in _f3_matrices(name)], name=name)


# -- finite fields and the affine semilinear group ---------------------------

class _Field:
    """GF(p^e) with elements encoded as integers (base-p coefficient digits)."""

    def __init__(self, p: int, e: int):
        self.p, self.e, self.size = p, e, p**e
        digits = np.array([[(v // p**i) % p for i in range(e)] for v in range(self.size)], dtype=np.int64)
        weights = p ** np.arange(e, dtype=np.int64)
        self._digits, self._weights = digits, weights
        self.antilog = self._primitive_powers()
        self.log = np.zeros(self.size, dtype=np.int64)
        self.log[self.antilog] = np.arange(self.size - 1)

    def add(self, a: np.ndarray, b: int) -> np.ndarray:
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._weights

    def _primitive_powers(self) -> np.ndarray:
        p, e, n = self.p, self.e, self.size
        for tail in itertools.product(range(p), repeat=e):
            if tail[0] == 0:
                continue
            powers = [1]
            cur = [1] + [0] * (e - 1)
            for _ in range(n - 2):
                top = cur[-1]
                cur = [0] + cur[:-1]
                cur = [(c - top * t) % p for c, t in zip(cur, tail)]
                v = sum(d * p**i for i, d in enumerate(cur))
                if v == 1:
                    break
                powers.append(v)
            if len(powers) == n - 1 and len(set(powers)) == n - 1:
                return np.array(powers, dtype=np.int64)
        raise InternalError(f"no primitive polynomial of degree {e} over F_{p}")


def agammal(q: int, m: int) -> PermGroup:
    """Affine semilinear group of ``GF(q^m)`` over ``GF(q)`` on ``q^m`` points.

    Order ``q^m (q^m - 1) m``.
    """
    if q < 2 or m < 1:
        raise InputError("agammal needs q >= 2 and m >= 1")
    pp = is_prime_power(q)
    if pp is None:
        raise InputError(f"{q} is not a prime power")
    size = q**m
    if size > limits().max_field:
        raise CapExceeded("field-size", limits().max_field, size)
    p, f = pp
    fld = _Field(p, f * m)
    pts = np.arange(size)
    trans = fld.add(pts, 1)
    nz = pts[1:]
    mult = np.zeros(size, dtype=np.int64)
    mult[nz] = fld.antilog[(fld.log[nz] + 1) % (size - 1)]
    frob = np.zeros(size, dtype=np.int64)
    frob[nz] = fld.antilog[(fld.log[nz] * q) % (size - 1)]
    gens = [Permutation(trans.tolist()), Permutation(mult.tolist())]
    if m > 1:
        gens.append(Permutation(frob.tolist()))
    return PermGroup(size, gens, name=f"AGammaL(1,{q}^{m})")


# -- products -------------------------------------------------------------------

def _shift(g: Permutation, offset: int, degree: int) -> Permutation:
    images = list(range(degree))
    for i, x in enumerate(g.images):
        images[offset + i] = offset + x
    return Permutation(images)


def direct_product(a: PermGroup, b: PermGroup) -> PermGroup:
    """``A x B`` acting on the disjoint union of the two point sets (``A`` first)."""
    deg = a.degree + b.degree
    gens = [_shift(g, 0, deg) for g in a.generators] + [_shift(g, a.degree, deg) for g in b.generators]
    name = f"({a.name or 'A'} x {b.name or 'B'})"
    return PermGroup(deg, gens, name=name)


@dataclasses.dataclass(frozen=True)
class ActionSpec:
    """``actor_generator_images[i][j]`` is the image of ``target.generators[j]``
    under the automorphism assigned to the ``i``-th generator of the actor."""

    target: PermGroup
    actor_generator_images: tuple[tuple[Permutation, ...], ...]


def _automorphism(n: PermGroup, images: Sequence[Permutation]) -> np.ndarray:
    """Index map of the automorphism sending ``n.generators[j]`` to ``images[j]``."""
    if len(images) != len(n.generators):
        raise InputError(f"expected {len(n.generators)} generator images, got {len(images)}")
    gi = n.generator_indices
    try:
        ii = np.array([n.index_of(x) for x in images], dtype=np.intp)
    except InputError:
        raise InputError("a generator image is not an element of the target group") from None
    phi = np.full(n.order, -1, dtype=np.intp)
    phi[0] = 0
    frontier = np.array([0], dtype=np.intp)
    while frontier.size:
        ys = n.mul(frontier[:, None], gi[None, :]).ravel()
        vals = n.mul(phi[frontier][:, None], ii[None, :]).ravel()
        fresh = phi[ys] < 0
        phi[ys[fresh]] = vals[fresh]
        if np.any(phi[ys] != vals):
            raise InputError("generator images do not define a homomorphism")
        frontier = np.unique(ys[fresh])
    if np.unique(phi).shape[0] != n.order:
        raise InputError("generator images define a non-injective endomorphism")
    return phi


def _action_table(n: PermGroup, h: PermGroup, action: ActionSpec) -> np.ndarray:
    """Rows: for each element of ``h``, its automorphism of ``n`` as an index map."""
    if len(action.actor_generator_images) != len(h.generators):
        raise InputError("one automorphism is needed per actor generator")
    if h.order * n.order > 50_000_000:
        raise CapExceeded("action-table", 50_000_000, h.order * n.order)
    auts = [_automorphism(n, imgs) for imgs in action.actor_generator_images]
    gi = h.generator_indices
    table = np.full((h.order, n.order), -1, dtype=np.intp)
    table[0] = np.arange(n.order)
    words: dict[int, tuple[int, ...]] = {0: ()}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for j, gj in enumerate(gi):
                y = int(h.mul(x, gj))
                val = table[x][auts[j]]
                if table[y, 0] < 0:
                    table[y] = val
                    words[y] = words[x] + (j,)
                    nxt.append(y)
                elif not np.array_equal(table[y], val):
                    word = "*".join(f"h{i}" for i in words[x] + (j,)) or "1"
                    raise InputError(f"action violates the actor's relations at word {word}")
        frontier = nxt
    return table


def _induced_point_map(n: PermGroup, phi: np.ndarray) -> Permutation | None:
    """A permutation ``s`` of n's points with ``s x s^-1 = phi(x)``, if stabilisers allow."""
    arr = n.array
    deg = n.degree
    _, orbit_of = orbit_labels(deg, [np.array(g.images) for g in n.generators])
    fixes = [arr[:, w] == w for w in range(deg)]
    sigma = np.full(deg, -1, dtype=np.intp)
    used_orbits: set[int] = set()
    for b in range(deg):
        if sigma[b] >= 0:
            continue
        target = np.zeros(n.order, dtype=bool)
        target[phi[np.flatnonzero(fixes[b])]] = True
        omega = next((w for w in [b] + list(range(deg))
                      if orbit_of[w] not in used_orbits and np.array_equal(fixes[w], target)), None)
        if omega is None:
            return None
        used_orbits.add(orbit_of[omega])
        sigma[arr[:, b]] = arr[phi, omega]
    if np.unique(sigma).shape[0] != deg:
        return None
    return Permutation(sigma.tolist())


def semidirect(n: PermGroup, h: PermGroup, action: ActionSpec) -> PermGroup:
    """``N x| H`` on the disjoint union of an ``N``-set and ``H``'s own points.

    ``N``'s generators come first in the generator list, then one lifted
    generator per generator of ``H``.
    """
    if action.target is not n:
        raise InputError("ActionSpec target is not the given normal factor")
    table = _action_table(n, h, action)
    auts = [table[int(i)] for i in h.generator_indices]

    sigmas = [_induced_point_map(n, phi) for phi in auts]
    if all(s is not None for s in sigmas):
        g = _assemble(n.generators, sigmas, h, n.degree)
        if _is_faithful_semidirect(g, n, h):
            return g
    if n.order > REGULAR_FALLBACK_CAP:
        raise CapExceeded("regular-representation", REGULAR_FALLBACK_CAP, n.order)
    allidx = np.arange(n.order)
    left = [Permutation(n.mul(int(x), allidx).tolist()) for x in n.generator_indices]
    sig = [Permutation(phi.tolist()) for phi in auts]
    g = _assemble(left, sig, h, n.order)
    if not _is_faithful_semidirect(g, n, h):
        raise InternalError("regular semidirect representation is not faithful")
    return g


def _assemble(n_gens, sigmas, h: PermGroup, n_deg: int) -> PermGroup:
    deg = n_deg + h.degree
    gens = [_shift(x, 0, deg) for x in n_gens]
    for s, hg in zip(sigmas, h.generators):
        gens.append(Permutation(list(s.images) + [n_deg + y for y in hg.images]))
    return PermGroup(deg, gens, name="semidirect")


def _is_faithful_semidirect(g: PermGroup, n: PermGroup, h: PermGroup) -> bool:
    if g.order != n.order * h.order:
        return False
    comp = generate(g, g.generator_indices[len(n.generators):])
    return comp.order == h.order


def heisenberg_action(p: int, multiplier: int, actor: PermGroup) -> ActionSpec:
    """Scale ``X -> X^m``, ``Y -> Y^(1/m)`` on :func:`extraspecial` ``(p)``; the
    centre is fixed.  ``actor`` must be cyclic with one generator of order
    dividing the multiplicative order of ``m`` mod ``p``."""
    target = extraspecial(p)
    x, y, z = target.generators
    inv = pow(multiplier, -1, p)
    imgs = (perm_power(x, multiplier), perm_power(y, inv), z)
    if len(actor.generators) != 1:
        raise InputError("heisenberg_action expects a cyclic actor with one generator")
    return ActionSpec(target, (imgs,))


def extraspecial_by_cyclic(p: int, r: int) -> PermGroup:
    """``p^(1+2) x| C_r`` with ``C_r`` acting fixed-point-freely on the Frattini quotient."""
    mult = next((m for m in range(2, p)
                 if all(pow(m, k, p) != 1 for k in range(1, r)) and pow(m, r, p) == 1), None)
    if mult is None:
        raise InputError(f"{r} does not divide {p} - 1")
    actor = cyclic(r)
    act = heisenberg_action(p, mult, actor)
    g = semidirect(act.target, actor, act)
    g.name = f"{p}^(1+2):{r}"
    return g


def natural_semidirect(name: str) -> PermGroup:
    """``3^2 x| H`` with ``H`` = SL(2,3) or GL(2,3) acting naturally on ``F_3^2``."""
    n = elementary_abelian(3, 2)
    e1, e2 = n.generators
    h = named(name)
    images = []
    for m in _f3_matrices(name):
        # column j of m is the image of basis vector j
        images.append(tuple(compose(perm_power(e1, m[0][j]), perm_power(e2, m[1][j])) for j in range(2)))
    g = semidirect(n, h, ActionSpec(n, tuple(images)))
    g.name = f"3^2:{name}"
    return g


# -- quotients ---------------------------------------------------------------------

@dataclasses.dataclass(frozen=True, eq=False)
class QuotientMap:
    """``proj[i]`` is the index in ``group`` of the image of parent element ``i``."""

    parent: PermGroup
    kernel: Subgroup
    group: PermGroup
    proj: np.ndarray

    def preimage(self, sub: Subgroup) -> Subgroup:
        return Subgroup(self.parent, sub.mask[self.proj])

    def image(self, sub: Subgroup) -> Subgroup:
        mask = np.zeros(self.group.order, dtype=bool)
        mask[self.proj[sub.mask]] = True
        return Subgroup(self.group, mask)


def quotient_map(g: PermGroup, n: Subgroup) -> QuotientMap:
    def build() -> QuotientMap:
        if n.parent is not g:
            raise InputError("subgroup belongs to a different group")
        if not is_normal(g, n):
            raise InputError("quotient by a subgroup that is not normal")
        if n.order == 1:
            q = PermGroup(g.degree, g.generators, name=g.name, _elements=g.array)
            return QuotientMap(g, n, q, np.arange(g.order))
        index = g.order // n.order
        return _block_quotient(g, n, index) or _coset_quotient(g, n, index)
    return g.cached(("quotient", n.indices.tobytes()), build)


def quotient(g: PermGroup, n: Subgroup) -> PermGroup:
    return quotient_map(g, n).group


def _block_quotient(g: PermGroup, n: Subgroup, index: int) -> QuotientMap | None:
    count, block_of = orbit_labels(g.degree, [np.array(g.element(i).images) for i in n.gens])
    if count < 2:
        return None
    reps = np.array([np.flatnonzero(block_of == b)[0] for b in range(count)])
    images = lambda rows: block_of[rows[:, reps]]
    gen_rows = images(np.array([x.images for x in g.generators])) if g.generators else np.zeros((0, count), int)
    q = PermGroup(count, [Permutation(r) for r in gen_rows.tolist()])
    try:
        if q.order != index:
            return None
    except CapExceeded:
        return None
    proj = np.concatenate([q.index(images(g.array[s:s + 32768]).astype(q.array.dtype))
                           for s in range(0, g.order, 32768)])
    return QuotientMap(g, n, q, proj)


def _coset_quotient(g: PermGroup, n: Subgroup, index: int) -> QuotientMap:
    allidx = np.arange(g.order)
    count, labels = orbit_labels(g.order, (g.mul(allidx, int(x)) for x in n.gens))
    if count != index:
        raise InternalError("coset count disagrees with the index")
    reps = np.full(count, g.order, dtype=np.intp)
    np.minimum.at(reps, labels, allidx)
    order = np.argsort(reps)
    relabel = np.empty(count, dtype=np.intp)
    relabel[order] = np.arange(count)
    labels = relabel[labels]
    reps = reps[order]
    perms = [Permutation(labels[g.mul(int(x), reps)].tolist()) for x in g.generator_indices]
    q = PermGroup(count, perms)
    if q.order != index:
        raise InternalError("coset action does not realise the quotient")
    q_of_label = np.empty(count, dtype=np.intp)
    q_of_label[q.array[:, 0].astype(np.intp)] = np.arange(q.order)
    return QuotientMap(g, n, q, q_of_label[labels])


def shuffle_generators(g: PermGroup, seed: int) -> PermGroup:
    """The same group with generators replaced by a seeded random generating set.

    ``seed == IDENTITY_SEED`` returns the original generators unchanged.
    """
    if seed == IDENTITY_SEED:
        return PermGroup(g.degree, g.generators, name=g.name, _elements=g.array)
    rng = np.random.default_rng(seed)
    if g.order == 1:
        return PermGroup(g.degree, [], name=g.name, _elements=g.array)
    picks = [int(x) for x in rng.integers(1, g.order, size=2)]
    sub = generate(g, picks)
    while sub.order < g.order:
        missing = np.flatnonzero(~sub.mask)
        x = int(missing[rng.integers(0, missing.shape[0])])
        picks.append(x)
        sub = generate(g, [x], start=sub)
    gens = [g.element(i) for i in picks]
    return PermGroup(g.degree, gens, name=f"shuffled({g.name})", _elements=g.array)
