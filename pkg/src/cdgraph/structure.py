"""Subgroup-theoretic invariants of enumerated permutation groups.

Derived and lower central series, Sylow subgroups and p-cores, the
Fitting chain, the Frattini subgroup and the lattice of normal subgroups.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .characters import conjugacy_classes
from .constructions import quotient_map
from .errors import CapExceeded, DomainError, InputError
from .limits import limits
from .numtheory import p_part, prime_factors
from .perm import PermGroup
from .subgroup import (Subgroup, commutator, commutator_indices, conjugate, core, generate,
                       intersection, normal_closure, trivial, whole, centralizer_mask)

SUBGROUP_LATTICE_CAP = 50_000


def derived_subgroup(g: PermGroup) -> Subgroup:
    def build():
        gi = g.generator_indices
        if gi.size < 2:
            return trivial(g)
        comms = commutator_indices(g, gi[:, None], gi[None, :]).ravel()
        return normal_closure(g, comms)
    return g.cached("derived", build)


def center(g: PermGroup) -> Subgroup:
    return g.cached("center", lambda: Subgroup(g, centralizer_mask(g, g.generator_indices)))


def centralizer(g: PermGroup, s: Subgroup) -> Subgroup:
    return Subgroup(g, centralizer_mask(g, s.gens))


def normalizer_mask(g: PermGroup, s: Subgroup) -> np.ndarray:
    """Elements ``x`` with ``x^-1 S x = S``."""
    mask = np.ones(g.order, dtype=bool)
    for a in s.gens:
        mask &= s.mask[g.conjugates_of(int(a))]
    return mask


def derived_series(g: PermGroup) -> list[Subgroup]:
    """``G = G^(0) > G^(1) > ...`` down to the first repeated term."""
    def build():
        series = [whole(g)]
        while True:
            cur = series[-1]
            nxt = cur.lift(derived_subgroup(cur.as_group()))
            if nxt.order == cur.order:
                return series
            series.append(nxt)
    return g.cached("derived_series", build)


def is_solvable(g: PermGroup) -> bool:
    return derived_series(g)[-1].order == 1


def lower_central_series(g: PermGroup) -> list[Subgroup]:
    def build():
        series = [whole(g)]
        while True:
            nxt = commutator(g, series[-1], series[0])
            if nxt.order == series[-1].order:
                return series
            series.append(nxt)
    return g.cached("lower_central", build)


def is_nilpotent(g: PermGroup) -> bool:
    return lower_central_series(g)[-1].order == 1


def nilpotency_class(g: PermGroup) -> int:
    series = lower_central_series(g)
    if series[-1].order != 1:
        raise DomainError("group is not nilpotent")
    return len(series) - 1


# -- Sylow theory -------------------------------------------------------------------

def sylow(g: PermGroup, p: int, seed: int = 0) -> Subgroup:
    """One Sylow ``p``-subgroup, grown one normalising ``p``-element at a time."""
    if g.order % p:
        raise InputError(f"{p} does not divide the group order {g.order}")

    def build():
        rng = np.random.default_rng(seed)
        target = p_part(g.order, p)
        cur = trivial(g)
        while cur.order < target:
            cand = np.flatnonzero(normalizer_mask(g, cur) & ~cur.mask)
            cand = cand[cur.mask[g.power_map(p)[cand]]]
            x = int(cand[rng.integers(0, cand.shape[0])])
            cur = generate(g, [x], start=cur)
        return cur
    return g.cached(("sylow", p, seed), build)


def p_core(g: PermGroup, p: int) -> Subgroup:
    """``O_p(G)``: the intersection of the conjugates of a Sylow ``p``-subgroup."""
    if g.order % p:
        return trivial(g)
    return g.cached(("p_core", p), lambda: core(g, sylow(g, p)))


# -- Fitting chain ------------------------------------------------------------------

@dataclasses.dataclass(frozen=True, eq=False)
class FittingData:
    fitting_subgroup: Subgroup
    second_fitting: Subgroup
    fitting_height: int


def fitting_subgroup(g: PermGroup) -> Subgroup:
    def build():
        if g.order == 1:
            return trivial(g)
        gens = np.concatenate([p_core(g, p).gens for p in prime_factors(g.order)])
        return generate(g, gens)
    return g.cached("fitting_subgroup", build)


def fitting(g: PermGroup) -> FittingData:
    def build():
        f = fitting_subgroup(g)
        if f.order == g.order:
            return FittingData(f, f, 1 if g.order > 1 else 0)
        qm = quotient_map(g, f)
        upper = fitting(qm.group)
        e = qm.preimage(upper.fitting_subgroup)
        return FittingData(f, e, upper.fitting_height + 1)
    return g.cached("fitting", build)


# -- Frattini subgroup -------------------------------------------------------------------

def _zuppo_generators(g: PermGroup) -> list[int]:
    """One generator for each cyclic subgroup of prime-power order > 1."""
    cl = conjugacy_classes(g)
    orders = np.zeros(g.order, dtype=np.int64)
    orders[:] = cl.rep_orders[cl.class_of]
    seen = np.zeros(g.order, dtype=bool)
    out = []
    for x in range(1, g.order):
        o = int(orders[x])
        if seen[x] or len(prime_factors(o)) != 1:
            continue
        out.append(x)
        for j in range(1, o):
            if math.gcd(j, o) == 1:
                seen[int(g.power(x, j))] = True
    return out


def _conjugates(g: PermGroup, s: Subgroup) -> list[Subgroup]:
    out = {s.mask.tobytes(): s}
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            for x in g.generator_indices:
                v = conjugate(g, u, int(x))
                key = v.mask.tobytes()
                if key not in out:
                    out[key] = v
                    nxt.append(v)
        frontier = nxt
    return list(out.values())


@dataclasses.dataclass(frozen=True, eq=False)
class SubgroupClass:
    representative: Subgroup
    members: tuple[Subgroup, ...]
    maximal: bool


def subgroup_classes(g: PermGroup) -> list[SubgroupClass]:
    """Conjugacy classes of subgroups, by cyclic extension with prime-power cyclic subgroups.

    Only class representatives are extended; a representative is maximal
    exactly when every extension is the whole group.
    """
    cap = limits().max_frattini
    if g.order > cap:
        raise CapExceeded("frattini", cap, g.order)

    def build():
        zuppos = _zuppo_generators(g)
        seen: set[bytes] = set()
        classes: list[tuple[Subgroup, list[Subgroup]]] = []

        def admit(v: Subgroup) -> bool:
            if v.mask.tobytes() in seen:
                return False
            members = _conjugates(g, v)
            seen.update(m.mask.tobytes() for m in members)
            classes.append((v, members))
            if len(seen) > SUBGROUP_LATTICE_CAP:
                raise CapExceeded("subgroup-lattice", SUBGROUP_LATTICE_CAP, len(seen))
            return True

        admit(trivial(g))
        maximal: dict[int, bool] = {}
        frontier = [0]
        while frontier:
            nxt = []
            for ci in frontier:
                u = classes[ci][0]
                is_max = u.order < g.order
                for z in zuppos:
                    if u.mask[z]:
                        continue
                    v = generate(g, [z], start=u)
                    if v.order < g.order:
                        is_max = False
                    if admit(v):
                        nxt.append(len(classes) - 1)
                maximal[ci] = is_max
            frontier = nxt
        out = [SubgroupClass(rep, tuple(sorted(ms, key=Subgroup.sort_key)), maximal[i])
               for i, (rep, ms) in enumerate(classes)]
        return sorted(out, key=lambda c: c.members[0].sort_key())
    return g.cached("subgroup_classes", build)


def subgroup_lattice(g: PermGroup) -> list[Subgroup]:
    """Every subgroup, sorted canonically (subject to the Frattini cap)."""
    subs = [m for c in subgroup_classes(g) for m in c.members]
    return sorted(subs, key=Subgroup.sort_key)


def maximal_subgroups(g: PermGroup) -> list[Subgroup]:
    subs = [m for c in subgroup_classes(g) if c.maximal for m in c.members]
    return sorted(subs, key=Subgroup.sort_key)


def frattini(g: PermGroup) -> Subgroup:
    """Intersection of the maximal subgroups."""
    def build():
        mask = np.ones(g.order, dtype=bool)
        for m in maximal_subgroups(g):
            mask &= m.mask
        return Subgroup(g, mask)
    if g.order > limits().max_frattini:
        raise CapExceeded("frattini", limits().max_frattini, g.order)
    return g.cached("frattini", build)


# -- normal subgroups --------------------------------------------------------------------

def _prime_power_closures(g: PermGroup) -> list[Subgroup]:
    """Normal closures of classes of prime-power order, one per generated cyclic subgroup."""
    cl = conjugacy_classes(g)
    done = np.zeros(len(cl), dtype=bool)
    done[0] = True
    out = []
    for k in range(1, len(cl)):
        o = int(cl.rep_orders[k])
        if done[k] or len(prime_factors(o)) != 1:
            continue
        rep = int(cl.representatives[k])
        units = [j for j in range(1, o) if math.gcd(j, o) == 1]
        done[cl.class_of[[int(g.power(rep, j)) for j in units]]] = True
        out.append(normal_closure(g, [rep]))
    return out


def normal_subgroups(g: PermGroup) -> list[Subgroup]:
    """All normal subgroups, sorted by order and then by least element sequence."""
    def build():
        cap = limits().max_normal
        base = _prime_power_closures(g)
        found: dict[bytes, Subgroup] = {}
        by_order: dict[int, list[Subgroup]] = {}

        def add(s: Subgroup) -> bool:
            key = s.mask.tobytes()
            if key in found:
                return False
            found[key] = s
            by_order.setdefault(s.order, []).append(s)
            if len(found) > cap:
                raise CapExceeded("normal-subgroup", cap, len(found))
            return True

        add(trivial(g))
        frontier = [s for s in base if add(s)]
        while frontier:
            nxt = []
            for a in frontier:
                for b in base:
                    if b <= a:
                        continue
                    j = _normal_join(g, a, b, by_order)
                    if add(j):
                        nxt.append(j)
            frontier = nxt
        return sorted(found.values(), key=Subgroup.sort_key)
    return g.cached("normal_subgroups", build)


def _normal_join(g: PermGroup, a: Subgroup, b: Subgroup, by_order) -> Subgroup:
    if a <= b:
        return b
    order = a.order * b.order // intersection(a, b).order
    union = a.mask | b.mask
    for s in by_order.get(order, ()):
        if not np.any(union & ~s.mask):
            return s
    return generate(g, b.gens, start=a)


def minimal_normal_subgroups(g: PermGroup) -> list[Subgroup]:
    nontrivial = [s for s in normal_subgroups(g) if s.order > 1]
    return [s for s in nontrivial
            if not any(t.order < s.order and t <= s for t in nontrivial)]


def hall_diagnostic(g: PermGroup, primes) -> Subgroup | None:
    """A normal Hall subgroup for ``primes`` from the normal lattice, if present."""
    target = 1
    for p in primes:
        target *= p_part(g.order, p)
    for s in normal_subgroups(g):
        if s.order == target:
            return s
    return None
