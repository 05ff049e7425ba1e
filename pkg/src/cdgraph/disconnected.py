"""Sort solvable groups with a disconnected degree graph into Types 1-6.

Each type is a battery of necessary conditions (normal Sylow structure,
Fitting chain shape, component sets, Type 4 arithmetic).  A group gets the
first type, in order 1..6, whose clauses all hold; every clause value is
kept as evidence.
"""

from __future__ import annotations

import dataclasses
import itertools

import numpy as np

from .characters import character_degrees, conjugacy_classes, rho
from .constructions import named, quotient_map
from .errors import CapExceeded, HypothesisError, InternalError
from .graph import build_graph, components
from .numtheory import is_prime_power, p_part, prime_factors
from .perm import PermGroup
from .structure import (center, centralizer, fitting, is_solvable, nilpotency_class,
                        is_nilpotent, p_core)
from .subgroup import Subgroup, commutator, generate, intersection, normal_closure

SMALL_ISO_CAP = 48


# -- small isomorphism test ----------------------------------------------------------

def _element_orders(g: PermGroup) -> np.ndarray:
    cl = conjugacy_classes(g)
    return cl.rep_orders[cl.class_of]


def _extend(a: PermGroup, gens: np.ndarray, b: PermGroup, images) -> np.ndarray | None:
    """Index map of the homomorphism ``gens[i] -> images[i]``, or ``None``."""
    phi = np.full(a.order, -1, dtype=np.intp)
    phi[0] = 0
    imgs = np.asarray(images, dtype=np.intp)
    frontier = np.array([0], dtype=np.intp)
    while frontier.size:
        ys = a.mul(frontier[:, None], gens[None, :]).ravel()
        vals = b.mul(phi[frontier][:, None], imgs[None, :]).ravel()
        fresh = phi[ys] < 0
        phi[ys[fresh]] = vals[fresh]
        if np.any(phi[ys] != vals):
            return None
        frontier = np.unique(ys[fresh])
    return phi


def small_isomorphic(a: PermGroup, b: PermGroup) -> bool:
    """Isomorphism test by generator-image search (orders up to 48)."""
    for g in (a, b):
        if g.order > SMALL_ISO_CAP:
            raise CapExceeded("isomorphism-order", SMALL_ISO_CAP, g.order)
    if a.order != b.order:
        return False
    oa, ob = _element_orders(a), _element_orders(b)
    if sorted(oa.tolist()) != sorted(ob.tolist()):
        return False
    from .structure import derived_subgroup
    if center(a).order != center(b).order or derived_subgroup(a).order != derived_subgroup(b).order:
        return False
    if a.order == 1:
        return True
    gens = Subgroup(a, np.ones(a.order, dtype=bool)).gens
    choices = [np.flatnonzero(ob == oa[x]) for x in gens]
    for images in itertools.product(*choices):
        phi = _extend(a, gens, b, images)
        if phi is not None and np.unique(phi).shape[0] == b.order:
            return True
    return False


# -- clause helpers --------------------------------------------------------------------

def _pi(n: int) -> frozenset[int]:
    return frozenset(prime_factors(n)) if n > 1 else frozenset()


def _is_abelian(g: PermGroup, s: Subgroup) -> bool:
    gens = s.gens
    if gens.size < 2:
        return True
    return bool(np.all(g.mul(gens[:, None], gens[None, :]) == g.mul(gens[None, :], gens[:, None])))


def _cyclic_section(g: PermGroup, top: Subgroup, bottom: Subgroup) -> bool:
    """Is ``top/bottom`` cyclic (both normal in ``g``, ``bottom <= top``)?"""
    index = top.order // bottom.order
    if index == 1:
        return True
    qm = quotient_map(g, bottom)
    image = qm.image(top)
    orders = _element_orders(qm.group)
    return int(orders[image.mask].max()) == index


def _is_minimal_normal(g: PermGroup, k: Subgroup) -> bool:
    if k.order == 1:
        return False
    cl = conjugacy_classes(g)
    for rep in cl.representatives[1:]:
        if k.mask[rep] and normal_closure(g, [int(rep)]).order != k.order:
            return False
    return True


def _direct_with_center(g: PermGroup, k: Subgroup, z: Subgroup, f: Subgroup) -> bool:
    """``F = K x Z`` as an internal direct product."""
    return intersection(k, z).order == 1 and k.order * z.order == f.order and k <= f and z <= f


def _central_complement(g: PermGroup, k: Subgroup, z: Subgroup, f: Subgroup) -> bool:
    """``F = K x C`` for some central ``C``.

    ``F`` is nilpotent, so the only candidate is its Hall ``pi(K)'``-part.
    """
    if not k <= f:
        return False
    primes = _pi(k.order)
    orders = _element_orders(g)
    coprime = np.array([all(o % p for p in primes) for o in orders.tolist()])
    c = f.mask & coprime
    return k.order * int(c.sum()) == f.order and bool(np.all(z.mask[c]))


def _normal_nonabelian_sylows(g: PermGroup) -> list[tuple[int, Subgroup]]:
    out = []
    for p in prime_factors(g.order):
        s = p_core(g, p)
        if s.order == p_part(g.order, p) and not _is_abelian(g, s):
            out.append((p, s))
    return out


@dataclasses.dataclass(frozen=True)
class TypeReport:
    claimed_type: int | None          # None means Unknown
    components: tuple[tuple[int, ...], tuple[int, ...]]
    evidence: dict[int, dict[str, bool]]
    parameters: dict[str, int] | None = None

    @property
    def label(self) -> str:
        return "Unknown" if self.claimed_type is None else f"Type {self.claimed_type}"

    def to_dict(self) -> dict:
        return {
            "claimed_type": self.claimed_type,
            "label": self.label,
            "components": [list(c) for c in self.components],
            "evidence": {str(t): dict(sorted(e.items())) for t, e in sorted(self.evidence.items())},
            "parameters": self.parameters,
        }


class _Context:
    def __init__(self, g: PermGroup):
        self.g = g
        self.degrees = character_degrees(g)
        self.rho = rho(self.degrees)
        comps = components(build_graph(self.degrees))
        if len(comps) != 2:
            raise HypothesisError(f"degree graph has {len(comps)} components, not 2",
                                  shape="connected" if len(comps) == 1 else f"{len(comps)}-components")
        self.components = tuple(comps)
        self.comp_sets = {frozenset(c) for c in comps}
        fd = fitting(g)
        self.f, self.e, self.h = fd.fitting_subgroup, fd.second_fitting, fd.fitting_height
        self.z = center(g)
        self.f_abelian = _is_abelian(g, self.f)
        self.second_fitting_abelian = _is_abelian(quotient_map(g, self.f).group,
                                                  quotient_map(g, self.f).image(self.e))
        self.g_e = g.order // self.e.order
        self.e_f = self.e.order // self.f.order
        self._cyclic = None

    def cyclic_layers(self) -> tuple[bool, bool]:
        if self._cyclic is None:
            whole = Subgroup(self.g, np.ones(self.g.order, dtype=bool), self.g.generator_indices)
            self._cyclic = (_cyclic_section(self.g, whole, self.e),
                            _cyclic_section(self.g, self.e, self.f))
        return self._cyclic


def _type1(ctx: _Context) -> tuple[dict[str, bool], dict | None]:
    g = ctx.g
    best = None
    for p, s in _normal_nonabelian_sylows(g) or [(None, None)]:
        ev = {"normal_nonabelian_sylow": s is not None}
        if s is not None:
            ev["abelian_complement"] = quotient_map(g, s).group.is_abelian()
            sg = s.as_group()
            ev["sylow_class_2"] = is_nilpotent(sg) and nilpotency_class(sg) == 2
        else:
            ev["abelian_complement"] = ev["sylow_class_2"] = False
        ev["fitting_nonabelian"] = not ctx.f_abelian
        ev["second_fitting_abelian"] = ctx.second_fitting_abelian
        if best is None or all(ev.values()):
            best = (ev, {"p": p} if p else None)
        if all(ev.values()):
            break
    return best


def _type23(ctx: _Context, which: str) -> tuple[dict[str, bool], dict | None]:
    g = ctx.g
    ev: dict[str, bool] = {}
    p = p_core(g, 3)
    ev["o3_order_9"] = p.order == 9
    ev["centralizer_is_p_times_center"] = (
        ev["o3_order_9"] and _is_abelian(g, p)
        and centralizer(g, p).order == p.order * ctx.z.order
        and intersection(p, ctx.z).order == 1)
    pz = generate(g, np.concatenate([p.gens, ctx.z.gens]))
    expected = 24 if which == "SL(2,3)" else 48
    ev[f"quotient_is_{which}"] = (g.order // pz.order == expected
                                  and small_isomorphic(quotient_map(g, pz).group, named(which)))
    ev["rho_is_2_3"] = ctx.rho == {2, 3}
    ev["fitting_is_p_times_center"] = ctx.f == pz
    ev["fitting_abelian"] = ctx.f_abelian
    ev["second_fitting_nonabelian"] = not ctx.second_fitting_abelian
    return ev, None


def _type4(ctx: _Context) -> tuple[dict[str, bool], dict | None]:
    g = ctx.g
    ev: dict[str, bool] = {}
    top, mid = ctx.cyclic_layers()
    ev["g_mod_e_cyclic"], ev["e_mod_f_cyclic"] = top, mid
    k = commutator(g, ctx.e, ctx.f)
    ev["commutator_minimal_normal"] = _is_minimal_normal(g, k)
    ev["fitting_is_commutator_times_center"] = _direct_with_center(g, k, ctx.z, ctx.f)
    m = ctx.g_e
    params = None
    q = None
    if k.order > 1:
        pp = is_prime_power(k.order)
        if pp is not None and pp[1] % m == 0:
            q = pp[0] ** (pp[1] // m)
    ev["commutator_order_is_q_to_m"] = q is not None
    ev["repunit_divides_e_mod_f"] = q is not None and ctx.e_f % ((q**m - 1) // (q - 1)) == 0
    ev["components_match"] = ctx.comp_sets == {_pi(ctx.g_e), _pi(ctx.e_f)}
    ev["fitting_abelian"] = ctx.f_abelian
    ev["second_fitting_abelian"] = ctx.second_fitting_abelian
    if q is not None:
        params = {"q": q, "m": m, "e_mod_f": ctx.e_f, "g_mod_e": ctx.g_e,
                  "repunit": (q**m - 1) // (q - 1), "central_factor_order": ctx.z.order}
    return ev, params


def _type5(ctx: _Context) -> tuple[dict[str, bool], dict | None]:
    g = ctx.g
    ev: dict[str, bool] = {}
    q = p_core(g, 2)
    ev["o2_nonabelian"] = not _is_abelian(g, q)
    ev["fitting_is_o2_times_central"] = _central_complement(g, q, ctx.z, ctx.f)
    ev["index_g_e_is_2"] = ctx.g_e == 2
    top, mid = ctx.cyclic_layers()
    ev["g_mod_e_cyclic"], ev["e_mod_f_cyclic"] = top, mid
    ev["components_match"] = ctx.comp_sets == {frozenset({2}), _pi(ctx.e_f)}
    ev["fitting_nonabelian"] = not ctx.f_abelian
    ev["second_fitting_abelian"] = ctx.second_fitting_abelian
    return ev, None


def _type6(ctx: _Context) -> tuple[dict[str, bool], dict | None]:
    g = ctx.g
    best = None
    top, mid = ctx.cyclic_layers()
    for p, s in _normal_nonabelian_sylows(g) or [(None, None)]:
        ev = {"normal_nonabelian_sylow": s is not None}
        ev["fitting_is_sylow_times_central"] = s is not None and _central_complement(g, s, ctx.z, ctx.f)
        ev["components_match"] = s is not None and ctx.comp_sets == {
            frozenset({p}) | _pi(ctx.e_f), _pi(ctx.g_e)}
        ev["rho_at_least_3"] = len(ctx.rho) >= 3
        ev["g_mod_e_cyclic"], ev["e_mod_f_cyclic"] = top, mid
        ev["fitting_nonabelian"] = not ctx.f_abelian
        ev["second_fitting_abelian"] = ctx.second_fitting_abelian
        if best is None or all(ev.values()):
            best = (ev, {"p": p} if p else None)
        if all(ev.values()):
            break
    return best


def classify_disconnected(g: PermGroup) -> TypeReport:
    if not is_solvable(g):
        raise HypothesisError("group is not solvable", shape="nonsolvable")
    ctx = _Context(g)
    batteries = {
        1: lambda: _type1(ctx),
        2: lambda: _type23(ctx, "SL(2,3)"),
        3: lambda: _type23(ctx, "GL(2,3)"),
        4: lambda: _type4(ctx),
        5: lambda: _type5(ctx),
        6: lambda: _type6(ctx),
    }
    evidence: dict[int, dict[str, bool]] = {}
    params: dict[int, dict | None] = {}
    for t, run in batteries.items():
        evidence[t], params[t] = run()
    matches = [t for t, ev in evidence.items() if all(ev.values())]
    if len(matches) > 1:
        raise InternalError(f"group matches several disconnected types: {matches}")
    claimed = matches[0] if matches else None
    return TypeReport(claimed, ctx.components, evidence,
                      params.get(claimed) if claimed is not None else params.get(4))
