"""Direct decompositions of solvable groups whose degree graph is a 4-cycle.

:func:`verify_main_theorem` searches the normal subgroup lattice for
``G = A x B`` with ``rho(A)`` and ``rho(B)`` the two non-adjacent pairs
of the square, then re-checks every claim of the certificate from scratch.
The remaining checks cover the Fitting height bound and its corollaries.
"""

from __future__ import annotations

import dataclasses
from typing import Callable

from .characters import DegreeMultiset, character_degrees, degrees_direct_product, rho
from .constructions import quotient
from .disconnected import TypeReport, _is_abelian, classify_disconnected
from .errors import CapExceeded, HypothesisError
from .graph import build_graph, describe, square_labeling
from .limits import limits
from .numtheory import p_part, prime_factors
from .perm import PermGroup
from .structure import center, fitting, frattini, is_solvable, normal_subgroups, p_core
from .subgroup import Subgroup, intersection, is_normal

Labeling = tuple[tuple[int, int], tuple[int, int]]


def verify_hypothesis1(g: PermGroup) -> Labeling:
    """The square's non-adjacent pairs, after checking solvability and shape."""
    if not is_solvable(g):
        raise HypothesisError("group is not solvable", shape="nonsolvable")
    graph = build_graph(character_degrees(g))
    lab = square_labeling(graph)
    if lab is None:
        shape = describe(graph)
        raise HypothesisError(f"degree graph is not a square: {shape}", shape=shape)
    return lab


def find_direct_factorizations(g: PermGroup, include_trivial: bool = False
                               ) -> list[tuple[Subgroup, Subgroup]]:
    """Unordered pairs of normal subgroups meeting trivially with ``|A||B| = |G|``."""
    normals = normal_subgroups(g)
    by_order: dict[int, list[Subgroup]] = {}
    for s in normals:
        by_order.setdefault(s.order, []).append(s)
    out = []
    for i, a in enumerate(normals):
        if not include_trivial and (a.order == 1 or a.order == g.order):
            continue
        partner = g.order // a.order
        if g.order % a.order or partner < a.order:
            continue
        for b in by_order.get(partner, ()):
            if b is a or (partner == a.order and b.sort_key() < a.sort_key()):
                continue
            if intersection(a, b).order == 1:
                out.append((a, b))
    return sorted(out, key=lambda ab: (ab[0].sort_key(), ab[1].sort_key()))


def _factor_degrees(s: Subgroup) -> DegreeMultiset:
    return character_degrees(s.as_group())


@dataclasses.dataclass(frozen=True, eq=False)
class DecompositionCertificate:
    factor_a: Subgroup
    factor_b: Subgroup
    rho_a: tuple[int, ...]
    rho_b: tuple[int, ...]
    labeling: Labeling
    type_a: TypeReport
    type_b: TypeReport
    checks: dict[str, bool]
    alternatives: int
    center_orders: tuple[int, int]    # |Z(G) n A|, |Z(G) n B|

    @property
    def verified(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "verified": self.verified,
            "labeling": [list(p) for p in self.labeling],
            "factor_orders": [self.factor_a.order, self.factor_b.order],
            "rho_a": list(self.rho_a),
            "rho_b": list(self.rho_b),
            "type_a": self.type_a.to_dict(),
            "type_b": self.type_b.to_dict(),
            "checks": dict(sorted(self.checks.items())),
            "alternatives": self.alternatives,
            "center_orders": list(self.center_orders),
        }


@dataclasses.dataclass(frozen=True)
class Counterexample:
    """No factorization realises the labeling; lists what was found instead."""

    labeling: Labeling
    factorizations: tuple[tuple[int, int, tuple[int, ...], tuple[int, ...]], ...]

    verified = False

    def to_dict(self) -> dict:
        return {
            "counterexample": True,
            "labeling": [list(p) for p in self.labeling],
            "factorizations": [
                {"orders": [a, b], "rho_a": list(ra), "rho_b": list(rb)}
                for a, b, ra, rb in self.factorizations],
        }


def verify_main_theorem(g: PermGroup,
                        classifier: Callable[[PermGroup], TypeReport] = classify_disconnected
                        ) -> DecompositionCertificate | Counterexample:
    lab = verify_hypothesis1(g)
    want_a, want_b = set(lab[0]), set(lab[1])
    found = []
    seen = []
    for a, b in find_direct_factorizations(g):
        ra, rb = rho(_factor_degrees(a)), rho(_factor_degrees(b))
        seen.append((a.order, b.order, tuple(sorted(ra)), tuple(sorted(rb))))
        if ra == want_a and rb == want_b:
            found.append((a, b))
        elif ra == want_b and rb == want_a:
            found.append((b, a))
    if not found:
        return Counterexample(lab, tuple(seen))
    found.sort(key=lambda ab: (ab[0].order, ab[0].sort_key()))
    a, b = found[0]
    return _certify(g, a, b, lab, classifier, len(found) - 1)


def _certify(g: PermGroup, a: Subgroup, b: Subgroup, lab: Labeling,
             classifier, alternatives: int) -> DecompositionCertificate:
    da, db = _factor_degrees(a), _factor_degrees(b)
    ra, rb = rho(da), rho(db)
    checks = {
        "a_normal": is_normal(g, a),
        "b_normal": is_normal(g, b),
        "trivial_intersection": intersection(a, b).order == 1,
        "order_product": a.order * b.order == g.order,
        "rho_a_matches": ra == set(lab[0]),
        "rho_b_matches": rb == set(lab[1]),
        "degree_product_identity":
            degrees_direct_product(da, db).degrees == character_degrees(g).degrees,
    }
    z = center(g)
    return DecompositionCertificate(
        a, b, tuple(sorted(ra)), tuple(sorted(rb)), lab,
        classifier(a.as_group()), classifier(b.as_group()),
        checks, alternatives, (intersection(z, a).order, intersection(z, b).order))


# -- corollary checks ------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class CheckReport:
    name: str
    status: str            # "pass" | "fail" | "skipped"
    detail: dict

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def check_h_bound(g: PermGroup) -> CheckReport:
    verify_hypothesis1(g)
    h = fitting(g).fitting_height
    return CheckReport("h-bound", "pass" if h <= 4 else "fail", {"fitting_height": h, "bound": 4})


def check_h2_corollary(g: PermGroup,
                       classifier: Callable[[PermGroup], TypeReport] = classify_disconnected
                       ) -> CheckReport:
    verify_hypothesis1(g)
    h = fitting(g).fitting_height
    if h != 2:
        return CheckReport("h2-corollary", "skipped", {"fitting_height": h, "reason": "h != 2"})
    cert = verify_main_theorem(g, classifier)
    if isinstance(cert, Counterexample):
        return CheckReport("h2-corollary", "fail", {"fitting_height": h, "reason": "no certificate"})
    types = [cert.type_a.claimed_type, cert.type_b.claimed_type]
    return CheckReport("h2-corollary", "pass" if types == [1, 1] else "fail",
                       {"fitting_height": h, "factor_types": types})


def normal_nonabelian_sylow_primes(g: PermGroup) -> list[int]:
    out = []
    for t in prime_factors(g.order):
        s = p_core(g, t)
        if s.order == p_part(g.order, t) and not _is_abelian(g, s):
            out.append(t)
    return out


def check_two_nonab_corollary(g: PermGroup) -> CheckReport:
    verify_hypothesis1(g)
    primes = normal_nonabelian_sylow_primes(g)
    h = fitting(g).fitting_height
    if len(primes) < 2:
        return CheckReport("two-nonab-corollary", "pass",
                           {"primes": primes, "fitting_height": h, "vacuous": True})
    return CheckReport("two-nonab-corollary", "pass" if h == 2 else "fail",
                       {"primes": primes, "fitting_height": h, "vacuous": False})


def check_frattini_invariance(g: PermGroup) -> CheckReport:
    lab = verify_hypothesis1(g)
    normal_sylow = [t for pair in lab for t in pair
                    if p_core(g, t).order == p_part(g.order, t)]
    if normal_sylow:
        return CheckReport("frattini-invariance", "skipped",
                           {"reason": "normal Sylow subgroup present", "primes": sorted(normal_sylow)})
    if g.order > limits().max_frattini:
        raise CapExceeded("frattini", limits().max_frattini, g.order)
    phi = frattini(g)
    before = build_graph(character_degrees(g))
    after = build_graph(character_degrees(quotient(g, phi)))
    return CheckReport("frattini-invariance", "pass" if before == after else "fail",
                       {"frattini_order": phi.order,
                        "graph": [list(before.vertices), [list(e) for e in before.edges]],
                        "quotient_graph": [list(after.vertices), [list(e) for e in after.edges]]})
