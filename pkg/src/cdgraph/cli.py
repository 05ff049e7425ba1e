"""Command-line front end.

Groups come from a JSON document: either raw generators
``{"name": ..., "degree": n, "generators": [[...], ...]}`` or a construction
``{"construct": <node>}``.  Every report is canonical JSON (sorted keys,
exact integers) so identical invocations print identical bytes.

Exit codes: 0 success, 1 counterexample found, 2 bad input, 3 hypothesis
not met, 4 resource cap exceeded, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import constructions as C
from .characters import character_degrees, conjugacy_classes, rho
from .disconnected import classify_disconnected
from .errors import CapExceeded, CdGraphError, DomainError, HypothesisError, InputError, InternalError
from .graph import build_graph, dot_export, shape
from .limits import use_limits
from .numtheory import zsig_check
from .perm import PermGroup, Permutation, symmetric
from .square import (Counterexample, check_frattini_invariance, check_h2_corollary, check_h_bound,
                     check_two_nonab_corollary, verify_main_theorem)
from .structure import center, derived_subgroup, frattini

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_CAP, EXIT_INTERNAL = 0, 1, 2, 3, 4, 5


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


# -- group documents ---------------------------------------------------------------

def _int(v, path: str, low: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{path}: expected an integer, got {json.dumps(v)}")
    if low is not None and v < low:
        raise InputError(f"{path}: expected an integer >= {low}, got {v}")
    return v


def _pair(v, path: str) -> tuple[int, int]:
    if not isinstance(v, list) or len(v) != 2:
        raise InputError(f"{path}: expected a two-element list")
    return _int(v[0], f"{path}[0]"), _int(v[1], f"{path}[1]")


def _perm_list(v, degree: int, path: str) -> list[Permutation]:
    if not isinstance(v, list):
        raise InputError(f"{path}: expected a list of image lists")
    out = []
    for i, images in enumerate(v):
        p = f"{path}[{i}]"
        if not isinstance(images, list):
            raise InputError(f"{p}: expected a list of images")
        if len(images) != degree:
            raise InputError(f"{p}: expected {degree} images, got {len(images)}")
        try:
            out.append(Permutation([_int(x, p, 0) for x in images]))
        except InputError as exc:
            raise InputError(f"{p}: {exc}") from None
    return out


def build_node(node: Any, path: str = "$.construct") -> PermGroup:
    """Evaluate one construction node; errors name the JSON path of the offending node."""
    if not isinstance(node, dict) or len(node) != 1:
        raise InputError(f"{path}: expected an object with exactly one construction key")
    (kind, arg), = node.items()
    here = f"{path}.{kind}"
    try:
        if kind == "cyclic":
            return C.cyclic(_int(arg, here, 1))
        if kind == "dihedral":
            return C.dihedral(_int(arg, here, 1))
        if kind == "symmetric":
            return symmetric(_int(arg, here, 1))
        if kind == "elementary_abelian":
            return C.elementary_abelian(*_pair(arg, here))
        if kind == "quaternion8":
            return C.quaternion8()
        if kind == "extraspecial":
            return C.extraspecial(_int(arg, here))
        if kind == "named":
            if not isinstance(arg, str):
                raise InputError(f"{here}: expected a group name string")
            return C.named(arg)
        if kind == "agammal":
            return C.agammal(*_pair(arg, here))
        if kind == "extraspecial_by_cyclic":
            return C.extraspecial_by_cyclic(*_pair(arg, here))
        if kind == "natural_semidirect":
            if not isinstance(arg, str):
                raise InputError(f"{here}: expected a group name string")
            return C.natural_semidirect(arg)
        if kind == "direct_product":
            if not isinstance(arg, list) or len(arg) != 2:
                raise InputError(f"{here}: expected a list of two nodes")
            return C.direct_product(build_node(arg[0], f"{here}[0]"), build_node(arg[1], f"{here}[1]"))
        if kind == "semidirect":
            return _semidirect_node(arg, here)
        if kind == "quotient":
            return _quotient_node(arg, here)
        if kind == "shuffle":
            if not isinstance(arg, dict) or set(arg) != {"g", "seed"}:
                raise InputError(f"{here}: expected keys 'g' and 'seed'")
            return C.shuffle_generators(build_node(arg["g"], f"{here}.g"), _int(arg["seed"], f"{here}.seed"))
    except InputError as exc:
        msg = str(exc)
        raise InputError(msg if msg.startswith("$") else f"{here}: {msg}") from None
    raise InputError(f"{path}: unknown construction {kind!r}")


def _semidirect_node(arg, here: str) -> PermGroup:
    if not isinstance(arg, dict) or set(arg) != {"n", "h", "action"}:
        raise InputError(f"{here}: expected keys 'n', 'h' and 'action'")
    n = build_node(arg["n"], f"{here}.n")
    h = build_node(arg["h"], f"{here}.h")
    table = arg["action"]
    if not isinstance(table, list):
        raise InputError(f"{here}.action: expected one list of images per actor generator")
    rows = tuple(tuple(_perm_list(row, n.degree, f"{here}.action[{i}]")) for i, row in enumerate(table))
    return C.semidirect(n, h, C.ActionSpec(n, rows))


def _quotient_node(arg, here: str) -> PermGroup:
    if not isinstance(arg, dict) or set(arg) != {"g", "by"}:
        raise InputError(f"{here}: expected keys 'g' and 'by'")
    g = build_node(arg["g"], f"{here}.g")
    by = {"center": center, "derived": derived_subgroup, "frattini": frattini}.get(arg["by"])
    if by is None:
        raise InputError(f"{here}.by: expected 'center', 'derived' or 'frattini'")
    return C.quotient(g, by(g))


def parse_document(text: str) -> PermGroup:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("$: expected a JSON object")
    if "construct" in doc:
        g = build_node(doc["construct"])
        if isinstance(doc.get("name"), str):
            g.name = doc["name"]
        return g
    missing = {"degree", "generators"} - set(doc)
    if missing:
        raise InputError(f"$: missing key(s) {sorted(missing)}; expected 'construct' or raw generators")
    degree = _int(doc["degree"], "$.degree", 1)
    gens = _perm_list(doc["generators"], degree, "$.generators")
    return PermGroup(degree, gens, name=doc.get("name") if isinstance(doc.get("name"), str) else None)


def load_group(path: str) -> PermGroup:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


# -- reports -------------------------------------------------------------------------

def _graph_json(graph) -> dict:
    return {"vertices": list(graph.vertices), "edges": [list(e) for e in graph.edges]}


def analyze_report(g: PermGroup, degrees_only: bool = False) -> dict:
    dm = character_degrees(g)
    out = {"name": g.name, "order": g.order,
           "degree_multiset": [[d, m] for d, m in dm.counts().items()]}
    if degrees_only:
        return out
    graph = build_graph(dm)
    out.update({
        "class_count": len(conjugacy_classes(g)),
        "cd": sorted(dm.cd()),
        "rho": sorted(rho(dm)),
        "graph": _graph_json(graph),
        "shape": shape(graph).to_dict(),
    })
    return out


def graph_report(degrees: list[int]) -> dict:
    graph = build_graph(degrees)
    return {"cd": sorted(set(degrees)), "graph": _graph_json(graph), "shape": shape(graph).to_dict()}


def _checks(g: PermGroup) -> list[dict]:
    out = []
    for check in (check_h_bound, check_h2_corollary, check_two_nonab_corollary, check_frattini_invariance):
        try:
            out.append(check(g).to_dict())
        except CapExceeded as exc:
            out.append({"name": check.__name__.removeprefix("check_").replace("_", "-"),
                        "status": "skipped", "detail": {"reason": str(exc)}})
    return out


# -- argument handling --------------------------------------------------------------------

def _degree_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("degrees must be positive integers")
    return vals


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--max-elements", type=int, help="group enumeration cap")
    caps.add_argument("--max-classes", type=int, help="conjugacy class cap for the degree engine")
    caps.add_argument("--max-frattini", type=int, help="group order cap for Frattini computations")

    parser = argparse.ArgumentParser(prog="cdgraph", description="Character degree graphs of finite solvable groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[caps], help="degrees, prime graph and shape of a group")
    p.add_argument("path")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_true", help="full JSON report (default)")
    mode.add_argument("--dot", action="store_true", help="emit the degree graph in DOT format")
    mode.add_argument("--degrees-only", action="store_true", help="only the degree multiset")

    p = sub.add_parser("graph", help="shape of the prime graph of a degree list")
    p.add_argument("--degrees", type=_degree_list, required=True, metavar="1,2,3,...")
    p.add_argument("--dot", action="store_true")

    p = sub.add_parser("zsig", help="prime-power test for (p^(an) - 1)/(p^a - 1)")
    p.add_argument("p", type=int)
    p.add_argument("a", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("classify", parents=[caps], help="disconnected type of a group")
    p.add_argument("path")

    p = sub.add_parser("verify-square", parents=[caps], help="certify the direct decomposition")
    p.add_argument("path")
    p.add_argument("--checks", action="store_true", help="also run the Fitting height checks")
    return parser


def _run(args) -> tuple[int, str]:
    if args.command == "graph":
        if args.dot:
            return EXIT_OK, dot_export(build_graph(args.degrees))
        return EXIT_OK, canonical_json(graph_report(args.degrees))
    if args.command == "zsig":
        return EXIT_OK, canonical_json(zsig_check(args.p, args.a, args.n).to_dict())

    g = load_group(args.path)
    if args.command == "analyze":
        if args.dot:
            return EXIT_OK, dot_export(build_graph(character_degrees(g)))
        return EXIT_OK, canonical_json(analyze_report(g, degrees_only=args.degrees_only))
    if args.command == "classify":
        report = classify_disconnected(g).to_dict()
        report["order"] = g.order
        return EXIT_OK, canonical_json(report)
    if args.command == "verify-square":
        cert = verify_main_theorem(g)
        report = cert.to_dict()
        report["order"] = g.order
        if args.checks:
            report["checks_run"] = _checks(g)
        code = EXIT_COUNTEREXAMPLE if isinstance(cert, Counterexample) or not cert.verified else EXIT_OK
        return code, canonical_json(report)
    raise InputError(f"unknown command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    overrides = {k: v for k, v in (("max_elements", getattr(args, "max_elements", None)),
                                   ("max_classes", getattr(args, "max_classes", None)),
                                   ("max_frattini", getattr(args, "max_frattini", None)))
                 if v is not None}
    try:
        with use_limits(**overrides):
            code, text = _run(args)
    except (InputError, DomainError) as exc:
        return _fail(EXIT_INPUT, "input", exc)
    except HypothesisError as exc:
        return _fail(EXIT_HYPOTHESIS, "hypothesis", exc, shape=exc.shape)
    except CapExceeded as exc:
        return _fail(EXIT_CAP, "cap", exc)
    except (InternalError, CdGraphError) as exc:
        return _fail(EXIT_INTERNAL, "internal", exc)
    sys.stdout.write(text)
    return code


def _fail(code: int, kind: str, exc: Exception, **extra) -> int:
    payload = {"error": kind, "message": str(exc), "exit_code": code}
    payload.update({k: v for k, v in extra.items() if v is not None})
    sys.stdout.write(canonical_json(payload))
    print(f"cdgraph: {kind} error: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
