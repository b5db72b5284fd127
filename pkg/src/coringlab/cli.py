"""``coring-lab <command> <instance.json> [--window A..B] [--cap N] [--json|--text]``

Exit codes: 0 computed, 1 a mathematical property failed, 2 usage or
validation error.  The JSON report is byte-stable for identical inputs;
wall-clock time lives under the trailing ``timing`` key only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from itertools import product
from typing import Callable

from . import __version__
from .algebra import validate_algebra
from .checks import BoundExceeded, NotEnumerable
from .cohomology import (coboundary_d, e_membership, element_json, element_label,
                         exact_sequence_report, group_h1, harrison_group_bridge,
                         harrison_h1, hilbert90_report, image_of_d, twist_coinvariants,
                         twisted_iso_witness, twisted_module_coinvariants)
from .comodule import coinvariants, galois_canonical_map, validate_comodule_algebra
from .coring import (CoringCtx, Grouplike, brute_force_grouplikes, degree_zero_primitive_idempotents,
                     enumerate_grouplikes,
                     grouplike_from_idempotent_degrees, idempotent_degrees_of_grouplike,
                     structured_grouplikes)
from .exactfield import span_basis
from .hopf import validate_bialgebra
from .instance import Instance, InstanceError, load_instance

COMMANDS = ("check", "grouplikes", "h1", "group-h1", "hilbert90", "exact-report",
            "e-test", "twist", "iso", "idempotent-grouplikes")


class UsageError(Exception):
    pass


class Outcome:
    """A command result plus whether every property it checked held."""

    def __init__(self, result: dict, ok: bool = True, text: list[str] | None = None):
        self.result, self.ok, self.text = result, ok, text or []


def parse_window(s: str) -> tuple[int, int]:
    try:
        lo, hi = s.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like A..B, got {s!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty window {s!r}")
    return lo, hi


def parse_element(s: str) -> dict:
    try:
        d = json.loads(s)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"element is not JSON: {exc.msg}") from None
    if not isinstance(d, dict):
        raise argparse.ArgumentTypeError('element must be a JSON object {"key": [coords], ...}')
    return d


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coring-lab", description="Grouplikes and cohomology of the coring A (x) H.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("instance", help="path to an instance JSON file")
    p.add_argument("--window", type=parse_window, help="degree window A..B for kZ (default from instance, else -3..3)")
    p.add_argument("--cap", type=int, help="enumeration cap (default from instance, else 4096)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON report (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="human-readable summary")
    p.add_argument("--x", type=parse_element, help='coring element as JSON, e.g. \'{"0": [1, 0]}\'')
    p.add_argument("--y", type=parse_element, help="second element for iso (default 1 (x) 1)")
    p.add_argument("--method", choices=("structured", "brute", "both"), default="structured",
                   help="grouplike solver for the grouplikes command")
    p.add_argument("--no-timing", action="store_true", help="omit the timing field")
    p.set_defaults(fmt="json")
    return p


def _join_window(argv: list[str]) -> list[str]:
    # "--window -2..2" would otherwise be read as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--window" and i + 1 < len(argv):
            out.append(f"--window={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


# --- helpers ----------------------------------------------------------------------

def _vec(F, v):
    return [F.to_json(c) for c in v]


def _gl_json(ctx: CoringCtx, g: Grouplike) -> dict:
    return {
        "element": element_json(ctx, g.element),
        "label": element_label(ctx, g.element),
        "invertible": g.invertible,
        "inverse": None if g.inverse is None else element_json(ctx, g.inverse),
    }


def _search(ctx: CoringCtx, window, cap) -> dict:
    if ctx.hopf.is_finite:
        return {"support": "all of H", "keys": len(ctx.hopf.keys()), "cap": cap, "exhaustive": True}
    return {"support": f"degrees {window[0]}..{window[1]}", "keys": window[1] - window[0] + 1,
            "cap": cap, "exhaustive": "within the window"}


def _element(ctx: CoringCtx, raw: dict, what: str):
    try:
        return ctx.element(raw)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{what}: {exc}") from None


def _require_dual(ctx, cmd):
    if not ctx.hopf.is_dual:
        raise UsageError(f"{cmd} needs H = k^G (dual variant); this instance is a grading over {ctx.hopf!r}")


def _require_graded(ctx, cmd):
    if not ctx.is_graded:
        raise UsageError(f"{cmd} needs a grading (group-basis variant); this instance is a k^G action")


def _targets(ctx, opts) -> list[Grouplike]:
    """--x if given, otherwise every invertible grouplike in range."""
    if opts.x is not None:
        X = _element(ctx, opts.x, "--x")
        ok, finding = ctx.is_grouplike(X)
        if not ok:
            raise UsageError(f"--x is not grouplike: {finding}")
        g = ctx.resolve(X, opts.window)
        if g.invertible != "yes":
            raise UsageError(f"--x has no inverse found (status {g.invertible})")
        return [g]
    return [g for g in enumerate_grouplikes(ctx, opts.window, opts.cap) if g.invertible == "yes"]


def _span_equal(F, u, v, n) -> bool:
    su, sv = span_basis(F, list(u), n), span_basis(F, list(v), n)
    return len(su) == len(sv) == len(span_basis(F, list(u) + list(v), n))


# --- commands -------------------------------------------------------------------------

def cmd_check(ctx: CoringCtx, opts) -> Outcome:
    A, H, co, F = ctx.algebra, ctx.hopf, ctx.coaction, ctx.field
    axioms = {
        "algebra": [f.to_dict() for f in validate_algebra(A)],
        "bialgebra": [f.to_dict() for f in validate_bialgebra(H, range(opts.window[0], opts.window[1] + 1))],
        "comodule_algebra": [f.to_dict() for f in validate_comodule_algebra(co)],
    }
    B = coinvariants(co)
    gal = galois_canonical_map(co)
    alg = {"dim": A.dim, "basis": list(A.names), "field": str(F)}
    if F.is_prime:
        alg.update({"size": A.size(), "units": len(A.units(opts.cap)),
                    "idempotents": len(A.idempotents(opts.cap)), "reduced": A.is_reduced(opts.cap)})
    ok = not any(axioms.values())
    res = {
        "algebra": alg,
        "hopf": repr(H),
        "coaction": co.kind,
        "axioms": {k: (v or "ok") for k, v in axioms.items()},
        "coinvariants": {"dim": B.dim, "basis": [_vec(F, b) for b in B.basis]},
        "galois": gal.to_dict(),
    }
    text = [f"A: dim {A.dim} over {F}; H = {H!r}; coaction by {co.kind}",
            f"axioms: {'all hold' if ok else 'VIOLATED'}",
            f"coinvariants B: dim {B.dim}",
            f"canonical map: rank {gal.rank} of {gal.domain_dim} -> {gal.codomain_dim}, "
            f"{'bijective (Galois)' if gal.bijective else 'not bijective'}"]
    return Outcome(res, ok, text)


def cmd_grouplikes(ctx: CoringCtx, opts) -> Outcome:
    window, cap = opts.window, opts.cap
    methods = ("structured", "brute") if opts.method == "both" else (opts.method,)
    found = {}
    for m in methods:
        found[m] = structured_grouplikes(ctx, window, cap) if m == "structured" else brute_force_grouplikes(ctx, window, cap)
    primary = found[methods[0]]
    rechecked = [X for X in primary if not ctx.is_grouplike(X)[0]]
    agree = len({tuple(v) for v in found.values()}) == 1
    gls = [ctx.resolve(X, window) for X in primary]
    counts = {s: sum(g.invertible == s for g in gls) for s in ("yes", "no", "unknown")}
    res = {
        "method": opts.method,
        "search": _search(ctx, window, cap),
        "count": len(gls),
        "invertible_counts": counts,
        "grouplikes": [_gl_json(ctx, g) for g in gls],
        "recheck_failures": [element_json(ctx, X) for X in rechecked],
    }
    if opts.method == "both":
        res["solvers_agree"] = agree
    text = [f"{len(gls)} grouplikes ({counts['yes']} invertible) over {res['search']['support']}"]
    text += [f"  {element_label(ctx, g.element)}   invertible: {g.invertible}" for g in gls]
    if opts.method == "both":
        text.append(f"structured and brute-force solvers agree: {agree}")
    return Outcome(res, not rechecked and agree, text)


def _h1_text(ctx, h1) -> list[str]:
    lines = [f"H^1 = {h1.presentation.describe()}"
             + ("  (subgroup generated by the window)" if h1.window_relative else ""),
             f"|G^i| = {len(h1.invertible_grouplikes)}, |Im d| = {len(h1.image_d)}, {len(h1.cosets)} cosets"]
    for rep, c, mem in h1.cosets:
        lines.append(f"  coset {list(c)}: {element_label(ctx, rep)}  ({len(mem)} members)")
    return lines


def cmd_h1(ctx: CoringCtx, opts) -> Outcome:
    h1 = harrison_h1(ctx, opts.window, opts.cap)
    res = h1.to_dict(ctx)
    res["search"] = _search(ctx, opts.window, opts.cap)
    res["image_d"] = [{"element": element_json(ctx, X), "units": [_vec(ctx.field, a) for a in us]}
                      for X, us in sorted(h1.image_d.items())]
    return Outcome(res, True, _h1_text(ctx, h1))


def cmd_group_h1(ctx: CoringCtx, opts) -> Outcome:
    _require_dual(ctx, "group-h1")
    g = group_h1(ctx, opts.cap)
    bridge = harrison_group_bridge(ctx, opts.cap)
    res = g.to_dict(ctx)
    res["search"] = {"maps": "all normalized G -> Gm(A)", "exhaustive": True, "cap": opts.cap}
    res["bridge_to_harrison"] = {"round_trip": bridge.round_trip, "coset_bijection": bridge.coset_bijection,
                                 "multiplicative": bridge.multiplicative,
                                 "same_invariants": bridge.same_invariants, "ok": bridge.ok}
    text = [f"H^1(G, Gm(A)) = {g.presentation.describe()}",
            f"{len(g.cocycles)} cocycles, {len(g.coboundaries)} coboundaries",
            f"agrees with the Harrison side: {bridge.ok}"]
    return Outcome(res, bridge.ok, text)


def cmd_hilbert90(ctx: CoringCtx, opts) -> Outcome:
    _require_dual(ctx, "hilbert90")
    rep = hilbert90_report(ctx, opts.cap)
    text = [f"Galois: {rep['galois']['bijective']}",
            f"Harrison H^1 = {rep['harrison_h1']['group']['structure']}, "
            f"group H^1 = {rep['group_h1']['group']['structure']}",
            f"expectation: {rep['expectation']}; holds: {rep['holds']}"]
    return Outcome(rep, rep["holds"], text)


def cmd_exact_report(ctx: CoringCtx, opts) -> Outcome:
    rep = exact_sequence_report(ctx, opts.window, opts.cap)
    res = rep.to_dict(ctx)
    res["search"] = _search(ctx, opts.window, opts.cap)
    text = [f"|Gm(B)| = {len(rep.units_B)}, |Gm(A)| = {len(rep.units_A)}, "
            f"|G^i| = {len(rep.invertible_grouplikes)}, |Im d| = {len(rep.image_d)}"]
    text += [f"  [{'ok' if j.ok else 'FAIL'}] {j.name}" for j in rep.joints]
    text += _h1_text(ctx, rep.h1)
    return Outcome(res, rep.ok, text)


def cmd_e_test(ctx: CoringCtx, opts) -> Outcome:
    window = opts.window
    targets = _targets(ctx, opts)
    verdicts = {}
    rows = []
    for g in targets:
        v = e_membership(ctx, g, window)
        verdicts[g.element] = (v.member, g)
        rows.append({"element": element_json(ctx, g.element), "label": element_label(ctx, g.element),
                     "in_E": v.member, "A.A_X = A": v.generates, "A.A_X^-1 = A": v.generates_inverse})
    members = [g for m, g in verdicts.values() if m]
    bad = []
    if opts.x is None:
        imd = image_of_d(ctx, opts.cap)
        for X, us in sorted(imd.items()):
            d = coboundary_d(ctx, us[0])
            if not e_membership(ctx, d, window).member:
                bad.append({"law": "Im(d) in E", "witness": element_json(ctx, X)})
        for g in members:
            inv = Grouplike(g.inverse, "yes", g.element)
            if not e_membership(ctx, inv, window).member:
                bad.append({"law": "inverse", "witness": element_json(ctx, g.element)})
            for h in members:
                prod = Grouplike(ctx.mul(g.element, h.element), "yes", ctx.mul(h.inverse, g.inverse))
                if not e_membership(ctx, prod, window).member:
                    bad.append({"law": "product", "witness": [element_json(ctx, g.element), element_json(ctx, h.element)]})
        laws = {"checked": ["Im(d) in E", "closed under inverse", "closed under product"],
                "pairs_checked": len(members) ** 2, "violations": bad}
    else:
        laws = None
    res = {"search": _search(ctx, window, opts.cap), "elements": rows,
           "E_size": len(members), "laws": laws}
    text = [f"{len(members)} of {len(rows)} invertible grouplikes lie in E"]
    text += [f"  {r['label']}: {'in E' if r['in_E'] else 'not in E'}" for r in rows]
    if laws is not None:
        text.append("subgroup laws: " + ("hold" if not bad else f"{len(bad)} violations"))
    return Outcome(res, not bad, text)


def cmd_twist(ctx: CoringCtx, opts) -> Outcome:
    F, n = ctx.field, ctx.algebra.dim
    rows, bad = [], []
    for g in _targets(ctx, opts):
        tc = twist_coinvariants(ctx, g, cap=opts.cap)
        mod = twisted_module_coinvariants(ctx, g)
        inv_twist = twist_coinvariants(ctx, g.inverse, cap=opts.cap).basis
        dual_ok = _span_equal(F, mod, inv_twist, n)
        if not dual_ok:
            bad.append(element_json(ctx, g.element))
        row = {"element": element_json(ctx, g.element), "label": element_label(ctx, g.element)}
        row.update(tc.to_dict(F))
        row["module_coinvariants"] = [_vec(F, b) for b in mod]
        row["module_coinvariants_equal_A_X_inverse"] = dual_ok
        rows.append(row)
    res = {"search": _search(ctx, opts.window, opts.cap), "twists": rows, "violations": bad}
    text = [f"  {r['label']}: dim A_X = {r['dim']}, unit: {r['has_unit']}, generates: {r['generates']}, "
            f"(A^X)^coH = A_(X^-1): {r['module_coinvariants_equal_A_X_inverse']}" for r in rows]
    return Outcome(res, not bad, text)


def cmd_iso(ctx: CoringCtx, opts) -> Outcome:
    if opts.x is None:
        raise UsageError("iso needs --x (and optionally --y, default 1 (x) 1)")
    X = _element(ctx, opts.x, "--x")
    Y = ctx.one() if opts.y is None else _element(ctx, opts.y, "--y")
    for name, Z in (("--x", X), ("--y", Y)):
        ok, finding = ctx.is_grouplike(Z)
        if not ok:
            raise UsageError(f"{name} is not grouplike: {finding}")
    w = twisted_iso_witness(ctx, X, Y, cap=opts.cap)
    res = {
        "x": element_json(ctx, X), "y": element_json(ctx, Y),
        "isomorphic": w.status,
        "witness_b": None if w.unit is None else _vec(ctx.field, w.unit),
        "solution_space_dim": w.solution_dim,
        "search": f"units among {ctx.field.p}^{w.solution_dim} solutions" if ctx.field.is_prime else "linear solve",
    }
    text = [f"A^X ~ A^Y: {w.status}" + (f", witness b = {res['witness_b']}" if w.unit else "")]
    return Outcome(res, True, text)


def cmd_idempotent_grouplikes(ctx: CoringCtx, opts) -> Outcome:
    _require_graded(ctx, "idempotent-grouplikes")
    A, F = ctx.algebra, ctx.field
    lo, hi = opts.window
    prims = degree_zero_primitive_idempotents(ctx, opts.cap)
    images = set()
    degrees = ctx.hopf.keys() if ctx.hopf.is_finite else range(lo, hi + 1)
    space = len(degrees) ** len(prims)
    if space > opts.cap:
        raise BoundExceeded(f"{space} degree maps exceeds the cap {opts.cap}")
    for degs in product(degrees, repeat=len(prims)):
        images.add(grouplike_from_idempotent_degrees(ctx, list(zip(prims, degs))).element)
    found = structured_grouplikes(ctx, opts.window, opts.cap)
    rows, outside = [], []
    for X in found:
        m = idempotent_degrees_of_grouplike(ctx, X)
        rows.append({"element": element_json(ctx, X), "label": element_label(ctx, X),
                     "degree_map": None if m is None else [{"idempotent": _vec(F, e), "degree": d} for e, d in m.pairs]})
        if m is None:
            outside.append(X)
    reduced = A.is_reduced(opts.cap)
    missing = images - set(found)
    bijective = not outside and not missing
    res = {
        "search": _search(ctx, opts.window, opts.cap),
        "primitive_idempotents": [_vec(F, e) for e in prims],
        "reduced": reduced,
        "bijection_expected": reduced and not ctx.hopf.is_finite,
        "degree_maps": len(images),
        "grouplikes": len(found),
        "bijective": bijective,
        "not_of_idempotent_form": [element_json(ctx, X) for X in outside],
        "elements": rows,
    }
    text = [f"{len(prims)} primitive idempotents, {len(images)} degree maps, {len(found)} grouplikes over "
            f"{res['search']['support']}; A {'reduced' if reduced else 'not reduced'}; bijective: {bijective}"]
    text += [f"  not of idempotent form: {element_label(ctx, X)}" for X in outside]
    # a theorem only for reduced A graded by Z; images must be grouplikes regardless
    theorem = reduced and not ctx.hopf.is_finite
    return Outcome(res, not missing and (bijective or not theorem), text)


HANDLERS: dict[str, Callable] = {
    "check": cmd_check, "grouplikes": cmd_grouplikes, "h1": cmd_h1, "group-h1": cmd_group_h1,
    "hilbert90": cmd_hilbert90, "exact-report": cmd_exact_report, "e-test": cmd_e_test,
    "twist": cmd_twist, "iso": cmd_iso, "idempotent-grouplikes": cmd_idempotent_grouplikes,
}


def run_command(inst: Instance, command: str, opts) -> tuple[dict, int, list[str]]:
    """Returns (report, exit code, text lines).  Raises UsageError and friends."""
    out = HANDLERS[command](inst.ctx, opts)
    code = 0 if out.ok else 1
    report = {
        "tool": f"coring-lab {__version__}",
        "command": command,
        "instance": {"name": inst.name, "sha256": inst.sha256},
        "options": {"window": list(opts.window), "cap": opts.cap},
        "verdict": "ok" if out.ok else "property violation",
        "exit_code": code,
        "result": out.result,
    }
    return report, code, out.text


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        opts = parser.parse_args(_join_window(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        inst = load_instance(opts.instance)
    except FileNotFoundError:
        print(f"error: no such file: {opts.instance}", file=sys.stderr)
        return 2
    except InstanceError as exc:
        print(f"error: invalid instance {exc}", file=sys.stderr)
        return 2
    opts.window = tuple(opts.window or inst.window)
    opts.cap = opts.cap if opts.cap is not None else inst.cap
    try:
        report, code, text = run_command(inst, opts.command, opts)
    except (UsageError, NotEnumerable, BoundExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start
    if opts.fmt == "text":
        print(f"{opts.command} on {inst.name}: {report['verdict']}")
        for line in text:
            print(line)
    else:
        if not opts.no_timing:
            report["timing"] = {"seconds": round(elapsed, 6)}
        print(json.dumps(report, indent=2, ensure_ascii=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
