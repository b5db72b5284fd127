"""JSON instance files.

    {
      "name": "f4_frobenius",
      "field": {"kind": "prime", "p": 2},
      "algebra": {"preset": "fp_field_ext", "modulus": [1, 1, 1]},
      "hopf": {"variant": "dual", "group": {"preset": "cyclic", "n": 2}},
      "coaction": {"action": [[[1, 0], [0, 1]], [[1, 1], [0, 1]]]},
      "bounds": {"window": [-3, 3], "cap": 4096}
    }

Algebra presets: ``field``, ``dual_numbers``, ``truncated_poly`` (``k``),
``poly_quotient`` / ``fp_field_ext`` (``modulus``, low degree first),
``product_of_fields`` (``n``); or raw ``{"basis", "mult", "unit"}``.
Group presets: ``Z``, ``cyclic`` (``n``), ``product`` (``factors``), or a
raw ``{"table", "identity"}``.  The coaction is ``{"degrees": [...]}``
for kM, ``{"action": [matrix per group element]}`` or
``{"trivial": true}`` for k^G.  Action matrices hold g.e_j in column j.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from . import algebra as alg
from .checks import AxiomError
from .comodule import coaction_from_action, coaction_from_grading, trivial_action
from .coring import DEFAULT_CAP, DEFAULT_WINDOW, CoringCtx
from .exactfield import FieldSpec
from .hopf import GroupSpec, make_dual_group_hopf, make_group_basis_hopf, validate_bialgebra


class InstanceError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class Instance:
    name: str
    ctx: CoringCtx
    window: tuple
    cap: int
    sha256: str
    raw: dict


def _get(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise InstanceError(where, f"missing field {key!r}")
    return d[key]


def parse_field(spec) -> FieldSpec:
    kind = _get(spec, "kind", "field")
    try:
        if kind in ("prime", "prime-field", "Fp"):
            return FieldSpec.prime(int(_get(spec, "p", "field")))
        if kind in ("rationals", "Q"):
            return FieldSpec.rationals()
    except ValueError as exc:
        raise InstanceError("field", str(exc)) from None
    raise InstanceError("field.kind", f"unknown field kind {kind!r}")


def parse_algebra(F: FieldSpec, spec) -> alg.FinAlgebra:
    where = "algebra"
    try:
        if "preset" in spec:
            p = spec["preset"]
            if p == "field":
                return alg.base_field(F)
            if p == "dual_numbers":
                return alg.dual_numbers(F)
            if p == "truncated_poly":
                return alg.truncated_poly(F, int(_get(spec, "k", where)))
            if p == "poly_quotient":
                return alg.poly_quotient(F, _get(spec, "modulus", where))
            if p == "fp_field_ext":
                return alg.fp_field_ext(F, _get(spec, "modulus", where))
            if p == "product_of_fields":
                return alg.product_of_fields(F, int(_get(spec, "n", where)))
            raise InstanceError("algebra.preset", f"unknown preset {p!r}")
        mult = _get(spec, "mult", where)
        A = alg.FinAlgebra(F, mult, _get(spec, "unit", where), tuple(spec.get("basis", ())))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(where, str(exc)) from None
    problems = alg.validate_algebra(A)
    if problems:
        raise InstanceError("algebra.mult", str(problems[0]))
    return A


def parse_group(spec, where="hopf.group") -> GroupSpec:
    if "preset" in spec:
        p = spec["preset"]
        if p == "Z":
            return GroupSpec.integers()
        if p == "cyclic":
            return GroupSpec.cyclic(int(_get(spec, "n", where)))
        if p == "product":
            factors = [parse_group(f, f"{where}.factors[{i}]") for i, f in enumerate(_get(spec, "factors", where))]
            G = factors[0]
            for H in factors[1:]:
                G = G.direct_product(H)
            return G
        raise InstanceError(f"{where}.preset", f"unknown group preset {p!r}")
    return GroupSpec.from_table(_get(spec, "table", where), int(spec.get("identity", 0)), spec.get("name", ""))


def build_context(raw: dict) -> CoringCtx:
    F = parse_field(_get(raw, "field", "instance"))
    A = parse_algebra(F, _get(raw, "algebra", "instance"))
    hspec = _get(raw, "hopf", "instance")
    G = parse_group(_get(hspec, "group", "hopf"))
    variant = _get(hspec, "variant", "hopf")
    try:
        if variant == "dual":
            H = make_dual_group_hopf(F, G)
        elif variant == "group":
            H = make_group_basis_hopf(F, G)
        else:
            raise InstanceError("hopf.variant", f"unknown variant {variant!r}")
    except AxiomError as exc:
        raise InstanceError("hopf.group", str(exc)) from None
    except InstanceError:
        raise
    except ValueError as exc:
        raise InstanceError("hopf", str(exc)) from None
    problems = validate_bialgebra(H)
    if problems:
        raise InstanceError("hopf", str(problems[0]))

    cspec = _get(raw, "coaction", "instance")
    try:
        if "degrees" in cspec:
            co = coaction_from_grading(A, H, cspec["degrees"])
        elif "action" in cspec:
            co = coaction_from_action(A, H, cspec["action"])
        elif cspec.get("trivial"):
            if H.is_dual:
                co = trivial_action(A, H)
            else:
                co = coaction_from_grading(A, H, [H.group.e] * A.dim)
        else:
            raise InstanceError("coaction", "expected 'degrees', 'action' or 'trivial'")
    except AxiomError as exc:
        key = "degrees" if "degrees" in cspec else "action"
        raise InstanceError(f"coaction.{key}", str(exc)) from None
    except InstanceError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise InstanceError("coaction", str(exc)) from None
    try:
        return CoringCtx(co)
    except AxiomError as exc:
        raise InstanceError("coaction", str(exc)) from None


def load_instance(path) -> Instance:
    path = Path(path)
    data = path.read_bytes()
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path.name}:{exc.lineno}:{exc.colno}", exc.msg) from None
    ctx = build_context(raw)
    bounds = raw.get("bounds", {})
    window = tuple(bounds.get("window", DEFAULT_WINDOW))
    cap = int(bounds.get("cap", DEFAULT_CAP))
    name = raw.get("name", path.stem)
    return Instance(name, ctx, window, cap, hashlib.sha256(data).hexdigest(), raw)


def fixtures_dir() -> Path:
    return Path(__file__).parent / "fixtures"


def fixture_paths() -> list[Path]:
    return sorted(fixtures_dir().glob("*.json"))
