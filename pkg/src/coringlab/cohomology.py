"""Coboundaries and twisted coinvariants, plus first cohomology computed both
from grouplikes and from group cocycles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from sympy import Matrix as SymMatrix

from .abgroup import (AbGroupPresentation, coordinates, finite_quotient,
                      invariants_from_relations)
from .checks import AxiomError, BoundExceeded, Finding, NotEnumerable
from .comodule import coinvariants, galois_canonical_map, solve_in_A
from .coring import (DEFAULT_CAP, CoringCtx, CoringElement, Grouplike,
                     invertible_grouplikes)
from .exactfield import in_span, span_basis


def _as_element(ctx: CoringCtx, X) -> CoringElement:
    if isinstance(X, Grouplike):
        return X.element
    return ctx.element(X)


def _inverse(ctx: CoringCtx, X, window=None) -> CoringElement:
    if isinstance(X, Grouplike) and X.inverse is not None:
        return X.inverse
    status, inv = ctx.try_invert(_as_element(ctx, X), window)
    if status != "yes":
        raise ValueError(f"inverse is {status} within the window")
    return inv


# --- the coboundary map ------------------------------------------------------

def coboundary_d(ctx: CoringCtx, a) -> Grouplike:
    """d(a) = a^{-1} a_[0] (x) a_[1], with inverse a (a^{-1})_[0] (x) (a^{-1})_[1]."""
    A, co = ctx.algebra, ctx.coaction
    a = A.element(a)
    ainv = A.try_invert(a)
    if ainv is None:
        raise ValueError(f"{a} is not a unit")
    X = CoringElement(co.left(ainv, co.rho(a)))
    inv = CoringElement(co.left(a, co.rho(ainv)))
    return Grouplike(X, "yes", inv)


def image_of_d(ctx: CoringCtx, cap: int = DEFAULT_CAP) -> dict:
    """{d(a): [units a with that image]} over all units of A."""
    out = {}
    for a in ctx.algebra.units(cap):
        out.setdefault(coboundary_d(ctx, a).element, []).append(a)
    return out


# --- twisted coinvariants ------------------------------------------------------------

def _first_unit(ctx: CoringCtx, basis, cap: int, witnesses=None):
    """("yes", unit) / ("no", None) / ("unknown", None) for a unit in span(basis)."""
    A, F = ctx.algebra, ctx.field
    if witnesses:
        for w in witnesses:
            w = A.element(w)
            if A.is_unit(w) and in_span(F, basis, w):
                return "yes", w
    if not basis:
        return "no", None
    if not F.is_prime or F.p ** len(basis) > cap:
        return "unknown", None
    for v in sorted(F.combinations(basis, A.dim)):
        if A.is_unit(v):
            return "yes", v
    return "no", None


@dataclass(frozen=True)
class TwistCoinvariants:
    element: CoringElement
    basis: tuple
    has_unit: str
    unit: tuple | None
    generates: bool

    def to_dict(self, F):
        return {
            "basis": [[F.to_json(c) for c in b] for b in self.basis],
            "dim": len(self.basis),
            "has_unit": self.has_unit,
            "unit": None if self.unit is None else [F.to_json(c) for c in self.unit],
            "generates": self.generates,
        }


def generates(ctx: CoringCtx, basis) -> bool:
    """Whether A . span(basis) = A."""
    A = ctx.algebra
    prods = [A.mul(A.basis(i), b) for i in range(A.dim) for b in basis]
    return len(span_basis(ctx.field, prods, A.dim)) == A.dim


def twist_coinvariants(ctx: CoringCtx, X, witnesses=None, cap: int = DEFAULT_CAP) -> TwistCoinvariants:
    """A_X = {a : rho(a) = a X}."""
    co = ctx.coaction
    X = _as_element(ctx, X)
    Xd = X.as_dict()
    basis = tuple(solve_in_A(co, lambda a: co.sub(co.rho(a), co.left(a, Xd))))
    status, unit = _first_unit(ctx, basis, cap, witnesses)
    return TwistCoinvariants(X, basis, status, unit, generates(ctx, basis))


def twisted_module_coinvariants(ctx: CoringCtx, X) -> tuple:
    """Coinvariants of A^X, i.e. {a : X rho(a) = a (x) 1}."""
    co = ctx.coaction
    Xd = _as_element(ctx, X).as_dict()
    one_h = ctx.hopf.unit()
    return tuple(solve_in_A(co, lambda a: co.sub(co.mul(Xd, co.rho(a)), co.pure(a, one_h))))


@dataclass(frozen=True)
class IsoWitness:
    status: str  # "yes" | "no" | "unknown"
    unit: tuple | None
    solution_dim: int


def twisted_iso_witness(ctx: CoringCtx, X, Y=None, witnesses=None, cap: int = DEFAULT_CAP) -> IsoWitness:
    """An invertible b with Y b = b X, i.e. Y rho(b) = (b (x) 1) X."""
    co = ctx.coaction
    Xd = _as_element(ctx, X).as_dict()
    Yd = (ctx.one() if Y is None else _as_element(ctx, Y)).as_dict()
    basis = solve_in_A(co, lambda b: co.sub(co.mul(Yd, co.rho(b)), co.left(b, Xd)))
    status, unit = _first_unit(ctx, basis, cap, witnesses)
    return IsoWitness(status, unit, len(basis))


@dataclass(frozen=True)
class EVerdict:
    member: bool
    generates: bool
    generates_inverse: bool


def e_membership(ctx: CoringCtx, X, window=None) -> EVerdict:
    """X is in E iff A A_X = A and A A_{X^{-1}} = A."""
    co = ctx.coaction
    Xe = _as_element(ctx, X)
    Xi = _inverse(ctx, X, window)
    g1 = generates(ctx, solve_in_A(co, lambda a: co.sub(co.rho(a), co.left(a, Xe.as_dict()))))
    g2 = generates(ctx, solve_in_A(co, lambda a: co.sub(co.rho(a), co.left(a, Xi.as_dict()))))
    return EVerdict(g1 and g2, g1, g2)


# --- Harrison H^1 --------------------------------------------------------------------

@dataclass
class H1Result:
    presentation: AbGroupPresentation
    cosets: list  # [(representative, coords, members)]
    invertible_grouplikes: list
    image_d: dict
    window: tuple | None
    window_relative: bool
    coords: dict = field(default_factory=dict)

    def to_dict(self, ctx: CoringCtx):
        return {
            "group": self.presentation.to_dict(),
            "window": list(self.window) if self.window else None,
            "window_relative": self.window_relative,
            "num_invertible_grouplikes": len(self.invertible_grouplikes),
            "num_image_d": len(self.image_d),
            "cosets": [
                {"representative": element_json(ctx, rep), "coords": list(c),
                 "members": [element_json(ctx, m) for m in mem]}
                for rep, c, mem in self.cosets
            ],
        }


def element_json(ctx: CoringCtx, X: CoringElement) -> dict:
    F = ctx.field
    return {str(k): [F.to_json(c) for c in a] for k, a in X.terms}


def _require_prime(ctx):
    if not ctx.field.is_prime:
        raise NotEnumerable("cohomology is enumerated over prime fields only")


def harrison_h1(ctx: CoringCtx, window=None, cap: int = DEFAULT_CAP) -> H1Result:
    """G^i(A (x) H) / Im(d) with coset representatives.

    Over kZ only grouplikes supported in the window are seen; the result is
    the subgroup of H^1 they generate.
    """
    _require_prime(ctx)
    gi = [g.element for g in invertible_grouplikes(ctx, window, cap)]
    imd = image_of_d(ctx, cap)
    if ctx.hopf.is_finite:
        q = finite_quotient(gi, list(imd), ctx.mul, ctx.one(), label=lambda X: element_label(ctx, X))
        return H1Result(q.presentation, q.cosets, gi, imd, None, False, q.coords)
    return _graded_h1(ctx, gi, imd, window, cap)


def element_label(ctx: CoringCtx, X: CoringElement) -> str:
    A, H = ctx.algebra, ctx.hopf
    parts = []
    for k, a in X.terms:
        coeff = "+".join(
            (A.names[i] if c == 1 else f"{ctx.field.to_json(c)}*{A.names[i]}")
            for i, c in enumerate(a) if c
        )
        parts.append(f"({coeff})(x){H.key_label(k)}")
    return " + ".join(parts) or "0"


def degree_vector(ctx: CoringCtx, X: CoringElement, prims) -> tuple:
    """For each primitive idempotent e, the unique degree k with a_k e a unit of Ae."""
    A = ctx.algebra
    out = []
    for e in prims:
        hits = [k for k, a in X.terms if A.is_unit(A.add(A.mul(a, e), A.sub(A.one, e)))]
        if len(hits) != 1:
            raise AssertionError(f"{X!r} has {len(hits)} unit components on idempotent {e}")
        out.append(hits[0])
    return tuple(out)


def section(ctx: CoringCtx, prims, degrees) -> CoringElement:
    """sum_i e_i (x) X^{d_i}."""
    A = ctx.algebra
    acc = {}
    for e, d in zip(prims, degrees):
        acc[d] = A.add(acc[d], e) if d in acc else e
    return CoringElement(acc)


def _graded_h1(ctx: CoringCtx, gi, imd, window, cap) -> H1Result:
    from .coring import DEFAULT_WINDOW

    window = tuple(window or DEFAULT_WINDOW)
    A, co = ctx.algebra, ctx.coaction
    prims = A.primitive_idempotents(cap)
    for e in prims:
        if co.rho(e) != co.pure(e, ctx.hopf.unit()):
            raise AssertionError(f"primitive idempotent {e} is not of degree 0")
    one = ctx.one()
    deg = {X: degree_vector(ctx, X, prims) for X in gi}
    tors = {X: ctx.mul(X, section(ctx, prims, [-d for d in deg[X]])) for X in gi}

    # closure of the degree-zero parts together with Im(d)
    closure = {one}
    frontier = [one]
    seeds = list(dict.fromkeys(list(tors.values()) + sorted(imd)))
    while frontier:
        nxt = []
        for x in frontier:
            for s in seeds:
                y = ctx.mul(x, s)
                if y not in closure:
                    closure.add(y)
                    nxt.append(y)
                    if len(closure) > cap:
                        raise BoundExceeded("degree-zero part of the window is not a small finite group")
        frontier = nxt
    order = list(dict.fromkeys([one] + [tors[X] for X in gi] + sorted(closure)))
    tq = finite_quotient(order, list(imd), ctx.mul, one, label=lambda X: element_label(ctx, X))

    # the degree lattice spanned by the window
    vecs = [list(deg[X]) for X in gi]
    r = len(prims)
    diag, V = invariants_from_relations(vecs, r) if vecs else ([0] * r, [[int(i == j) for j in range(r)] for i in range(r)])
    rows = len(vecs)
    lattice_idx = [i for i in range(min(rows, r)) if diag[i] != 0]
    Vinv = SymMatrix(V).inv()
    basis = [[int(diag[i] * Vinv[i, j]) for j in range(r)] for i in lattice_idx]

    def lattice_coords(v):
        return tuple(sum(x * V[k][i] for k, x in enumerate(v)) // diag[i] for i in lattice_idx)

    free_labels = [element_label(ctx, section(ctx, prims, b)) for b in basis]
    ntors = len(tq.generators)
    rels = [tuple([0] * len(basis)) + tuple(rel) for rel in tq.presentation.relations]
    pres = AbGroupPresentation(
        tuple(free_labels) + tq.presentation.generators,
        tuple(rels),
        tuple(d for d in tq.presentation.invariants) + (0,) * len(basis),
    )
    coords = {X: lattice_coords(deg[X]) + tq.coords[tors[X]] for X in gi}
    groups = {}
    for X in gi:
        groups.setdefault(coords[X], []).append(X)
    cosets = sorted(((one if one in m else min(m), c, sorted(m)) for c, m in groups.items()),
                    key=lambda t: t[1])
    return H1Result(pres, cosets, gi, imd, window, True, coords)


# --- Sweedler cocycles and group cohomology ----------------------------------------------

@dataclass(frozen=True)
class SweedlerCocycle:
    values: tuple  # phi(g) for g in group order

    def check(self, ctx: CoringCtx) -> list[Finding]:
        A, G, co = ctx.algebra, ctx.hopf.group, ctx.coaction
        out = []
        if self.values[G.e] != A.one:
            out.append(Finding("normalized", (G.e,)))
        for g in G.elements():
            for h in G.elements():
                lhs = self.values[G.op(g, h)]
                rhs = A.mul(co.act(g, self.values[h]), self.values[g])
                if lhs != rhs:
                    out.append(Finding("cocycle", (g, h)))
        return out


def _require_dual(ctx):
    if not ctx.hopf.is_dual:
        raise ValueError("Sweedler cocycles need H = k^G with a group action")


def sweedler_of_grouplike(ctx: CoringCtx, X) -> SweedlerCocycle:
    """phi(g) = coefficient of p_g in X."""
    _require_dual(ctx)
    X = _as_element(ctx, X)
    d = X.as_dict()
    phi = SweedlerCocycle(tuple(d.get(g, ctx.algebra.zero) for g in ctx.hopf.keys()))
    problems = phi.check(ctx)
    if problems:
        raise AxiomError(problems[0])
    return phi


def grouplike_of_sweedler(ctx: CoringCtx, phi: SweedlerCocycle | Sequence) -> CoringElement:
    """X = sum_g phi(g) (x) p_g."""
    _require_dual(ctx)
    values = phi.values if isinstance(phi, SweedlerCocycle) else tuple(ctx.algebra.element(v) for v in phi)
    return CoringElement(zip(ctx.hopf.keys(), values))


@dataclass
class GroupH1Result:
    presentation: AbGroupPresentation
    cocycles: list
    coboundaries: list
    cosets: list
    coords: dict

    def to_dict(self, ctx):
        F = ctx.field
        js = lambda phi: [[F.to_json(c) for c in v] for v in phi]
        return {
            "group": self.presentation.to_dict(),
            "num_cocycles": len(self.cocycles),
            "num_coboundaries": len(self.coboundaries),
            "cosets": [{"representative": js(rep), "coords": list(c), "members": [js(m) for m in mem]}
                       for rep, c, mem in self.cosets],
        }


def group_h1(ctx: CoringCtx, cap: int = DEFAULT_CAP) -> GroupH1Result:
    """H^1(G, G_m(A)) by brute force over all normalized maps G -> units."""
    _require_dual(ctx)
    _require_prime(ctx)
    A, G, co = ctx.algebra, ctx.hopf.group, ctx.coaction
    units = A.units(cap)
    rest = [g for g in G.elements() if g != G.e]
    if len(units) ** len(rest) > cap:
        raise BoundExceeded(f"{len(units) ** len(rest)} candidate maps exceeds the cap {cap}")
    cocycles = []
    for vals in product(units, repeat=len(rest)):
        table = dict(zip(rest, vals))
        table[G.e] = A.one
        phi = tuple(table[g] for g in G.elements())
        if all(phi[G.op(g, h)] == A.mul(co.act(g, phi[h]), phi[g])
               for g in G.elements() for h in G.elements()):
            cocycles.append(phi)
    cocycles.sort()
    boundaries = sorted({tuple(A.mul(A.try_invert(b), co.act(g, b)) for g in G.elements()) for b in units})

    def pmul(x, y):
        return tuple(A.mul(a, b) for a, b in zip(x, y))

    one = tuple(A.one for _ in G.elements())
    q = finite_quotient(cocycles, boundaries, pmul, one, label=lambda phi: str([list(v) for v in phi]))
    return GroupH1Result(q.presentation, cocycles, boundaries, q.cosets, q.coords)


@dataclass
class BridgeReport:
    round_trip: bool
    coset_bijection: bool
    multiplicative: bool
    same_invariants: bool

    @property
    def ok(self):
        return self.round_trip and self.coset_bijection and self.multiplicative and self.same_invariants


def harrison_group_bridge(ctx: CoringCtx, cap: int = DEFAULT_CAP) -> BridgeReport:
    """Compare the two H^1 computations through X <-> phi."""
    h = harrison_h1(ctx, cap=cap)
    g = group_h1(ctx, cap)
    trip = all(grouplike_of_sweedler(ctx, sweedler_of_grouplike(ctx, X)) == X for X in h.invertible_grouplikes)
    trip = trip and all(sweedler_of_grouplike(ctx, grouplike_of_sweedler(ctx, p)).values == p for p in g.cocycles)
    phi = {X: sweedler_of_grouplike(ctx, X).values for X in h.invertible_grouplikes}
    gcoset = {}
    for _, c, mem in g.cosets:
        for p in mem:
            gcoset[p] = c
    images = {}
    bij = True
    for _, c, mem in h.cosets:
        targets = {gcoset.get(phi[X]) for X in mem}
        if len(targets) != 1 or None in targets:
            bij = False
            break
        images[c] = targets.pop()
    bij = bij and len(set(images.values())) == len(g.cosets) == len(h.cosets)
    mult = bij
    if bij:
        reps = {c: rep for rep, c, _ in h.cosets}
        for c1, r1 in reps.items():
            for c2, r2 in reps.items():
                prod = ctx.mul(r1, r2)
                pg = tuple(ctx.algebra.mul(a, b) for a, b in zip(phi[r1], phi[r2]))
                if images[h.coords[prod]] != g.coords[pg]:
                    mult = False
    same = h.presentation.invariants == g.presentation.invariants
    return BridgeReport(trip, bij, mult, same)


# --- Hilbert 90 and the exact sequence -----------------------------------------------------

def hilbert90_report(ctx: CoringCtx, cap: int = DEFAULT_CAP) -> dict:
    """Galois test plus H^1; over a Galois extension H^1 must be trivial."""
    _require_dual(ctx)
    gal = galois_canonical_map(ctx.coaction)
    h1 = harrison_h1(ctx, cap=cap)
    gh1 = group_h1(ctx, cap)
    trivial = h1.presentation.is_trivial
    return {
        "galois": gal.to_dict(),
        "harrison_h1": h1.to_dict(ctx),
        "group_h1": gh1.to_dict(ctx),
        "h1_trivial": trivial,
        "group_h1_trivial": gh1.presentation.is_trivial,
        "expectation": "H^1 trivial" if gal.bijective else "none (not Galois)",
        "holds": (trivial and gh1.presentation.is_trivial) if gal.bijective else True,
    }


@dataclass
class Joint:
    name: str
    ok: bool
    witness: object = None
    checked: int = 0

    def to_dict(self):
        return {"name": self.name, "ok": self.ok, "checked": self.checked, "witness": self.witness}


@dataclass
class ExactSequenceReport:
    units_B: list
    units_A: list
    invertible_grouplikes: list
    image_d: dict
    h1: H1Result
    joints: list
    window: tuple | None

    @property
    def ok(self) -> bool:
        return all(j.ok for j in self.joints)

    def to_dict(self, ctx):
        F = ctx.field
        return {
            "orders": {
                "Gm(B)": len(self.units_B),
                "Gm(A)": len(self.units_A),
                "G^i(A(x)H)": len(self.invertible_grouplikes),
                "Im(d)": len(self.image_d),
            },
            "window": list(self.window) if self.window else None,
            "units_B": [[F.to_json(c) for c in u] for u in self.units_B],
            "h1": self.h1.to_dict(ctx),
            "joints": [j.to_dict() for j in self.joints],
            "all_joints_pass": self.ok,
        }


def exact_sequence_report(ctx: CoringCtx, window=None, cap: int = DEFAULT_CAP) -> ExactSequenceReport:
    """Checks 1 -> Gm(B) -> Gm(A) -> G^i(A(x)H) at both inner joints and Im(d) in E."""
    _require_prime(ctx)
    A = ctx.algebra
    B = coinvariants(ctx.coaction)
    units_A = A.units(cap)
    units_B = B.units(cap)
    one = ctx.one()
    h1 = harrison_h1(ctx, window, cap)
    gi = h1.invertible_grouplikes
    imd = h1.image_d
    joints = []

    kernel = [a for a in units_A if coboundary_d(ctx, a).element == one]
    bad = sorted(set(kernel) ^ set(units_B))
    joints.append(Joint("exact at Gm(A): ker d = Gm(B)", not bad,
                        [list(x) for x in bad] or f"{len(units_A)} units checked", len(units_A)))

    bad = []
    for X in imd:
        ok, _ = ctx.is_grouplike(X)
        if not ok or ctx.mul(X, coboundary_d(ctx, imd[X][0]).inverse) != one:
            bad.append(element_json(ctx, X))
    joints.append(Joint("Im(d) consists of invertible grouplikes", not bad,
                        bad or f"{len(imd)} images checked", len(imd)))

    bad = []
    for X in gi:
        wit = twisted_iso_witness(ctx, X, None, cap=cap)
        if (wit.status == "yes") != (X in imd):
            bad.append(element_json(ctx, X))
    joints.append(Joint("exact at G^i: X in Im(d) iff A^X ~ A", not bad,
                        bad or f"{len(gi)} grouplikes checked exhaustively", len(gi)))

    bad = [element_json(ctx, X) for X in imd if not e_membership(ctx, Grouplike(X, "yes", coboundary_d(ctx, imd[X][0]).inverse)).member]
    joints.append(Joint("Im(d) contained in E", not bad, bad or f"{len(imd)} images checked", len(imd)))

    return ExactSequenceReport(units_B, units_A, gi, imd, h1, joints, h1.window)
