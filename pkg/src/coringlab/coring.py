"""The coring C = A (x) H: grouplike arithmetic and enumeration, with the
idempotent/degree picture of grouplikes over kZ.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .checks import AxiomError, BoundExceeded, Finding, NotEnumerable
from .comodule import Coaction, _put, validate_comodule_algebra
from .exactfield import Matrix, solve_linear

log = logging.getLogger(__name__)

DEFAULT_WINDOW = (-3, 3)
DEFAULT_CAP = 4096
DEFAULT_NODES = 2_000_000


class CoringElement:
    """A finitely supported map from H-basis keys to elements of A.

    Stored zero-pruned with keys sorted, so ``==`` is coordinatewise equality.
    """

    __slots__ = ("terms",)

    def __init__(self, mapping: Mapping | Iterable = ()):
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        acc = {}
        for k, v in items:
            if k in acc:
                raise ValueError(f"duplicate key {k!r}")
            acc[k] = tuple(v)
        self.terms = tuple(sorted((k, v) for k, v in acc.items() if any(v)))

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def support(self) -> tuple:
        return tuple(k for k, _ in self.terms)

    def coefficient(self, key, dim: int):
        return self.as_dict().get(key, (0,) * dim)

    def sort_key(self):
        return self.terms

    def __eq__(self, other):
        return isinstance(other, CoringElement) and self.terms == other.terms

    def __lt__(self, other):
        return self.terms < other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return f"CoringElement({dict(self.terms)})"


@dataclass(frozen=True)
class Grouplike:
    element: CoringElement
    invertible: str  # "yes" | "no" | "unknown"
    inverse: CoringElement | None = None


@dataclass(frozen=True)
class IdempotentDegreeMap:
    """Orthogonal idempotents summing to 1, each with a degree in Z (or M)."""

    pairs: tuple  # ((idempotent, degree), ...)

    def normal_form(self, F) -> "IdempotentDegreeMap":
        merged = {}
        for e, d in self.pairs:
            merged[d] = F.vadd(merged[d], e) if d in merged else tuple(e)
        return IdempotentDegreeMap(tuple(sorted(((e, d) for d, e in merged.items()), key=lambda p: p[1])))

    def to_dict(self):
        return [{"idempotent": list(e), "degree": d} for e, d in self.pairs]


class CoringCtx:
    """Bundles a validated coaction with the coring operations on A (x) H."""

    def __init__(self, coaction: Coaction, check: bool = True):
        if check:
            problems = validate_comodule_algebra(coaction)
            if problems:
                raise AxiomError(problems[0])
        self.coaction = coaction
        self.algebra = coaction.algebra
        self.hopf = coaction.hopf
        self.field = coaction.field

    @property
    def is_graded(self) -> bool:
        return self.coaction.kind == "grading"

    def element(self, mapping) -> CoringElement:
        if isinstance(mapping, CoringElement):
            return mapping
        A = self.algebra
        return CoringElement({int(k): A.element(v) for k, v in dict(mapping).items()})

    def one(self) -> CoringElement:
        return CoringElement(self.coaction.one())

    def pure(self, a, key) -> CoringElement:
        return CoringElement({key: a})

    def mul(self, X: CoringElement, Y: CoringElement) -> CoringElement:
        return CoringElement(self.coaction.mul(X.as_dict(), Y.as_dict()))

    def counit(self, X: CoringElement):
        A, H = self.algebra, self.hopf
        s = A.zero
        for k, a in X.terms:
            s = A.add(s, A.scale(H.counit(k), a))
        return s

    def comultiply(self, X: CoringElement) -> dict:
        """Delta_C(X) in A (x) H (x) H: sum a (x) h_(1) (x) h_(2)."""
        A, F = self.algebra, self.field
        out = {}
        for k, a in X.terms:
            for pair, c in self.hopf.comul(k).items():
                _put(out, pair, A.scale(c, a), F)
        return out

    def square(self, X: CoringElement) -> dict:
        """X (x)_A X moved into A (x) H (x) H: sum_{i,j} a_i a_j[0] (x) h_i a_j[1] (x) h_j."""
        co, F = self.coaction, self.field
        Xd = X.as_dict()
        out = {}
        for kj, aj in X.terms:
            for k1, v in co.mul(Xd, co.rho(aj)).items():
                _put(out, (k1, kj), v, F)
        return out

    def is_grouplike(self, X: CoringElement) -> tuple[bool, Finding | None]:
        eps = self.counit(X)
        if eps != self.algebra.one:
            return False, Finding("counit", (), f"sum a_i eps(h_i) = {eps}")
        lhs, rhs = self.comultiply(X), self.square(X)
        if lhs != rhs:
            bad = min(k for k in set(lhs) | set(rhs) if lhs.get(k) != rhs.get(k))
            return False, Finding("comultiplication", bad,
                                  f"Delta(X) has {lhs.get(bad)} but X(x)X has {rhs.get(bad)}")
        return True, None

    # inverses

    def inverse_keys(self, X: CoringElement, window=None) -> list:
        if self.hopf.is_finite:
            return list(self.hopf.keys())
        lo, hi = window or DEFAULT_WINDOW
        lo, hi = min(lo, -hi), max(hi, -lo)
        return list(range(lo, hi + 1))

    def try_invert(self, X: CoringElement, window=None) -> tuple[str, CoringElement | None]:
        """Solve X Y = 1 (x) 1 for Y supported on the candidate keys.

        Over k^G and finite kG the candidate set is everything, so a failed
        solve is a definite "no"; over kZ the candidates are the window
        together with its negation and failure is only "unknown".
        """
        A, F, co = self.algebra, self.field, self.coaction
        keys = self.inverse_keys(X, window)
        Xd = X.as_dict()
        cols = []
        for k in keys:
            for t in range(A.dim):
                cols.append(co.mul(Xd, {k: A.basis(t)}))
        target = co.one()
        rows_keys = co.coord_keys(target, *cols)
        rows = [tuple(c[r][s] if r in c else F.zero for c in cols) for r in rows_keys for s in range(A.dim)]
        rhs = [target[r][s] if r in target else F.zero for r in rows_keys for s in range(A.dim)]
        sol = solve_linear(Matrix(F, tuple(rows), len(cols)), rhs)
        if not sol.solvable:
            return ("no" if self.hopf.is_finite else "unknown"), None
        x = sol.particular
        inv = CoringElement({k: x[i * A.dim:(i + 1) * A.dim] for i, k in enumerate(keys)})
        return "yes", inv

    def resolve(self, X: CoringElement, window=None) -> Grouplike:
        status, inv = self.try_invert(X, window)
        return Grouplike(X, status, inv)

    def __repr__(self):
        return f"CoringCtx({self.coaction!r})"


def is_grouplike(ctx: CoringCtx, X) -> tuple[bool, Finding | None]:
    return ctx.is_grouplike(ctx.element(X))


def coring_mul(ctx: CoringCtx, X, Y) -> CoringElement:
    return ctx.mul(ctx.element(X), ctx.element(Y))


def try_invert_coring(ctx: CoringCtx, X, window=None):
    return ctx.try_invert(ctx.element(X), window)


# --- enumeration ----------------------------------------------------------------

def support_keys(ctx: CoringCtx, window=None) -> list:
    if ctx.hopf.is_finite:
        return list(ctx.hopf.keys())
    lo, hi = window or DEFAULT_WINDOW
    if lo > hi:
        raise ValueError(f"empty window {lo}..{hi}")
    return list(range(lo, hi + 1))


def _require_prime(ctx):
    if not ctx.field.is_prime:
        raise NotEnumerable("grouplike enumeration needs a prime field")


def brute_force_grouplikes(ctx: CoringCtx, window=None, cap: int = DEFAULT_CAP) -> list[CoringElement]:
    """Every coefficient tuple over the support keys, filtered by is_grouplike."""
    _require_prime(ctx)
    keys = support_keys(ctx, window)
    size = ctx.algebra.size() ** len(keys)
    if size > cap:
        raise BoundExceeded(f"brute force over {size} tuples exceeds the cap {cap}")
    elems = ctx.algebra.elements(cap)
    out = []
    for coeffs in product(elems, repeat=len(keys)):
        X = CoringElement(zip(keys, coeffs))
        if ctx.is_grouplike(X)[0]:
            out.append(X)
    return sorted(out)


def _graded_solutions(ctx: CoringCtx, keys, elems, max_nodes):
    """Backtracking on the homogeneous-component equations

        sum_d a_{n-d} a_j^(d) = [n = j] a_j      for all n, j,

    with sum_j a_j = 1 fixing the last coefficient.
    """
    A, G, co, F = ctx.algebra, ctx.hopf.group, ctx.coaction, ctx.field
    comps = {a: co.components(a) for a in elems}
    keyset = set(keys)
    nodes = 0

    def equations_ok(val: dict, j) -> bool:
        """All equations E(n, j) whose inputs are assigned."""
        aj = val[j]
        cj = comps[aj]
        if not cj:
            return True
        targets = {G.op(i, d) for i in keys for d in cj} | {j}
        for n in targets:
            s = A.zero
            ready = True
            for d, part in cj.items():
                i = G.op(n, G.inv(d))
                if i not in keyset:
                    continue
                if i not in val:
                    ready = False
                    break
                if any(val[i]):
                    s = A.add(s, A.mul(val[i], part))
            if ready and s != (aj if n == j else A.zero):
                return False
        return True

    def consistent(val: dict) -> bool:
        return all(equations_ok(val, j) for j in val)

    out = []

    def extend(t: int, val: dict, total):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BoundExceeded(f"grouplike search exceeded {max_nodes} nodes")
        k = keys[t]
        if t == len(keys) - 1:
            candidates = [A.sub(A.one, total)]
        else:
            candidates = elems
        for a in candidates:
            val[k] = a
            if consistent(val):
                if t == len(keys) - 1:
                    out.append(CoringElement(val.items()))
                else:
                    extend(t + 1, val, A.add(total, a))
            del val[k]

    extend(0, {}, A.zero)
    return out


def _cocycle_solutions(ctx: CoringCtx, keys, elems, max_nodes):
    """Backtracking on phi(e) = 1, phi(xy) = phi(x) (x.phi(y))."""
    A, G, co = ctx.algebra, ctx.hopf.group, ctx.coaction
    order = [G.e] + [g for g in keys if g != G.e]
    nodes = 0
    out = []

    def ok(phi: dict, new) -> bool:
        for x in phi:
            for y in phi:
                if new not in (x, y, G.op(x, y)):
                    continue
                xy = G.op(x, y)
                if xy in phi and phi[xy] != A.mul(phi[x], co.act(x, phi[y])):
                    return False
        return True

    def extend(t: int, phi: dict):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BoundExceeded(f"cocycle search exceeded {max_nodes} nodes")
        if t == len(order):
            out.append(CoringElement(phi.items()))
            return
        g = order[t]
        for a in ([A.one] if g == G.e else elems):
            phi[g] = a
            if ok(phi, g):
                extend(t + 1, phi)
            del phi[g]

    extend(0, {})
    return out


def structured_grouplikes(ctx: CoringCtx, window=None, cap: int = DEFAULT_CAP,
                          max_nodes: int = DEFAULT_NODES) -> list[CoringElement]:
    """Grouplikes from the per-variant equations rather than the coring identity.

    ``cap`` bounds |A| (the candidate set for each coefficient); the search
    itself is bounded by ``max_nodes``.
    """
    _require_prime(ctx)
    keys = support_keys(ctx, window)
    elems = ctx.algebra.elements(cap)
    if ctx.is_graded:
        found = _graded_solutions(ctx, keys, elems, max_nodes)
    else:
        found = _cocycle_solutions(ctx, keys, elems, max_nodes)
    return sorted(set(found))


def enumerate_grouplikes(ctx: CoringCtx, window=None, cap: int = DEFAULT_CAP,
                         method: str = "structured") -> list[Grouplike]:
    """All grouplikes supported on the window (all of them over finite H),
    with invertibility resolved, in lexicographic order."""
    if method == "structured":
        found = structured_grouplikes(ctx, window, cap)
    elif method == "brute":
        found = brute_force_grouplikes(ctx, window, cap)
    else:
        raise ValueError(f"unknown method {method!r}")
    return [ctx.resolve(X, window) for X in found]


def invertible_grouplikes(ctx: CoringCtx, window=None, cap: int = DEFAULT_CAP) -> list[Grouplike]:
    return [g for g in enumerate_grouplikes(ctx, window, cap) if g.invertible == "yes"]


# --- idempotents and degrees --------------------------------------------------------

def _idempotent_family_problems(ctx: CoringCtx, pairs) -> list[Finding]:
    A, co = ctx.algebra, ctx.coaction
    out = []
    total = A.zero
    for t, (e, d) in enumerate(pairs):
        if not any(e):
            out.append(Finding("nonzero", (t,)))
        if A.mul(e, e) != e:
            out.append(Finding("idempotent", (t,)))
        if co.rho(e) != co.pure(e, ctx.hopf.unit()):
            out.append(Finding("degree zero", (t,), "idempotent is not homogeneous of degree 0"))
        total = A.add(total, e)
    for s in range(len(pairs)):
        for t in range(s + 1, len(pairs)):
            if any(A.mul(pairs[s][0], pairs[t][0])):
                out.append(Finding("orthogonal", (s, t)))
    if total != A.one:
        out.append(Finding("sum to 1", (), f"sum = {total}"))
    return out


def degree_zero_primitive_idempotents(ctx: CoringCtx, cap: int = DEFAULT_CAP) -> list[tuple]:
    """Minimal nonzero idempotents among those homogeneous of degree 0.

    Over kZ every idempotent has degree 0, so these are the primitive
    idempotents of A; over a finite grading group they can be coarser.
    """
    A, co = ctx.algebra, ctx.coaction
    one_h = ctx.hopf.unit()
    idem = [e for e in A.idempotents(cap) if any(e) and co.rho(e) == co.pure(e, one_h)]
    return sorted(e for e in idem if not any(f != e and A.mul(f, e) == f for f in idem))


def grouplike_from_idempotent_degrees(ctx: CoringCtx, m: IdempotentDegreeMap | Sequence) -> Grouplike:
    """sum_i e_i (x) X^{d_i}, whose inverse is sum_i e_i (x) X^{-d_i}."""
    if not ctx.is_graded:
        raise ValueError("idempotent degree maps need a grading")
    if not isinstance(m, IdempotentDegreeMap):
        m = IdempotentDegreeMap(tuple((ctx.algebra.element(e), int(d)) for e, d in m))
    problems = _idempotent_family_problems(ctx, m.pairs)
    if problems:
        raise AxiomError(problems[0])
    G = ctx.hopf.group
    if G.is_finite and any(not 0 <= d < G.order for _, d in m.pairs):
        raise ValueError(f"degrees must be elements 0..{G.order - 1} of {G.name}")
    m = m.normal_form(ctx.field)
    X = CoringElement({d: e for e, d in m.pairs})
    inv = CoringElement({G.inv(d): e for e, d in m.pairs})
    return Grouplike(X, "yes", inv)


def idempotent_degrees_of_grouplike(ctx: CoringCtx, X) -> IdempotentDegreeMap | None:
    """Write X as sum e_i (x) X^{d_i} with orthogonal idempotents, or None."""
    if not ctx.is_graded:
        raise ValueError("idempotent degree maps need a grading")
    X = ctx.element(X)
    pairs = tuple((a, k) for k, a in X.terms)
    if _idempotent_family_problems(ctx, pairs):
        if ctx.field.is_prime and ctx.is_grouplike(X)[0] and ctx.algebra.is_reduced():
            log.warning("grouplike %r over a reduced algebra is not of idempotent form; "
                        "this contradicts the bijection with locally constant degree maps", X)
        return None
    return IdempotentDegreeMap(pairs)


def induced_grouplike(ctx: CoringCtx, h: Mapping) -> Grouplike:
    """1_A (x) h for a grouplike h of H."""
    from .hopf import is_hopf_grouplike

    H, F = ctx.hopf, ctx.field
    h = {int(k): F(v) for k, v in dict(h).items() if F(v)}
    if not is_hopf_grouplike(H, h):
        raise AxiomError(Finding("grouplike of H", tuple(sorted(h))))
    A = ctx.algebra
    X = CoringElement({k: A.scale(c, A.one) for k, c in h.items()})
    if H.is_dual:
        inv = CoringElement({k: A.scale(F.inv(c), A.one) for k, c in h.items()})
    else:
        (g,) = h
        inv = CoringElement({H.group.inv(g): A.one})
    return Grouplike(X, "yes", inv)
