"""Comodule-algebra structures on a FinAlgebra, coinvariants and the Galois test.

Elements of A (x) H are dicts ``{key: coords}`` with zero coefficients
dropped: ``{g: a}`` stands for a (x) g (or a (x) p_g over k^G).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .algebra import FinAlgebra, Subalgebra, tensor_over_subalgebra
from .checks import AxiomError, Finding
from .exactfield import Matrix, kernel, rank
from .hopf import HopfDesc


def _put(d: dict, key, vec, F):
    if key in d:
        vec = F.vadd(d[key], vec)
    if any(vec):
        d[key] = vec
    else:
        d.pop(key, None)


@dataclass(frozen=True, eq=False)
class Coaction:
    """``kind="grading"``: ``degrees[i]`` is the degree of basis vector i.
    ``kind="action"``: ``matrices[g]`` is the matrix of a -> g.a, column j
    holding the coordinates of g.e_j.

    The constructors below validate; building this class directly does not.
    """

    algebra: FinAlgebra
    hopf: HopfDesc
    kind: str
    degrees: tuple = ()
    matrices: Mapping = field(default_factory=dict)

    @property
    def field(self):
        return self.algebra.field

    @cached_property
    def rho_basis(self) -> list[dict]:
        A, F = self.algebra, self.field
        out = []
        for i in range(A.dim):
            if self.kind == "grading":
                out.append({self.degrees[i]: A.basis(i)})
            else:
                d = {}
                for g in self.hopf.keys():
                    col = tuple(r[i] for r in self.matrices[g].rows)
                    _put(d, g, col, F)
                out.append(d)
        return out

    def rho(self, a) -> dict:
        F = self.field
        out = {}
        for i, c in enumerate(a):
            if c:
                for k, v in self.rho_basis[i].items():
                    _put(out, k, F.vscale(c, v), F)
        return out

    def act(self, g, a) -> tuple:
        """g.a for the action variant."""
        return self.matrices[g].apply(a)

    def component(self, a, d) -> tuple:
        """Homogeneous component of degree d (grading variant)."""
        F = self.field
        return tuple(c if self.degrees[i] == d else F.zero for i, c in enumerate(a))

    def components(self, a) -> dict:
        out = {}
        for i, c in enumerate(a):
            if c:
                d = self.degrees[i]
                out[d] = self.component(a, d)
        return out

    def occurring_degrees(self) -> list:
        return sorted(set(self.degrees))

    # arithmetic in A (x) H

    def one(self) -> dict:
        A = self.algebra
        return {k: A.scale(c, A.one) for k, c in self.hopf.unit().items()}

    def pure(self, a, h: Mapping) -> dict:
        """a (x) h for h an element {key: scalar} of H."""
        A = self.algebra
        out = {}
        for k, c in h.items():
            _put(out, k, A.scale(c, a), self.field)
        return out

    def mul(self, X: Mapping, Y: Mapping) -> dict:
        A, H, F = self.algebra, self.hopf, self.field
        out = {}
        for g, a in X.items():
            for h, b in Y.items():
                ab = A.mul(a, b)
                if any(ab):
                    for k, c in H.mul_keys(g, h).items():
                        _put(out, k, A.scale(c, ab), F)
        return out

    def left(self, a, X: Mapping) -> dict:
        """(a (x) 1) X."""
        A = self.algebra
        out = {}
        for k, v in X.items():
            _put(out, k, A.mul(a, v), self.field)
        return out

    def add(self, X: Mapping, Y: Mapping) -> dict:
        out = dict(X)
        for k, v in Y.items():
            _put(out, k, v, self.field)
        return out

    def sub(self, X: Mapping, Y: Mapping) -> dict:
        F = self.field
        return self.add(X, {k: F.vscale(F.neg(F.one), v) for k, v in Y.items()})

    def coord_keys(self, *elements: Mapping) -> list:
        keys = set()
        for X in elements:
            keys.update(X)
        return sorted(keys)

    def __repr__(self):
        return f"Coaction({self.kind}, {self.algebra!r}, {self.hopf!r})"


def _grading_problems(alg: FinAlgebra, hopf: HopfDesc, degrees) -> list[Finding]:
    G, F = hopf.group, alg.field
    out = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k, c in enumerate(alg.mult[i][j]):
                if c and degrees[k] != G.op(degrees[i], degrees[j]):
                    out.append(Finding(
                        "homogeneity", (i, j, k),
                        f"c_{{{i}{j}}}^{k} = {c} but deg {alg.names[k]} = {degrees[k]}"
                        f" != {degrees[i]} + {degrees[j]}",
                    ))
    for k, c in enumerate(alg.one):
        if c and degrees[k] != G.e:
            out.append(Finding("unit has degree 0", (k,), f"1 has a component on {alg.names[k]}"))
    return out


def coaction_from_grading(alg: FinAlgebra, hopf: HopfDesc, degrees: Sequence[int]) -> Coaction:
    if hopf.is_dual:
        raise ValueError("a grading needs a group-basis Hopf algebra kM")
    if len(degrees) != alg.dim:
        raise ValueError(f"need {alg.dim} degrees, got {len(degrees)}")
    degrees = tuple(int(d) for d in degrees)
    if hopf.is_finite and any(not 0 <= d < hopf.group.order for d in degrees):
        raise ValueError("degrees must index elements of the grading group")
    problems = _grading_problems(alg, hopf, degrees)
    if problems:
        raise AxiomError(problems[0])
    return Coaction(alg, hopf, "grading", degrees)


def _action_problems(alg: FinAlgebra, hopf: HopfDesc, mats: Mapping) -> list[Finding]:
    G, F, n = hopf.group, alg.field, alg.dim
    out = []
    for g in G.elements():
        M = mats[g]
        if M.shape != (n, n):
            out.append(Finding("shape", (g,), f"expected {n}x{n}, got {M.shape}"))
            continue
        if M.apply(alg.one) != alg.one:
            out.append(Finding("fixes 1", (g,)))
        if rank(M) != n:
            out.append(Finding("bijective", (g,)))
        for i in range(n):
            for j in range(i, n):
                ei, ej = alg.basis(i), alg.basis(j)
                if M.apply(alg.mul(ei, ej)) != alg.mul(M.apply(ei), M.apply(ej)):
                    out.append(Finding("multiplicative", (g, i, j),
                                       f"g{g} does not respect {alg.names[i]}*{alg.names[j]}"))
    if out:
        return out
    if mats[G.e] != Matrix.identity(F, n):
        out.append(Finding("identity acts trivially", (G.e,)))
    for g in G.elements():
        for h in G.elements():
            if mats[g] @ mats[h] != mats[G.op(g, h)]:
                out.append(Finding("homomorphism", (g, h)))
    return out


def coaction_from_action(alg: FinAlgebra, hopf: HopfDesc, matrices) -> Coaction:
    """``matrices`` is a sequence or mapping indexed by group element."""
    if not hopf.is_dual:
        raise ValueError("an action needs the dual Hopf algebra k^G")
    F = alg.field
    if not isinstance(matrices, Mapping):
        matrices = dict(enumerate(matrices))
    mats = {}
    for g in hopf.keys():
        if g not in matrices:
            raise ValueError(f"no matrix for group element {g}")
        M = matrices[g]
        mats[g] = M if isinstance(M, Matrix) else Matrix(F, tuple(map(tuple, M)))
    problems = _action_problems(alg, hopf, mats)
    if problems:
        raise AxiomError(problems[0])
    return Coaction(alg, hopf, "action", matrices=mats)


def trivial_action(alg: FinAlgebra, hopf: HopfDesc) -> Coaction:
    I = Matrix.identity(alg.field, alg.dim)
    return coaction_from_action(alg, hopf, {g: I for g in hopf.keys()})


def validate_comodule_algebra(co: Coaction) -> list[Finding]:
    """Counit, coassociativity, multiplicativity and unitality of rho on basis vectors."""
    A, H, F = co.algebra, co.hopf, co.field
    out = []
    for i in range(A.dim):
        r = co.rho_basis[i]
        s = A.zero
        for k, v in r.items():
            s = A.add(s, A.scale(H.counit(k), v))
        if s != A.basis(i):
            out.append(Finding("counit", (i,)))
        lhs, rhs = {}, {}
        for k, v in r.items():
            for k1, v1 in co.rho(v).items():
                _put(lhs, (k1, k), v1, F)
            for pair, c in H.comul(k).items():
                _put(rhs, pair, A.scale(c, v), F)
        if lhs != rhs:
            out.append(Finding("coassociativity", (i,)))
    for i in range(A.dim):
        for j in range(i, A.dim):
            ei, ej = A.basis(i), A.basis(j)
            if co.rho(A.mul(ei, ej)) != co.mul(co.rho(ei), co.rho(ej)):
                out.append(Finding("multiplicativity", (i, j),
                                   f"rho({A.names[i]}*{A.names[j]}) != rho({A.names[i]})rho({A.names[j]})"))
    if co.rho(A.one) != co.one():
        out.append(Finding("unit", ()))
    return out


def _linear_system(co: Coaction, image) -> Matrix:
    """Matrix of the linear map a -> image(a) into A (x) H coordinates."""
    A = co.algebra
    cols = [image(A.basis(i)) for i in range(A.dim)]
    keys = co.coord_keys(*cols)
    rows = []
    for k in keys:
        for t in range(A.dim):
            rows.append(tuple(c[k][t] if k in c else co.field.zero for c in cols))
    return Matrix(co.field, tuple(rows), A.dim)


def solve_in_A(co: Coaction, image) -> list[tuple]:
    """Basis of {a in A : image(a) = 0} for a linear map image: A -> A (x) H."""
    M = _linear_system(co, image)
    if M.nrows == 0:
        return [co.algebra.basis(i) for i in range(co.algebra.dim)]
    return kernel(M)


def coinvariants(co: Coaction) -> Subalgebra:
    one_h = co.hopf.unit()
    basis = solve_in_A(co, lambda a: co.sub(co.rho(a), co.pure(a, one_h)))
    B = Subalgebra(co.algebra, tuple(basis))
    problems = B.check()
    if problems:
        raise AxiomError(problems[0])
    return B


@dataclass(frozen=True)
class GaloisReport:
    rank: int
    domain_dim: int
    codomain_dim: int
    target_keys: tuple
    injective: bool
    surjective: bool
    note: str = ""
    onto_target: bool = False  # rank equals dim A (x) span(target_keys)

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def to_dict(self):
        return {
            "rank": self.rank, "domain_dim": self.domain_dim, "codomain_dim": self.codomain_dim,
            "target_keys": list(self.target_keys), "injective": self.injective,
            "surjective": self.surjective, "bijective": self.bijective,
            "onto_target_keys": self.onto_target, "note": self.note,
        }


def galois_canonical_map(co: Coaction) -> GaloisReport:
    """Rank of can: A (x)_B A -> A (x) H, a (x) b -> a b_[0] (x) b_[1].

    Over kZ the rank is measured against A (x) span{occurring degrees}; a
    finite-dimensional A is never kZ-Galois, so surjectivity is reported False.
    """
    A, H, F = co.algebra, co.hopf, co.field
    n = A.dim
    B = coinvariants(co)
    T = tensor_over_subalgebra(A, B)
    if H.is_finite:
        keys = tuple(H.keys())
    else:
        keys = tuple(co.occurring_degrees())
    cols = []
    for s in range(n * n):
        i, j = divmod(s, n)
        X = co.left(A.basis(i), co.rho(A.basis(j)))
        cols.append(tuple(X[k][t] if k in X else F.zero for k in keys for t in range(n)))
    M = Matrix.from_columns(F, cols, n * len(keys))
    # can is B-balanced, so it factors through the quotient and has the same rank
    for rel in T.relations:
        if any(M.apply(rel)):
            raise AssertionError("canonical map does not vanish on the balancing relations")
    r = rank(M)
    dom = len(T.free)
    cod = n * len(keys)
    note = ""
    surjective = r == cod
    if not H.is_finite:
        # A (x) kZ is infinite-dimensional, so can is never onto it
        note = "A (x) kZ is never reached; onto_target_keys refers to the occurring degrees"
        surjective = False
    return GaloisReport(r, dom, cod, keys, r == dom, surjective, note, r == cod)
