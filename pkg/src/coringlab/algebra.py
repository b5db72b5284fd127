"""Finite-dimensional commutative unital algebras given by structure constants.

An element is a coordinate tuple over the basis.  ``mult[i][j][k]`` is the
coefficient of basis vector k in ``e_i * e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .checks import AxiomError, BoundExceeded, Finding, NotEnumerable
from .exactfield import FieldSpec, Matrix, in_span, rref, solve_linear, span_basis

DEFAULT_CAP = 4096


@dataclass(frozen=True, eq=False)
class FinAlgebra:
    field: FieldSpec
    mult: tuple
    unit: tuple
    names: tuple = ()

    def __post_init__(self):
        F = self.field
        n = len(self.mult)
        mult = tuple(tuple(tuple(F(c) for c in self.mult[i][j]) for j in range(n)) for i in range(n))
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "unit", tuple(F(c) for c in self.unit))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(n)))
        if len(self.unit) != n or len(self.names) != n:
            raise ValueError("unit / names do not match the number of basis vectors")
        if any(len(row) != n or any(len(c) != n for c in row) for row in mult):
            raise ValueError("structure constants must be n x n x n")

    @property
    def dim(self) -> int:
        return len(self.mult)

    @property
    def zero(self) -> tuple:
        return self.field.zeros(self.dim)

    @property
    def one(self) -> tuple:
        return self.unit

    def basis(self, i: int) -> tuple:
        return self.field.unit_vector(self.dim, i)

    def element(self, coords: Sequence) -> tuple:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(self.field(c) for c in coords)

    def add(self, a, b):
        return self.field.vadd(a, b)

    def sub(self, a, b):
        return self.field.vsub(a, b)

    def scale(self, c, a):
        return self.field.vscale(c, a)

    def mul(self, a, b) -> tuple:
        if len(a) != self.dim or len(b) != self.dim:
            raise ValueError("dimension mismatch")
        F = self.field
        out = [F.zero] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = F.mul(x, y)
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] = F.add(out[k], F.mul(xy, c))
        return tuple(out)

    def power(self, a, k: int):
        r = self.one
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def mul_matrix(self, a) -> Matrix:
        """Matrix of b -> a*b."""
        return Matrix.from_columns(self.field, [self.mul(a, self.basis(j)) for j in range(self.dim)], self.dim)

    def try_invert(self, a):
        """The inverse of a, or None when a is not a unit."""
        sol = solve_linear(self.mul_matrix(a), self.one)
        return sol.particular if sol.solvable else None

    def is_unit(self, a) -> bool:
        return self.try_invert(a) is not None

    def is_idempotent(self, a) -> bool:
        return self.mul(a, a) == a

    # enumeration over prime fields

    def size(self) -> int:
        if not self.field.is_prime:
            raise NotEnumerable("the algebra is infinite over Q")
        return self.field.p ** self.dim

    def elements(self, cap: int = DEFAULT_CAP):
        if self.size() > cap:
            raise BoundExceeded(f"{self.size()} elements exceeds the cap {cap}")
        return list(self.field.vectors(self.dim))

    def units(self, cap: int = DEFAULT_CAP) -> list[tuple]:
        return [a for a in self.elements(cap) if self.is_unit(a)]

    def idempotents(self, cap: int = DEFAULT_CAP) -> list[tuple]:
        return [a for a in self.elements(cap) if self.is_idempotent(a)]

    def primitive_idempotents(self, cap: int = DEFAULT_CAP) -> list[tuple]:
        """Nonzero idempotents e with no idempotent strictly below them (ef = f)."""
        idem = [e for e in self.idempotents(cap) if any(e)]
        return [
            e for e in idem
            if not any(f != e and self.mul(e, f) == f for f in idem)
        ]

    def nilpotents(self, cap: int = DEFAULT_CAP) -> list[tuple]:
        return [a for a in self.elements(cap) if not any(self.power(a, self.dim))]

    def is_reduced(self, cap: int = DEFAULT_CAP) -> bool:
        if self.field.is_prime:
            return len(self.nilpotents(cap)) == 1
        # char 0: the nilradical is the radical of the trace form
        F = self.field
        tr = [sum((self.mul_matrix(self.mul(self.basis(i), self.basis(j))).rows[k][k]
                   for k in range(self.dim)), F.zero)
              for i in range(self.dim) for j in range(self.dim)]
        gram = Matrix(F, tuple(tuple(tr[i * self.dim:(i + 1) * self.dim]) for i in range(self.dim)))
        return gram.rank() == self.dim

    def __repr__(self):
        return f"FinAlgebra({self.field}, dim={self.dim}, basis={list(self.names)})"


def mul(alg: FinAlgebra, a, b):
    return alg.mul(a, b)


def try_invert(alg: FinAlgebra, a):
    return alg.try_invert(a)


def enumerate_units(alg: FinAlgebra, cap: int = DEFAULT_CAP) -> list[tuple]:
    return alg.units(cap)


def enumerate_idempotents(alg: FinAlgebra, cap: int = DEFAULT_CAP) -> list[tuple]:
    return alg.idempotents(cap)


def validate_algebra(alg: FinAlgebra) -> list[Finding]:
    """Unit law, commutativity and associativity on basis vectors."""
    F, n, c = alg.field, alg.dim, alg.mult
    out = []
    for i in range(n):
        e = alg.basis(i)
        if alg.mul(alg.one, e) != e:
            out.append(Finding("unit", (i,), f"1*{alg.names[i]} = {alg.mul(alg.one, e)}"))
    for i in range(n):
        for j in range(i + 1, n):
            if c[i][j] != c[j][i]:
                out.append(Finding("commutativity", (i, j)))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    lhs = rhs = F.zero
                    for m in range(n):
                        lhs = F.add(lhs, F.mul(c[i][j][m], c[m][k][l]))
                        rhs = F.add(rhs, F.mul(c[j][k][m], c[i][m][l]))
                    if lhs != rhs:
                        out.append(Finding("associativity", (i, j, k, l)))
    return out


# --- presets ----------------------------------------------------------------

def poly_quotient(F: FieldSpec, modulus: Sequence, var: str = "x") -> FinAlgebra:
    """k[x]/(f) for monic f given by coefficients, lowest degree first."""
    f = [F(c) for c in modulus]
    d = len(f) - 1
    if d < 1 or f[-1] != F.one:
        raise ValueError("modulus must be monic of degree >= 1")

    def reduce(poly):
        poly = list(poly)
        for top in range(len(poly) - 1, d - 1, -1):
            c = poly[top]
            if c:
                for i in range(d + 1):
                    poly[top - d + i] = F.sub(poly[top - d + i], F.mul(c, f[i]))
        return tuple(poly[:d]) + (F.zero,) * max(0, d - len(poly))

    mult = []
    for i in range(d):
        row = []
        for j in range(d):
            mono = [F.zero] * (i + j + 1)
            mono[i + j] = F.one
            row.append(reduce(mono))
        mult.append(tuple(row))
    names = tuple("1" if i == 0 else var if i == 1 else f"{var}^{i}" for i in range(d))
    return FinAlgebra(F, tuple(mult), F.unit_vector(d, 0), names)


def truncated_poly(F: FieldSpec, k: int, var: str = "x") -> FinAlgebra:
    """k[x]/(x^k)."""
    return poly_quotient(F, [0] * k + [1], var)


def dual_numbers(F: FieldSpec) -> FinAlgebra:
    return truncated_poly(F, 2)


def fp_field_ext(F: FieldSpec, modulus: Sequence, var: str = "w") -> FinAlgebra:
    """F_p[w]/(f) for an irreducible f; irreducibility is checked."""
    from sympy import Poly, symbols

    if not F.is_prime:
        raise ValueError("field extensions are built over a prime field")
    x = symbols("x")
    poly = Poly(list(reversed([int(F(c)) for c in modulus])), x, modulus=F.p)
    if not poly.is_irreducible:
        raise ValueError(f"{poly.as_expr()} is not irreducible over F{F.p}")
    return poly_quotient(F, modulus, var)


def product_of_fields(F: FieldSpec, n: int) -> FinAlgebra:
    """k^n with the standard orthogonal idempotents as basis."""
    mult = tuple(
        tuple(F.unit_vector(n, i) if i == j else F.zeros(n) for j in range(n)) for i in range(n)
    )
    return FinAlgebra(F, mult, (F.one,) * n, tuple(f"e{i + 1}" for i in range(n)))


def base_field(F: FieldSpec) -> FinAlgebra:
    return product_of_fields(F, 1)


# --- subalgebras and A (x)_B A ------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subalgebra:
    parent: FinAlgebra
    basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(tuple(b) for b in self.basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, a) -> bool:
        return in_span(self.parent.field, self.basis, a)

    def elements(self, cap: int = DEFAULT_CAP):
        F = self.parent.field
        if not F.is_prime:
            raise NotEnumerable("cannot enumerate a subalgebra over Q")
        if F.p ** self.dim > cap:
            raise BoundExceeded(f"{F.p ** self.dim} elements exceeds the cap {cap}")
        return sorted(F.combinations(self.basis, self.parent.dim))

    def units(self, cap: int = DEFAULT_CAP):
        return [b for b in self.elements(cap) if self.parent.is_unit(b)]

    def check(self) -> list[Finding]:
        A = self.parent
        out = []
        if not self.contains(A.one):
            out.append(Finding("contains unit", ()))
        for i, b in enumerate(self.basis):
            for j, c in enumerate(self.basis[i:], i):
                if not self.contains(A.mul(b, c)):
                    out.append(Finding("multiplicatively closed", (i, j)))
        return out


@dataclass(frozen=True, eq=False)
class TensorOverSubalgebra:
    """A (x)_B A as a quotient of A (x) A.

    Coordinates of e_i (x) e_j in A (x) A sit at index ``i*n + j``.  The
    quotient basis is the set of non-pivot standard vectors of the relation
    span; ``project`` rewrites any vector of A (x) A in that basis.
    """

    algebra: FinAlgebra
    source: FinAlgebra
    relations: tuple  # RREF rows spanning the balancing relations
    pivots: tuple
    free: tuple

    def project(self, v) -> tuple:
        F = self.source.field
        v = list(v)
        for row, pc in zip(self.relations, self.pivots):
            c = v[pc]
            if c:
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return tuple(v[i] for i in self.free)

    def pure(self, a, b) -> tuple:
        """Coordinates of a (x)_B b in the quotient basis."""
        F, n = self.source.field, self.source.dim
        v = [F.zero] * (n * n)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if x and y:
                    v[i * n + j] = F.add(v[i * n + j], F.mul(x, y))
        return self.project(v)

    def left(self, a):
        return self.pure(a, self.source.one)

    def right(self, a):
        return self.pure(self.source.one, a)


def tensor_over_subalgebra(A: FinAlgebra, B: Subalgebra) -> TensorOverSubalgebra:
    problems = B.check()
    if problems:
        raise AxiomError(problems[0])
    F, n = A.field, A.dim

    def pure(a, c):
        v = [F.zero] * (n * n)
        for i, x in enumerate(a):
            for j, y in enumerate(c):
                if x and y:
                    v[i * n + j] = F.add(v[i * n + j], F.mul(x, y))
        return tuple(v)

    rels = []
    for b in B.basis:
        for i in range(n):
            for j in range(n):
                ei, ej = A.basis(i), A.basis(j)
                rels.append(F.vsub(pure(A.mul(ei, b), ej), pure(ei, A.mul(b, ej))))
    rel_basis = span_basis(F, rels, n * n)
    pivots = tuple(rref(Matrix(F, tuple(rel_basis), n * n))[1]) if rel_basis else ()
    free = tuple(i for i in range(n * n) if i not in pivots)
    shell = TensorOverSubalgebra(None, A, tuple(rel_basis), pivots, free)

    m = len(free)
    mult = []
    for s in free:
        i, j = divmod(s, n)
        row = []
        for t in free:
            k, l = divmod(t, n)
            row.append(shell.pure(A.mul(A.basis(i), A.basis(k)), A.mul(A.basis(j), A.basis(l))))
        mult.append(tuple(row))
    names = tuple(f"{A.names[s // n]}(x){A.names[s % n]}" for s in free)
    alg = FinAlgebra(F, tuple(mult), shell.pure(A.one, A.one), names) if m else None
    return TensorOverSubalgebra(alg, A, tuple(rel_basis), pivots, free)
