"""Exact scalar arithmetic over Q and F_p, plus the linear algebra everything
else is built on.

Scalars are plain Python values: ``Fraction`` over the rationals and ``int``
in ``range(p)`` over a prime field.  Vectors are tuples, matrices are
:class:`Matrix` (rows of scalars).  Nothing here ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence

from sympy import isprime


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``kind="rationals"``) or F_p (``kind="prime"``)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not isprime(self.p):
                raise ValueError(f"characteristic must be prime, got {self.p!r}")
        elif self.kind == "rationals":
            if self.p is not None:
                raise ValueError("rationals take no characteristic")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return self.p if self.is_prime else 0

    def __str__(self):
        return f"F{self.p}" if self.is_prime else "Q"

    # scalar arithmetic

    @property
    def zero(self):
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime else Fraction(1)

    def __call__(self, x):
        """Coerce an int / Fraction / "a/b" string into this field."""
        if self.is_prime:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            if isinstance(x, str):
                return self(Fraction(x))
            return int(x) % self.p
        return Fraction(x)

    def add(self, a, b):
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.is_prime else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.is_prime else a * b

    def neg(self, a):
        return (-a) % self.p if self.is_prime else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.is_prime else 1 / a

    def elements(self) -> list:
        if not self.is_prime:
            raise ValueError("the rationals cannot be enumerated")
        return list(range(self.p))

    def units(self) -> list:
        return self.elements()[1:]

    def to_json(self, a):
        if self.is_prime:
            return a
        return a.numerator if a.denominator == 1 else str(a)

    # vectors

    def zeros(self, n: int) -> tuple:
        return (self.zero,) * n

    def unit_vector(self, n: int, i: int) -> tuple:
        return tuple(self.one if j == i else self.zero for j in range(n))

    def vadd(self, u, v) -> tuple:
        return tuple(self.add(a, b) for a, b in zip(u, v))

    def vsub(self, u, v) -> tuple:
        return tuple(self.sub(a, b) for a, b in zip(u, v))

    def vscale(self, c, u) -> tuple:
        return tuple(self.mul(c, a) for a in u)

    def vectors(self, n: int) -> Iterator[tuple]:
        """All of F_p^n in lexicographic order (0 < 1 < ... < p-1)."""
        return product(self.elements(), repeat=n)

    def combinations(self, basis: Sequence[tuple], dim: int) -> Iterator[tuple]:
        """Every element of span(basis), each exactly once if basis is independent."""
        for coeffs in self.vectors(len(basis)):
            v = self.zeros(dim)
            for c, b in zip(coeffs, basis):
                if c:
                    v = self.vadd(v, self.vscale(c, b))
            yield v


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: tuple
    ncols: int = field(default=-1)

    def __post_init__(self):
        rows = tuple(tuple(self.field(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.ncols < 0:
            object.__setattr__(self, "ncols", len(rows[0]) if rows else 0)
        if any(len(r) != self.ncols for r in rows):
            raise DimensionError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self):
        return self.nrows, self.ncols

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, ((0,) * ncols,) * nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, tuple(field.unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field, cols: Sequence[Sequence], nrows: int):
        return cls(field, tuple(zip(*cols)) if cols else ((),) * nrows, len(cols))

    def columns(self) -> list[tuple]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} against {self.shape}")
        F = self.field
        out = []
        for r in self.rows:
            s = F.zero
            for a, b in zip(r, v):
                if a and b:
                    s = F.add(s, F.mul(a, b))
            out.append(s)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"{self.shape} @ {other.shape}")
        cols = [self.apply(c) for c in other.columns()]
        return Matrix.from_columns(self.field, cols, self.nrows)

    def rref(self) -> tuple["Matrix", list[int]]:
        return rref(self)

    def rank(self) -> int:
        return len(rref(self)[1])

    def kernel(self) -> list[tuple]:
        return kernel(self)


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are the first nonzero entry scanning columns left to right, rows
    top to bottom, so the output is reproducible.
    """
    F = M.field
    rows = [list(r) for r in M.rows]
    pivots = []
    r = 0
    for c in range(M.ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return Matrix(F, tuple(map(tuple, rows)), M.ncols), pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel(M: Matrix) -> list[tuple]:
    """Basis of {x : Mx = 0}, one vector per free column (in column order)."""
    F = M.field
    R, pivots = rref(M)
    free = [c for c in range(M.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * M.ncols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.rows[i][f])
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class LinearSolution:
    particular: tuple | None
    kernel: list[tuple]

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def solve_linear(M: Matrix, b: Sequence) -> LinearSolution:
    """Solve ``M x = b``: a particular solution (or ``None``) and a basis of ker M."""
    if len(b) != M.nrows:
        raise DimensionError(f"right-hand side of length {len(b)} for {M.shape}")
    F = M.field
    aug = Matrix(F, tuple(tuple(r) + (F(x),) for r, x in zip(M.rows, b)), M.ncols + 1)
    R, pivots = rref(aug)
    ker = kernel(M)
    if M.ncols in pivots:
        return LinearSolution(None, ker)
    x = [F.zero] * M.ncols
    for i, pc in enumerate(pivots):
        x[pc] = R.rows[i][M.ncols]
    return LinearSolution(tuple(x), ker)


def span_basis(field: FieldSpec, vectors: Iterable[Sequence], dim: int) -> list[tuple]:
    """A basis (RREF rows) of the span of the given vectors."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    R, pivots = rref(Matrix(field, tuple(vectors), dim))
    return list(R.rows[: len(pivots)])


def in_span(field: FieldSpec, basis: Sequence[Sequence], v: Sequence) -> bool:
    if not basis:
        return all(x == 0 for x in v)
    M = Matrix.from_columns(field, [tuple(b) for b in basis], len(v))
    return solve_linear(M, v).solvable


# --- integer matrices and Smith normal form ---------------------------------

IntMatrix = list  # list of rows of Python ints


@dataclass(frozen=True)
class SmithForm:
    S: list
    U: list
    V: list

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]


def int_matmul(A, B):
    if not A:
        return []
    m = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(m)] for row in A]


def int_identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def int_det(M) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def smith_normal_form(M: IntMatrix, ncols: int | None = None) -> SmithForm:
    """Return S, U, V with ``S = U M V``, S diagonal with d1 | d2 | ..., U, V unimodular.

    Elementary row/column reduction, pivoting on the entry of least absolute
    value in the remaining block.
    """
    m = len(M)
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    S = [list(r) for r in M]
    U = int_identity(m)
    V = int_identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for r in S:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                q = S[i][t] // S[t][t]
                if q:
                    add_row(i, t, q)
                if S[i][t]:
                    swap_rows(t, i)
                    done = False
            for j in range(t + 1, n):
                q = S[t][j] // S[t][t]
                if q:
                    add_col(j, t, q)
                if S[t][j]:
                    swap_cols(t, j)
                    done = False
            if done:
                # enforce divisibility of the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                    None,
                )
                if bad is not None:
                    add_row(t, bad[0], -1)
                    done = False
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return SmithForm(S, U, V)


def invariant_factors(M: IntMatrix, ncols: int | None = None) -> list[int]:
    """Diagonal of the SNF padded with zeros to the number of columns."""
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    snf = smith_normal_form(M, n)
    diag = snf.diagonal
    return diag + [0] * (n - len(diag))
