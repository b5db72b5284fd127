"""The two commutative bialgebra families: group algebras kM (M = Z or a finite
abelian group) and duals k^G of finite groups.

Both have a basis indexed by group elements, so an element of H is a dict
``{g: scalar}``.  In kM the key g is the grouplike g itself (X^g when M = Z);
in k^G it is the dual basis vector p_g.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .checks import AxiomError, Finding, NotEnumerable
from .exactfield import FieldSpec


@dataclass(frozen=True)
class GroupSpec:
    """The integers (``kind="Z"``) or a finite group given by its Cayley table."""

    kind: str
    table: tuple = ()
    identity: int = 0
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("Z", "finite"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == "finite":
            object.__setattr__(self, "table", tuple(tuple(int(x) for x in r) for r in self.table))

    @classmethod
    def integers(cls):
        return cls("Z", name="Z")

    @classmethod
    def cyclic(cls, n: int):
        return cls("finite", tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0, f"C{n}")

    @classmethod
    def from_table(cls, table, identity=0, name=""):
        return cls("finite", table, identity, name or f"G{len(table)}")

    def direct_product(self, other: "GroupSpec") -> "GroupSpec":
        m, n = self.order, other.order
        table = tuple(
            tuple(self.table[a // n][b // n] * n + other.table[a % n][b % n] for b in range(m * n))
            for a in range(m * n)
        )
        return GroupSpec("finite", table, self.identity * n + other.identity, f"{self.name}x{other.name}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise NotEnumerable("Z has infinitely many elements")
        return len(self.table)

    @property
    def e(self) -> int:
        return 0 if self.kind == "Z" else self.identity

    def elements(self) -> list[int]:
        return list(range(self.order))

    def op(self, g: int, h: int) -> int:
        return g + h if self.kind == "Z" else self.table[g][h]

    def inv(self, g: int) -> int:
        if self.kind == "Z":
            return -g
        return next(h for h in range(self.order) if self.table[g][h] == self.identity)

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        r = self.e
        for _ in range(k):
            r = self.op(r, g)
        return r

    def is_abelian(self) -> bool:
        if not self.is_finite:
            return True
        return all(self.table[a][b] == self.table[b][a] for a in self.elements() for b in self.elements())

    def check(self) -> list[Finding]:
        if not self.is_finite:
            return []
        G, m = self.elements(), self.order
        out = []
        if any(len(r) != m or any(not 0 <= x < m for x in r) for r in self.table):
            return [Finding("closure", (), "table entries must index group elements")]
        for g in G:
            if self.table[self.identity][g] != g or self.table[g][self.identity] != g:
                out.append(Finding("identity", (g,)))
            if not any(self.table[g][h] == self.identity for h in G):
                out.append(Finding("inverse", (g,)))
        for a, b, c in product(G, repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                out.append(Finding("associativity", (a, b, c)))
                break
        return out


def _acc(d: dict, key, c, F: FieldSpec):
    v = F.add(d.get(key, F.zero), c)
    if v:
        d[key] = v
    else:
        d.pop(key, None)


@dataclass(frozen=True, eq=False)
class HopfDesc:
    """``variant`` is ``"group"`` (kM) or ``"dual"`` (k^G)."""

    field: FieldSpec
    variant: str
    group: GroupSpec

    def __post_init__(self):
        if self.variant not in ("group", "dual"):
            raise ValueError(f"unknown Hopf variant {self.variant!r}")

    @property
    def is_dual(self) -> bool:
        return self.variant == "dual"

    @property
    def is_finite(self) -> bool:
        return self.group.is_finite

    def keys(self) -> list[int]:
        return self.group.elements()

    def key_label(self, g) -> str:
        if self.is_dual:
            return f"p{g}"
        return f"X^{g}" if self.group.kind == "Z" else f"g{g}"

    # structure maps on basis keys

    def unit(self) -> dict:
        F = self.field
        if self.is_dual:
            return {g: F.one for g in self.keys()}
        return {self.group.e: F.one}

    def mul_keys(self, g, h) -> dict:
        if self.is_dual:
            return {g: self.field.one} if g == h else {}
        return {self.group.op(g, h): self.field.one}

    def comul(self, g) -> dict:
        F = self.field
        if self.is_dual:
            G = self.group
            return {(x, G.op(G.inv(x), g)): F.one for x in self.keys()}
        return {(g, g): F.one}

    def counit(self, g):
        F = self.field
        if self.is_dual:
            return F.one if g == self.group.e else F.zero
        return F.one

    def antipode(self, g) -> dict:
        return {self.group.inv(g): self.field.one}

    # the same maps extended linearly to elements {key: scalar}

    def h_mul(self, x: dict, y: dict) -> dict:
        F = self.field
        out = {}
        for g, a in x.items():
            for h, b in y.items():
                for k, c in self.mul_keys(g, h).items():
                    _acc(out, k, F.mul(F.mul(a, b), c), F)
        return out

    def h_comul(self, x: dict) -> dict:
        F = self.field
        out = {}
        for g, a in x.items():
            for k, c in self.comul(g).items():
                _acc(out, k, F.mul(a, c), F)
        return out

    def h_counit(self, x: dict):
        F = self.field
        s = F.zero
        for g, a in x.items():
            s = F.add(s, F.mul(a, self.counit(g)))
        return s

    def __repr__(self):
        kind = f"k^{self.group.name}" if self.is_dual else f"k{self.group.name}"
        return f"HopfDesc({kind} over {self.field})"


def make_group_basis_hopf(field: FieldSpec, group: GroupSpec) -> HopfDesc:
    problems = group.check()
    if problems:
        raise AxiomError(problems[0])
    if not group.is_abelian():
        raise AxiomError(Finding("commutativity", (), "kG is commutative only for abelian G"))
    return HopfDesc(field, "group", group)


def make_dual_group_hopf(field: FieldSpec, group: GroupSpec) -> HopfDesc:
    if not group.is_finite:
        raise ValueError("k^G needs a finite group")
    problems = group.check()
    if problems:
        raise AxiomError(problems[0])
    return HopfDesc(field, "dual", group)


def validate_bialgebra(H: HopfDesc, window: Iterable[int] = range(-2, 3)) -> list[Finding]:
    """Coassociativity, counit, multiplicativity of comultiplication and
    counit, and the antipode law, on basis keys.  Over kZ the keys are taken
    from ``window``.
    """
    F = H.field
    keys = H.keys() if H.is_finite else list(window)
    out = []

    def tensor(d1: dict, d2: dict) -> dict:
        res = {}
        for k1, a in d1.items():
            for k2, b in d2.items():
                _acc(res, k1 + k2, F.mul(a, b), F)
        return res

    for g in keys:
        d = H.comul(g)
        lhs, rhs = {}, {}
        for (x, y), c in d.items():
            for (x1, x2), c1 in H.comul(x).items():
                _acc(lhs, (x1, x2, y), F.mul(c, c1), F)
            for (y1, y2), c2 in H.comul(y).items():
                _acc(rhs, (x, y1, y2), F.mul(c, c2), F)
        if lhs != rhs:
            out.append(Finding("coassociativity", (g,)))
        left, right = {}, {}
        for (x, y), c in d.items():
            _acc(left, y, F.mul(c, H.counit(x)), F)
            _acc(right, x, F.mul(c, H.counit(y)), F)
        if left != {g: F.one} or right != {g: F.one}:
            out.append(Finding("counit", (g,)))
        anti = {}
        for (x, y), c in d.items():
            for s, cs in H.antipode(x).items():
                for k, ck in H.mul_keys(s, y).items():
                    _acc(anti, k, F.mul(F.mul(c, cs), ck), F)
        expect = {k: F.mul(v, H.counit(g)) for k, v in H.unit().items() if F.mul(v, H.counit(g))}
        if anti != expect:
            out.append(Finding("antipode", (g,)))

    for g, h in product(keys, repeat=2):
        gh = H.mul_keys(g, h)
        lhs = {}
        for k, c in gh.items():
            for pair, cp in H.comul(k).items():
                _acc(lhs, pair, F.mul(c, cp), F)
        rhs = {}
        for (a, b), c1 in H.comul(g).items():
            for (x, y), c2 in H.comul(h).items():
                for k1, m1 in H.mul_keys(a, x).items():
                    for k2, m2 in H.mul_keys(b, y).items():
                        _acc(rhs, (k1, k2), F.mul(F.mul(c1, c2), F.mul(m1, m2)), F)
        if lhs != rhs:
            out.append(Finding("comultiplication is multiplicative", (g, h)))
        eps = F.zero
        for k, c in gh.items():
            eps = F.add(eps, F.mul(c, H.counit(k)))
        if eps != F.mul(H.counit(g), H.counit(h)):
            out.append(Finding("counit is multiplicative", (g, h)))
        if H.mul_keys(g, h) != H.mul_keys(h, g):
            out.append(Finding("commutativity", (g, h)))

    u = H.unit()
    if H.h_comul(u) != tensor({(k,): v for k, v in u.items()}, {(k,): v for k, v in u.items()}):
        out.append(Finding("comultiplication preserves the unit", ()))
    if H.h_counit(u) != F.one:
        out.append(Finding("counit preserves the unit", ()))
    return out


def is_hopf_grouplike(H: HopfDesc, x: dict) -> bool:
    F = H.field
    square = {}
    for g, a in x.items():
        for h, b in x.items():
            _acc(square, (g, h), F.mul(a, b), F)
    return H.h_comul(x) == square and H.h_counit(x) == F.one


def characters(H: HopfDesc) -> list[tuple]:
    """All homomorphisms G -> k^*, as value tuples indexed by group element."""
    F, G = H.field, H.group
    if not F.is_prime:
        raise NotEnumerable("characters are enumerated over prime fields only")
    elems = G.elements()
    found = []

    def extend(chi: dict):
        todo = [g for g in elems if g not in chi]
        if not todo:
            found.append(tuple(chi[g] for g in elems))
            return
        g = todo[0]
        for v in F.units():
            trial = dict(chi)
            trial[g] = v
            if _close_character(G, F, trial):
                extend(trial)

    extend({G.e: F.one})
    return sorted(set(found))


def _close_character(G: GroupSpec, F: FieldSpec, chi: dict) -> bool:
    """Propagate chi(gh) = chi(g)chi(h) to a fixed point; False on conflict."""
    changed = True
    while changed:
        changed = False
        for g, a in list(chi.items()):
            for h, b in list(chi.items()):
                k, v = G.op(g, h), F.mul(a, b)
                if k in chi:
                    if chi[k] != v:
                        return False
                else:
                    chi[k] = v
                    changed = True
    return True


def grouplikes_of_hopf(H: HopfDesc, window: Sequence[int] = (-3, 3)) -> list[dict]:
    """G(H) as elements of H.  For kZ only the monomials X^lo .. X^hi are listed."""
    F = H.field
    if H.is_dual:
        return [{g: c for g, c in enumerate(chi)} for chi in characters(H)]
    if H.is_finite:
        return [{g: F.one} for g in H.keys()]
    lo, hi = window
    return [{g: F.one} for g in range(lo, hi + 1)]


def character_of(H: HopfDesc, x: dict) -> tuple:
    """Value table of a grouplike of k^G."""
    return tuple(x.get(g, H.field.zero) for g in H.keys())
