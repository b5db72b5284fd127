"""Finitely generated abelian groups: presentations by relation matrices and
quotients of finite groups given by a multiplication callback.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .checks import BoundExceeded
from .exactfield import smith_normal_form


@dataclass(frozen=True)
class AbGroupPresentation:
    generators: tuple
    relations: tuple  # rows of ints, one per relation
    invariants: tuple  # nontrivial invariant factors; 0 stands for Z

    @property
    def is_trivial(self) -> bool:
        return not self.invariants

    @property
    def order(self) -> int | None:
        if 0 in self.invariants:
            return None
        n = 1
        for d in self.invariants:
            n *= d
        return n

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariants if d == 0)

    def describe(self) -> str:
        if self.is_trivial:
            return "1"
        return " x ".join("Z" if d == 0 else f"Z/{d}" for d in self.invariants)

    def to_dict(self):
        return {
            "structure": self.describe(),
            "invariant_factors": list(self.invariants),
            "generators": list(self.generators),
            "relations": [list(r) for r in self.relations],
        }


def invariants_from_relations(relations: Sequence[Sequence[int]], ngens: int):
    """Nontrivial invariant factors of Z^ngens / rowspan(relations), and the
    column transform V used to read off coordinates (x -> x V)."""
    rel = [list(r) for r in relations]
    snf = smith_normal_form(rel, ngens) if rel else smith_normal_form([], ngens)
    diag = snf.diagonal + [0] * (ngens - len(snf.diagonal))
    return diag, snf.V


def coordinates(vec: Sequence[int], diag: Sequence[int], V) -> tuple:
    """Canonical coordinates of a class: (vec V)_i mod d_i, dropping d_i = 1."""
    out = []
    for i, d in enumerate(diag):
        if d == 1:
            continue
        x = sum(v * V[k][i] for k, v in enumerate(vec))
        out.append(x % d if d else x)
    return tuple(out)


@dataclass
class FiniteQuotient:
    presentation: AbGroupPresentation
    coords: dict  # element -> quotient coordinates
    exponents: dict  # element -> exponent vector over the chosen generators
    generators: list
    cosets: list = field(default_factory=list)  # [(representative, coords, members)]


def polycyclic_span(elements: Sequence[Hashable], mul: Callable, one: Hashable, limit: int = 10**6):
    """Pick generators in the given order and express every element in them.

    Returns (generators, relation rows, element -> exponent vector).  Each new
    generator g contributes the relation g^m = (word in earlier generators),
    m minimal; together these present the group.
    """
    span = {one: ()}
    gens, rels = [], []
    for g in elements:
        if g in span:
            continue
        t = len(gens)
        h, m = g, 1
        while h not in span:
            h = mul(h, g)
            m += 1
            if m > limit:
                raise BoundExceeded("element order search did not terminate")
        row = [-x for x in span[h]] + [m]
        gens.append(g)
        rels.append(row)
        new = {}
        power = one
        for k in range(m):
            for s, v in span.items():
                new[mul(s, power)] = v + (k,)
            power = mul(power, g)
        span = new
        if len(span) > limit:
            raise BoundExceeded("group closure exceeded the limit")
    n = len(gens)
    exps = {x: v + (0,) * (n - len(v)) for x, v in span.items()}
    rels = [r + [0] * (n - len(r)) for r in rels]
    return gens, rels, exps


def finite_quotient(elements: Sequence[Hashable], subgroup: Sequence[Hashable], mul: Callable,
                    one: Hashable, label: Callable = str, sort_key: Callable | None = None) -> FiniteQuotient:
    """Present G/N for a finite abelian group G (listed in enumeration order)
    and a subgroup N, and split G into cosets."""
    gens, rels, exps = polycyclic_span(elements, mul, one)
    missing = [x for x in elements if x not in exps]
    if missing or len(exps) != len(set(elements)):
        raise ValueError("the listed elements are not closed under multiplication")
    n = len(gens)
    for x in subgroup:
        if x not in exps:
            raise ValueError(f"subgroup element {x!r} is not in the group")
        rels.append(list(exps[x]))
    diag, V = invariants_from_relations(rels, n)
    pres = AbGroupPresentation(
        tuple(label(g) for g in gens),
        tuple(tuple(r) for r in rels),
        tuple(d for d in diag if d != 1),
    )
    coords = {x: coordinates(exps[x], diag, V) for x in elements}
    groups = {}
    for x in elements:
        groups.setdefault(coords[x], []).append(x)
    key = sort_key or (lambda x: x)
    def rep(mem):
        return one if one in mem else min(mem, key=key)

    cosets = [(rep(mem), c, sorted(mem, key=key)) for c, mem in groups.items()]
    cosets.sort(key=lambda t: (t[0] != one, key(t[0])))
    return FiniteQuotient(pres, coords, exps, gens, cosets)
