"""Boundary quotients of right-angled Artin monoids.

The constructible ideals below the monoid itself are the ideals ``sP``
intersected over cliques of the graph, so the semilattice is the set of
cliques (the empty clique is ``P``) with union as product whenever the
union is again a clique.  The group acts with a single orbit, and the one
cover ``{sP : s in S}`` yields the boundary map multiplication by the
Euler characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from ..action import Partition
from ..covers import CoverSystem, build_resolution
from ..errors import ValidationError
from ..homology import ChainComplex
from ..ktheory import KResult, complex_ktheory
from ..zlattice import ZERO, Semilattice


@dataclass(frozen=True)
class RaamDesc:
    generators: tuple
    edges: tuple

    def __post_init__(self):
        gens = tuple(str(s) for s in self.generators)
        if not gens:
            raise ValidationError("at least one generator is required")
        if len(set(gens)) != len(gens):
            raise ValidationError("duplicate generator")
        seen = set()
        for s, t in self.edges:
            if s not in gens or t not in gens:
                raise ValidationError(f"edge ({s!r}, {t!r}) has an unknown endpoint")
            if s == t:
                raise ValidationError(f"loop at {s!r}; the graph must be simple")
            key = frozenset((s, t))
            if key in seen:
                raise ValidationError(f"repeated edge {s!r}-{t!r}")
            seen.add(key)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "edges", tuple(tuple(map(str, e)) for e in self.edges))

    @classmethod
    def from_json(cls, data: Mapping) -> "RaamDesc":
        try:
            return cls(tuple(data["generators"]), tuple(tuple(e) for e in data.get("edges", [])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"raam input needs 'generators' and 'edges': {exc}") from exc

    def adjacent(self, s, t) -> bool:
        return frozenset((s, t)) in {frozenset(e) for e in self.edges}

    def cliques(self) -> list:
        """All cliques including the empty one, by size then generator order."""
        gens = self.generators
        adj = {frozenset(e) for e in self.edges}
        out = []
        for k in range(len(gens) + 1):
            layer = [frozenset(c) for c in combinations(gens, k)
                     if all(frozenset(p) in adj for p in combinations(c, 2))]
            if k and not layer:
                break
            out += layer
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** len(K) for K in self.cliques())

    def is_join(self) -> bool:
        """The graph is a join iff its complement is disconnected."""
        gens = self.generators
        if len(gens) < 2:
            return False
        seen = {gens[0]}
        stack = [gens[0]]
        while stack:
            s = stack.pop()
            for t in gens:
                if t not in seen and t != s and not self.adjacent(s, t):
                    seen.add(t)
                    stack.append(t)
        return len(seen) < len(gens)


class CliqueSemilattice(Semilattice):
    def __init__(self, desc: RaamDesc):
        self.desc = desc
        self._index = {s: i for i, s in enumerate(desc.generators)}
        self._cliques = set(desc.cliques())

    def _mul(self, a, b):
        u = a | b
        return u if u in self._cliques else ZERO

    def key(self, K):
        return (len(K), tuple(sorted(self._index[s] for s in K)))

    def label(self, K) -> str:
        if not K:
            return "P"
        return "".join(sorted(K, key=self._index.get)) + "P"


def raam_complex(R: RaamDesc) -> ChainComplex:
    E = CliqueSemilattice(R)
    empty = frozenset()
    cliques = E.sorted(R.cliques())
    part = Partition({empty: cliques}, {K: empty for K in cliques})
    single = [frozenset({s}) for s in R.generators]
    system = CoverSystem(E, lambda e: [single] if e == empty else [], 1)
    res = build_resolution(system, part, n=1, check=False)
    C = res.complex()
    chi = R.euler_characteristic()
    assert C.boundaries[0].rows == ((chi,),), "boundary differs from the Euler characteristic"
    return C


def raam_ktheory(R: RaamDesc) -> KResult:
    notes = [f"euler characteristic {R.euler_characteristic()}"]
    if R.is_join():
        notes.append("warning: the graph is a join (complement disconnected); "
                     "the formula assumes an irreducible graph")
    return complex_ktheory(raam_complex(R), notes)
