"""Assembling K0 and K1 from the homology of a resolution complex."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .homology import AbGroup, ChainComplex, invariant_chain

EXACT = "exact"
EXTENSION = "extension_ambiguous"
UNDETERMINED = "undetermined"


def direct_sum(a: AbGroup, b: AbGroup) -> AbGroup:
    return AbGroup(a.rank + b.rank, invariant_chain(a.torsion + b.torsion))


@dataclass(frozen=True)
class Extension:
    """An unresolved extension ``0 -> sub -> K -> quot -> 0``."""

    sub: AbGroup
    quot: AbGroup

    def __str__(self):
        return f"extension of {self.quot} by {self.sub}"

    def to_json(self) -> dict:
        return {"extension": {"sub": self.sub.to_json(), "quot": self.quot.to_json()}}


@dataclass
class KResult:
    K0: object
    K1: object
    status: str
    notes: list = field(default_factory=list)
    homology: list = field(default_factory=list)

    def to_json(self) -> dict:
        def enc(g):
            return None if g is None else g.to_json()

        return {
            "K0": enc(self.K0),
            "K1": enc(self.K1),
            "status": self.status,
            "notes": list(self.notes),
            "homology": [h.to_json() for h in self.homology],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def classes(self) -> tuple:
        """Hashable summary of the isomorphism classes involved."""
        def cls(g):
            if isinstance(g, Extension):
                return ("ext", g.sub, g.quot)
            return g
        return (cls(self.K0), cls(self.K1), self.status, tuple(self.homology))

    def render(self) -> str:
        lines = [f"K0 = {self.K0 if self.K0 is not None else '?'}",
                 f"K1 = {self.K1 if self.K1 is not None else '?'}",
                 f"status: {self.status}"]
        lines += [f"H{k} = {h}" for k, h in enumerate(self.homology)]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def assemble(H: Sequence[AbGroup], n: int, notes: Sequence[str] = ()) -> KResult:
    """K-groups from ``H_0, ..., H_n`` of a length-``n`` complex under a free action.

    Lengths up to two split; length three leaves an extension for K0 when
    ``H_3`` vanishes; anything longer is left undetermined.
    """
    H = list(H)
    if len(H) != n + 1:
        raise ValueError(f"expected {n + 1} homology groups for length {n}, got {len(H)}")
    notes = list(notes)
    if n == 0:
        return KResult(H[0], AbGroup(), EXACT, notes, H)
    if n == 1:
        return KResult(H[0], H[1], EXACT, notes, H)
    if n == 2:
        # the top homology is a subgroup of a free module, hence free
        assert not H[2].torsion, "top homology has torsion"
        return KResult(direct_sum(H[0], H[2]), H[1], EXACT, notes, H)
    if n == 3 and H[3].is_trivial:
        notes.append("H3 = 0; K0 is an extension of H2 by H0 that is not resolved")
        return KResult(Extension(H[0], H[2]), H[1], EXTENSION, notes, H)
    notes.append("K-groups not determined by homology alone at this length"
                 if n > 3 else "H3 != 0; K-groups not determined")
    return KResult(None, None, UNDETERMINED, notes, H)


def complex_ktheory(C: ChainComplex, notes: Sequence[str] = ()) -> KResult:
    return assemble(C.all_homology(), C.length, notes)
