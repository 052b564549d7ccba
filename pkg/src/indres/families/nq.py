"""Boundary quotients of ``N x| Q`` for ``Q`` generated by distinct primes.

The K-theory uses the one-orbit Koszul complex of the operators
``1 - p_i``.  The arithmetic-progression semilattice is provided for
checking the cover conditions: the element ``(j, m)`` stands for
``(j + m N) x m Q``, with exact rational start ``j`` and modulus ``m`` in
the group generated by the primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from ..action import Affine, GlobalAction, free_action_check
from ..covers import CoverSystem, Report, check_all
from ..errors import ConditionError, ValidationError
from ..homology import ChainComplex, IntMatrix, koszul_complex
from ..ktheory import KResult, assemble
from ..zlattice import ZERO, Semilattice


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class NqDesc:
    primes: tuple

    def __post_init__(self):
        ps = tuple(int(p) for p in self.primes)
        if not ps:
            raise ValidationError("at least one prime is required")
        for p in ps:
            if not _is_prime(p):
                raise ValidationError(f"{p} is not a prime")
        if len(set(ps)) != len(ps):
            raise ValidationError("primes must be pairwise distinct")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def from_json(cls, data: Mapping) -> "NqDesc":
        try:
            return cls(tuple(data["primes"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"nq input needs a 'primes' list: {exc}") from exc


class Progressions(Semilattice):
    """Elements ``(j, m)``; the product intersects the progressions by CRT."""

    def __init__(self, primes: Sequence[int]):
        self.primes = tuple(primes)
        self._cache: dict = {}

    def valuations(self, x: Fraction) -> list:
        out = []
        num, den = x.numerator, x.denominator
        for p in self.primes:
            v = 0
            while num % p == 0:
                num //= p
                v += 1
            while den % p == 0:
                den //= p
                v -= 1
            out.append(v)
        if num != 1 or den != 1:
            raise ValueError(f"{x} is not in the group generated by {self.primes}")
        return out

    def _from_valuations(self, vs) -> Fraction:
        x = Fraction(1)
        for p, v in zip(self.primes, vs):
            x *= Fraction(p) ** v
        return x

    def _mul(self, a, b):
        key = (a, b) if self.key(a) <= self.key(b) else (b, a)
        out = self._cache.get(key)
        if out is None:
            out = self._cache[key] = self._intersect(*key)
        return out

    def _intersect(self, a, b):
        (j, m), (k, n) = a, b
        # generator of mZ + nZ, and of mZ intersected with nZ
        g = Fraction(math.gcd(m.numerator * n.denominator, n.numerator * m.denominator),
                     m.denominator * n.denominator)
        lcm = m * n / g
        diff = (k - j) / g
        if diff.denominator != 1:
            return ZERO
        A, B = m / g, n / g  # coprime integers
        assert A.denominator == 1 and B.denominator == 1
        A, B, diff = int(A), int(B), int(diff)
        t = (diff * pow(A, -1, B)) % B if B > 1 else 0
        x = j + m * t
        low = max(j, k)
        steps = math.ceil((low - x) / lcm)
        return (x + lcm * steps, lcm)

    def key(self, e):
        j, m = e
        return (m, j)

    def label(self, e) -> str:
        j, m = e
        return f"({j}+{m}N)x{m}Q"


def progression_covers(E: Progressions) -> CoverSystem:
    def covers(e):
        j, m = e
        return [[(j + m * r, m * p) for r in range(p)] for p in E.primes]

    return CoverSystem(E, covers, len(E.primes))


def affine_action(E: Progressions) -> GlobalAction:
    gens = [Affine(1, 1)] + [Affine(0, p) for p in E.primes]

    def act(g, e):
        j, m = e
        return (g.shift + g.scale * j, g.scale * m)

    return GlobalAction(E, Affine(0, 1), gens, act)


def progression_universe(E: Progressions, starts: int = 2, width: int = 1) -> list:
    """Small test set: starts ``0..starts-1``, moduli products of at most ``width`` distinct primes."""
    mods = [1]
    for k in range(1, width + 1):
        mods += [math.prod(c) for c in combinations(E.primes, k)]
    return E.sorted({(Fraction(j), Fraction(m)) for j in range(starts) for m in mods})


def check_nq(N: NqDesc, starts: int = 2, width: int = 1) -> Report:
    E = Progressions(N.primes)
    return check_all(E, progression_covers(E), progression_universe(E, starts, width), affine_action(E))


def nq_complex(N: NqDesc) -> ChainComplex:
    ops = [IntMatrix([[1 - p]]) for p in N.primes]
    return koszul_complex(ops, 1)


def nq_ktheory(N: NqDesc, check: bool = True) -> KResult:
    notes = []
    if check:
        rep = check_nq(N)
        if not rep.passed:
            raise ConditionError("cover conditions failed", rep)
        E = Progressions(N.primes)
        free, depth, wit = free_action_check(progression_universe(E), affine_action(E), depth=3)
        notes.append("cover conditions verified on a finite set of progressions")
        notes.append(f"free action verified to word length {depth}" if free else f"action not free: {wit!r}")
    C = nq_complex(N)
    H = C.all_homology()
    notes.append(f"g = gcd(p_i - 1) = {math.gcd(*(p - 1 for p in N.primes))}")
    return assemble(H, C.length, notes)
