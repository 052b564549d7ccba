"""One-dimensional tilings given by a factorial language.

Elements of the semilattice are words with one checked letter, stored as
``(word, position)``.  The product lays the two words over each other with
the checked letters aligned; it is nonzero when the overlap agrees and the
union is still in the language.  The free group on the two-letter words
``ab`` of the language moves the check one letter to the left.

The complex is truncated: degree 0 uses words of length at most ``N+1``,
degree 1 the single-cover generators of words up to length ``N`` and the
double-cover generators up to ``N-1``, degree 2 words up to ``N-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..action import GeneratorAction, Move, free_action_check, orbits
from ..covers import CoverSystem, build_resolution, check_all
from ..errors import ValidationError
from ..homology import ChainComplex
from ..ktheory import KResult, complex_ktheory
from ..zlattice import ZERO, Semilattice


class Language:
    """Factorial language from a period word (bi-infinite repetition) or a word list."""

    def __init__(self, alphabet: Sequence[str] | None = None, period: str | None = None,
                 words: Sequence[str] | None = None):
        if (period is None) == (words is None):
            raise ValidationError("give exactly one of a period word or a word list")
        self.period = period
        if period is not None:
            if not period:
                raise ValidationError("empty period word")
            self.max_len = None
            self._words = None
            letters = set(period)
        else:
            ws = {w for w in words if w}
            if not ws:
                raise ValidationError("empty word list")
            for w in sorted(ws):
                for i in range(len(w)):
                    for j in range(i + 1, len(w) + 1):
                        if w[i:j] not in ws:
                            raise ValidationError(f"language not factorial: {w[i:j]!r} "
                                                  f"is a substring of {w!r} but not listed")
            self._words = ws
            self.max_len = max(len(w) for w in ws)
            letters = {c for w in ws for c in w}
        if alphabet is None:
            alphabet = sorted(letters)
        alphabet = [str(a) for a in alphabet]
        for a in alphabet:
            if len(a) != 1:
                raise ValidationError(f"letters must be single characters, got {a!r}")
        if len(set(alphabet)) != len(alphabet):
            raise ValidationError("repeated letter in alphabet")
        if set(alphabet) != letters:
            missing = sorted(set(alphabet) - letters)
            extra = sorted(letters - set(alphabet))
            raise ValidationError(f"alphabet mismatch: unused {missing}, undeclared {extra}")
        self.alphabet = tuple(alphabet)
        self._order = {a: i for i, a in enumerate(self.alphabet)}

    def __contains__(self, u: str) -> bool:
        if not u:
            return True
        if self._words is not None:
            return u in self._words
        p = self.period
        reps = len(u) // len(p) + 2
        return u in p * reps

    def words(self, max_len: int) -> list:
        out = []
        layer = [""]
        for _ in range(max_len):
            layer = [w + a for w in layer for a in self.alphabet if w + a in self]
            out += layer
        return out

    def word_key(self, w: str):
        return (len(w), tuple(self._order[c] for c in w))

    def left(self, w: str) -> list:
        return [a + w for a in self.alphabet if a + w in self]

    def right(self, w: str) -> list:
        return [w + a for a in self.alphabet if w + a in self]

    def check_extendable(self, max_len: int):
        """Every word shorter than ``max_len`` extends on both sides."""
        for w in self.words(max_len - 1):
            if not self.left(w) or not self.right(w):
                raise ValidationError(f"word {w!r} does not extend on both sides")


@dataclass(frozen=True)
class TilingDesc:
    alphabet: tuple | None = None
    period: str | None = None
    words: tuple | None = None

    def language(self) -> Language:
        return Language(self.alphabet, self.period, self.words)

    @classmethod
    def from_json(cls, data: Mapping) -> "TilingDesc":
        alphabet = data.get("alphabet")
        alphabet = tuple(str(a) for a in alphabet) if alphabet is not None else None
        period = data.get("period")
        words = data.get("words")
        desc = cls(alphabet, None if period is None else str(period),
                   None if words is None else tuple(str(w) for w in words))
        desc.language()
        return desc


class CheckedWords(Semilattice):
    def __init__(self, language: Language):
        self.language = language

    def _mul(self, a, b):
        (w, i), (v, j) = a, b
        off = i - j  # position of v[0] in w's coordinates
        start = min(0, off)
        end = max(len(w), off + len(v))
        chars = [None] * (end - start)
        for k, c in enumerate(w):
            chars[k - start] = c
        for k, c in enumerate(v):
            pos = k + off - start
            if chars[pos] is not None and chars[pos] != c:
                return ZERO
            chars[pos] = c
        u = "".join(chars)
        return (u, i - start) if u in self.language else ZERO

    def key(self, e):
        w, i = e
        return self.language.word_key(w) + (i,)

    def label(self, e) -> str:
        w, i = e
        return f"{w[:i]}[{w[i]}]{w[i + 1:]}"


def check_left_action(E: CheckedWords) -> GeneratorAction:
    moves = {}
    for ab in E.language.words(2):
        if len(ab) != 2:
            continue

        def fwd(x):
            return (x[0], x[1] - 1)

        def bwd(x):
            return (x[0], x[1] + 1)

        moves[ab] = Move((ab, 1), (ab, 0), fwd, bwd)
    return GeneratorAction(E, moves)


def extension_covers(E: CheckedWords) -> CoverSystem:
    L = E.language

    def covers(e):
        w, i = e
        R1 = [(u, i + 1) for u in L.left(w)]
        R2 = [(u, i) for u in L.right(w)]
        return [R1, R2] if R1 and R2 else []

    boundary = None
    if L.max_len is not None:
        def boundary(e):
            return len(e[0]) >= L.max_len
    return CoverSystem(E, covers, 2, boundary)


@dataclass
class TilingModel:
    language: Language
    semilattice: CheckedWords
    action: GeneratorAction
    system: CoverSystem

    def universe(self, max_len: int) -> list:
        return [(w, i) for w in self.language.words(max_len) for i in range(len(w))]

    def check(self, max_len: int):
        if self.language.max_len is not None:
            # products of words in the universe must stay inside the listed words
            max_len = min(max_len, self.language.max_len - 1)
        return check_all(self.semilattice, self.system, self.universe(max_len), self.action)


def tiling_model(T: TilingDesc) -> TilingModel:
    L = T.language()
    E = CheckedWords(L)
    return TilingModel(L, E, check_left_action(E), extension_covers(E))


def tiling_complex(T: TilingDesc, depth: int, check: bool = True) -> ChainComplex:
    if depth < 2:
        raise ValidationError("tiling depth must be at least 2")
    M = tiling_model(T)
    L = M.language
    if L.max_len is not None:
        # checking covers on words of length depth+1 needs one more letter
        if L.max_len < depth + 2:
            raise ValidationError(f"word list too short for depth {depth}: need words of length {depth + 2}")
        L.check_extendable(L.max_len)
    universe = M.universe(depth + 1)
    part = orbits(universe, M.action)

    def keep1(rep, S):
        return len(rep[0]) <= (depth if len(S) == 1 else depth - 1)

    def keep2(rep, i, j):
        return len(rep[0]) <= depth - 1

    res = build_resolution(M.system, part, M.action, n=2, universe=universe, check=check,
                           keep1=keep1, keep2=keep2)
    return res.complex()


@dataclass
class Stabilization:
    depths: list
    results: list
    stabilized: bool
    result: KResult = field(repr=False, default=None)

    def to_json(self) -> dict:
        return {
            "depths": list(self.depths),
            "per_depth": [r.to_json() for r in self.results],
            "stabilized": self.stabilized,
            "result": self.result.to_json(),
        }


def tiling_ktheory(T: TilingDesc, depths: Sequence[int] = (3, 4, 5), check: bool = True) -> Stabilization:
    depths = list(depths)
    if len(depths) < 2:
        raise ValidationError("stabilization needs at least two depths")
    M = tiling_model(T)
    results = []
    for N in depths:
        notes = [f"truncation depth {N}"]
        if check:
            free, d, wit = free_action_check(M.universe(N + 1), M.action, depth=4)
            notes.append(f"free action verified to word length {d}" if free else f"action not free: {wit!r}")
        results.append(complex_ktheory(tiling_complex(T, N, check=check), notes))
    a, b = results[-2], results[-1]
    stable = (a.K0, a.K1) == (b.K0, b.K1)
    final = KResult(b.K0, b.K1, b.status,
                    b.notes + [("stabilized" if stable else "not stabilized")
                               + f" between depths {depths[-2]} and {depths[-1]}"], b.homology)
    return Stabilization(depths, results, stable, final)
