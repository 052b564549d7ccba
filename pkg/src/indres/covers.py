"""Cover systems, verification of the four cover conditions, and resolution generators.

A cover system assigns to each nonzero element ``e`` an ordered list of
finite covers ``R_1(e), ..., R_r(e)``.  The order of the list is what the
generator labels ``(x, {i})`` and ``(x, (i, j))`` refer to; translating a
label along the action matches covers as sets, so the order only has to be
chosen consistently within an orbit.

Every checker returns a :class:`Report`.  Failures carry a witness tuple of
element labels.  Elements the system flags as lying on a truncation boundary
produce ``inconclusive`` records instead of failures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as cartesian
from typing import Callable, Iterable, Sequence

from .action import Partition, PartialAction, _moves
from .errors import BasisError, ClosureError, ConditionError, UnsupportedError
from .homology import ChainComplex, IntMatrix, boundary_from_expansions
from .zlattice import ONE, ZERO, Semilattice, ZComb, is_finite_cover, join

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


class CoverSystem:
    """``e -> [R_1(e), ..., R_r(e)]`` with a declared bound on ``r``.

    ``boundary(e)`` marks elements whose covers may be distorted by a
    truncation of the underlying semilattice; checks there are inconclusive.
    """

    def __init__(self, semilattice: Semilattice, covers: Callable, bound: int,
                 boundary: Callable | None = None):
        self.semilattice = semilattice
        self._covers = covers
        self.bound = bound
        self._boundary = boundary

    def covers(self, e) -> list:
        if e is ZERO or e is ONE:
            return []
        return [frozenset(R) for R in self._covers(e)]

    def is_boundary(self, e) -> bool:
        return bool(self._boundary and self._boundary(e))


@dataclass(frozen=True)
class Record:
    condition: str
    witness: tuple
    verdict: str
    detail: str = ""

    def to_json(self) -> dict:
        out = {"condition": self.condition, "witness": list(self.witness), "verdict": self.verdict}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    """Outcome of one or more condition checks.

    Passing cases are summarised as one record per condition; every failure
    and inconclusive case gets its own record.
    """

    records: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [r for r in self.records if r.verdict == FAIL]

    @property
    def inconclusive(self) -> list:
        return [r for r in self.records if r.verdict == INCONCLUSIVE]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        if self.failures:
            return FAIL
        return INCONCLUSIVE if self.inconclusive else PASS

    def merge(self, other: "Report") -> "Report":
        return Report(self.records + other.records)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "records": [r.to_json() for r in self.records]}

    def __str__(self):
        lines = [f"verdict: {self.verdict}"]
        for r in self.records:
            wit = ": " + ", ".join(r.witness) if r.witness else ""
            extra = f" ({r.detail})" if r.detail else ""
            lines.append(f"  [{r.verdict}] {r.condition}{wit}{extra}")
        return "\n".join(lines)


class _Collector:
    def __init__(self, condition, E):
        self.condition = condition
        self.E = E
        self.records = []
        self.checked = 0

    def ok(self):
        self.checked += 1

    def bad(self, verdict, elements, detail=""):
        self.checked += 1
        wit = tuple(self._label(x) for x in elements)
        self.records.append(Record(self.condition, wit, verdict, detail))

    def _label(self, x):
        if isinstance(x, frozenset):
            return "{" + ", ".join(self.E.label(y) for y in self.E.sorted(x)) + "}"
        return self.E.label(x)

    def report(self) -> Report:
        summary = Record(self.condition, (), PASS, f"{self.checked} cases checked") \
            if not any(r.verdict == FAIL for r in self.records) else None
        return Report(([summary] if summary else []) + self.records)


def _sorted(E, universe):
    return E.sorted(e for e in dict.fromkeys(universe) if e is not ZERO and e is not ONE)


def _nonzero_products(E, d, R) -> frozenset:
    return frozenset(x for x in (E.product(d, f) for f in R) if x is not ZERO)


def check_condition_i(E: Semilattice, system: CoverSystem, universe: Iterable) -> Report:
    """For ``de != 0`` and ``R`` a cover of ``e``: ``de`` lies in ``(dR)^x`` or ``(dR)^x`` covers ``de``."""
    col = _Collector("i", E)
    elems = _sorted(E, universe)
    for e in elems:
        covers_e = system.covers(e)
        for d in elems:
            de = E.product(d, e)
            if de is ZERO:
                continue
            target = None
            for R in covers_e:
                dR = _nonzero_products(E, d, R)
                if de in dR:
                    col.ok()
                    continue
                if target is None:
                    target = set(system.covers(de))
                if dR in target:
                    col.ok()
                elif system.is_boundary(de) or system.is_boundary(e):
                    col.bad(INCONCLUSIVE, (d, e, R), "truncation boundary")
                else:
                    col.bad(FAIL, (d, e, R), "(dR)^x is not a listed cover of de")
    return col.report()


def _strictly_below(E, f, g) -> bool:
    return f != g and E.leq(f, g)


def check_condition_ii(E: Semilattice, system: CoverSystem, universe: Iterable) -> Report:
    """Products of support elements of distinct covers drop strictly below each partial product."""
    col = _Collector("ii", E)
    for e in _sorted(E, universe):
        covers_e = list(dict.fromkeys(system.covers(e)))
        supports = []
        for R in covers_e:
            if not R:
                supports.append([])
                continue
            supports.append(E.sorted(join(E, R).support()))
        for r in range(1, len(covers_e) + 1):
            for idx in combinations(range(len(covers_e)), r):
                for eps in cartesian(*(supports[i] for i in idx)):
                    prefix = [ONE]
                    for x in eps:
                        prefix.append(E.product(prefix[-1], x))
                    suffix = [ONE]
                    for x in reversed(eps):
                        suffix.append(E.product(suffix[-1], x))
                    full = prefix[-1]
                    bad = None
                    for j in range(r):
                        partial = e if r == 1 else E.product(prefix[j], suffix[r - 1 - j])
                        if partial is ZERO:
                            continue
                        if not _strictly_below(E, full, partial) and full is not ZERO:
                            bad = (e,) + tuple(eps)
                            break
                    if bad is None:
                        col.ok()
                    elif system.is_boundary(e):
                        col.bad(INCONCLUSIVE, bad, "truncation boundary")
                    else:
                        col.bad(FAIL, bad, "product not strictly below a partial product")
    return col.report()


def check_condition_iii(E: Semilattice, system: CoverSystem, action: PartialAction,
                        generators=None, universe: Iterable = ()) -> Report:
    """Translating the covers of ``e`` by a generator gives the covers of its image."""
    col = _Collector("iii", E)
    moves = _moves(action, generators)
    for e in _sorted(E, universe):
        for s in moves:
            f = action.try_apply(s, e)
            if f is None or f is ZERO:
                continue
            moved = set()
            for R in system.covers(e):
                img = []
                for x in R:
                    y = action.try_apply(s, x)
                    if y is None:
                        raise ClosureError(f"cover element {E.label(x)} leaves the domain of {s!r}", [x])
                    img.append(y)
                moved.add(frozenset(img))
            if moved == set(system.covers(f)):
                col.ok()
            elif system.is_boundary(e) or system.is_boundary(f):
                col.bad(INCONCLUSIVE, (e, f), f"generator {s!r}, truncation boundary")
            else:
                col.bad(FAIL, (e, f), f"generator {s!r} does not carry covers of the first onto the second")
    return col.report()


def check_condition_iv(E: Semilattice, system: CoverSystem, universe: Iterable) -> Report:
    """At most ``bound`` covers per element, each a finite cover on the universe."""
    col = _Collector("iv", E)
    elems = _sorted(E, universe)
    for e in elems:
        covers_e = system.covers(e)
        if len(set(covers_e)) != len(covers_e):
            col.bad(FAIL, (e,), "repeated cover")
            continue
        if len(covers_e) > system.bound:
            col.bad(FAIL, (e,), f"{len(covers_e)} covers exceed the bound {system.bound}")
            continue
        for R in covers_e:
            if is_finite_cover(E, e, R, elems):
                col.ok()
            elif system.is_boundary(e):
                col.bad(INCONCLUSIVE, (e, R), "truncation boundary")
            else:
                col.bad(FAIL, (e, R), "not a finite cover")
    return col.report()


def check_all(E: Semilattice, system: CoverSystem, universe: Iterable,
              action: PartialAction | None = None, generators=None) -> Report:
    universe = list(universe)
    rep = check_condition_i(E, system, universe)
    rep = rep.merge(check_condition_ii(E, system, universe))
    if action is not None:
        rep = rep.merge(check_condition_iii(E, system, action, generators, universe))
    return rep.merge(check_condition_iv(E, system, universe))


# -- resolution generators -------------------------------------------------------------


@dataclass
class ResolutionGenerators:
    """Orbit bases of the first levels of a resolution.

    ``level1`` labels are ``(rep, S)`` with ``S`` a sorted tuple of 1-based
    cover indices; ``expansions1`` holds the projections
    ``prod_{i in S} (rep - join R_i(rep))``.  ``level2`` labels are
    ``(rep, (i, j))`` and ``expansions2`` maps each to a formal combination
    of level-1 labels.
    """

    semilattice: Semilattice
    partition: Partition
    level0: list
    level1: list
    expansions1: dict
    level2: list = field(default_factory=list)
    expansions2: dict = field(default_factory=dict)
    length: int = 1

    def reduced1(self, label) -> dict:
        """Level-1 expansion with every element replaced by its orbit representative."""
        out: dict = {}
        for e, c in self.expansions1[label].items():
            if e not in self.partition:
                raise BasisError(f"generator {label!r} involves {self.semilattice.label(e)}, "
                                 "outside the orbit universe")
            r = self.partition.rep(e)
            out[r] = out.get(r, 0) + c
        return {r: c for r, c in out.items() if c}

    def boundary1(self) -> IntMatrix:
        exps = {g: self.reduced1(g) for g in self.level1}
        return boundary_from_expansions(self.level1, self.level0, exps)

    def boundary2(self) -> IntMatrix:
        return boundary_from_expansions(self.level2, self.level1, self.expansions2)

    def label0(self, x) -> str:
        return self.semilattice.label(x)

    def label1(self, lab) -> str:
        rep, S = lab
        return f"{self.semilattice.label(rep)}||" + ",".join(map(str, S))

    def label2(self, lab) -> str:
        rep, (i, j) = lab
        return f"{self.semilattice.label(rep)}||{i}|{j}"

    def complex(self) -> ChainComplex:
        ranks = [len(self.level0), len(self.level1)]
        bds = [self.boundary1()]
        labels = [[self.label0(x) for x in self.level0], [self.label1(g) for g in self.level1]]
        if self.length >= 2:
            ranks.append(len(self.level2))
            bds.append(self.boundary2())
            labels.append([self.label2(g) for g in self.level2])
        return ChainComplex(ranks, bds, labels)


def _single(E, x, R) -> ZComb:
    return E.comb(x) - join(E, R)


def translate_label(system: CoverSystem, action: PartialAction, partition: Partition, f, S):
    """Orbit-reduced level-1 label for ``(f, S)``.

    The transporter ``k`` with ``theta_k(f) = rep(f)`` carries each cover of
    ``f`` onto a cover of the representative; indices are renamed accordingly.
    """
    E = system.semilattice
    if f not in partition:
        raise BasisError(f"{E.label(f)} lies outside the orbit universe")
    rep = partition.rep(f)
    if rep == f:
        return rep, tuple(sorted(S))
    k = partition.transporter(f)
    covers_f = system.covers(f)
    covers_rep = system.covers(rep)
    index = {R: i for i, R in enumerate(covers_rep, start=1)}
    out = []
    for i in S:
        moved = frozenset(action.apply(k, x) for x in covers_f[i - 1])
        if moved not in index:
            raise BasisError(f"cover {i} of {E.label(f)} does not translate to a cover of {E.label(rep)}")
        out.append(index[moved])
    return rep, tuple(sorted(out))


def build_resolution(system: CoverSystem, partition: Partition, action: PartialAction | None = None,
                     n: int | None = None, universe: Iterable | None = None, check: bool = True,
                     generators=None, keep1: Callable | None = None,
                     keep2: Callable | None = None) -> ResolutionGenerators:
    """Generators of levels 0, 1 and (for two-cover systems) 2.

    ``keep1(rep, S)`` and ``keep2(rep, i, j)`` restrict the bases, which is
    how truncated families drop generators whose boundaries would leave the
    truncation.  With ``check`` the four conditions are verified on
    ``universe`` first and a failure raises :class:`ConditionError`.
    """
    E = system.semilattice
    n = system.bound if n is None else n
    if n > 2:
        raise UnsupportedError(f"resolutions with {n} covers per element are not supported; "
                               "use the Koszul complex for commuting systems")
    if check:
        if universe is None:
            raise ValueError("checking conditions needs a universe")
        report = check_all(E, system, universe, action, generators)
        if not report.passed:
            raise ConditionError("cover conditions failed", report)
    level0 = list(partition.representatives)
    level1, exp1 = [], {}
    for x in level0:
        covers_x = system.covers(x)
        if len(covers_x) > n:
            raise ConditionError(f"{E.label(x)} has {len(covers_x)} covers, more than {n}")
        singles = [_single(E, x, R) for R in covers_x]
        for r in range(1, len(covers_x) + 1):
            for S in combinations(range(1, len(covers_x) + 1), r):
                if keep1 is not None and not keep1(x, S):
                    continue
                p = singles[S[0] - 1]
                for i in S[1:]:
                    p = p * singles[i - 1]
                if not p:
                    continue
                if check:
                    assert p.is_projection(), f"generator {E.label(x)}||{S} is not a projection"
                level1.append((x, S))
                exp1[(x, S)] = p
    res = ResolutionGenerators(E, partition, level0, level1, exp1, length=min(n, 2) if level1 else 1)
    if n < 2:
        res.length = 1
        return res
    res.length = 2
    known1 = set(level1)
    for x in level0:
        covers_x = system.covers(x)
        if len(covers_x) < 2:
            continue
        for i, j in ((1, 2), (2, 1)):
            if keep2 is not None and not keep2(x, i, j):
                continue
            comb: dict = {}

            def add(lab, c):
                if lab not in known1:
                    raise BasisError(f"level-2 generator {E.label(x)}||{i}|{j} needs {lab!r}, "
                                     "which is not a level-1 generator")
                comb[lab] = comb.get(lab, 0) + c

            add((x, (i,)), 1)
            add((x, (1, 2)), -1)
            Ri = covers_x[i - 1]
            for f in E.sorted(covers_x[j - 1]):
                fRi = _nonzero_products(E, f, Ri)
                if f in fRi:
                    continue
                covers_f = system.covers(f)
                if fRi not in covers_f:
                    raise ConditionError(f"{{f R_{i}}} is not a cover of {E.label(f)}")
                add(translate_label(system, action, partition, f, (covers_f.index(fRi) + 1,)), -1)
            comb = {k: v for k, v in comb.items() if v}
            res.level2.append((x, (i, j)))
            res.expansions2[(x, (i, j))] = comb
    return res
