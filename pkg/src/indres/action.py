"""Partial group actions on semilattices, orbits, and the enveloping semilattice.

Groups are represented by normal forms: reduced words for free groups,
exact affine pairs ``x -> b + a x`` for the ``Z[1/p] x| <p>`` groups, and
residues for finite cyclic groups.  A partial action assigns to each group
element a domain idempotent ``d(g)`` in ``E^1`` and an isomorphism
``theta_g`` from the corner below ``d(g)`` onto the corner below ``r(g)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable

from .errors import ClosureError
from .zlattice import ONE, ZERO, Semilattice


# -- groups -----------------------------------------------------------------


@dataclass(frozen=True)
class FreeWord:
    """Reduced word in a free group; ``letters`` holds ``(generator, +1|-1)``."""

    letters: tuple = ()

    @classmethod
    def gen(cls, name) -> "FreeWord":
        return cls(((name, 1),))

    @classmethod
    def from_letters(cls, letters: Iterable) -> "FreeWord":
        out: list = []
        for g, s in letters:
            if out and out[-1][0] == g and out[-1][1] == -s:
                out.pop()
            else:
                out.append((g, s))
        return cls(tuple(out))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord.from_letters(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -s) for g, s in reversed(self.letters)))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def sort_key(self):
        return (len(self.letters), tuple((repr(g), -s) for g, s in self.letters))

    def __repr__(self):
        if not self.letters:
            return "1"
        return "".join(f"{g}" if s == 1 else f"{g}^-1" for g, s in self.letters)


@dataclass(frozen=True)
class Affine:
    """The map ``x -> shift + scale * x`` with exact rational entries."""

    shift: Fraction = Fraction(0)
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "shift", Fraction(self.shift))
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    def __mul__(self, other: "Affine") -> "Affine":
        return Affine(self.shift + self.scale * other.shift, self.scale * other.scale)

    def inverse(self) -> "Affine":
        return Affine(-self.shift / self.scale, 1 / self.scale)

    @property
    def is_identity(self) -> bool:
        return self.shift == 0 and self.scale == 1

    def sort_key(self):
        return (self.scale, self.shift)

    def __call__(self, x):
        return self.shift + self.scale * x

    def __repr__(self):
        return f"({self.shift},{self.scale})"


@dataclass(frozen=True)
class Cyclic:
    """Residue ``k`` in ``Z/n``."""

    k: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % self.n)

    def __mul__(self, other: "Cyclic") -> "Cyclic":
        return Cyclic(self.k + other.k, self.n)

    def inverse(self) -> "Cyclic":
        return Cyclic(-self.k, self.n)

    @property
    def is_identity(self) -> bool:
        return self.k == 0

    def sort_key(self):
        return (self.k,)

    def __repr__(self):
        return f"{self.k} mod {self.n}"


# -- partial actions ----------------------------------------------------------


class PartialAction:
    """Interface for a partial action of a group on a semilattice."""

    semilattice: Semilattice
    identity = None
    generators: list

    def domain(self, g):
        raise NotImplementedError

    def range(self, g):
        return self.domain(g.inverse())

    def try_apply(self, g, e):
        """``theta_g(e)`` or ``None`` when ``e`` is not below ``d(g)``."""
        raise NotImplementedError

    def apply(self, g, e):
        f = self.try_apply(g, e)
        if f is None:
            raise ValueError(f"{e!r} is not in the domain of theta_{g!r}")
        return f

    def moves(self) -> list:
        """Generators together with their inverses."""
        out = []
        for s in self.generators:
            out.append(s)
            inv = s.inverse()
            if inv != s:
                out.append(inv)
        return out


@dataclass
class Move:
    """One generator of a free group acting partially.

    ``dom``/``ran`` are the domain and range idempotents; ``forward`` maps
    elements below ``dom`` to elements below ``ran`` and ``backward`` inverts it.
    """

    dom: Hashable
    ran: Hashable
    forward: Callable
    backward: Callable


class GeneratorAction(PartialAction):
    """Partial action of a free group where ``theta_g`` composes along the reduced word."""

    def __init__(self, semilattice: Semilattice, moves: dict):
        self.semilattice = semilattice
        self._moves = dict(moves)
        self.identity = FreeWord()
        self.generators = [FreeWord.gen(name) for name in sorted(self._moves, key=repr)]

    def _step(self, name, sign, e):
        E = self.semilattice
        mv = self._moves[name]
        if sign == 1:
            return mv.forward(e) if E.leq(e, mv.dom) else None
        return mv.backward(e) if E.leq(e, mv.ran) else None

    def _pair(self, name, sign):
        mv = self._moves[name]
        return (mv.dom, mv.ran) if sign == 1 else (mv.ran, mv.dom)

    def try_apply(self, g: FreeWord, e):
        if e is ZERO:
            return ZERO
        for name, sign in reversed(g.letters):
            e = self._step(name, sign, e)
            if e is None:
                return None
        return e

    def domain(self, g: FreeWord):
        E = self.semilattice
        if g.is_identity:
            return ONE
        letters = g.letters
        name, sign = letters[0]
        D = self._pair(name, sign)[0]
        for name, sign in letters[1:]:
            dom, ran = self._pair(name, sign)
            x = E.product(ran, D)
            if x is ZERO:
                return ZERO
            D = self._step(name, -sign, x)
        return D


class GlobalAction(PartialAction):
    """A global action given by ``act(g, e)``; every domain is the unit."""

    def __init__(self, semilattice: Semilattice, identity, generators, act: Callable):
        self.semilattice = semilattice
        self.identity = identity
        self.generators = list(generators)
        self._act = act

    def domain(self, g):
        return ONE

    def try_apply(self, g, e):
        if e is ZERO:
            return ZERO
        return self._act(g, e)


def trivial_action(semilattice: Semilattice) -> GlobalAction:
    return GlobalAction(semilattice, FreeWord(), [], lambda g, e: e)


# -- orbits -----------------------------------------------------------------


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


@dataclass
class Partition:
    """Orbit partition with canonical representatives and transporters.

    ``transporter(e)`` is a group element ``k`` with ``theta_k(e) = rep(e)``.
    """

    classes: dict
    rep_of: dict
    transporters: dict = field(default_factory=dict)

    def rep(self, e):
        return self.rep_of[e]

    def transporter(self, e):
        return self.transporters[e]

    @property
    def representatives(self) -> list:
        return list(self.classes)

    def __len__(self):
        return len(self.classes)

    def __contains__(self, e):
        return e in self.rep_of


def _moves(action, generators):
    if generators is None:
        return action.moves()
    out = []
    for s in generators:
        out.append(s)
        if s.inverse() != s:
            out.append(s.inverse())
    return out


def orbits(elements: Iterable, action: PartialAction, generators=None, strict=True) -> Partition:
    """Partition ``elements`` into orbits of the partial action.

    ``e ~ f`` when a chain of generator moves inside ``elements`` links them.
    With ``strict`` the set must be closed under every move; otherwise moves
    that leave the set are ignored (the action is restricted to the set).
    """
    E = action.semilattice
    elements = [e for e in dict.fromkeys(elements) if e is not ZERO]
    members = set(elements)
    moves = _moves(action, generators)
    uf = _UnionFind(elements)
    escaping = []
    edges: dict = {e: [] for e in elements}
    for e in elements:
        for s in moves:
            f = action.try_apply(s, e)
            if f is None or f is ZERO:
                continue
            if f not in members:
                escaping.append((e, s, f))
                continue
            uf.union(e, f)
            edges[e].append((s, f))
    if strict and escaping:
        raise ClosureError(
            f"{len(escaping)} moves leave the element set, e.g. {escaping[0]}",
            [f for _, _, f in escaping],
        )
    groups: dict = {}
    for e in elements:
        groups.setdefault(uf.find(e), []).append(e)
    classes = {}
    rep_of = {}
    transporters = {}
    for members_ in groups.values():
        members_ = E.sorted(members_)
        rep = members_[0]
        classes[rep] = members_
        for e in members_:
            rep_of[e] = rep
        # transporters: BFS outward from the representative
        transporters[rep] = action.identity
        queue = deque([rep])
        while queue:
            x = queue.popleft()
            t = transporters[x]
            for s, f in edges[x]:
                if f not in transporters:
                    transporters[f] = t * s.inverse()
                    queue.append(f)
    order = E.sorted(classes)
    classes = {r: classes[r] for r in order}
    return Partition(classes, rep_of, transporters)


def free_action_check(elements: Iterable, action: PartialAction, generators=None, depth: int = 4):
    """Search for a nonidentity group word fixing an element.

    Explores generator moves up to ``depth`` steps from every element.
    Returns ``(is_free, depth, witness)``; ``witness`` is ``(element, g)``
    with ``theta_g(element) = element`` and ``g != 1`` when not free.
    """
    moves = _moves(action, generators)
    for e in elements:
        if e is ZERO:
            continue
        reached = {e: action.identity}
        frontier = [e]
        for _ in range(depth):
            nxt = []
            for x in frontier:
                k = reached[x]
                for s in moves:
                    f = action.try_apply(s, x)
                    if f is None or f is ZERO:
                        continue
                    h = s * k
                    if f in reached:
                        if reached[f] != h:
                            g = reached[f].inverse() * h
                            return False, depth, (e, g)
                        continue
                    reached[f] = h
                    nxt.append(f)
            frontier = nxt
            if not frontier:
                break
    return True, depth, None


# -- enveloping semilattice -------------------------------------------------------


@dataclass(frozen=True)
class EnvElem:
    """Canonical class ``[g, e]``; ``e`` is the least element of its orbit."""

    g: object
    e: object

    def __repr__(self):
        return f"[{self.g!r},{self.e!r}]"


ENV_ZERO = EnvElem(None, ZERO)


class Envelope:
    """Balls of ``Env(E)`` around the elements a computation touches.

    Canonical representatives come from ``partition`` when it covers the
    element, otherwise from a bounded search over generator moves.
    """

    def __init__(self, action: PartialAction, partition: Partition | None = None,
                 depth: int = 6, max_nodes: int = 20000):
        self.action = action
        self.semilattice = action.semilattice
        self.partition = partition
        self.depth = depth
        self.max_nodes = max_nodes

    def _canonical(self, e):
        E = self.semilattice
        if self.partition is not None and e in self.partition:
            return self.partition.rep(e), [self.partition.transporter(e)]
        reached = {e: [self.action.identity]}
        frontier = [e]
        moves = self.action.moves()
        for _ in range(self.depth):
            nxt = []
            for x in frontier:
                for k in reached[x]:
                    for s in moves:
                        f = self.action.try_apply(s, x)
                        if f is None or f is ZERO:
                            continue
                        h = s * k
                        if f not in reached:
                            reached[f] = [h]
                            nxt.append(f)
                        elif h not in reached[f]:
                            reached[f].append(h)
            frontier = nxt
            if not frontier or len(reached) > self.max_nodes:
                break
        best = min(reached, key=E.key)
        return best, reached[best]

    def element(self, g, e) -> EnvElem:
        if e is ZERO:
            return ENV_ZERO
        rep, ks = self._canonical(e)
        candidates = [g * k.inverse() for k in ks]
        h = min(candidates, key=lambda x: x.sort_key())
        return EnvElem(h, rep)

    def embed(self, e) -> EnvElem:
        return self.element(self.action.identity, e)

    def product(self, x: EnvElem, y: EnvElem) -> EnvElem:
        """``[g,d][h,e] = [g, d theta_{g^-1 h}(e d(g^-1 h))]``."""
        if x.e is ZERO or y.e is ZERO:
            return ENV_ZERO
        E = self.semilattice
        k = x.g.inverse() * y.g
        D = self.action.domain(k)
        if D is ZERO:
            return ENV_ZERO
        ed = E.product(y.e, D)
        if ed is ZERO:
            return ENV_ZERO
        moved = self.action.apply(k, ed)
        z = E.product(x.e, moved)
        return self.element(x.g, z)

    def dilate(self, g, x: EnvElem) -> EnvElem:
        """``tau_g [h, e] = [g h, e]``."""
        if x.e is ZERO:
            return ENV_ZERO
        return self.element(g * x.g, x.e)


def equivalent(action: PartialAction, pair1, pair2) -> bool:
    """Direct test of ``(g,d) ~ (h,e)``, i.e. ``theta_{h^-1 g}(d) = e``."""
    (g, d), (h, e) = pair1, pair2
    k = h.inverse() * g
    f = action.try_apply(k, d)
    return f is not None and f == e


def env_product(envelope: Envelope, x: EnvElem, y: EnvElem) -> EnvElem:
    return envelope.product(x, y)


def dilate(envelope: Envelope, g, x: EnvElem) -> EnvElem:
    return envelope.dilate(g, x)
