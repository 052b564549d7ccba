"""Semilattices with zero and the ring of finite integer combinations over them.

A semilattice here is any object exposing a commutative, associative,
idempotent product with an absorbing zero.  Elements are plain hashable
values chosen by the concrete semilattice; the two sentinels ``ZERO`` and
``ONE`` stand for the zero element and the adjoined unit of ``E^1``.

``ZComb`` is an element of the free abelian group on the nonzero elements,
multiplied by the bilinear extension of the semilattice product.  Its
idempotents are the projections used to build resolutions.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping

from .errors import CapabilityError, StructureError


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name

    def __reduce__(self):
        return self._name


ZERO = _Sentinel("ZERO")
ONE = _Sentinel("ONE")


class Semilattice:
    """Base class: subclasses implement ``_mul`` for two nonzero, non-unit elements.

    ``_mul`` returns the product or ``ZERO``.  The base class handles the
    sentinels and the diagonal ``e * e = e``.
    """

    zero = ZERO
    one = ONE

    def product(self, a, b):
        if a is ZERO or b is ZERO:
            return ZERO
        if a is ONE:
            return b
        if b is ONE:
            return a
        if a == b:
            return a
        return self._mul(a, b)

    def _mul(self, a, b):
        raise NotImplementedError

    def leq(self, f, e) -> bool:
        """``f <= e`` in the semilattice order, i.e. ``f e = f``."""
        return self.product(f, e) == f

    def lt(self, f, e) -> bool:
        return f != e and self.leq(f, e)

    def key(self, e):
        """Canonical sort key; fixes basis order everywhere."""
        return (0, repr(e))

    def label(self, e) -> str:
        return str(e)

    def sorted(self, elements: Iterable) -> list:
        return sorted(elements, key=self.key)

    def comb(self, e, coeff: int = 1) -> "ZComb":
        """The combination ``coeff * e`` (empty if ``e`` is zero)."""
        if e is ONE:
            raise StructureError("the adjoined unit is not an element of Z_0[E]")
        if e is ZERO or coeff == 0:
            return ZComb(self, {})
        return ZComb(self, {e: coeff})

    def zcomb(self, terms: Mapping) -> "ZComb":
        return ZComb(self, terms)


class FiniteSemilattice(Semilattice):
    """A semilattice given by an explicit element list and product function.

    ``mul(a, b)`` may return ``None`` or ``ZERO`` for the zero product.
    Closure of ``elements`` under ``mul`` is checked at construction.
    """

    def __init__(self, elements: Iterable[Hashable], mul: Callable, key=None, check=True):
        self.elements = list(dict.fromkeys(elements))
        self._fn = mul
        self._key = key
        self._member = set(self.elements)
        if check:
            for a in self.elements:
                for b in self.elements:
                    c = self.product(a, b)
                    if c is not ZERO and c not in self._member:
                        raise StructureError(f"product {a!r}*{b!r}={c!r} leaves the element set")
                    if c != self.product(b, a):
                        raise StructureError(f"product not commutative on {a!r}, {b!r}")

    def _mul(self, a, b):
        c = self._fn(a, b)
        return ZERO if c is None else c

    def key(self, e):
        if self._key is not None:
            return self._key(e)
        return super().key(e)

    def __contains__(self, e):
        return e in self._member


class ZComb:
    """Finite integer combination of nonzero semilattice elements.

    Immutable.  ``+``, ``-`` and ``*`` implement the ring structure of
    ``Z_0[E]``; integers act by scalar multiplication.
    """

    __slots__ = ("parent", "_terms", "_hash")

    def __init__(self, parent: Semilattice, terms: Mapping):
        clean = {}
        for e, c in terms.items():
            if e is ONE:
                raise StructureError("the adjoined unit is not an element of Z_0[E]")
            if e is ZERO or c == 0:
                continue
            clean[e] = int(c)
        self.parent = parent
        self._terms = clean
        self._hash = None

    def _check(self, other):
        if not isinstance(other, ZComb):
            return NotImplemented
        if other.parent is not self.parent:
            raise StructureError("combinations over different semilattices")
        return None

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if self._check(other) is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return ZComb(self.parent, terms)

    __radd__ = __add__

    def __neg__(self):
        return ZComb(self.parent, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ZComb(self.parent, {e: c * other for e, c in self._terms.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        prod = self.parent.product
        terms: dict = {}
        for e, a in self._terms.items():
            for f, b in other._terms.items():
                g = prod(e, f)
                if g is ZERO:
                    continue
                terms[g] = terms.get(g, 0) + a * b
        return ZComb(self.parent, terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, ZComb):
            return NotImplemented
        return self.parent is other.parent and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.parent.sorted(self._terms))

    def items(self):
        return [(e, self._terms[e]) for e in self]

    def coefficient(self, e) -> int:
        return self._terms.get(e, 0)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def is_projection(self) -> bool:
        return self * self == self

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            name = self.parent.label(e)
            if c == 1:
                parts.append(f"+ {name}")
            elif c == -1:
                parts.append(f"- {name}")
            elif c > 0:
                parts.append(f"+ {c}*{name}")
            else:
                parts.append(f"- {-c}*{name}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def product(a: ZComb, b: ZComb) -> ZComb:
    """Bilinear extension of the semilattice product."""
    if a.parent is not b.parent:
        raise StructureError("combinations over different semilattices")
    return a * b


def join(E: Semilattice, fs: Iterable) -> ZComb:
    """Smallest projection of ``Z_0[E]`` dominating every element of ``fs``.

    Equal to the inclusion-exclusion sum over nonempty subsets; evaluated
    incrementally as ``J + f - J f`` to avoid enumerating subsets.
    """
    fs = set(fs)
    if not fs:
        raise ValueError("join of an empty family is not defined")
    for f in fs:
        if f is ZERO or f is ONE:
            raise ValueError(f"join expects nonzero elements of E, got {f!r}")
    fs = E.sorted(fs)
    acc = E.comb(fs[0])
    for f in fs[1:]:
        fc = E.comb(f)
        acc = acc + fc - acc * fc
    return acc


def support(p: ZComb) -> frozenset:
    """Elements carrying a nonzero coefficient in ``p``."""
    return p.support()


def is_finite_cover(E: Semilattice, e, R: Iterable, universe: Iterable | None) -> bool:
    """True iff ``R`` is a finite cover of ``e`` relative to ``universe``.

    ``universe`` must enumerate (at least) the nonzero elements below ``e``
    that should be tested; on truncated semilattices the verdict is only as
    strong as the truncation.
    """
    if universe is None:
        raise CapabilityError("is_finite_cover needs an enumeration of the elements below e")
    if e is ZERO:
        raise ValueError("finite covers are only defined for nonzero elements")
    R = list(R)
    for f in R:
        if f is ZERO or f is ONE or not E.leq(f, e):
            return False
    for f in universe:
        if f is ZERO or not E.leq(f, e):
            continue
        if not any(E.product(f, fj) is not ZERO for fj in R):
            return False
    return True
