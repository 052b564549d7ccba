"""Exact integer linear algebra for bounded chain complexes of free Z-modules.

Everything is dense and uses Python integers, so entries never overflow.
The Smith normal form pivots on the entry of least absolute value, which
keeps coefficient growth modest at the sizes this package deals with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import BasisError, ConditionError, StructureError


class IntMatrix:
    """Immutable dense integer matrix; zero rows or columns are allowed."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise StructureError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise StructureError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_flat(cls, entries: Sequence[int], nrows: int, ncols: int) -> "IntMatrix":
        if len(entries) != nrows * ncols:
            raise StructureError(f"expected {nrows * ncols} entries, got {len(entries)}")
        return cls([entries[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def flat(self) -> list:
        return [x for r in self.rows for x in r]

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> list:
        return [r[j] for r in self.rows]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                         self.nrows)

    @property
    def T(self):
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise StructureError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
                         other.ncols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise StructureError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                         self.ncols)

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def permuted(self, row_perm: Sequence[int] | None = None, col_perm: Sequence[int] | None = None):
        """Matrix whose row ``i`` is old row ``row_perm[i]`` (likewise for columns)."""
        rp = range(self.nrows) if row_perm is None else row_perm
        cp = range(self.ncols) if col_perm is None else col_perm
        return IntMatrix([[self.rows[i][j] for j in cp] for i in rp], self.ncols)

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        if self.nrows != self.ncols:
            raise StructureError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r}, ncols={self.ncols})"


# -- Smith normal form -------------------------------------------------------------


def _snf(A: IntMatrix):
    """Return ``(U, D, V, V_inv, rank)`` as lists of lists with ``U A V = D``."""
    m, n = A.shape
    a = A.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_axpy(dst, src, q):
        # row dst -= q * row src
        if q:
            ra, rs = a[dst], a[src]
            for k in range(n):
                ra[k] -= q * rs[k]
            ua, us = U[dst], U[src]
            for k in range(m):
                ua[k] -= q * us[k]

    def col_axpy(dst, src, q):
        # col dst -= q * col src
        if q:
            for r in a:
                r[dst] -= q * r[src]
            for r in V:
                r[dst] -= q * r[src]
            vs, vd = Vi[src], Vi[dst]
            for k in range(n):
                vs[k] += q * vd[k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                row_axpy(i, t, a[i][t] // p)
            for j in range(t + 1, n):
                col_axpy(j, t, a[t][j] // p)
            rest = [(abs(a[i][t]), i, None) for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), None, j) for j in range(t + 1, n) if a[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda r: r[0])
                if i is not None:
                    row_swap(t, i)
                else:
                    col_swap(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            row_axpy(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, a, V, Vi, t


def smith_normal_form(A: IntMatrix):
    """Return ``(U, D, V)`` with ``U A V = D`` and ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``.  The
    identity and unimodularity are checked before returning.
    """
    U, D, V, Vi, rank = _snf(A)
    m, n = A.shape
    Um, Dm, Vm = IntMatrix(U, m), IntMatrix(D, n), IntMatrix(V, n)
    assert Um @ A @ Vm == Dm, "Smith normal form identity violated"
    assert abs(Um.det()) == 1 and abs(Vm.det()) == 1, "transform not unimodular"
    diag = [Dm[i, i] for i in range(min(m, n))]
    assert all(Dm[i, j] == 0 for i in range(m) for j in range(n) if i != j)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1) if diag[i]), \
        "divisibility chain violated"
    return Um, Dm, Vm


def invariant_factors(A: IntMatrix) -> list:
    """Nonzero diagonal entries of the Smith form of ``A``."""
    _, D, _, _, rank = _snf(A)
    return [D[i][i] for i in range(rank)]


def rank(A: IntMatrix) -> int:
    return _snf(A)[4]


# -- abelian groups --------------------------------------------------------------


def invariant_chain(orders: Iterable[int]) -> tuple:
    """Normalise finite cyclic orders into a divisibility chain ``d1 | d2 | ...``.

    Repeated gcd/lcm passes over pairs; orders equal to 1 are dropped.
    """
    ds = sorted(abs(int(d)) for d in orders)
    if any(d == 0 for d in ds):
        raise ValueError("zero order denotes a free summand; pass it as rank")
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            g = math.gcd(ds[i], ds[j])
            ds[i], ds[j] = g, ds[i] * ds[j] // g
    return tuple(d for d in ds if d > 1)


@dataclass(frozen=True)
class AbGroup:
    """``Z^rank (+) Z/d1 (+) ... (+) Z/dm`` with ``2 <= d1 | d2 | ... | dm``."""

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        t = tuple(self.torsion)
        if any(d < 2 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not an invariant-factor chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_orders(cls, rank: int = 0, orders: Iterable[int] = ()) -> "AbGroup":
        orders = list(orders)
        extra = sum(1 for d in orders if d == 0)
        return cls(rank + extra, invariant_chain(d for d in orders if d != 0))

    @classmethod
    def cyclic(cls, n: int) -> "AbGroup":
        return cls.from_orders(0, [n]) if n else cls(1)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def order(self):
        """Number of elements, or ``None`` when infinite."""
        return math.prod(self.torsion) if self.rank == 0 else None

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " (+) ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "AbGroup":
        text = text.strip()
        if text == "0":
            return cls()
        rank, orders = 0, []
        for part in text.split("(+)"):
            part = part.strip()
            if part == "Z":
                rank += 1
            elif part.startswith("Z^"):
                rank += int(part[2:])
            elif part.startswith("Z/"):
                orders.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group summand {part!r}")
        return cls.from_orders(rank, orders)

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: Mapping) -> "AbGroup":
        return cls.from_orders(int(data.get("rank", 0)), [int(d) for d in data.get("torsion", [])])


# -- chain complexes ---------------------------------------------------------


class ChainComplex:
    """``0 -> Z^{r_n} -> ... -> Z^{r_1} -> Z^{r_0} -> 0`` with labelled bases.

    ``boundaries[k-1]`` is the matrix of ``d_k : Z^{r_k} -> Z^{r_{k-1}}``.
    Composites of consecutive boundaries are checked to vanish.
    """

    def __init__(self, ranks: Sequence[int], boundaries: Sequence[IntMatrix], labels=None):
        ranks = [int(r) for r in ranks]
        if not ranks:
            raise StructureError("a chain complex needs at least degree 0")
        if len(boundaries) != len(ranks) - 1:
            raise StructureError(f"{len(ranks)} ranks need {len(ranks) - 1} boundaries, "
                                 f"got {len(boundaries)}")
        for k, d in enumerate(boundaries, start=1):
            if d.shape != (ranks[k - 1], ranks[k]):
                raise StructureError(f"d_{k} has shape {d.shape}, expected {(ranks[k - 1], ranks[k])}")
        for k in range(1, len(boundaries)):
            if not (boundaries[k - 1] @ boundaries[k]).is_zero():
                raise StructureError(f"d_{k} d_{k + 1} != 0")
        if labels is None:
            labels = [[f"c{k}_{i}" for i in range(r)] for k, r in enumerate(ranks)]
        labels = [list(map(str, ls)) for ls in labels]
        if [len(ls) for ls in labels] != ranks:
            raise StructureError("label counts do not match ranks")
        self.ranks = ranks
        self.boundaries = list(boundaries)
        self.labels = labels

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, k: int) -> IntMatrix:
        """``d_k``, with zero maps outside ``1..n``."""
        n = self.length
        if 1 <= k <= n:
            return self.boundaries[k - 1]
        if k == 0:
            return IntMatrix.zeros(0, self.ranks[0])
        if k == n + 1:
            return IntMatrix.zeros(self.ranks[n], 0)
        raise IndexError(k)

    def homology(self, k: int) -> "AbGroup":
        return homology(self, k)

    def all_homology(self) -> list:
        return [homology(self, k) for k in range(self.length + 1)]

    def permuted(self, perms: Sequence[Sequence[int]]) -> "ChainComplex":
        """Reorder each degree's basis: new basis ``i`` in degree ``k`` is old ``perms[k][i]``."""
        bds = [d.permuted(perms[k - 1], perms[k]) for k, d in enumerate(self.boundaries, start=1)]
        labels = [[ls[i] for i in perms[k]] for k, ls in enumerate(self.labels)]
        return ChainComplex(self.ranks, bds, labels)

    def to_json(self) -> dict:
        return {
            "ranks": list(self.ranks),
            "boundaries": [d.flat() for d in self.boundaries],
            "labels": [list(ls) for ls in self.labels],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ChainComplex":
        ranks = [int(r) for r in data["ranks"]]
        bds = []
        for k, entries in enumerate(data.get("boundaries", []), start=1):
            rows, cols = ranks[k - 1], ranks[k]
            if entries and isinstance(entries[0], list):
                entries = [x for r in entries for x in r]
            bds.append(IntMatrix.from_flat([int(x) for x in entries], rows, cols))
        return cls(ranks, bds, data.get("labels"))

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks})"


def homology(C: ChainComplex, k: int) -> AbGroup:
    """``H_k = ker d_k / im d_{k+1}`` in invariant-factor form."""
    if not 0 <= k <= C.length:
        raise IndexError(f"degree {k} outside 0..{C.length}")
    dk = C.boundary(k)
    dk1 = C.boundary(k + 1)
    _, _, _, Vi, rk = _snf(dk)
    # express im d_{k+1} in the kernel basis (last columns of V)
    moved = IntMatrix(Vi, C.ranks[k]) @ dk1
    assert all(x == 0 for r in moved.rows[:rk] for x in r), "image not inside kernel"
    B = IntMatrix(moved.rows[rk:], dk1.ncols)
    factors = invariant_factors(B)
    free = (C.ranks[k] - rk) - len(factors)
    return AbGroup.from_orders(free, [d for d in factors if d > 1])


# -- Koszul complex -------------------------------------------------------------


def koszul_complex(operators: Sequence[IntMatrix], m: int | None = None) -> ChainComplex:
    """Koszul complex of pairwise commuting ``m x m`` integer matrices.

    Degree ``k`` has basis ``e_S (x) v`` over ``k``-subsets ``S`` in
    lexicographic order and ``d(e_S (x) v) = sum_i (-1)^(pos+1) e_{S-i} (x) N_i v``
    with ``pos`` the 1-based position of ``i`` in ``S``.
    """
    ops = list(operators)
    if m is None:
        if not ops:
            raise StructureError("base rank required when no operators are given")
        m = ops[0].nrows
    for i, N in enumerate(ops):
        if N.shape != (m, m):
            raise StructureError(f"operator {i + 1} has shape {N.shape}, expected {(m, m)}")
    for i, j in combinations(range(len(ops)), 2):
        if ops[i] @ ops[j] != ops[j] @ ops[i]:
            raise ConditionError(f"operators {i + 1} and {j + 1} do not commute")
    n = len(ops)
    subsets = [list(combinations(range(n), k)) for k in range(n + 1)]
    ranks = [m * len(s) for s in subsets]
    bds = []
    for k in range(1, n + 1):
        row_index = {S: r for r, S in enumerate(subsets[k - 1])}
        rows = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        for c, S in enumerate(subsets[k]):
            for pos, i in enumerate(S, start=1):
                sign = 1 if pos % 2 == 1 else -1
                r = row_index[tuple(x for x in S if x != i)]
                N = ops[i]
                for w in range(m):
                    for v in range(m):
                        rows[r * m + w][c * m + v] += sign * N[w, v]
        bds.append(IntMatrix(rows, ranks[k]))
    labels = [[_subset_label(S) + (f"@{v}" if m > 1 else "") for S in subsets[k] for v in range(m)]
              for k in range(n + 1)]
    try:
        return ChainComplex(ranks, bds, labels)
    except StructureError as exc:  # pragma: no cover - commuting input makes this impossible
        raise AssertionError(f"Koszul differential does not square to zero: {exc}") from exc


def _subset_label(S) -> str:
    return "e{" + ",".join(str(i + 1) for i in S) + "}"


# -- boundaries from generator expansions ---------------------------------------------


def solve_integer(T: IntMatrix, v: Sequence[int]):
    """Unique integer ``x`` with ``T x = v``, or ``None`` if there is none.

    Raises ``BasisError`` when ``T`` has dependent columns.
    """
    U, D, V, _, rk = _snf(T)
    if rk < T.ncols:
        raise BasisError("target basis is linearly dependent")
    w = [sum(U[i][j] * v[j] for j in range(T.nrows)) for i in range(T.nrows)]
    if any(w[i] for i in range(rk, T.nrows)):
        return None
    y = []
    for i in range(rk):
        q, r = divmod(w[i], D[i][i])
        if r:
            return None
        y.append(q)
    return [sum(V[i][j] * y[j] for j in range(rk)) for i in range(T.ncols)]


def boundary_from_expansions(level_basis: Sequence, lower_basis: Sequence,
                             expansions: Mapping, lower_expansions: Mapping | None = None) -> IntMatrix:
    """Matrix of ``d_k`` in labelled bases.

    ``expansions[g]`` maps atoms (orbit classes) to coefficients for each
    degree-``k`` generator ``g``.  Without ``lower_expansions`` the lower
    basis labels are the atoms themselves; otherwise each lower generator
    has its own expansion and the columns are found by solving the integer
    system exactly.
    """
    lower = list(lower_basis)
    if lower_expansions is None:
        index = {b: i for i, b in enumerate(lower)}
        rows = [[0] * len(level_basis) for _ in lower]
        for c, g in enumerate(level_basis):
            for atom, coeff in expansions[g].items():
                if coeff == 0:
                    continue
                if atom not in index:
                    raise BasisError(f"generator {g!r} involves {atom!r}, not in the lower basis")
                rows[index[atom]][c] += coeff
        return IntMatrix(rows, len(level_basis))
    atoms: list = []
    seen = set()
    for b in lower:
        for atom in lower_expansions[b]:
            if atom not in seen:
                seen.add(atom)
                atoms.append(atom)
    aindex = {a: i for i, a in enumerate(atoms)}
    T = IntMatrix([[lower_expansions[b].get(a, 0) for b in lower] for a in atoms], len(lower))
    cols = []
    for g in level_basis:
        v = [0] * len(atoms)
        for atom, coeff in expansions[g].items():
            if coeff == 0:
                continue
            if atom not in aindex:
                raise BasisError(f"generator {g!r} involves {atom!r}, outside the span of the lower basis")
            v[aindex[atom]] += coeff
        x = solve_integer(T, v)
        if x is None:
            raise BasisError(f"generator {g!r} is not an integer combination of the lower basis")
        cols.append(x)
    return IntMatrix([[cols[c][r] for c in range(len(level_basis))] for r in range(len(lower))],
                     len(level_basis))
