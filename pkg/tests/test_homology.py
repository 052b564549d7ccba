"""Homology engine against independent oracles.

The oracle computes invariant factors from determinantal divisors (gcds of
k x k minors) and ranks with sympy; it shares no code with the Smith form.
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

from indres.errors import BasisError, ConditionError, StructureError
from indres.homology import (AbGroup, ChainComplex, IntMatrix, boundary_from_expansions, homology,
                             invariant_chain, koszul_complex, smith_normal_form)

from oracles import invariant_factors as oracle_invariant_factors, rank as oracle_rank

SEED = 20240611


def oracle_homology(ranks, bds, k):
    dk = bds[k - 1] if k >= 1 else None
    dk1 = bds[k] if k < len(bds) else None
    rk = oracle_rank(dk.tolist()) if dk is not None and dk.nrows and dk.ncols else 0
    factors = oracle_invariant_factors(dk1.tolist()) if dk1 is not None and dk1.nrows and dk1.ncols else []
    free = ranks[k] - rk - len(factors)
    return AbGroup.from_orders(free, [d for d in factors if d > 1])


small = st.integers(-5, 5)


@st.composite
def matrices(draw, max_dim=5):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    rows = [[draw(small) for _ in range(n)] for _ in range(m)]
    return IntMatrix(rows, n)


def test_snf_identity_and_zero():
    I = IntMatrix.identity(3)
    U, D, V = smith_normal_form(I)
    assert D == I
    Z = IntMatrix.zeros(2, 3)
    U, D, V = smith_normal_form(Z)
    assert D == Z and U == IntMatrix.identity(2) and V == IntMatrix.identity(3)


def test_snf_two_by_two():
    A = IntMatrix([[2, 4], [6, 8]])
    U, D, V = smith_normal_form(A)
    assert D == IntMatrix.diagonal([2, 4])
    assert U @ A @ V == D
    assert D[0, 0] * D[1, 1] == abs(A.det()) == 8


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_snf_properties(A):
    U, D, V = smith_normal_form(A)
    assert U @ A @ V == D
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    diag = [D[i, i] for i in range(min(A.shape))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[:len(nz)] == nz
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert nz == oracle_invariant_factors(A.tolist()) if A.nrows and A.ncols else not nz


def test_homology_examples():
    C = ChainComplex([1, 1], [IntMatrix([[4]])])
    assert homology(C, 0) == AbGroup(0, (4,)) and homology(C, 1) == AbGroup()
    C = ChainComplex([1, 1], [IntMatrix([[1 - 2]])])
    assert homology(C, 0).is_trivial and homology(C, 1).is_trivial
    C = ChainComplex([2, 3, 1], [IntMatrix.zeros(2, 3), IntMatrix.zeros(3, 1)])
    assert [h.rank for h in C.all_homology()] == [2, 3, 1]
    with pytest.raises(IndexError):
        homology(C, 3)


def _unimodular(rng, n, steps=12):
    G, Gi = IntMatrix.identity(n), IntMatrix.identity(n)
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-2, 2)
        E = [[int(a == b) for b in range(n)] for a in range(n)]
        Ei = [row[:] for row in E]
        E[i][j], Ei[i][j] = q, -q
        G, Gi = G @ IntMatrix(E, n), IntMatrix(Ei, n) @ Gi
    return G, Gi


def random_complex(rng):
    """Three-term complex with d1 d2 = 0 built through a random change of basis."""
    c, a = rng.randint(0, 4), rng.randint(0, 4)
    b1, b2 = rng.randint(0, 3), rng.randint(0, 3)
    b = b1 + b2
    G, Gi = _unimodular(rng, b)
    X = IntMatrix([[rng.randint(-5, 5) for _ in range(b1)] for _ in range(c)], b1)
    Y = IntMatrix([[rng.randint(-5, 5) for _ in range(a)] for _ in range(b2)], a)
    XO = IntMatrix([list(r) + [0] * b2 for r in X.rows], b)
    OY = IntMatrix([[0] * a for _ in range(b1)] + [list(r) for r in Y.rows], a)
    return [c, b, a], [XO @ Gi, G @ OY]


@pytest.mark.parametrize("case", range(200))
def test_random_complexes_match_oracle(case):
    rng = random.Random(SEED + case)
    ranks, bds = random_complex(rng)
    C = ChainComplex(ranks, bds)
    assert (bds[0] @ bds[1]).is_zero()
    for k in range(3):
        assert homology(C, k) == oracle_homology(ranks, bds, k)


def test_boundaries_must_compose_to_zero():
    with pytest.raises(StructureError):
        ChainComplex([1, 1, 1], [IntMatrix([[1]]), IntMatrix([[1]])])


def test_json_round_trip():
    rng = random.Random(SEED)
    ranks, bds = random_complex(rng)
    C = ChainComplex(ranks, bds)
    D = ChainComplex.from_json(C.to_json())
    assert D.all_homology() == C.all_homology() and D.labels == C.labels
    nested = {"ranks": [2, 1], "boundaries": [[[2], [4]]]}
    assert str(ChainComplex.from_json(nested).homology(0)) == "Z (+) Z/2"


def test_permuted_complex_same_homology():
    rng = random.Random(SEED + 1)
    ranks, bds = random_complex(rng)
    C = ChainComplex(ranks, bds)
    perms = [rng.sample(range(r), r) for r in ranks]
    assert C.permuted(perms).all_homology() == C.all_homology()


def test_koszul_printed_matrices():
    p1, p2, p3 = 3, 5, 7
    C = koszul_complex([IntMatrix([[1 - p]]) for p in (p1, p2)], 1)
    assert C.boundaries[0].tolist() == [[1 - p1, 1 - p2]]
    assert C.boundaries[1].tolist() == [[p2 - 1], [1 - p1]]
    C = koszul_complex([IntMatrix([[1 - p]]) for p in (p1, p2, p3)], 1)
    assert C.boundaries[0].tolist() == [[1 - p1, 1 - p2, 1 - p3]]
    assert C.boundaries[1].tolist() == [[p2 - 1, p3 - 1, 0], [1 - p1, 0, p3 - 1], [0, 1 - p1, 1 - p2]]
    assert C.boundaries[2].tolist() == [[1 - p3], [p2 - 1], [1 - p1]]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: st.lists(st.lists(small, min_size=m, max_size=m),
                                                    min_size=m, max_size=m)))
def test_koszul_one_variable(rows):
    N = IntMatrix(rows)
    m = N.nrows
    C = koszul_complex([N], m)
    assert C.boundaries[0] == N
    factors = oracle_invariant_factors(rows)
    assert C.homology(0) == AbGroup.from_orders(m - len(factors), [d for d in factors if d > 1])
    assert C.homology(1) == AbGroup(m - oracle_rank(rows))


def test_koszul_commuting_blocks():
    A = IntMatrix([[1, 1], [0, 1]])
    B = A @ A
    C = koszul_complex([A, B], 2)
    assert C.ranks == [2, 4, 2]
    with pytest.raises(ConditionError, match="1 and 2"):
        koszul_complex([A, A.transpose()], 2)


def test_abgroup_normal_form_and_text():
    assert AbGroup.from_orders(0, [2, 3]) == AbGroup(0, (6,))
    assert AbGroup.from_orders(1, [4, 6]).torsion == (2, 12)
    assert str(AbGroup(2, (2,))) == "Z^2 (+) Z/2"
    assert str(AbGroup(1)) == "Z" and str(AbGroup()) == "0"
    for g in (AbGroup(), AbGroup(1), AbGroup(3, (2, 4)), AbGroup(0, (6,))):
        assert AbGroup.parse(str(g)) == g
        assert AbGroup.from_json(g.to_json()) == g
    with pytest.raises(ValueError):
        AbGroup(0, (4, 2))
    assert invariant_chain([1, 2, 2, 3]) == (2, 6)


def test_boundary_from_expansions_direct_and_solved():
    M = boundary_from_expansions(["g"], ["x", "y"], {"g": {"x": 1, "y": -2}})
    assert M.tolist() == [[1], [-2]]
    with pytest.raises(BasisError, match="g"):
        boundary_from_expansions(["g"], ["x"], {"g": {"z": 1}})
    lower = {"u": {"a": 1, "b": 1}, "w": {"b": 1}}
    M = boundary_from_expansions(["g"], ["u", "w"], {"g": {"a": 2, "b": 5}}, lower)
    assert M.tolist() == [[2], [3]]
    with pytest.raises(BasisError, match="integer combination"):
        boundary_from_expansions(["h"], ["u"], {"h": {"a": 1, "b": 2}}, {"u": {"a": 2, "b": 4}})
