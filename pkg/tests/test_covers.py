import pytest

from indres.action import orbits
from indres.covers import (CoverSystem, build_resolution, check_all, check_condition_i,
                           check_condition_ii, check_condition_iii, check_condition_iv)
from indres.errors import ConditionError, UnsupportedError
from indres.families.graph import GraphDesc, graph_model
from indres.families.nq import NqDesc, Progressions, affine_action, check_nq, progression_covers, progression_universe
from indres.families.raam import RaamDesc, raam_complex
from indres.families.tiling import TilingDesc, tiling_model


def cuntz_like():
    return graph_model(GraphDesc(("v", "w"), (("v", "v"), ("w", "v"), ("v", "w"), ("w", "w"))))


def test_graph_system_passes():
    M = cuntz_like()
    assert M.check(3).verdict == "pass"


@pytest.mark.parametrize("period", ["ab", "aab", "abc", "a"])
def test_tiling_system_passes(period):
    M = tiling_model(TilingDesc(period=period))
    assert M.check(4).verdict == "pass"


def test_nq_system_passes_including_translation():
    assert check_nq(NqDesc((2, 3)), starts=3, width=2).verdict == "pass"
    E = Progressions((3, 5))
    rep = check_condition_iii(E, progression_covers(E), affine_action(E), None, progression_universe(E))
    assert rep.passed and int(rep.records[0].detail.split()[0]) > 0


def test_two_cover_product_strictly_below():
    M = tiling_model(TilingDesc(period="ab"))
    E = M.semilattice
    left, right = ("ba", 1), ("ab", 0)
    both = E.product(left, right)
    assert both == ("bab", 1)
    assert E.lt(both, left) and E.lt(both, right)


def test_deleted_cover_element_fails():
    M = tiling_model(TilingDesc(period="aab"))
    E = M.semilattice
    target = ("a", 0)

    def covers(e):
        cs = M.system.covers(e)
        if e == target:
            cs = [cs[0] - {("ba", 1)}, cs[1]]
        return cs

    system = CoverSystem(E, covers, 2)
    rep = check_condition_iv(E, system, M.universe(3))
    assert not rep.passed
    witness = rep.failures[0].witness
    assert witness == ("[a]", "{a[a]}")
    assert not check_condition_i(E, system, M.universe(3)).passed


def test_self_cover_fails_strictness():
    M = cuntz_like()
    E = M.semilattice
    system = CoverSystem(E, lambda e: [[e]], 1)
    rep = check_condition_ii(E, system, M.universe(1))
    assert not rep.passed
    assert rep.failures[0].witness == ("v", "v")


def test_missing_translated_cover_fails():
    M = cuntz_like()
    E = M.semilattice
    v = E.vertex("v")
    system = CoverSystem(E, lambda e: M.system.covers(e) if e == v else [], 1)
    rep = check_condition_iii(E, system, M.action, None, M.universe(2))
    assert not rep.passed
    assert rep.failures[0].witness[0] == "v"


def test_monotone_in_universe():
    M = tiling_model(TilingDesc(period="abc"))
    big = check_all(M.semilattice, M.system, M.universe(4), M.action)
    small = check_all(M.semilattice, M.system, M.universe(2), M.action)
    assert big.passed and small.passed


def test_word_list_boundary_is_inconclusive():
    words = sorted({("ab" * 4)[i:i + n] for n in range(1, 4) for i in range(8 - n + 1)})
    M = tiling_model(TilingDesc(words=tuple(words)))
    rep = M.check(3)
    assert rep.passed and rep.verdict == "inconclusive"
    assert all("boundary" in r.detail for r in rep.inconclusive)


def test_resolution_graph_basis_is_regular_vertices():
    G = GraphDesc(("u", "v", "w"), (("u", "v"), ("v", "v"), ("v", "w")))
    M = graph_model(G)
    part = orbits(M.universe(1), M.action, strict=False)
    res = build_resolution(M.system, part, M.action, universe=M.universe(2))
    assert [x.range for x, _ in res.level1] == ["v", "w"]
    for lab in res.level1:
        assert res.expansions1[lab].is_projection()


def test_resolution_n1_expansions_strictly_below():
    M = cuntz_like()
    part = orbits(M.universe(1), M.action, strict=False)
    res = build_resolution(M.system, part, M.action, universe=M.universe(2))
    E = M.semilattice
    for (x, S), p in res.expansions1.items():
        assert p.coefficient(x) == 1
        assert all(E.lt(f, x) for f in p.support() if f != x)


def test_resolution_tiling_counts_and_projections():
    M = tiling_model(TilingDesc(period="ab"))
    U = M.universe(4)
    part = orbits(U, M.action)
    res = build_resolution(M.system, part, M.action, universe=U,
                           keep1=lambda r, S: len(r[0]) <= (3 if len(S) == 1 else 2),
                           keep2=lambda r, i, j: len(r[0]) <= 2)
    assert len(res.level1) == 2 * 6 + 4
    assert len(res.level2) == 2 * 4
    for lab, p in res.expansions1.items():
        assert p.is_projection()
    E = M.semilattice
    for (x, S), p in res.expansions1.items():
        if S == (1, 2):
            assert p == res.expansions1[(x, (1,))] * res.expansions1[(x, (2,))]
        else:
            R = M.system.covers(x)[S[0] - 1]
            assert p == E.comb(x) - sum((E.comb(f) for f in R), E.zcomb({}))


def test_raam_single_generator():
    C = raam_complex(RaamDesc(("a", "b", "c"), (("a", "b"),)))
    assert C.ranks == [1, 1] and C.labels[1] == ["P||1"]


def test_too_many_covers_unsupported():
    E = Progressions((2, 3, 5))
    system = progression_covers(E)
    with pytest.raises(UnsupportedError):
        build_resolution(system, None, check=False)


def test_failed_conditions_refuse():
    M = cuntz_like()
    E = M.semilattice
    system = CoverSystem(E, lambda e: [[e]], 1)
    part = orbits(M.universe(1), M.action, strict=False)
    with pytest.raises(ConditionError) as info:
        build_resolution(system, part, M.action, universe=M.universe(1))
    assert not info.value.report.passed
