import itertools

import pytest

from indres.action import (Cyclic, Envelope, FreeWord, GlobalAction, dilate, env_product,
                           equivalent, free_action_check, orbits, trivial_action)
from indres.errors import ClosureError
from indres.families.graph import GraphDesc, graph_model
from indres.families.tiling import TilingDesc, tiling_model
from indres.zlattice import ONE, ZERO, FiniteSemilattice


def _graph():
    # vertices v, w; one edge kappa from w to v
    return graph_model(GraphDesc(("v", "w"), (("w", "v"),)))


def test_graph_orbits_two_classes():
    M = _graph()
    E = M.semilattice
    P = orbits(E.paths(1), M.action)
    assert P.representatives == [E.vertex("v"), E.vertex("w")]
    assert P.rep(E.edge(0)) == E.vertex("w")
    k = P.transporter(E.edge(0))
    assert M.action.apply(k, E.edge(0)) == E.vertex("w")


def test_trivial_action_singletons():
    S = FiniteSemilattice([1, 2, 3], lambda a, b: None)
    P = orbits([1, 2, 3], trivial_action(S))
    assert len(P) == 3 and all(P.rep(x) == x for x in (1, 2, 3))


def test_tiling_orbit_reps_check_first_letter():
    M = tiling_model(TilingDesc(period="ab"))
    U = M.universe(2)
    P = orbits(U, M.action)
    assert sorted(P.representatives) == sorted((w, 0) for w in ("a", "b", "ab", "ba"))
    for e in U:
        assert P.rep(e) == (e[0], 0)


def test_strict_orbits_reject_escapes():
    M = graph_model(GraphDesc(("v",), (("v", "v"),)))
    with pytest.raises(ClosureError) as info:
        orbits(M.semilattice.paths(1), M.action)
    assert info.value.escaping


def test_free_action_graph_and_tiling():
    M = graph_model(GraphDesc(("v", "w"), (("v", "v"), ("w", "v"), ("v", "w"))))
    assert free_action_check(M.semilattice.paths(2), M.action)[0]
    T = tiling_model(TilingDesc(period="aab"))
    assert free_action_check(T.universe(4), T.action)[0]


def test_swap_with_fixed_point_is_not_free():
    # x, y below z, xy = 0; the swap fixes z
    def mul(a, b):
        if "z" in (a, b):
            return a if b == "z" else b
        return None

    S = FiniteSemilattice(["x", "y", "z"], mul)
    swap = {"x": "y", "y": "x", "z": "z"}
    act = GlobalAction(S, Cyclic(0, 2), [Cyclic(1, 2)],
                       lambda g, e: swap[e] if g.k else e)
    free, depth, witness = free_action_check(["x", "y", "z"], act)
    assert not free
    assert witness[0] == "z" and not witness[1].is_identity


def test_domain_of_composite():
    M = _graph()
    E = M.semilattice
    kappa = FreeWord.gen(0)
    assert M.action.domain(kappa) == E.vertex("w")
    assert M.action.range(kappa) == E.edge(0)
    assert M.action.domain(kappa * kappa) is ZERO
    assert M.action.domain(FreeWord()) is ONE


def _env_setup():
    M = graph_model(GraphDesc(("v", "w"), (("w", "v"), ("v", "v"))))
    return M, Envelope(M.action, depth=4)


def test_env_identity_reduces_to_product():
    M, env = _env_setup()
    E = M.semilattice
    d, e = E.vertex("v"), E.edge(0)
    assert env_product(env, env.embed(d), env.embed(e)) == env.embed(E.product(d, e))


def test_env_path_class():
    M, env = _env_setup()
    E = M.semilattice
    mu = E.edge(0)
    g = FreeWord.gen(0)  # source of edge 0 is w
    x = env.element(g, E.vertex("w"))
    y = env.embed(mu)
    assert equivalent(M.action, (g, E.vertex("w")), (FreeWord(), mu))
    assert x == y
    assert env_product(env, x, x) == x


def test_env_zero_absorption():
    M, env = _env_setup()
    E = M.semilattice
    # edges 0 and 1 both have range v and are incomparable
    assert env_product(env, env.embed(E.edge(0)), env.embed(E.edge(1))).e is ZERO


def test_env_commutative_idempotent_and_dilation():
    M, env = _env_setup()
    E = M.semilattice
    gens = [FreeWord(), FreeWord.gen(0), FreeWord.gen(1), FreeWord.gen(1).inverse()]
    xs = [env.element(g, p) for g in gens for p in E.paths(1)]
    for x, y in itertools.product(xs, repeat=2):
        xy = env_product(env, x, y)
        assert xy == env_product(env, y, x)
        for g in gens:
            assert env_product(env, dilate(env, g, x), dilate(env, g, y)) == dilate(env, g, xy)
    for x in xs:
        assert env_product(env, x, x) == x
        assert dilate(env, FreeWord(), x) == x
        for g, h in itertools.product(gens, repeat=2):
            assert dilate(env, g, dilate(env, h, x)) == dilate(env, g * h, x)


def test_tiling_dilation_moves_check():
    T = tiling_model(TilingDesc(period="ab"))
    env = Envelope(T.action, depth=4)
    g = FreeWord.gen("ab")
    x = env.embed(("ab", 1))
    # theta_g(ab with b checked) = ab with a checked
    assert dilate(env, g, x) == env.element(g, ("ab", 1))
    assert env.element(g, ("ab", 1)) == env.embed(("ab", 0))


def test_equivalence_relation_on_balls():
    M, env = _env_setup()
    E = M.semilattice
    gens = [FreeWord(), FreeWord.gen(0), FreeWord.gen(1), FreeWord.gen(0).inverse()]
    pairs = [(g, p) for g in gens for p in E.paths(1)]
    rel = lambda a, b: equivalent(M.action, a, b)
    for a in pairs:
        assert rel(a, a)
        for b in pairs:
            if rel(a, b):
                assert rel(b, a)
                assert env.element(*a) == env.element(*b)
