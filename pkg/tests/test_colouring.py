import itertools
import random

import pytest

from chroma.colouring import (
    brooks_colour,
    brute_force_decide,
    colours_used,
    decide_small_r,
    is_proper_colouring,
    list_colour_bounded_td,
    precolouring_extension,
)
from chroma.errors import FixedOutOfRange, InvalidForest, NotConnected
from chroma.graph import build_graph
from chroma.treedepth import TreedepthValue, treedepth_exact

from .gens import (
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    random_connected_graph,
    random_graph,
    random_subcubic_connected,
)
from .oracles import brute_colouring, brute_list_colouring


def forest_of(g):
    res = treedepth_exact(g, cap=40)
    assert isinstance(res, TreedepthValue)
    return res.forest


# -- oracle -------------------------------------------------------------------


def test_k4_not_3_colourable():
    assert brute_force_decide(complete_graph(4), 3) is None


def test_c5_3_colourable():
    col = brute_force_decide(cycle_graph(5), 3)
    assert col is not None and is_proper_colouring(cycle_graph(5), col, 3)


def test_petersen_3_chromatic():
    g = petersen_graph()
    col = brute_force_decide(g, 3)
    assert col is not None and is_proper_colouring(g, col, 3)
    assert brute_force_decide(g, 2) is None


def test_oracle_matches_exhaustive():
    rng = random.Random(3)
    for _ in range(60):
        g = random_graph(rng, rng.randrange(1, 8), rng.random())
        for r in (0, 1, 2, 3):
            ours = brute_force_decide(g, r)
            theirs = brute_colouring(g, r)
            assert (ours is None) == (theirs is None)
            if ours is not None:
                assert is_proper_colouring(g, ours, r)


def test_monotone_in_r():
    rng = random.Random(5)
    for _ in range(30):
        g = random_graph(rng, rng.randrange(1, 9), rng.random())
        for r in (1, 2, 3):
            if brute_force_decide(g, r) is not None:
                assert brute_force_decide(g, r + 1) is not None


# -- constructive maximum-degree colouring --------------------------------------


def test_brooks_k4_uses_four():
    col = brooks_colour(complete_graph(4))
    assert colours_used(col) == 4


def test_brooks_c5_uses_three():
    g = cycle_graph(5)
    col = brooks_colour(g)
    assert is_proper_colouring(g, col) and colours_used(col) == 3


def test_brooks_even_cycle_two():
    g = cycle_graph(6)
    col = brooks_colour(g)
    assert is_proper_colouring(g, col) and colours_used(col) == 2


def test_brooks_requires_connected():
    with pytest.raises(NotConnected):
        brooks_colour(build_graph(4, [(0, 1), (2, 3)]))


def test_brooks_single_vertex_and_edge():
    assert brooks_colour(build_graph(1, [])) == {0: 1}
    col = brooks_colour(build_graph(2, [(0, 1)]))
    assert colours_used(col) == 2


def test_brooks_cut_vertex_regular():
    # two K_4s sharing a vertex: 3-regular at the shared block level
    edges = [(a, b) for a, b in itertools.combinations([0, 1, 2, 3], 2)]
    edges += [(a, b) for a, b in itertools.combinations([3, 4, 5, 6], 2)]
    g = build_graph(7, edges)
    col = brooks_colour(g)
    assert is_proper_colouring(g, col)
    assert colours_used(col) == 4  # blocks are complete


def test_brooks_random_subcubic_uses_at_most_three():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(4, 14)
        g = random_subcubic_connected(rng, n)
        if g.m == g.n * (g.n - 1) // 2 or (g.n % 2 == 1 and all(g.degree(v) == 2 for v in g.vertices())):
            continue
        col = brooks_colour(g)
        assert is_proper_colouring(g, col)
        assert colours_used(col) <= 3


def test_brooks_never_exceeds_delta_on_non_exceptional():
    rng = random.Random(11)
    for _ in range(150):
        g = random_connected_graph(rng, rng.randrange(2, 10), rng.random() * 0.7)
        col = brooks_colour(g)
        assert is_proper_colouring(g, col)
        complete = g.m == g.n * (g.n - 1) // 2
        odd_cycle = g.n % 2 == 1 and g.n >= 3 and all(g.degree(v) == 2 for v in g.vertices())
        if complete or odd_cycle:
            assert colours_used(col) == g.max_degree() + 1
        else:
            assert colours_used(col) <= max(g.max_degree(), 1)


# -- elimination-forest DP ----------------------------------------------------------


def test_dp_p3_two_colours():
    g = path_graph(3)
    lists = {v: frozenset({1, 2}) for v in g.vertices()}
    col = list_colour_bounded_td(g, forest_of(g), lists)
    assert col is not None and is_proper_colouring(g, col)


def test_dp_k3_two_colours_fails():
    g = complete_graph(3)
    lists = {v: frozenset({1, 2}) for v in g.vertices()}
    assert list_colour_bounded_td(g, forest_of(g), lists) is None


def test_dp_rejects_foreign_forest():
    g = complete_graph(3)
    other = forest_of(path_graph(3))
    with pytest.raises(InvalidForest):
        list_colour_bounded_td(g, other, {v: frozenset({1}) for v in g.vertices()})


def test_dp_matches_exhaustive_lists():
    rng = random.Random(13)
    for _ in range(60):
        g = random_graph(rng, rng.randrange(1, 9), rng.random() * 0.5)
        lists = {
            v: frozenset(rng.sample([1, 2, 3], rng.randrange(1, 4)))
            for v in g.vertices()
        }
        ours = list_colour_bounded_td(g, forest_of(g), lists)
        theirs = brute_list_colouring(g, lists)
        assert (ours is None) == (theirs is None)
        if ours is not None:
            assert is_proper_colouring(g, ours)
            assert all(ours[v] in lists[v] for v in g.vertices())


def test_precolouring_p3_ends_same():
    g = path_graph(3)
    col = precolouring_extension(g, forest_of(g), {0: 1, 2: 1}, 2)
    assert col == {0: 1, 1: 2, 2: 1}


def test_precolouring_p3_ends_differ_fails():
    g = path_graph(3)
    assert precolouring_extension(g, forest_of(g), {0: 1, 2: 2}, 2) is None


def test_precolouring_out_of_range():
    g = path_graph(3)
    with pytest.raises(FixedOutOfRange):
        precolouring_extension(g, forest_of(g), {0: 5}, 2)
    with pytest.raises(FixedOutOfRange):
        precolouring_extension(g, forest_of(g), {9: 1}, 2)


def test_precolouring_matches_brute_force():
    rng = random.Random(17)
    for _ in range(50):
        g = random_graph(rng, rng.randrange(2, 9), rng.random() * 0.5)
        r = rng.choice([2, 3])
        vs = g.vertices()
        fixed = {v: rng.randrange(1, r + 1) for v in rng.sample(vs, min(2, len(vs)))}
        ours = precolouring_extension(g, forest_of(g), fixed, r)
        lists = {
            v: (frozenset({fixed[v]}) if v in fixed else frozenset(range(1, r + 1)))
            for v in vs
        }
        theirs = brute_list_colouring(g, lists)
        assert (ours is None) == (theirs is None)
        if ours is not None:
            assert is_proper_colouring(g, ours, r)
            assert all(ours[v] == c for v, c in fixed.items())


# -- tiny ranges -----------------------------------------------------------------


def test_decide_small_r():
    assert decide_small_r(build_graph(0, []), 0) == {}
    assert decide_small_r(build_graph(1, []), 0) is None
    assert decide_small_r(build_graph(3, []), 1) is not None
    assert decide_small_r(path_graph(2), 1) is None
    assert decide_small_r(cycle_graph(4), 2) is not None
    assert decide_small_r(cycle_graph(5), 2) is None
    rng = random.Random(19)
    for _ in range(40):
        g = random_graph(rng, rng.randrange(1, 9), rng.random())
        for r in (0, 1, 2):
            ours = decide_small_r(g, r)
            assert (ours is None) == (brute_colouring(g, r) is None)
            if ours is not None:
                assert is_proper_colouring(g, ours, max(r, 1) if r else r)
