import itertools
import random

import pytest

from chroma.errors import InvalidParams, PreconditionViolated
from chroma.graph import Graph, build_graph
from chroma.patterns import (
    EmbeddingMap,
    PatternSpec,
    contains_subgraph,
    find_protected_fan,
    instantiate,
    is_subgraph_free,
    lift_star_centre,
    parse_pattern_spec,
    three_armed_star,
)

from .gens import complete_graph, cycle_graph, path_graph, random_graph
from .oracles import brute_contains_subgraph, brute_longest_path_vertices


# -- specs and parsing --------------------------------------------------------


def test_spec_parse_roundtrip():
    for text in ["S(1,2,2,2)", "H(3;1,2,2,2)", "F(8)", "K(4,4)", "P(10)", "C(6)"]:
        spec = parse_pattern_spec(text)
        assert parse_pattern_spec(spec.format()) == spec


def test_spec_star_sorted_descending():
    assert PatternSpec.star(1, 2, 1, 3).params == (3, 2, 1, 1)


def test_spec_validation():
    with pytest.raises(InvalidParams):
        PatternSpec.star(0, 1, 1, 1)
    with pytest.raises(InvalidParams):
        PatternSpec.cycle(2)
    with pytest.raises(InvalidParams):
        parse_pattern_spec("H(1,1,1,1,1)")
    with pytest.raises(InvalidParams):
        parse_pattern_spec("Q(3)")


# -- instantiation -------------------------------------------------------------


def test_h_graph_counts():
    lp = instantiate(PatternSpec.hgraph(1, 1, 1, 1, 1))
    assert lp.graph.n == 6 and lp.graph.m == 5
    hubs = lp.roles["hubs"]
    assert all(lp.graph.degree(h) == 3 for h in hubs)


def test_star_2222_is_nine_vertices():
    lp = instantiate(PatternSpec.star(2, 2, 2, 2))
    assert lp.graph.n == 9 and lp.graph.m == 8
    assert lp.graph.degree(lp.roles["centre"]) == 4


def test_star_1111_is_k14():
    lp = instantiate(PatternSpec.star(1, 1, 1, 1))
    assert lp.graph.n == 5 and lp.graph.degree(0) == 4


def test_instantiate_size_invariants():
    rng = random.Random(3)
    for _ in range(30):
        i = rng.randrange(1, 4)
        a, b, c, d = (rng.randrange(1, 4) for _ in range(4))
        lp = instantiate(PatternSpec.hgraph(i, a, b, c, d))
        assert lp.graph.n == i + a + b + c + d + 1
        assert lp.graph.m == i + a + b + c + d
        p, q, r, s = (rng.randrange(1, 4) for _ in range(4))
        st = instantiate(PatternSpec.star(p, q, r, s))
        assert st.graph.m == p + q + r + s
        assert st.graph.n == p + q + r + s + 1


def test_fan_has_order_plus_one_vertices():
    lp = instantiate(PatternSpec.fan(5))
    assert lp.graph.n == 6
    assert lp.graph.degree(lp.roles["centre"]) == 5
    assert len(lp.roles["poles"]) == 3


def test_every_pattern_vertex_has_smaller_neighbour():
    specs = [
        PatternSpec.star(1, 2, 3, 1),
        PatternSpec.hgraph(2, 1, 2, 2, 1),
        PatternSpec.fan(6),
        PatternSpec.biclique(3, 4),
        PatternSpec.path(5),
        PatternSpec.cycle(5),
    ]
    for spec in specs:
        g = instantiate(spec).graph
        for v in g.vertices():
            if v > 0:
                assert min(g.neighbours(v)) < v


# -- containment ----------------------------------------------------------------


def test_k5_contains_k14():
    emb = contains_subgraph(complete_graph(5), PatternSpec.star(1, 1, 1, 1))
    assert emb is not None and emb.validate(complete_graph(5))


def test_c6_is_hgraph_free():
    assert contains_subgraph(cycle_graph(6), PatternSpec.hgraph(1, 1, 1, 1, 1)) is None


def test_t1_identity_embedding():
    host = instantiate(PatternSpec.hgraph(1, 2, 2, 2, 2)).graph
    emb = contains_subgraph(host, PatternSpec.hgraph(1, 2, 2, 2, 2))
    assert emb is not None
    assert emb.mapping == {v: v for v in host.vertices()}


def test_k5_not_hgraph_free_check():
    # frozen from the exhaustive-injection oracle: K_5 has only 5 vertices
    assert not brute_contains_subgraph(complete_graph(5),
                                       instantiate(PatternSpec.hgraph(1, 1, 1, 1, 1)).graph)
    assert is_subgraph_free(complete_graph(5), PatternSpec.hgraph(1, 1, 1, 1, 1))


def test_p10_is_star_free():
    assert is_subgraph_free(path_graph(10), PatternSpec.star(1, 1, 1, 1))


def test_containment_agrees_with_injection_oracle():
    rng = random.Random(29)
    specs = [
        PatternSpec.star(1, 1, 1, 1),
        PatternSpec.path(3),
        PatternSpec.cycle(4),
        PatternSpec.biclique(2, 2),
        PatternSpec.fan(3),
    ]
    for _ in range(40):
        g = random_graph(rng, rng.randrange(3, 8), rng.random() * 0.8)
        for spec in specs:
            pat = instantiate(spec).graph
            expected = brute_contains_subgraph(g, pat)
            got = contains_subgraph(g, spec)
            assert (got is not None) == expected
            if got is not None:
                assert got.validate(g)


def test_path_containment_matches_longest_path():
    rng = random.Random(31)
    for _ in range(25):
        g = random_graph(rng, rng.randrange(2, 12), rng.random() * 0.5)
        best = brute_longest_path_vertices(g)
        for length in range(0, g.n):
            assert (contains_subgraph(g, PatternSpec.path(length)) is not None) == (
                length + 1 <= best
            )


def test_freeness_is_monotone_under_deletion():
    rng = random.Random(37)
    spec = PatternSpec.star(1, 1, 2, 2)
    for _ in range(30):
        g = random_graph(rng, rng.randrange(4, 10), rng.random() * 0.6)
        if not is_subgraph_free(g, spec):
            continue
        vs = g.vertices()
        sub = g.without_vertices(rng.sample(vs, rng.randrange(1, len(vs))))
        assert is_subgraph_free(sub, spec)
        edges = list(g.edges())
        if edges:
            sub2 = g.without_edges(rng.sample(edges, rng.randrange(1, len(edges) + 1)))
            assert is_subgraph_free(sub2, spec)


def test_embedding_is_self_certifying():
    rng = random.Random(41)
    for _ in range(40):
        g = random_graph(rng, rng.randrange(5, 11), rng.random() * 0.7)
        for spec in (PatternSpec.cycle(3), PatternSpec.star(1, 1, 1, 1)):
            emb = contains_subgraph(g, spec)
            if emb is not None:
                assert emb.validate(g)


# -- protected fans --------------------------------------------------------------


def fan_host(order: int) -> Graph:
    return instantiate(PatternSpec.fan(order - 1)).graph


def test_standalone_fan_is_protected():
    g = fan_host(5)
    got = find_protected_fan(g, 5)
    assert got is not None
    centre, e1, e2, q = got
    assert q == frozenset(g.vertices())
    assert centre == 0 and {e1, e2} == {1, 4}


def test_pendant_on_interior_breaks_protection():
    g = fan_host(5)
    g, w = g.add_vertex([2])  # 2 is an interior path vertex
    assert find_protected_fan(g, 5) is None


def test_pendant_on_pole_keeps_protection():
    g = fan_host(5)
    for pole in (0, 1, 4):
        h, _ = g.add_vertex([pole])
        got = find_protected_fan(h, 5)
        assert got is not None and got[3] == frozenset(range(5))


def test_protected_fan_exhaustive_check():
    # frozen from an exhaustive subset check on the pendant-interior host
    g, _ = fan_host(5).add_vertex([2])
    found_by_subsets = []
    fan = instantiate(PatternSpec.fan(4)).graph
    for q in itertools.combinations(g.vertices(), 5):
        sub = g.induced(q)
        if not brute_contains_subgraph(sub, fan) or sub.m != fan.m:
            continue
        found_by_subsets.append(q)
    # the fan subsets exist but none is protected
    assert found_by_subsets
    assert find_protected_fan(g, 5) is None


def test_triangle_is_an_order3_fan():
    g = complete_graph(3)
    got = find_protected_fan(g, 3)
    assert got is not None and got[3] == frozenset({0, 1, 2})


# -- degree-4 centre lift ----------------------------------------------------------


def planted_three_star(k: int, extra_edge_to):
    """Host = three arms of 2k edges + a fourth centre neighbour."""
    lp = three_armed_star(2 * k)
    g = lp.graph
    g, y = g.add_vertex([lp.roles["centre"]])
    if extra_edge_to is not None:
        g = g.with_edge(y, extra_edge_to)
    emb = EmbeddingMap(lp, {v: v for v in lp.graph.vertices()})
    return g, emb, y


def test_lift_with_far_neighbour():
    g, emb, y = planted_three_star(1, None)
    out = lift_star_centre(g, emb, 1)
    assert out.validate(g)
    branches = out.pattern.roles["branches"]
    images = [out.image(b) for b in branches]
    assert (y,) in [im for im in images if len(im) == 1]


def test_lift_with_shallow_neighbour_reroots():
    k = 2
    lp = three_armed_star(2 * k)
    g = lp.graph
    depth2 = lp.roles["branches"][0][1]  # second vertex of arm 1
    g = g.with_edge(lp.roles["centre"], depth2) if not g.has_edge(0, depth2) else g
    emb = EmbeddingMap(lp, {v: v for v in lp.graph.vertices()})
    out = lift_star_centre(g, emb, k)
    assert out.validate(g)
    # the rerooted branch starts at the extra neighbour
    long_images = [out.image(b) for b in out.pattern.roles["branches"] if len(b) == k]
    arm1 = lp.roles["branches"][0]
    assert tuple(arm1[1 : 1 + k]) in long_images


def test_lift_requires_degree_four():
    lp = three_armed_star(2)
    emb = EmbeddingMap(lp, {v: v for v in lp.graph.vertices()})
    with pytest.raises(PreconditionViolated):
        lift_star_centre(lp.graph, emb, 1)


def test_lift_random_instances_always_validate():
    rng = random.Random(43)
    for _ in range(200):
        k = rng.choice([1, 2, 3])
        lp = three_armed_star(2 * k)
        g = lp.graph
        # attach random extra structure around the star
        for _ in range(rng.randrange(0, 5)):
            tail = rng.choice(g.vertices())
            g, _ = g.add_vertex([tail])
        # force a fourth centre neighbour: fresh vertex or an arm vertex
        if rng.random() < 0.5:
            g, _ = g.add_vertex([0])
        else:
            candidates = [v for v in lp.graph.vertices()
                          if v != 0 and not g.has_edge(0, v)]
            g = g.with_edge(0, rng.choice(candidates))
        emb = EmbeddingMap(lp, {v: v for v in lp.graph.vertices()})
        out = lift_star_centre(g, emb, k)
        assert out.validate(g)
        assert len(set(out.mapping.values())) == len(out.mapping)
        centre_pattern = out.pattern.roles["centre"]
        deg = sum(
            1 for e in out.pattern.graph.edges() if centre_pattern in e
        )
        assert deg == 4
