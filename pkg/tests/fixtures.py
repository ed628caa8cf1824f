"""Hand-encoded fixture graphs used by structure tests and acceptance.

Both fixtures pair a 0-indexed host graph with the 1-based vertex naming
used in the tests: path vertex p_i is graph vertex i-1.
"""

from chroma.graph import Graph, SignedPath, build_graph


def jump_showcase() -> tuple[Graph, SignedPath]:
    """Ten-vertex path with one direct chord each side and a four-step
    detour: three positive jumps out of (p4, p7), maximum (p6, p10)."""
    # p1..p10 -> 0..9, q1..q4 -> 10..13
    edges = [(i, i + 1) for i in range(9)]
    edges += [(4, 8), (1, 3)]  # chords p5-p9 and p2-p4
    edges += [(4, 10), (10, 11), (11, 12), (12, 13), (13, 9), (5, 11)]
    g = build_graph(14, edges)
    return g, SignedPath.in_graph(g, range(10))


def chain_showcase() -> tuple[Graph, SignedPath]:
    """Twelve-vertex path with five planted jumps forming the maximal
    positive chain [(p2,p5),(p3,p6),(p5,p8),(p7,p10),(p9,p11)]."""
    # p1..p12 -> 0..11, q1..q6 -> 12..17
    edges = [(i, i + 1) for i in range(11)]
    edges += [(1, 4)]                      # p2-p5
    edges += [(2, 12), (12, 13), (13, 5)]  # p3-q1-q2-p6
    edges += [(4, 14), (14, 7)]            # p5-q3-p8
    edges += [(6, 15), (15, 16), (16, 17), (17, 9)]  # p7-q4-q5-q6-p10
    edges += [(8, 10)]                     # p9-p11
    g = build_graph(18, edges)
    return g, SignedPath.in_graph(g, range(12))
