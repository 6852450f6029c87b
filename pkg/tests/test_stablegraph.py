import pytest

from levelnerve.errors import InvalidInputError
from levelnerve.stablegraph import StableGraph, enumerate_stable_graphs


def find_type(graphs, n_vertices, n_edges, n_loops, genera):
    out = []
    for sg in graphs:
        loops = sum(1 for (u, v) in sg.edges if u == v)
        if (sg.n_vertices(), sg.n_edges(), loops,
                tuple(sorted(g for g, _ in sg.vertices))) == \
                (n_vertices, n_edges, n_loops, tuple(sorted(genera))):
            out.append(sg)
    assert len(out) == 1, f"expected unique type, got {len(out)}"
    return out[0]


def test_enumerate_2_0():
    graphs = enumerate_stable_graphs(2, 0)
    assert len(graphs) == 6
    with_empty = enumerate_stable_graphs(2, 0, include_empty=True)
    assert len(with_empty) == 7
    # the six nonempty types
    find_type(graphs, 1, 1, 1, [1])          # nonseparating curve
    find_type(graphs, 1, 2, 2, [0])          # two nonseparating curves
    find_type(graphs, 2, 1, 0, [1, 1])       # separating curve
    find_type(graphs, 2, 2, 1, [0, 1])       # loop plus bridge
    find_type(graphs, 2, 3, 0, [0, 0])       # theta
    find_type(graphs, 2, 3, 2, [0, 0])       # dumbbell
    for sg in graphs:
        assert sg.is_stable()
        assert sg.genus() == 2
        assert sg.marks() == ()


def test_enumerate_1_1():
    graphs = enumerate_stable_graphs(1, 1)
    assert len(graphs) == 1
    sg = graphs[0]
    assert sg.n_vertices() == 1
    assert sg.edges == [(0, 0)]
    assert sg.vertices == [(0, (1,))]
    assert len(enumerate_stable_graphs(1, 1, include_empty=True)) == 2


def test_enumerate_1_0_empty():
    assert enumerate_stable_graphs(1, 0) == ()
    assert enumerate_stable_graphs(1, 0, include_empty=True) == ()


def test_enumerate_3_0_sane():
    graphs = enumerate_stable_graphs(3, 0)
    assert len(graphs) > 6
    for sg in graphs:
        assert sg.is_stable()
        assert sg.genus() == 3
    keys = [sg.canonical_key() for sg in graphs]
    assert len(set(keys)) == len(keys)


def test_canonical_isomorphism():
    a = StableGraph([(1, ()), (0, ())], [(0, 1), (1, 1), (0, 1)])
    b = StableGraph([(0, ()), (1, ())], [(1, 0), (0, 0), (0, 1)])
    assert a.is_isomorphic(b)
    c = StableGraph([(1, ()), (0, ())], [(0, 1), (0, 0), (0, 1)])
    assert not a.is_isomorphic(c)


def test_theta_automorphisms():
    theta = StableGraph([(0, ()), (0, ())], [(0, 1), (0, 1), (0, 1)])
    assert len(theta.automorphisms()) == 2
    assert theta.b1() == 2
    assert theta.genus() == 2


def test_contractions():
    graphs = enumerate_stable_graphs(2, 0)
    theta = find_type(graphs, 2, 3, 0, [0, 0])
    two_loops = find_type(graphs, 1, 2, 2, [0])
    dumbbell = find_type(graphs, 2, 3, 2, [0, 0])
    loop_bridge = find_type(graphs, 2, 2, 1, [0, 1])
    sep = find_type(graphs, 2, 1, 0, [1, 1])
    nonsep = find_type(graphs, 1, 1, 1, [1])

    assert theta.contract_edge(0).is_isomorphic(two_loops)
    bridge_idx = dumbbell.bridges()[0]
    assert dumbbell.contract_edge(bridge_idx).is_isomorphic(two_loops)
    loop_idx = next(i for i, (u, v) in enumerate(dumbbell.edges) if u == v)
    assert dumbbell.contract_edge(loop_idx).is_isomorphic(loop_bridge)
    assert nonsep.contract_edge(0).genus() == 2
    assert sep.contract_edge(0).n_vertices() == 1


def test_cut_classification():
    graphs = enumerate_stable_graphs(2, 0)
    dumbbell = find_type(graphs, 2, 3, 2, [0, 0])
    assert len(dumbbell.bridges()) == 1
    theta = find_type(graphs, 2, 3, 0, [0, 0])
    assert theta.bridges() == []
    assert theta.minimal_two_cuts() == []
    square = StableGraph([(1, ())] * 4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert square.bridges() == []
    assert len(square.minimal_two_cuts()) == 6
    line = StableGraph([(1, ()), (1, ()), (1, ())], [(0, 1), (1, 2)])
    assert set(line.bridges()) == {0, 1}


def test_star_size_counts_loops_twice():
    sg = StableGraph([(0, (1,))], [(0, 0)])
    assert sg.star_size(0) == 2
    assert sg.is_stable()


def test_bad_inputs():
    with pytest.raises(InvalidInputError):
        StableGraph([(0, ())], [(0, 1)])
    with pytest.raises(InvalidInputError):
        StableGraph([(-1, ())], [])
    with pytest.raises(InvalidInputError):
        StableGraph([(2, ())], []).check_signature(2, 1)
    StableGraph([(2, ())], []).check_signature(2, 0)
