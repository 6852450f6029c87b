"""Catalog of multicurve representatives: coverage, words, piece data."""

import pytest

from levelnerve.catalog import (
    MulticurveRep,
    catalog_coverage,
    multicurve_catalog,
    standard_multicurve,
)
from levelnerve.errors import UnsupportedError
from levelnerve.stablegraph import StableGraph, edge_cut_classification
from levelnerve.surface import presentation
from levelnerve.words import FoldedGraph, conjugate_in_free, winv, wmul


def test_small_signatures_fully_covered():
    for (g, n, count) in [(1, 1, 2), (1, 2, 5), (2, 0, 7), (2, 1, 16)]:
        realized, missing = catalog_coverage(g, n)
        assert missing == []
        assert len(realized) == count
        assert len(multicurve_catalog(g, n)) == count


def test_lookup_matches_type():
    for t in [StableGraph([(2, ())], []),
              StableGraph([(1, ())], [(0, 0)]),
              StableGraph([(1, ()), (1, ())], [(0, 1)]),
              StableGraph([(0, ()), (0, ())], [(0, 1)] * 3)]:
        rep = standard_multicurve(t)
        assert rep.graph.is_isomorphic(t)


def test_unreachable_type_raises():
    # separating the two punctures needs a curve outside the vocabulary
    t = StableGraph([(1, (1,)), (1, (2,))], [(0, 1)])
    with pytest.raises(UnsupportedError):
        standard_multicurve(t)


def test_out_of_range_raises():
    with pytest.raises(UnsupportedError):
        multicurve_catalog(4, 0)
    with pytest.raises(UnsupportedError):
        multicurve_catalog(0, 2)
    with pytest.raises(UnsupportedError):
        multicurve_catalog(1, 0)


def test_empty_rep():
    rep = standard_multicurve(StableGraph([(2, ())], []))
    assert rep.words == ()
    assert rep.rank() == -1
    assert len(rep.pieces) == 1
    piece = rep.pieces[0]
    assert piece.genus == 2
    assert FoldedGraph(piece.gens, 4).generates_ambient()


def test_nonseparating_loop_word_pinned():
    rep = standard_multicurve(StableGraph([(1, ())], [(0, 0)]))
    assert rep.word_texts() == ["B1a2b2A2B2"]
    p = presentation(2, 0)
    assert any(c % 2 for c in p.homology_class(rep.words[0]))
    assert rep.rank() == 0


def test_separating_word_bounds_genus_one():
    rep = standard_multicurve(StableGraph([(1, ()), (1, ())], [(0, 1)]))
    (w,) = rep.words
    p = presentation(2, 0)
    assert all(c == 0 for c in p.homology_class(w))
    assert p.format(w) == "a1b2a2B2A2b1A1B1a2b2A2B2"
    # both sides are genus-1 pieces; the root piece also carries the
    # once-punctured public model's extra slot, so its rank is one higher
    assert [piece.genus for piece in rep.pieces] == [1, 1]
    ranks = [FoldedGraph(piece.gens, 4).rank() for piece in rep.pieces]
    assert sorted(ranks) == [2, 3]


def test_theta_pieces():
    rep = standard_multicurve(StableGraph([(0, ()), (0, ())], [(0, 1)] * 3))
    assert len(rep.pieces) == 2
    assert all(piece.genus == 0 for piece in rep.pieces)
    assert len(rep.words) == 3
    # non-bridge curves; no pair disconnects the theta graph
    labels, cuts = edge_cut_classification(rep.graph)
    assert labels == ["non-bridge"] * 3
    assert cuts == []
    # oriented boundary of each piece: some signed sum of all three vanishes
    p = presentation(2, 0)
    classes = [p.homology_class(w) for w in rep.words]
    assert all(any(c != 0 for c in cls) for cls in classes)
    ok = False
    for s2 in (1, -1):
        for s3 in (1, -1):
            tot = [a + s2 * b + s3 * c for a, b, c in zip(*classes)]
            ok = ok or all(t == 0 for t in tot)
    assert ok


def test_homology_reproduces_edge_classification():
    for (g, n) in [(2, 0), (1, 1), (2, 1)]:
        p = presentation(g, n)
        for rep in multicurve_catalog(g, n):
            labels, cuts = edge_cut_classification(rep.graph)
            classes = [p.homology_class(w) for w in rep.words]
            for i, cls in enumerate(classes):
                assert (labels[i] == "bridge") == all(c == 0 for c in cls)
            for (i, j) in cuts:
                su = [a + b for a, b in zip(classes[i], classes[j])]
                di = [a - b for a, b in zip(classes[i], classes[j])]
                assert all(c == 0 for c in su) or all(c == 0 for c in di)


def test_side_data_solves_boundary_loops():
    rep = standard_multicurve(StableGraph([(0, ()), (0, ())], [(0, 1)] * 3))
    folded = [FoldedGraph(piece.gens, 4) for piece in rep.pieces]
    for word, sides in zip(rep.words, rep.sides):
        assert len(sides) == 2
        for s in sides:
            loop = wmul(s.conj, word if s.sign > 0 else winv(word),
                        winv(s.conj))
            assert folded[s.piece].contains(loop)


def test_marks_carry_puncture_loops():
    rep = standard_multicurve(StableGraph([(0, (1,))], [(0, 0)]))
    p = presentation(1, 1)
    ((idx, loop),) = rep.pieces[0].marks
    assert idx == 1
    assert conjugate_in_free(loop, p.puncture_word(1))
    fg = FoldedGraph(rep.pieces[0].gens, p.cover_rank())
    assert fg.contains(loop)


def test_genus_three_cut_pair_realized():
    rep = standard_multicurve(StableGraph([(1, ()), (1, ())],
                                          [(0, 1), (0, 1)]))
    labels, cuts = edge_cut_classification(rep.graph)
    assert labels == ["non-bridge", "non-bridge"]
    assert cuts == [(0, 1)]
    p = presentation(3, 0)
    c0, c1 = [p.homology_class(w) for w in rep.words]
    assert any(c != 0 for c in c0)
    assert (all(a + b == 0 for a, b in zip(c0, c1))
            or all(a - b == 0 for a, b in zip(c0, c1)))


def test_piece_counts_by_type():
    for rep in multicurve_catalog(2, 0):
        assert len(rep.pieces) == rep.graph.n_vertices()
        assert len(rep.words) == rep.graph.n_edges()
        assert rep.graph.genus() == 2 and rep.graph.is_stable()
