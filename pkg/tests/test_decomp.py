"""Graph decompositions: validity conditions, equivalence, order, transport.

The independent oracles live at the top: a brute-force reading of the
edge-set condition over every subset (no spanning-tree shortcut), the
low-level module-map route for the gluing condition, and the perp
description of a nonseparating complement.  Expected values frozen below
were produced by those oracles."""

import itertools
import math
import random

import pytest

from levelnerve.errors import (InvalidInputError, ResourceLimitError,
                               UnsupportedError)
from levelnerve.symplectic import SympSpace, module_map_report
from levelnerve.covers import abelian_cover, homology_cover, identity_cover
from levelnerve.catalog import multicurve_catalog
from levelnerve import decomp
from levelnerve.decomp import (EquivariantDecomposition, FramedDecomposition,
                               GraphDecomposition, canonical_form,
                               decomposition_from_data, decomposition_to_data,
                               equivalent, induced_from_lift,
                               induced_from_multicurve, leq, sp_action,
                               validate)

A1, B1, A2, B2 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)

NONSEP_KEY = (((1, ()),), ((0, 0),))
SEP_KEY = (((1, ()), (1, ())), ((0, 1),))
PANTS_KEY = (((0, ()), (0, ())), ((0, 1), (0, 1), (0, 1)))
LOOPS2_KEY = (((0, ()),), ((0, 0), (0, 0)))
MIXED_KEY = (((0, ()), (1, ())), ((0, 0), (0, 1)))
EMPTY_KEY = (((2, ()),), ())
CUT_PAIR_KEY = (((1, ()), (1, ())), ((0, 1), (0, 1)))


def by_key(g, n, key):
    for mc in multicurve_catalog(g, n):
        if mc.key == key:
            return mc
    raise AssertionError(f"no catalog type {key}")


# --------------------------------------------------------------------------
# oracles


def unit_multiples(sub):
    """Every generator of a cyclic subgroup, zero vector for the trivial
    one; written directly from the order, independent of the module under
    test."""
    sp = sub.space
    gens = sub.canonical_gens()
    if not gens:
        return [(0,) * sp.dim]
    c = gens[0]
    if sp.m == 0:
        return [c, tuple(-x for x in c)]
    return [sp.reduce([k * x for x in c])
            for k in range(1, sub.order + 1)
            if math.gcd(k, sub.order) == 1]


def brute_edge_condition(d):
    """Both halves of the edge-set condition checked over every subset of
    edges: connected complements must span primitively with full rank, and
    minimal disconnecting sets must admit generators summing to zero."""
    sp = d.space
    E = len(d.edges)
    if not all(eg.is_cyclic() for eg in d.edge_groups):
        return False

    def connected_without(removed):
        seen = {0}
        grew = True
        while grew:
            grew = False
            for e, (u, v) in enumerate(d.edges):
                if e in removed:
                    continue
                for a, b in ((u, v), (v, u)):
                    if a in seen and b not in seen:
                        seen.add(b)
                        grew = True
        return len(seen) == d.V

    for r in range(E + 1):
        for sub in itertools.combinations(range(E), r):
            if not connected_without(set(sub)):
                continue
            span = sp.subgroup([x for e in sub
                                for x in d.edge_groups[e].canonical_gens()])
            if not (span.rank == len(sub) and span.is_primitive()):
                return False
    for r in range(1, E + 1):
        for sub in itertools.combinations(range(E), r):
            if connected_without(set(sub)):
                continue
            if not all(connected_without(set(sub) - {e}) for e in sub):
                continue
            choices = [unit_multiples(d.edge_groups[e]) for e in sub]
            if not any(not any(sp.reduce([sum(t) for t in zip(*pick)]))
                       for pick in itertools.product(*choices)):
                return False
    return True


# --------------------------------------------------------------------------
# construction and validity


def test_constructor_rejects_malformed():
    sp = SympSpace(2, 2)
    with pytest.raises(InvalidInputError):
        GraphDecomposition(sp, [[A1]], [[A2]], [(0, 1)])
    with pytest.raises(InvalidInputError):
        GraphDecomposition(sp, [[A1]], [[A2], [A2]], [(0, 0)])
    with pytest.raises(InvalidInputError):
        GraphDecomposition(sp, [[A1], [A2]], [], [])
    with pytest.raises(InvalidInputError):
        GraphDecomposition(sp, [[A1]], [[A2]], [(0, 0)], marks=[(1,)], n=0)
    other = SympSpace(2, 3).subgroup([A1])
    with pytest.raises(InvalidInputError):
        GraphDecomposition(sp, [other], [[A2]], [(0, 0)])
    with pytest.raises(InvalidInputError):
        GraphDecomposition(sp, [], [], [])


def test_validate_input_checks():
    sp = SympSpace(2, 2)
    d = GraphDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)])
    with pytest.raises(InvalidInputError):
        validate("not a decomposition")
    with pytest.raises(InvalidInputError):
        validate(d, conditions=("vii",))
    assert validate(d, conditions=("ii",)) == []


def test_loop_decomposition_valid():
    for m in (0, 2, 3):
        sp = SympSpace(2, m)
        d = GraphDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)])
        assert validate(d) == []
        rows = d.vertex_groups[0].canonical_gens()
        rep = module_map_report(rows, 4, m)
        assert rep["injective"] and rep["coker_free"]
        assert rep["coker_rank"] == d.b1() == 1


def test_loop_decomposition_bad_vertex_group():
    sp = SympSpace(2, 2)
    d = GraphDecomposition(sp, [[A1, B1, B2]], [[A2]], [(0, 0)])
    assert validate(d) == ["iii", "vi"]


def test_separating_decomposition_valid():
    for m in (0, 2, 4):
        sp = SympSpace(2, m)
        d = GraphDecomposition(sp, [[A1, B1], [A2, B2]], [[]], [(0, 1)])
        assert validate(d) == []
        rows = (d.vertex_groups[0].canonical_gens()
                + d.vertex_groups[1].canonical_gens())
        rep = module_map_report(rows, 4, m)
        assert rep["injective"] and rep["coker_free"]
        assert rep["coker_rank"] == d.b1() == 0


def test_marks_must_partition():
    sp = SympSpace(2, 2)
    d = GraphDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)],
                           marks=[()], n=1)
    assert validate(d) == ["ii"]
    d2 = GraphDecomposition(sp, [[A1, B1], [A2, B2]], [[]], [(0, 1)],
                            marks=[(1,), (1,)], n=1)
    assert "ii" in validate(d2)


def test_annulus_violates_only_rank_condition():
    # two parallel copies of the same curve leave an annulus between them:
    # the annulus vertex has two ends but a rank-1 group
    for m in (0, 2, 3):
        sp = SympSpace(2, m)
        d = GraphDecomposition(sp, [[B1], [B1, A2, B2]], [[B1], [B1]],
                               [(0, 1), (0, 1)])
        assert validate(d) == ["v"]
        assert brute_edge_condition(d)


def test_non_primitive_edge_group():
    sp = SympSpace(2, 4)
    d = GraphDecomposition(sp, [[A1, B1, (0, 0, 2, 0)]], [[(0, 0, 2, 0)]],
                           [(0, 0)])
    assert validate(d) == ["i", "iv"]
    assert not brute_edge_condition(d)


def test_bond_sum_violation():
    # two parallel edges <a1>, <a2> over Z/3: no generator choice sums to
    # zero across the bond
    sp = SympSpace(2, 3)
    vg = [A1, A2]
    d = GraphDecomposition(sp, [vg, vg], [[A1], [A2]], [(0, 1), (0, 1)])
    assert "iv" in validate(d)
    assert not brute_edge_condition(d)


def test_edge_condition_against_bruteforce():
    cases = []
    pants = induced_from_multicurve(2, 0, 2, by_key(2, 0, PANTS_KEY))
    cases.append(pants)
    cases.append(induced_from_multicurve(3, 0, 4, by_key(3, 0, CUT_PAIR_KEY)))
    sp = SympSpace(2, 3)
    cases.append(GraphDecomposition(sp, [[B1], [B1, A2, B2]], [[B1], [B1]],
                                    [(0, 1), (0, 1)]))
    cases.append(GraphDecomposition(sp, [[A1, A2], [A1, A2]],
                                    [[A1], [A2]], [(0, 1), (0, 1)]))
    for d in cases:
        assert brute_edge_condition(d) == ("iv" not in validate(d))


def test_degrees_count_loops_twice():
    sp = SympSpace(2, 2)
    d = GraphDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)])
    assert d.degrees() == (2,)
    assert d.b1() == 1 and d.rank() == 1


# --------------------------------------------------------------------------
# frames


def test_frame_must_generate():
    sp = SympSpace(2, 4)
    ok = FramedDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)], [A2])
    assert validate(ok) == []
    bad = FramedDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)],
                              [(0, 0, 2, 0)])
    assert validate(bad) == ["frame"]


def test_frame_sign_normalized():
    sp = SympSpace(2, 5)
    d1 = FramedDecomposition(sp, [[A1, B1, A2]], [[(0, 0, 2, 0)]], [(0, 0)],
                             [(0, 0, 2, 0)])
    d2 = FramedDecomposition(sp, [[A1, B1, A2]], [[(0, 0, 2, 0)]], [(0, 0)],
                             [(0, 0, 3, 0)])
    assert d1.frames == d2.frames == ((0, 0, 2, 0),)
    assert equivalent(d1, d2)
    assert canonical_form(d1) == canonical_form(d2)


def test_frames_carry_information_only_past_four():
    # over Z/5 the generators a2 and 2*a2 are genuinely different frames
    # for the same edge group; the unframed graphs are equivalent
    sp = SympSpace(2, 5)
    d1 = FramedDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)], [A2])
    d2 = FramedDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)],
                             [(0, 0, 2, 0)])
    assert validate(d1) == validate(d2) == []
    assert not equivalent(d1, d2)
    assert canonical_form(d1) != canonical_form(d2)
    p1 = GraphDecomposition(sp, d1.vertex_groups, d1.edge_groups, d1.edges)
    p2 = GraphDecomposition(sp, d2.vertex_groups, d2.edge_groups, d2.edges)
    assert equivalent(p1, p2)


def test_forgetting_frames_loses_nothing_at_two_and_three():
    for m in (2, 3):
        for mc in multicurve_catalog(2, 0):
            d = induced_from_multicurve(2, 0, m, mc)
            base = canonical_form(d)
            for picks in itertools.product(
                    *[unit_multiples(eg) for eg in d.edge_groups]):
                alt = FramedDecomposition(d.space, d.vertex_groups,
                                          d.edge_groups, d.edges,
                                          list(picks), d.marks, d.n)
                assert canonical_form(alt) == base


# --------------------------------------------------------------------------
# equivalence and canonical forms


def test_relabeling_equivalence_matches_canonical():
    rng = random.Random(11)
    for m in (0, 2):
        for mc in multicurve_catalog(2, 0):
            d0 = induced_from_multicurve(2, 0, m, mc)
            perm = list(range(d0.V))
            rng.shuffle(perm)
            d1 = FramedDecomposition(
                d0.space,
                [d0.vertex_groups[perm.index(j)] for j in range(d0.V)],
                d0.edge_groups,
                [(perm[u], perm[v]) for (u, v) in d0.edges],
                d0.frames,
                [d0.marks[perm.index(j)] for j in range(d0.V)], d0.n)
            assert equivalent(d0, d1)
            assert canonical_form(d0) == canonical_form(d1)


def test_distinct_types_are_inequivalent():
    ds = [induced_from_multicurve(2, 0, 2, mc)
          for mc in multicurve_catalog(2, 0)]
    forms = [canonical_form(d) for d in ds]
    assert len(set(forms)) == len(ds)
    for i, j in itertools.combinations(range(len(ds)), 2):
        assert not equivalent(ds[i], ds[j])
        assert forms[i] != forms[j]


def test_equivalent_distinguishes_edge_groups():
    sp = SympSpace(2, 2)
    da = GraphDecomposition(sp, [[A1, A2, B2]], [[A1]], [(0, 0)])
    db = GraphDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)])
    assert validate(da) == validate(db) == []
    assert not equivalent(da, db)
    assert canonical_form(da) != canonical_form(db)


def test_kind_mismatch_is_inequivalent():
    sp = SympSpace(2, 2)
    plain = GraphDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)])
    framed = FramedDecomposition(sp, [[A1, B1, A2]], [[A2]], [(0, 0)], [A2])
    assert not equivalent(plain, framed)


# --------------------------------------------------------------------------
# partial order


def test_leq_reflexive_and_named_pairs():
    cat = multicurve_catalog(2, 0)
    ds = {mc.key: induced_from_multicurve(2, 0, 2, mc) for mc in cat}
    for d in ds.values():
        assert leq(d, d)
    assert leq(ds[SEP_KEY], ds[MIXED_KEY])
    assert leq(ds[NONSEP_KEY], ds[PANTS_KEY])
    assert not leq(ds[NONSEP_KEY], ds[SEP_KEY])
    assert not leq(ds[SEP_KEY], ds[NONSEP_KEY])
    for d in ds.values():
        assert leq(ds[EMPTY_KEY], d)
    assert not leq(ds[PANTS_KEY], ds[NONSEP_KEY])


def test_leq_poset_axioms_on_catalog():
    ds = [induced_from_multicurve(2, 0, 2, mc)
          for mc in multicurve_catalog(2, 0)]
    k = len(ds)
    rel = {(i, j): leq(ds[i], ds[j])
           for i in range(k) for j in range(k)}
    assert sum(1 for (i, j), v in rel.items() if v and i != j) == 14
    for i in range(k):
        for j in range(k):
            if i != j and rel[i, j]:
                assert not rel[j, i]
            for t in range(k):
                if rel[i, j] and rel[j, t]:
                    assert rel[i, t]


def test_leq_requires_matching_ambient():
    d2 = induced_from_multicurve(2, 0, 2, by_key(2, 0, SEP_KEY))
    d3 = induced_from_multicurve(2, 0, 3, by_key(2, 0, SEP_KEY))
    with pytest.raises(InvalidInputError):
        leq(d2, d3)


# --------------------------------------------------------------------------
# constructors from the catalog


def test_induced_nonseparating():
    for m in (0, 2):
        sp = SympSpace(2, m)
        d = induced_from_multicurve(2, 0, m, by_key(2, 0, NONSEP_KEY))
        assert d.V == 1 and d.edges == ((0, 0),)
        c = d.frames[0]
        assert d.edge_groups[0] == sp.subgroup([c])
        assert d.vertex_groups[0] == sp.subgroup([c]).perp()
        assert d.rank() == 1


def test_induced_separating():
    sp = SympSpace(2, 2)
    d = induced_from_multicurve(2, 0, 2, by_key(2, 0, SEP_KEY))
    plane1 = sp.subgroup([A1, B1])
    plane2 = sp.subgroup([A2, B2])
    assert {vg.key() for vg in d.vertex_groups} == \
        {plane1.key(), plane2.key()}
    assert d.edge_groups[0].is_trivial()
    assert d.frames == (sp.zero(),)


def test_induced_valid_across_catalogs():
    for (g, n) in ((1, 1), (1, 2), (2, 0), (2, 1)):
        for m in (0, 2, 3, 4):
            for mc in multicurve_catalog(g, n):
                d = induced_from_multicurve(g, n, m, mc)
                assert validate(d) == []
                assert d.rank() == len(mc.words)
                assert sorted(x for mk in d.marks for x in mk) == \
                    list(range(1, n + 1))


def test_induced_valid_sample_genus_three():
    cat = multicurve_catalog(3, 0)
    assert len(cat) == 32
    for mc in cat[::5]:
        d = induced_from_multicurve(3, 0, 2, mc)
        assert validate(d) == []
    for m in (0, 2, 3, 4):
        d = induced_from_multicurve(3, 0, m, by_key(3, 0, CUT_PAIR_KEY))
        assert validate(d) == []
        assert len(d.edges) == 2
        # the two lifted frames agree up to sign
        assert len({f for f in d.frames}) == 1


def test_cut_pair_hand_built():
    for m in (0, 2, 4):
        sp = SympSpace(3, m)
        a1 = sp.basis_a(1)
        neg = sp.reduce([-x for x in a1])
        d = FramedDecomposition(
            sp,
            [[a1, sp.basis_a(2), sp.basis_b(2)],
             [a1, sp.basis_a(3), sp.basis_b(3)]],
            [[a1], [a1]], [(0, 1), (0, 1)], [a1, neg])
        assert validate(d) == []
        assert brute_edge_condition(d)


def test_induced_rejects_foreign_multicurve():
    mc11 = multicurve_catalog(1, 1)[0]
    with pytest.raises(UnsupportedError):
        induced_from_multicurve(2, 0, 2, mc11)


# --------------------------------------------------------------------------
# symplectic transport


def test_sp_action_identity_and_inverse():
    sp = SympSpace(2, 3)
    d = induced_from_multicurve(2, 0, 3, by_key(2, 0, SEP_KEY))
    assert canonical_form(sp_action(sp.identity_matrix(), d)) == \
        canonical_form(d)
    F = sp.transvection(sp.basis_a(1))
    Finv = sp.inverse_transvection(sp.basis_a(1))
    assert canonical_form(sp_action(Finv, sp_action(F, d))) == \
        canonical_form(d)


def test_sp_action_preserves_validity_and_transports_frames():
    sp = SympSpace(2, 3)
    F = sp.transvection((1, 1, 0, 1))
    for mc in multicurve_catalog(2, 0):
        d = induced_from_multicurve(2, 0, 3, mc)
        dF = sp_action(F, d)
        assert validate(dF) == []
        assert dF.rank() == d.rank()
        for e in range(len(d.edges)):
            img = sp.mat_apply(d.frames[e], F)
            neg = sp.reduce([-x for x in img])
            assert dF.frames[e] == min(img, neg)


def test_sp_action_functorial():
    sp = SympSpace(2, 3)
    d = induced_from_multicurve(2, 0, 3, by_key(2, 0, PANTS_KEY))
    F = sp.transvection(sp.basis_a(1))
    G = sp.transvection((1, 1, 0, 1))
    lhs = sp_action(F, sp_action(G, d))
    rhs = sp_action(sp.mat_mul(G, F), d)
    assert canonical_form(lhs) == canonical_form(rhs)


def test_sp_action_rejects_non_symplectic():
    d = induced_from_multicurve(2, 0, 2, by_key(2, 0, SEP_KEY))
    bad = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]]
    with pytest.raises(InvalidInputError):
        sp_action(bad, d)


# --------------------------------------------------------------------------
# constructors from covers


def test_lift_identity_cover_reproduces_base():
    spec = identity_cover(2, 0)
    for m in (2, 3):
        for mc in multicurve_catalog(2, 0):
            dl = induced_from_lift(spec, mc, m)
            db = induced_from_multicurve(2, 0, m, mc)
            assert equivalent(dl.framed(), db)
            assert canonical_form(dl) == canonical_form(db)
            assert dl.rank() == len(mc.words)
            assert dl.matrices == (dl.space.identity_matrix(),)
            assert validate(dl) == []


def test_lift_double_cover_swaps_copies():
    # deck Z/2 with a1 -> 1: the nonseparating curve lifts to two copies
    # in one orbit, and the deck transposition swaps them
    spec = abelian_cover(2, 0, (2,), [(1,), (0,), (0,), (0,)])
    d = induced_from_lift(spec, by_key(2, 0, NONSEP_KEY), 2)
    assert (d.V, len(d.edges)) == (2, 2)
    assert d.edges == ((0, 1), (0, 1))
    assert d.rank() == 1
    assert d.frames == ((0, 0, 0, 1, 0, 0),) * 2
    assert d.vperms == ((0, 1), (1, 0))
    assert d.eperms == ((0, 1), (1, 0))
    assert validate(d) == []


def test_lift_homology_cover_nonseparating():
    h2 = homology_cover(2, 0, 2)
    d = induced_from_lift(h2, by_key(2, 0, NONSEP_KEY), 2)
    assert (d.V, len(d.edges)) == (2, 8)
    assert d.rank() == 1
    assert validate(d) == []


def test_lift_homology_cover_separating():
    h2 = homology_cover(2, 0, 2)
    d = induced_from_lift(h2, by_key(2, 0, SEP_KEY), 2)
    assert (d.V, len(d.edges)) == (8, 16)
    assert d.rank() == 1
    assert validate(d) == []


def test_lift_homology_cover_pants():
    h2 = homology_cover(2, 0, 2)
    d = induced_from_lift(h2, by_key(2, 0, PANTS_KEY), 2)
    assert (d.V, len(d.edges)) == (8, 24)
    assert d.rank() == 3
    assert validate(d, conditions=("i", "ii", "iii", "v", "vi",
                                   "frame", "action")) == []
    with pytest.raises(ResourceLimitError):
        validate(d, conditions=("iv",))


def test_lift_punctured_cover():
    spec = abelian_cover(1, 1, (2,), [(1,), (0,)])
    loop_mc = by_key(1, 1, (((0, (1,)),), ((0, 0),)))
    d = induced_from_lift(spec, loop_mc, 2)
    assert (d.V, len(d.edges), d.n) == (2, 2, 2)
    assert d.rank() == 1
    assert d.marks == ((1,), (2,))
    assert validate(d) == []
    empty_mc = by_key(1, 1, (((1, (1,)),), ()))
    d0 = induced_from_lift(spec, empty_mc, 2)
    assert (d0.V, len(d0.edges), d0.n) == (1, 0, 2)
    assert d0.marks == ((1, 2),)
    assert validate(d0) == []


def test_tampered_action_is_reported():
    spec = abelian_cover(2, 0, (2,), [(1,), (0,), (0,), (0,)])
    d = induced_from_lift(spec, by_key(2, 0, NONSEP_KEY), 2)
    iden = d.space.identity_matrix()
    wrong_matrix = EquivariantDecomposition(
        d.space, d.vertex_groups, d.edge_groups, d.edges, d.frames,
        d.marks, d.n, d.group, [iden, iden], d.vperms, d.eperms)
    assert validate(wrong_matrix) == ["action"]
    wrong_vperm = EquivariantDecomposition(
        d.space, d.vertex_groups, d.edge_groups, d.edges, d.frames,
        d.marks, d.n, d.group, d.matrices, [(0, 1), (0, 1)], d.eperms)
    assert validate(wrong_vperm) == ["action"]


def test_sp_action_transports_equivariant():
    spec = abelian_cover(2, 0, (2,), [(1,), (0,), (0,), (0,)])
    d = induced_from_lift(spec, by_key(2, 0, NONSEP_KEY), 2)
    F = d.space.transvection(d.space.basis_a(1))
    dF = sp_action(F, d)
    assert isinstance(dF, EquivariantDecomposition)
    assert dF.vperms == d.vperms and dF.eperms == d.eperms
    assert validate(dF) == []


# --------------------------------------------------------------------------
# serialization


def test_data_round_trip():
    cases = [
        induced_from_multicurve(2, 0, 2, by_key(2, 0, SEP_KEY)),
        induced_from_multicurve(2, 0, 0, by_key(2, 0, NONSEP_KEY)),
        GraphDecomposition(SympSpace(2, 2), [[A1, B1, A2]], [[A2]],
                           [(0, 0)]),
    ]
    spec = abelian_cover(2, 0, (2,), [(1,), (0,), (0,), (0,)])
    cases.append(induced_from_lift(spec, by_key(2, 0, NONSEP_KEY), 2))
    for d in cases:
        data = decomposition_to_data(d)
        back = decomposition_from_data(data)
        assert type(back).__name__ == type(d).__name__
        assert equivalent(d, back)
        assert validate(back) == validate(d)
    eq = cases[-1]
    back = decomposition_from_data(decomposition_to_data(eq))
    assert back.vperms == eq.vperms and back.eperms == eq.eperms
    assert back.matrices == eq.matrices


def test_from_data_rejects_malformed():
    with pytest.raises(InvalidInputError):
        decomposition_from_data({"edges": []})
    with pytest.raises(InvalidInputError):
        decomposition_from_data({
            "space": {"genus": 2, "modulus": 2}, "n": 0, "vertices": 2,
            "edges": [[0, 1]], "vertex_groups": [[[1, 0, 0, 0]]],
            "edge_groups": [[]]})
