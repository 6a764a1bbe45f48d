"""Tests for the structural toolkit."""

import pytest
from hypothesis import given, settings, strategies as hst

from subcount.graphs import Graph, InconsistencyError, PreconditionError
from subcount.brute import (count_colorpreserving_subgraphs, count_subgraphs,
                            is_colorful)
from subcount.structural import (MinorModel, TreeDecomposition,
                                 audit_star_neighbors, build_grid_instance,
                                 degree_gap_filter,
                                 exact_tree_decomposition,
                                 extract_clique_biclique_or_matching,
                                 greedy_induced_matching, grid_pattern,
                                 induced_matching_separated_by_stars,
                                 make_bicubic, minor_lift_instance,
                                 nice_matching, psi, psi_max,
                                 ramsey_monochromatic_clique,
                                 select_subcollection)
from helpers import rand_graph


def subdivided_star(arms):
    edges = []
    for a in range(arms):
        edges.append((0, 1 + 2 * a))
        edges.append((1 + 2 * a, 2 + 2 * a))
    return Graph(1 + 2 * arms, edges)


# -- psi and the star-neighbor bound ----------------------------------------


def test_psi_subdivided_star_center():
    assert psi(subdivided_star(3), 0) == 3
    assert psi(subdivided_star(5), 0) == 5


def test_psi_star_center_has_no_second_step():
    assert psi(Graph.star(3), 0) == 0
    assert psi(Graph.star(7), 0) == 0


def test_psi_cycle_six():
    c6 = Graph.cycle(6)
    assert [psi(c6, v) for v in range(6)] == [2] * 6


def test_psi_leaf_of_star_sees_other_leaves():
    # from a leaf, the center is the only neighbor and it has 2 spare leaves,
    # but the paths through it share the center, so only one fits
    assert psi(Graph.star(3), 1) == 1


def test_psi_complete_graph():
    assert psi(Graph.complete(5), 0) == 2
    assert psi(Graph.complete(4), 2) == 1


def test_psi_range_check():
    with pytest.raises(PreconditionError):
        psi(Graph.path(3), 3)


def test_psi_max_empty():
    assert psi_max(Graph.empty(0)) == 0
    assert psi_max(Graph.empty(4)) == 0


@settings(max_examples=120, deadline=None)
@given(hst.integers(1, 9), hst.randoms(use_true_random=False))
def test_psi_bounded_by_degree(n, rng):
    g = rand_graph(rng, n, 0.5)
    for v in range(n):
        assert 0 <= psi(g, v) <= g.degree(v)


@settings(max_examples=150, deadline=None)
@given(hst.integers(1, 10), hst.randoms(use_true_random=False))
def test_star_neighbor_bound_on_randoms(n, rng):
    audit_star_neighbors(rand_graph(rng, n, 0.4))


def test_star_neighbor_bound_on_stock_graphs():
    for g in (Graph.complete(6), Graph.star(8), Graph.cycle(9),
              Graph.complete_bipartite(3, 5), subdivided_star(4)):
        audit_star_neighbors(g)


# -- pigeonhole chains -------------------------------------------------------


def test_ramsey_single_color_takes_first_vertices():
    assert ramsey_monochromatic_clique(9, lambda u, v: 0, 4) == (0, 1, 2, 3)


def test_ramsey_tiny_requests():
    assert ramsey_monochromatic_clique(5, lambda u, v: u + v, 0) == ()
    assert ramsey_monochromatic_clique(5, lambda u, v: u + v, 1) == (0,)
    assert ramsey_monochromatic_clique(0, lambda u, v: 0, 1) is None
    assert ramsey_monochromatic_clique(3, lambda u, v: 0, 4) is None


def test_ramsey_every_two_coloring_of_k6_has_triangle():
    # Ramsey number R(3,3) = 6, so every one of the 2^15 colorings must give
    # a witness; this also pins the pivot-count tie-break, without which a
    # handful of these colorings slip through.
    pairs = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    for mask in range(1 << 15):
        colors = {e: (mask >> i) & 1 for i, e in enumerate(pairs)}
        got = ramsey_monochromatic_clique(6, lambda u, v: colors[(u, v)], 3)
        assert got is not None, f"missed witness for mask {mask}"


def test_ramsey_adversarial_tie_coloring():
    # a coloring where breaking group-size ties by label alone walks the
    # chain into differently colored pivots and misses the clique
    colmap = {(0, 1): 0, (0, 2): 0, (0, 3): 0, (0, 4): 1, (0, 5): 1,
              (1, 2): 1, (1, 3): 0, (1, 4): 1, (1, 5): 1,
              (2, 3): 0, (2, 4): 0, (2, 5): 1,
              (3, 4): 1, (3, 5): 0, (4, 5): 0}
    got = ramsey_monochromatic_clique(6, lambda u, v: colmap[(u, v)], 3)
    assert got == (0, 1, 3)


def test_ramsey_pentagon_coloring_fails_honestly():
    # the pentagon/pentagram split of K5 has no monochromatic triangle at
    # all, so the only correct answer is None
    ring = {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}
    color = lambda u, v: 0 if (u, v) in ring else 1
    assert ramsey_monochromatic_clique(5, color, 3) is None


def test_ramsey_threshold_r2_c2():
    # n = (r+1)^(r c) = 81 guarantees r = 2 under 2 colors; r = 2 just means
    # one monochromatic edge, so anything with an edge works, but run the
    # chain at the stated threshold for the record
    import random
    rng = random.Random(20260814)
    for _ in range(25):
        bits = {}
        got = ramsey_monochromatic_clique(
            81,
            lambda u, v: bits.setdefault((u, v), rng.randrange(2)),
            2)
        assert got is not None and len(got) == 2


@settings(max_examples=60, deadline=None)
@given(hst.integers(7, 40), hst.integers(0, 10 ** 9))
def test_ramsey_witness_is_verified_when_found(n, seed):
    import random
    rng = random.Random(seed)
    bits = {}
    color = lambda u, v: bits.setdefault((u, v), rng.randrange(3))
    got = ramsey_monochromatic_clique(n, color, 3)
    # the function re-verifies internally; check again from outside
    if got is not None:
        assert len(got) == 3 and len(set(got)) == 3
        ref = color(got[0], got[1])
        assert color(got[0], got[2]) == ref and color(got[1], got[2]) == ref


# -- clique / biclique / matching extraction ---------------------------------


def test_extract_complete_graph_yields_clique():
    g = Graph.complete(10)
    tag, verts = extract_clique_biclique_or_matching(
        g, 2, [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)])
    assert tag == "clique" and len(verts) == 2
    assert g.has_edge(*verts)


def test_extract_plain_matching_yields_matching():
    g = Graph.matching(8)
    tag, edges = extract_clique_biclique_or_matching(
        g, 2, [(2 * i, 2 * i + 1) for i in range(8)])
    assert tag == "matching"
    assert edges == ((0, 1), (2, 3))


def test_extract_biclique_from_complete_bipartite():
    n = 8
    g = Graph.complete_bipartite(n, n)
    matching = [(i, n + i) for i in range(n)]
    got = extract_clique_biclique_or_matching(g, 2, matching)
    assert got is not None
    tag, payload = got
    assert tag == "biclique"
    left, right = payload
    assert len(left) == 2 and len(right) == 2
    for u in left:
        for v in right:
            assert g.has_edge(u, v)
    assert not g.has_edge(*left) and not g.has_edge(*right)


def test_extract_too_small_returns_none():
    g = Graph.matching(2)
    assert extract_clique_biclique_or_matching(g, 3, [(0, 1), (2, 3)]) is None


def test_extract_rejects_bad_matchings():
    g = Graph.complete(4)
    with pytest.raises(PreconditionError):
        extract_clique_biclique_or_matching(g, 1, [(0, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        extract_clique_biclique_or_matching(Graph.matching(2), 1, [(0, 2)])
    with pytest.raises(PreconditionError):
        extract_clique_biclique_or_matching(g, 0, [(0, 1)])


@settings(max_examples=80, deadline=None)
@given(hst.integers(4, 11), hst.randoms(use_true_random=False))
def test_extract_verdicts_are_sound(n, rng):
    g = rand_graph(rng, n, 0.45)
    taken, matching = set(), []
    for (u, v) in sorted(g.edges):
        if u not in taken and v not in taken:
            matching.append((u, v))
            taken.update((u, v))
    if not matching:
        return
    got = extract_clique_biclique_or_matching(g, 1, matching)
    # with k = 1 the chain needs only two matching edges, and every verdict
    # collapses to something directly checkable
    if got is None:
        assert len(matching) < 2
        return
    tag, payload = got
    if tag == "clique":
        assert len(payload) == 1
    elif tag == "biclique":
        (l,), (r,) = payload
        assert g.has_edge(l, r)
    else:
        assert len(payload) == 1 and g.has_edge(*payload[0])


# -- greedy induced matchings -------------------------------------------------


def test_greedy_single_edge_is_kept():
    g = Graph.complete(4)
    assert greedy_induced_matching(g, [(0, 1)]) == ((0, 1),)


def test_greedy_on_disjoint_union_keeps_everything():
    g = Graph.matching(6)
    f = list(g.edges)
    for mode in ("induced", "separated"):
        assert greedy_induced_matching(g, f, mode=mode) == tuple(sorted(f))


def test_greedy_path_frozen_picks():
    p = Graph.path(10)
    f = list(p.edges)
    assert greedy_induced_matching(p, f) == ((0, 1), (3, 4), (6, 7))
    assert greedy_induced_matching(p, f, mode="separated") == \
        ((0, 1), (4, 5), (8, 9))


def test_greedy_rejects_bad_input():
    g = Graph.path(4)
    with pytest.raises(PreconditionError):
        greedy_induced_matching(g, [(0, 2)])
    with pytest.raises(PreconditionError):
        greedy_induced_matching(g, [(0, 1), (1, 0)])
    with pytest.raises(PreconditionError):
        greedy_induced_matching(g, [(0, 1)], mode="loose")


def _independent_check(g, edges):
    verts = [v for e in edges for v in e]
    assert len(set(verts)) == len(verts)
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            for a in e:
                for b in f:
                    assert not g.has_edge(a, b)


@settings(max_examples=120, deadline=None)
@given(hst.integers(2, 11), hst.randoms(use_true_random=False))
def test_greedy_bounds_on_randoms(n, rng):
    g = rand_graph(rng, n, 0.35)
    if not g.edges:
        return
    d = max(g.degree(v) for v in range(g.n))
    out = greedy_induced_matching(g, g.edges)
    _independent_check(g, out)
    assert len(out) >= -(-g.m // (2 * d * d))
    sep = greedy_induced_matching(g, g.edges, mode="separated")
    assert len(sep) >= -(-g.m // (2 * d ** 3))


# -- separation by star numbers -----------------------------------------------


def test_separated_by_stars_trims_ready_input():
    g = Graph.matching(5)
    out = induced_matching_separated_by_stars(g, g.edges, 0, 3)
    assert out == ((0, 1), (2, 3), (4, 5))


def test_separated_by_stars_thins_a_path():
    p = Graph.path(10)
    out = induced_matching_separated_by_stars(
        p, [(0, 1), (3, 4), (6, 7)], 2, 2)
    assert out == ((0, 1), (6, 7))


def test_separated_by_stars_honest_none():
    p = Graph.path(10)
    assert induced_matching_separated_by_stars(
        p, [(0, 1), (3, 4), (6, 7)], 2, 3) is None


def test_separated_by_stars_checks_psi_bound():
    g = subdivided_star(4)
    with pytest.raises(PreconditionError):
        induced_matching_separated_by_stars(g, [(1, 2)], 1, 1)


def test_separated_by_stars_rejects_non_induced():
    p = Graph.path(5)
    with pytest.raises(PreconditionError):
        induced_matching_separated_by_stars(p, [(0, 1), (2, 3)], 2, 1)


@settings(max_examples=80, deadline=None)
@given(hst.integers(2, 10), hst.randoms(use_true_random=False))
def test_separated_by_stars_output_property(n, rng):
    g = rand_graph(rng, n, 0.3)
    base = greedy_induced_matching(g, g.edges) if g.edges else ()
    if not base:
        return
    bound = psi_max(g)
    out = induced_matching_separated_by_stars(g, base, bound, 1)
    if out is None:
        return
    (e,) = out
    assert e in base


# -- degree gap filtering ------------------------------------------------------


def test_degree_gap_trivial_when_all_degrees_low():
    g = Graph.matching(4)
    kept, gap = degree_gap_filter(g, g.edges, 2, 3, 0)
    assert kept == g.edges and gap == 2


def test_degree_gap_two_level_instance():
    # four matching edges, a hub of degree six next to two of them: the first
    # window [6,7) is crossed by exactly two edges, which is within budget,
    # so those two edges are dropped
    edges = [(0, 1), (2, 3), (4, 5), (6, 7), (8, 0), (8, 2),
             (8, 9), (8, 10), (8, 11), (8, 12)]
    g = Graph(13, edges)
    f = [(0, 1), (2, 3), (4, 5), (6, 7)]
    kept, gap = degree_gap_filter(g, f, 6, 1, 1)
    assert gap == 6
    assert kept == ((4, 5), (6, 7))


def test_degree_gap_parameter_checks():
    g = Graph.matching(3)
    with pytest.raises(PreconditionError):
        degree_gap_filter(g, g.edges, 2, 0, 0)
    with pytest.raises(PreconditionError):
        degree_gap_filter(g, g.edges, 1, 1, 0)


@settings(max_examples=80, deadline=None)
@given(hst.integers(2, 10), hst.randoms(use_true_random=False))
def test_degree_gap_postcondition_on_randoms(n, rng):
    g = rand_graph(rng, n, 0.35)
    f = greedy_induced_matching(g, g.edges) if g.edges else ()
    if not f:
        return
    bound = psi_max(g)
    width = 1 + rng.randrange(3)
    kept, gap = degree_gap_filter(g, f, 2 * bound + 2, width, bound)
    assert 2 * len(kept) >= len(f)
    for e in kept:
        for v in e:
            for u in g.neighbors(v):
                assert not gap <= g.degree(u) < gap + width


# -- subcollection selection ---------------------------------------------------


def test_select_disjoint_family_takes_first_k():
    fam = [{i} for i in range(9)]
    assert select_subcollection(fam, 3, 2, 1) == (0, 1, 2)


def test_select_k_one():
    fam = [{1, 2}, {2, 3}, {3, 4}]
    assert select_subcollection(fam, 1, 1, 2) == (0,)


def test_select_identical_singletons():
    fam = [{9}] * 9
    picked = select_subcollection(fam, 3, 2, 1)
    assert len(picked) == 3
    # element 9 sits in all three picked sets, but six stay unchosen
    assert picked == (0, 3, 6)


def test_select_precondition_checks():
    with pytest.raises(PreconditionError):
        select_subcollection([{1}], 2, 1, 1)
    with pytest.raises(PreconditionError):
        select_subcollection([{1, 2, 3}], 1, 0, 2)


@settings(max_examples=80, deadline=None)
@given(hst.integers(1, 4), hst.integers(0, 3), hst.integers(1, 3),
       hst.randoms(use_true_random=False))
def test_select_postcondition_on_random_families(k, spare, r, rng):
    count = (1 + spare * r) * k + rng.randrange(3)
    fam = [frozenset(rng.randrange(6) for _ in range(rng.randint(1, r)))
           for _ in range(count)]
    picked = select_subcollection(fam, k, spare, r)
    assert len(picked) == k and len(set(picked)) == k
    for x in range(6):
        inside = sum(1 for i in picked if x in fam[i])
        outside = sum(1 for i in range(count)
                      if i not in picked and x in fam[i])
        assert inside <= 1 or outside >= spare


# -- tree decompositions --------------------------------------------------------


def path_decomposition(n):
    """Bags {i, i+1} chained along a path graph on n vertices."""
    bags = [(i, i + 1) for i in range(n - 1)]
    parent = [-1] + list(range(n - 2))
    return TreeDecomposition(parent, bags)


def test_td_constructor_rejections():
    with pytest.raises(PreconditionError):
        TreeDecomposition([], [])
    with pytest.raises(PreconditionError):
        TreeDecomposition([-1, -1], [(0,), (1,)])
    with pytest.raises(PreconditionError):
        TreeDecomposition([1, 0], [(0,), (1,)])
    with pytest.raises(PreconditionError):
        TreeDecomposition([-1, 1], [(0,), (1,)])
    with pytest.raises(PreconditionError):
        TreeDecomposition([-1], [(0,), (1,)])


def test_td_navigation():
    td = TreeDecomposition([-1, 0, 0, 1], [(0,), (0, 1), (0, 2), (1, 3)])
    assert td.root == 0
    assert td.width == 1
    assert td.children(0) == (1, 2)
    assert td.depth(3) == 2
    assert td.descendants(1) == (1, 3)
    assert td.vertices_below(1) == {0, 1, 3}
    assert td.is_ancestor(0, 3) and not td.is_ancestor(2, 3)


def test_td_validation_rules():
    p4 = Graph.path(4)
    path_decomposition(4).validate_for(p4)
    with pytest.raises(PreconditionError):   # vertex 3 uncovered
        TreeDecomposition([-1, 0], [(0, 1), (1, 2)]).validate_for(p4)
    with pytest.raises(PreconditionError):   # edge (1,2) in no bag
        TreeDecomposition([-1, 0], [(0, 1), (2, 3)]).validate_for(p4)
    with pytest.raises(PreconditionError):   # vertex 0 occurrences split
        TreeDecomposition([-1, 0, 1],
                          [(0, 1), (1, 2, 3), (0, 3)]).validate_for(p4)
    with pytest.raises(PreconditionError):   # bag vertex out of range
        TreeDecomposition([-1], [(0, 4)]).validate_for(p4)


def test_exact_treewidth_on_known_graphs():
    for g, want in [(Graph.path(6), 1), (Graph.cycle(6), 2),
                    (Graph.complete(5), 4), (Graph.matching(3), 1),
                    (Graph.complete_bipartite(3, 3), 3),
                    (Graph.star(5), 1), (Graph(1), 0)]:
        td = exact_tree_decomposition(g)
        td.validate_for(g)
        assert td.width == want


def test_exact_treewidth_grid_three_by_three():
    pat = grid_pattern(3)
    g = Graph(pat.n, pat.edges)
    assert exact_tree_decomposition(g).width == 3


def test_exact_treewidth_empty_and_size_guard():
    td = exact_tree_decomposition(Graph(0))
    assert len(td) == 1 and td.bags == ((),)
    with pytest.raises(PreconditionError):
        exact_tree_decomposition(Graph.empty(13))


@settings(max_examples=60, deadline=None)
@given(hst.integers(1, 8), hst.randoms(use_true_random=False))
def test_exact_treewidth_outputs_validate(n, rng):
    g = rand_graph(rng, n, 0.4)
    td = exact_tree_decomposition(g)
    td.validate_for(g)
    assert td.width <= n - 1


# -- induced matchings from tree decompositions ----------------------------------


def test_nice_matching_on_long_path():
    path = Graph.path(20)
    td = path_decomposition(20)
    got = nice_matching(path, td, 2)
    assert got == ((18, 19), (14, 15))
    for e in got:
        for v in e:
            assert psi(path, v) <= 4


def test_nice_matching_on_plain_matching_graph():
    g = Graph.matching(20)
    bags = [(2 * i, 2 * i + 1) for i in range(20)]
    td = TreeDecomposition([-1] + list(range(19)), bags)
    got = nice_matching(g, td, 2)
    assert got is not None and len(got) == 2


def test_nice_matching_none_when_no_induced_matching_exists():
    # P4 has no induced 2-matching at all, so None is the only right answer
    path = Graph.path(4)
    assert nice_matching(path, path_decomposition(4), 2) is None


def test_nice_matching_k_zero():
    assert nice_matching(Graph.path(3), path_decomposition(3), 0) == ()


def test_nice_matching_runs_out_honestly():
    g = Graph.star(5)
    td = exact_tree_decomposition(g)
    assert nice_matching(g, td, 2) is None


@settings(max_examples=50, deadline=None)
@given(hst.integers(2, 9), hst.randoms(use_true_random=False))
def test_nice_matching_output_properties(n, rng):
    g = rand_graph(rng, n, 0.4)
    td = exact_tree_decomposition(g)
    got = nice_matching(g, td, 1)
    if got is None:
        return
    (e,) = got
    assert g.has_edge(*e)
    cap = 2 * (td.width + 1)
    assert psi(g, e[0]) <= cap and psi(g, e[1]) <= cap


def test_nice_matching_larger_k_on_double_path():
    # two long disjoint paths under one decomposition; tau = 20 clears the
    # 3k(w+1) = 18 threshold for k = 3, so success is guaranteed
    g = Graph.path(20).disjoint_union(Graph.path(20))
    bags = [(i, i + 1) for i in range(19)] + \
           [(20 + i, 21 + i) for i in range(19)]
    parent = [-1] + list(range(18)) + [0] + [19 + i for i in range(18)]
    td = TreeDecomposition(parent, bags)
    td.validate_for(g)
    got = nice_matching(g, td, 3)
    assert got is not None and len(got) == 3
    _independent_check(g, list(got))


# -- minor models -----------------------------------------------------------------


def test_minor_model_validation():
    host = Graph.path(4)
    pattern = Graph(2, [(0, 1)])
    MinorModel([(0, 1), (2, 3)]).validate_for(pattern, host)
    with pytest.raises(PreconditionError):   # empty branch set
        MinorModel([(), (2, 3)]).validate_for(pattern, host)
    with pytest.raises(PreconditionError):   # overlap
        MinorModel([(0, 1), (1, 2)]).validate_for(pattern, host)
    with pytest.raises(PreconditionError):   # disconnected branch set
        MinorModel([(0, 2), (1, 3)]).validate_for(pattern, host)
    with pytest.raises(PreconditionError):   # missing crossing edge
        MinorModel([(0,), (3,)]).validate_for(pattern, host)
    with pytest.raises(PreconditionError):   # out of range
        MinorModel([(0,), (7,)]).validate_for(pattern, host)


def test_minor_model_contraction():
    host = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    model = MinorModel([(0, 1), (2,), (3, 4)])
    got = model.contracted(host)
    assert got == Graph(3, [(0, 1), (1, 2), (0, 2)])


# -- bicubic rebuilding -------------------------------------------------------------


def test_make_bicubic_single_edge_frozen_size():
    h = Graph(2, [(0, 1)])
    dag, model = make_bicubic(h)
    assert dag.n == 18
    assert model.contracted(dag) == h


def test_make_bicubic_frozen_sizes():
    sizes = {}
    for name, h in [("P3", Graph.path(3)), ("K4", Graph.complete(4)),
                    ("K5", Graph.complete(5)), ("C6", Graph.cycle(6)),
                    ("M3", Graph.matching(3))]:
        dag, _ = make_bicubic(h)
        sizes[name] = dag.n
    assert sizes == {"P3": 24, "K4": 12, "K5": 60, "C6": 36, "M3": 54}


def test_make_bicubic_rejects_isolated_vertices():
    with pytest.raises(PreconditionError):
        make_bicubic(Graph(3, [(0, 1)]))


def test_make_bicubic_empty_graph():
    dag, model = make_bicubic(Graph(0))
    assert dag.n == 0 and model.branch_sets == ()


@settings(max_examples=60, deadline=None)
@given(hst.integers(2, 9), hst.randoms(use_true_random=False))
def test_make_bicubic_properties_on_randoms(n, rng):
    g = rand_graph(rng, n, 0.5)
    g = g.without_vertices(g.isolated_vertices())
    if g.n == 0:
        return
    dag, model = make_bicubic(g)
    # the constructor asserts regularity, bipartiteness, the size bound and
    # the contraction replay; re-check the headline facts here
    assert all(dag.degree(v) == 3 for v in range(dag.n))
    assert dag.is_bipartite()
    assert dag.n <= 20 * g.m
    assert model.contracted(dag) == Graph(g.n, g.edges)


# -- instance lifting ----------------------------------------------------------------


def colored_by_identity(g):
    return g.with_vertex_colors(range(g.n))


def test_minor_lift_identity_model_counts():
    import random
    rng = random.Random(11)
    h = Graph(3, [(0, 1), (1, 2)], vcolors=[0, 1, 2])
    dagger = Graph(3, [(0, 1), (1, 2)])
    model = MinorModel([(0,), (1,), (2,)])
    for _ in range(6):
        n = rng.randint(3, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.5]
        host = Graph(n, edges, vcolors=[rng.randrange(3) for _ in range(n)])
        direct = count_colorpreserving_subgraphs(h, host)
        lifted = minor_lift_instance(h, dagger, model, host)
        via = count_colorpreserving_subgraphs(colored_by_identity(dagger),
                                              lifted)
        assert direct == via


def test_minor_lift_edge_into_path_counts_and_size():
    import random
    rng = random.Random(5)
    h = Graph(2, [(0, 1)], vcolors=[0, 1])
    dagger = Graph.path(3)
    model = MinorModel([(0,), (1, 2)])
    for _ in range(6):
        n = rng.randint(2, 8)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.4]
        vc = [rng.randrange(2) for _ in range(n)]
        host = Graph(n, edges, vcolors=vc)
        lifted = minor_lift_instance(h, dagger, model, host)
        want_n = sum(1 for c in vc if c == 0) + 2 * sum(1 for c in vc if c == 1)
        assert lifted.n == want_n
        direct = count_colorpreserving_subgraphs(h, host)
        via = count_colorpreserving_subgraphs(colored_by_identity(dagger),
                                              lifted)
        assert direct == via


def test_minor_lift_rejections():
    h = Graph(2, [(0, 1)], vcolors=[0, 0])      # not colorful
    dagger = Graph.path(3)
    model = MinorModel([(0,), (1, 2)])
    with pytest.raises(PreconditionError):
        minor_lift_instance(h, dagger, model, Graph(1, vcolors=[0]))
    h = Graph(2, [(0, 1)], vcolors=[0, 1])
    with pytest.raises(PreconditionError):      # host has no colors
        minor_lift_instance(h, dagger, model, Graph(1))
    with pytest.raises(PreconditionError):      # unknown host color
        minor_lift_instance(h, dagger, model, Graph(1, vcolors=[9]))
    sloppy = MinorModel([(0,), (1,)])           # vertex 2 unassigned
    with pytest.raises(PreconditionError):
        minor_lift_instance(h, dagger, sloppy, Graph(1, vcolors=[0]))


def test_minor_lift_discard_block_size():
    h = Graph(2, [(0, 1)], vcolors=[0, 1])
    dagger = Graph.path(4)
    model = MinorModel([(0,), (1, 2)], discard=(3,))
    host = Graph(3, [(0, 1), (1, 2)], vcolors=[0, 1, 0])
    lifted = minor_lift_instance(h, dagger, model, host)
    assert lifted.n == 1 + 2 + 1 + 1   # two color-0 copies, one color-1, B0


def test_full_rebuild_chain_preserves_counts():
    # the whole route: H -> (H-dagger, model) -> lifted instance, checked
    # against directly counting H in the host
    import random
    rng = random.Random(99)
    for h_plain in (Graph(2, [(0, 1)]), Graph.path(3), Graph.complete(3)):
        h = colored_by_identity(h_plain)
        dagger, model = make_bicubic(h_plain)
        for _ in range(3):
            n = rng.randint(h_plain.n, 6)
            edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < 0.5]
            host = Graph(n, edges,
                         vcolors=[rng.randrange(h_plain.n) for _ in range(n)])
            direct = count_colorpreserving_subgraphs(h, host)
            lifted = minor_lift_instance(h, dagger, model, host)
            via = count_colorpreserving_subgraphs(colored_by_identity(dagger),
                                                  lifted)
            assert direct == via


# -- grid instances --------------------------------------------------------------------


def test_grid_pattern_shape():
    pat = grid_pattern(3)
    assert pat.n == 9 and pat.m == 12
    assert is_colorful(pat)
    degs = sorted(pat.degree(v) for v in range(9))
    assert degs == [2, 2, 2, 2, 3, 3, 3, 3, 4]


def test_grid_instance_k4_counts_triangles():
    pat, host = build_grid_instance(Graph.complete(4), 3)
    assert host.n == 3 * 4 + 3 * 2 * 6
    assert count_colorpreserving_subgraphs(pat, host) == 4


def test_grid_instance_k2_counts_edges():
    g = Graph.complete(4)
    pat, host = build_grid_instance(g, 2)
    assert count_colorpreserving_subgraphs(pat, host) == g.m


def test_grid_instance_edgeless():
    pat, host = build_grid_instance(Graph.empty(5), 3)
    assert count_colorpreserving_subgraphs(pat, host) == 0


def test_grid_instance_size_arithmetic():
    g = Graph.cycle(5)
    _, host = build_grid_instance(g, 3)
    assert host.n == 3 * 5 + 3 * 2 * 5


def test_grid_instance_rejects_small_k():
    with pytest.raises(PreconditionError):
        build_grid_instance(Graph.path(3), 1)


@settings(max_examples=40, deadline=None)
@given(hst.integers(3, 7), hst.randoms(use_true_random=False))
def test_grid_instance_matches_triangle_count(n, rng):
    g = rand_graph(rng, n, 0.5)
    pat, host = build_grid_instance(g, 3)
    assert count_colorpreserving_subgraphs(pat, host) == \
        count_subgraphs(Graph.complete(3), g)
