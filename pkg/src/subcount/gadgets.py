"""Matching-gadget machinery.

A pattern graph H together with an induced k-matching M is a *k-matching
gadget* when every "impostor" core works out: for each vertex set C' such
that H[C'] is isomorphic to H[C] (C = V(H) minus V(M)) via an isomorphism
that preserves the boundary, and such that the rest H - C' is bipartite
with no isolated vertex, the rest is again a k-matching.  Verified gadgets
let us recover k-matching counts of an arbitrary bipartite host from
subgraph-count queries alone: pad the host, glue on a copy of H[C] joined
completely to the host side, and interpolate away the padding.

Everything here is exhaustive and meant for small H (say up to ~12
vertices); the checker enumerates candidate cores and isomorphisms
directly.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .brute import count_subgraphs, is_isomorphic
from .graphs import Graph, InconsistencyError, PreconditionError
from .polynomials import binomial_coefficients_from_points


def boundary(h, verts):
    """Vertices of `verts` with at least one neighbor outside `verts`."""
    inside = set(verts)
    if not inside <= set(range(h.n)):
        raise PreconditionError("boundary: vertex set out of range")
    return tuple(
        v for v in sorted(inside) if any(u not in inside for u in h.neighbors(v))
    )


def validate_induced_matching(h, edges):
    """Check that `edges` is an induced matching of h; return it normalized.

    Normalized form: tuple of (min, max) pairs sorted ascending.  Raises
    PreconditionError when the edges are absent, overlap, or when the
    covered vertices span extra edges of h.
    """
    norm = []
    for e in edges:
        u, v = e
        if not h.has_edge(u, v):
            raise PreconditionError(f"matching edge {e} not in graph")
        norm.append((min(u, v), max(u, v)))
    norm = tuple(sorted(set(norm)))
    if len(norm) != len(list(edges)):
        raise PreconditionError("duplicate matching edges")
    covered = [v for e in norm for v in e]
    if len(set(covered)) != 2 * len(norm):
        raise PreconditionError("matching edges share a vertex")
    induced_edges = h.induced(sorted(covered)).m
    if induced_edges != len(norm):
        raise PreconditionError("matching is not induced: extra edges inside V(M)")
    return norm


class MatchingGadget:
    """A graph with a designated induced matching, for the counting reduction.

    Construction validates the induced-matching property only; it does not
    run the expensive full check (see is_matching_gadget / search_gadget).
    """

    __slots__ = ("h", "matching", "core", "core_boundary")

    def __init__(self, h, matching):
        self.h = h
        self.matching = validate_induced_matching(h, matching)
        covered = {v for e in self.matching for v in e}
        self.core = tuple(v for v in range(h.n) if v not in covered)
        self.core_boundary = boundary(h, self.core)

    @property
    def k(self):
        return len(self.matching)

    @property
    def t(self):
        return self.h.n

    def __repr__(self):
        return f"MatchingGadget(t={self.t}, k={self.k}, matching={self.matching})"


def _iter_isomorphisms(a, b, a_tags=None, b_tags=None):
    """Yield all isomorphisms a -> b as tuples (image of vertex i at slot i).

    Optional integer tags per vertex must be preserved; passing boundary
    indicators as tags restricts the stream to boundary-preserving maps.
    """
    if a.n != b.n or a.m != b.m:
        return
    if a_tags is None:
        a_tags = (0,) * a.n
    if b_tags is None:
        b_tags = (0,) * b.n
    prof_a = sorted(zip((a.degree(v) for v in range(a.n)), a_tags))
    prof_b = sorted(zip((b.degree(v) for v in range(b.n)), b_tags))
    if prof_a != prof_b:
        return
    order = sorted(range(a.n), key=lambda v: -a.degree(v))
    image = [-1] * a.n
    used = [False] * b.n

    def place(i):
        if i == a.n:
            yield tuple(image)
            return
        u = order[i]
        du = a.degree(u)
        for w in range(b.n):
            if used[w] or b.degree(w) != du or b_tags[w] != a_tags[u]:
                continue
            ok = True
            for prev in order[:i]:
                if a.has_edge(u, prev) != b.has_edge(w, image[prev]):
                    ok = False
                    break
            if ok:
                image[u] = w
                used[w] = True
                yield from place(i + 1)
                used[w] = False
                image[u] = -1

    yield from place(0)


def _is_perfect_matching_graph(g):
    # a k-matching as a standalone graph: every vertex has degree exactly one
    return all(g.degree(v) == 1 for v in range(g.n))


def _core_view(h, core):
    """Induced core subgraph plus boundary tags, in sorted(core) order."""
    cs = sorted(core)
    sub = h.induced(cs)
    bset = set(boundary(h, cs))
    tags = tuple(1 if v in bset else 0 for v in cs)
    return cs, sub, tags


def check_matching_gadget(h, matching):
    """Full gadget check.  Returns None if (h, matching) is a k-matching
    gadget, otherwise a counterexample core C' (sorted vertex tuple) whose
    rest is bipartite and isolated-vertex-free yet not a k-matching.
    """
    gadget = matching if isinstance(matching, MatchingGadget) else MatchingGadget(h, matching)
    h = gadget.h
    core = gadget.core
    cs, core_sub, core_tags = _core_view(h, core)
    for cand in combinations(range(h.n), len(core)):
        rest = [v for v in range(h.n) if v not in set(cand)]
        rest_graph = h.induced(rest)
        if _is_perfect_matching_graph(rest_graph):
            continue
        # conditions on the rest: no isolated vertex, bipartite
        if any(rest_graph.degree(v) == 0 for v in range(rest_graph.n)):
            continue
        if not rest_graph.is_bipartite():
            continue
        _, cand_sub, cand_tags = _core_view(h, cand)
        for _f in _iter_isomorphisms(core_sub, cand_sub, core_tags, cand_tags):
            return tuple(cand)
    return None


def is_matching_gadget(h, matching):
    """True when (h, matching) is a k-matching gadget (exhaustive check)."""
    return check_matching_gadget(h, matching) is None


def nocommon_sufficient(h, matching):
    """Cheap one-way test: every core vertex adjacent to at most one matched
    vertex.  True here implies the full gadget property; False says nothing.
    """
    gadget = matching if isinstance(matching, MatchingGadget) else MatchingGadget(h, matching)
    covered = {v for e in gadget.matching for v in e}
    for c in gadget.core:
        hits = sum(1 for u in gadget.h.neighbors(c) if u in covered)
        if hits > 1:
            return False
    return True


def restrict_gadget(gadget, sub_matching):
    """Shrink a gadget's matching to a subset of its edges.

    Any sub-matching of a verified gadget's matching yields a gadget on the
    same graph (the defining property transfers: an impostor core for the
    smaller matching extends to one for the larger by appending the dropped
    edges).  No re-verification is performed, so the caller should hand in
    a gadget that was actually checked or trusted.
    """
    sub = tuple(sorted((min(u, v), max(u, v)) for u, v in sub_matching))
    have = set(gadget.matching)
    for e in sub:
        if e not in have:
            raise PreconditionError(f"edge {e} is not part of the gadget matching")
    if len(set(sub)) != len(sub):
        raise PreconditionError("duplicate edges in sub-matching")
    return MatchingGadget(gadget.h, sub)


def is_strong_set(h, core, x):
    """Whether x is fixed setwise by every boundary-preserving isomorphism
    from H[core] to H[C'], over all candidate cores C'.
    """
    xset = set(x)
    cset = set(core)
    if not xset <= cset:
        raise PreconditionError("x must be a subset of core")
    if not cset <= set(range(h.n)):
        raise PreconditionError("core out of range")
    if not xset:
        return True
    cs, core_sub, core_tags = _core_view(h, core)
    xidx = [i for i, v in enumerate(cs) if v in xset]
    for cand in combinations(range(h.n), len(cs)):
        cand_list, cand_sub, cand_tags = _core_view(h, cand)
        for f in _iter_isomorphisms(core_sub, cand_sub, core_tags, cand_tags):
            image = {cand_list[f[i]] for i in xidx}
            if image != xset:
                return False
    return True


@dataclass(frozen=True)
class ReductionInstance:
    """Host graph padded and glued to a copy of the gadget core.

    graph: the assembled instance
    host_vertices: ids of the host copy followed by the padding isolates
    core_vertices: ids of the core copy, parallel to sorted gadget core
    boundary_vertices: the core-copy ids carrying the complete join
    join_edges: the boundary-to-host edges
    """

    graph: Graph
    host_vertices: tuple
    core_vertices: tuple
    boundary_vertices: tuple
    join_edges: tuple


def build_G_ell(gadget, g, ell):
    """Assemble the padded instance: g, `ell` isolated vertices, a copy of
    the gadget core, and all edges between the core boundary and the host
    side.
    """
    if ell < 0:
        raise PreconditionError("padding must be nonnegative")
    n_host = g.n + ell
    cs = sorted(gadget.core)
    pos = {v: n_host + i for i, v in enumerate(cs)}
    edges = list(g.edges)
    for u, v in gadget.h.edges:
        if u in pos and v in pos:
            edges.append((pos[u], pos[v]))
    join = []
    for b in gadget.core_boundary:
        for w in range(n_host):
            join.append((pos[b], w))
    edges.extend(join)
    graph = Graph(n_host + len(cs), edges)
    return ReductionInstance(
        graph=graph,
        host_vertices=tuple(range(n_host)),
        core_vertices=tuple(pos[v] for v in cs),
        boundary_vertices=tuple(pos[v] for v in gadget.core_boundary),
        join_edges=tuple(sorted((min(a, b), max(a, b)) for a, b in join)),
    )


def count_T_ell(gadget, g, ell, oracle=None):
    """Number of copies of H in the padded instance that use the whole core
    copy and give every boundary vertex a neighbor on the host side.

    Computed by inclusion-exclusion over three independent requirement
    families: core edges present, isolated core vertices present, boundary
    vertices fed by a join edge.  Each term is one #Sub(H -> G') query.
    """
    if oracle is None:
        oracle = count_subgraphs
    inst = build_G_ell(gadget, g, ell)
    cs = sorted(gadget.core)
    pos = dict(zip(cs, inst.core_vertices))
    core_edges = [
        (pos[u], pos[v])
        for u, v in gadget.h.edges
        if u in pos and v in pos
    ]
    inner = {v for e in core_edges for v in e}
    lone_core = [v for v in inst.core_vertices if v not in inner]
    bdy = inst.boundary_vertices
    join_at = {b: [e for e in inst.join_edges if b in e] for b in bdy}

    total = 0
    ne, nl, nb = len(core_edges), len(lone_core), len(bdy)
    for emask in range(1 << ne):
        dead_edges = [core_edges[i] for i in range(ne) if not emask >> i & 1]
        for bmask in range(1 << nb):
            dead_join = []
            for i in range(nb):
                if not bmask >> i & 1:
                    dead_join.extend(join_at[bdy[i]])
            base = inst.graph.without_edges(dead_edges + dead_join)
            for lmask in range(1 << nl):
                dead_verts = [lone_core[i] for i in range(nl) if not lmask >> i & 1]
                probe = base.without_vertices(dead_verts) if dead_verts else base
                removed = (
                    ne - bin(emask).count("1")
                    + nb - bin(bmask).count("1")
                    + len(dead_verts)
                )
                sign = -1 if removed & 1 else 1
                total += sign * oracle(gadget.h, probe)
    return total


@dataclass(frozen=True)
class ResidueClass:
    """Isomorphism class of a possible host-side trace of a gadget copy."""

    graph: Graph
    isolated: tuple
    pure: Graph
    alpha: int


def _completion_count(gadget, residue):
    """Ways to add boundary-to-residue edges so that core + residue becomes
    the gadget graph again.
    """
    h = gadget.h
    cs = sorted(gadget.core)
    core_sub = h.induced(cs)
    base = core_sub.disjoint_union(residue)
    bidx = [cs.index(b) for b in gadget.core_boundary]
    candidates = [(b, len(cs) + r) for b in bidx for r in range(residue.n)]
    need = h.m - core_sub.m - residue.m
    if need < 0 or need > len(candidates):
        return 0
    count = 0
    for extra in combinations(candidates, need):
        trial = Graph(base.n, list(base.edges) + list(extra))
        if is_isomorphic(trial, h):
            count += 1
    return count


def residue_classes_and_alphas(gadget):
    """All isomorphism types the host side of a gadget copy can take, with
    their completion multiplicities.

    Candidate cores here only need a boundary-preserving isomorphism and a
    bipartite rest; rests with isolated vertices are kept (the interpolation
    step absorbs them).  A rest with no isolated vertex must come out
    isomorphic to the gadget matching, otherwise the gadget was never valid
    and we refuse to continue.
    """
    h = gadget.h
    k = gadget.k
    core = gadget.core
    cs, core_sub, core_tags = _core_view(h, core)
    reps = []
    for cand in combinations(range(h.n), len(core)):
        rest = [v for v in range(h.n) if v not in set(cand)]
        rest_graph = h.induced(rest)
        if not rest_graph.is_bipartite():
            continue
        _, cand_sub, cand_tags = _core_view(h, cand)
        hit = False
        for _f in _iter_isomorphisms(core_sub, cand_sub, core_tags, cand_tags):
            hit = True
            break
        if not hit:
            continue
        if rest_graph.n != 2 * k:
            raise InconsistencyError("residue does not have 2k vertices")
        if not any(is_isomorphic(rest_graph, r) for r in reps):
            reps.append(rest_graph)

    matching_graph = Graph.matching(k)
    classes = []
    for r in reps:
        iso_verts = r.isolated_vertices()
        if not iso_verts and not is_isomorphic(r, matching_graph):
            raise InconsistencyError(
                "isolated-free residue is not a matching; gadget property fails"
            )
        pure = r.without_vertices(iso_verts) if iso_verts else r
        alpha = _completion_count(gadget, r)
        classes.append(ResidueClass(graph=r, isolated=tuple(iso_verts), pure=pure, alpha=alpha))
    classes.sort(key=lambda c: (len(c.isolated), c.graph.m))
    for c in classes:
        if not c.isolated and c.alpha <= 0:
            raise InconsistencyError("matching residue has zero completions")
    return classes


def matching_alpha(gadget):
    """Completion multiplicity of the pure matching residue."""
    alpha = _completion_count(gadget, Graph.matching(gadget.k))
    if alpha <= 0:
        raise InconsistencyError("matching residue has zero completions")
    return alpha


def count_matchings_via_gadget(g, k, gadget, oracle=None):
    """Count k-matchings of a bipartite host through subgraph-count queries.

    Evaluates the constrained-copy count at paddings 0..2k, interpolates the
    degree-at-most-2k polynomial in x = n + padding - 2k, rewrites it over
    the basis C(x+i, i), and reads off the constant coefficient; dividing by
    the matching's completion multiplicity gives the answer exactly.
    """
    if gadget.k != k:
        raise PreconditionError(f"gadget is for k={gadget.k}, asked for k={k}")
    if not g.is_bipartite():
        raise PreconditionError("host graph must be bipartite")
    n = g.n
    points = []
    for ell in range(2 * k + 1):
        points.append((n + ell - 2 * k, count_T_ell(gadget, g, ell, oracle)))
    coeffs = binomial_coefficients_from_points(points, max_degree=2 * k)
    if any(c < 0 for c in coeffs):
        raise InconsistencyError(f"negative binomial-basis coefficient: {coeffs}")
    c0 = coeffs[0] if coeffs else 0
    alpha = matching_alpha(gadget)
    if c0 % alpha:
        raise InconsistencyError(
            f"constant coefficient {c0} not divisible by completion count {alpha}"
        )
    return c0 // alpha


def residue_count_identity(gadget, g, ell):
    """Right-hand side of the residue decomposition of the constrained count:
    sum over residue classes of alpha * #Sub(pure -> g) * C(n+ell-2k+i, i)
    with i the number of isolated vertices.  Equals count_T_ell on valid
    gadgets; exposed for cross-checking.
    """
    n = g.n
    k = gadget.k
    total = 0
    for cls in residue_classes_and_alphas(gadget):
        i = len(cls.isolated)
        pure_count = count_subgraphs(cls.pure, g)
        if pure_count:
            # a nonzero pure count forces n >= 2k - i, so the argument is fine
            total += cls.alpha * pure_count * comb(n + ell - 2 * k + i, i)
    return total


def search_gadget(h, k):
    """First induced k-matching of h that passes the full gadget check, in
    lexicographic edge order; None when none qualifies.
    """
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    for combo in combinations(h.edges, k):
        verts = [v for e in combo for v in e]
        if len(set(verts)) != 2 * k:
            continue
        if h.induced(sorted(verts)).m != k:
            continue
        if check_matching_gadget(h, combo) is None:
            return MatchingGadget(h, combo)
    return None
