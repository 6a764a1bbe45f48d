"""Structural helpers: star numbers, Ramsey extraction, matching thinning,
tree decompositions, and the instance-lifting constructions.

Everything in here is constructive and self-auditing.  Procedures that search
for a witness either return one that has been re-verified from first
principles or return ``None``; a witness is never wrong.  Procedures that are
backed by a counting identity validate their own output and raise
``InconsistencyError`` when an internal guarantee fails, which indicates a bug
rather than bad input.
"""

from collections import Counter
from itertools import combinations

from .graphs import (Graph, InconsistencyError, PreconditionError,
                     max_matching_size, min_vertex_cover)
from .gadgets import validate_induced_matching
from .brute import is_colorful


# -- subdivided stars ------------------------------------------------------

def psi(g, v):
    """Largest number of length-2 paths leaving v that share nothing but v.

    Each path v-u-w consumes two distinct vertices, and paths may not touch
    each other outside v, so this is a maximum matching among the edges of
    g - v that have at least one endpoint next to v.
    """
    if not 0 <= v < g.n:
        raise PreconditionError(f"vertex {v} out of range")
    nb = set(g.neighbors(v))
    edges = [e for e in g.edges
             if v not in e and (e[0] in nb or e[1] in nb)]
    return max_matching_size(Graph(g.n, edges))


def psi_max(g):
    """max over all vertices of psi(g, v); 0 for the empty graph."""
    return max((psi(g, v) for v in range(g.n)), default=0)


def audit_star_neighbors(g):
    """Check that no vertex v has more than psi(v) neighbors of degree
    >= 2*psi(v) + 2.  This holds in every graph; a violation is a bug in
    psi, so it raises InconsistencyError rather than returning False.
    """
    for v in range(g.n):
        s = psi(g, v)
        heavy = [u for u in g.neighbors(v) if g.degree(u) >= 2 * s + 2]
        if len(heavy) > s:
            raise InconsistencyError(
                f"vertex {v} has {len(heavy)} heavy neighbors but psi={s}")


# -- monochromatic cliques by pigeonhole chains ----------------------------

def ramsey_monochromatic_clique(n, color, r):
    """Look for r vertices of K_n whose pairwise edge colors all agree.

    ``color(u, v)`` is called with u < v and may return any mutually
    orderable hashable.  The search builds the usual pigeonhole chain: take
    the smallest live vertex as a pivot, group the rest by their color
    toward it, and descend into a largest group.  Ties between equally large
    groups prefer the color that already owns the most pivots (this matters:
    always breaking ties by label can strand pivots across colors and miss
    cliques that the chain has in fact secured), then the smaller label.

    A color with r pivots gives the clique outright.  A color c with r-1
    pivots also suffices: every pivot is c-adjacent to the whole remainder
    of the chain, so the chain element right after the last c-pivot extends
    them.  Returns a sorted vertex tuple, or None when the chain is too
    short.  Success is guaranteed once n reaches (r+1)**(r*c) for c colors,
    but the chain is cheap and often wins far below that.
    """
    if r < 0:
        raise PreconditionError("clique size must be nonnegative")
    if r == 0:
        return ()
    if n < r:
        return None
    if r == 1:
        return (0,)

    sequence = []            # (pivot vertex, color of its chosen group)
    tally = Counter()
    alive = list(range(n))
    while len(alive) > 1:
        pivot, rest = alive[0], alive[1:]
        groups = {}
        for u in rest:
            groups.setdefault(color(pivot, u), []).append(u)
        best = min(groups, key=lambda c: (-len(groups[c]), -tally[c], c))
        sequence.append((pivot, best))
        tally[best] += 1
        alive = groups[best]
    tail = alive[0]

    by_color = {}
    for v, c in sequence:
        by_color.setdefault(c, []).append(v)

    witness = None
    full = sorted(c for c, vs in by_color.items() if len(vs) >= r)
    if full:
        witness = tuple(by_color[full[0]][:r])
    else:
        for c in sorted(c for c, vs in by_color.items() if len(vs) == r - 1):
            pivots = by_color[c]
            last = pivots[-1]
            pos = next(i for i, (v, _) in enumerate(sequence) if v == last)
            nxt = sequence[pos + 1][0] if pos + 1 < len(sequence) else tail
            witness = tuple(pivots) + (nxt,)
            break
    if witness is None:
        return None
    ref = color(witness[0], witness[1])
    for u, v in combinations(witness, 2):
        if color(u, v) != ref:
            raise InconsistencyError("chain produced a non-monochromatic set")
    return witness


def _check_clique(g, verts):
    for u, v in combinations(verts, 2):
        if not g.has_edge(u, v):
            raise InconsistencyError(f"claimed clique misses edge ({u},{v})")


def _check_biclique(g, left, right):
    if set(left) & set(right):
        raise InconsistencyError("biclique sides overlap")
    for u in left:
        for v in right:
            if not g.has_edge(u, v):
                raise InconsistencyError(f"biclique misses edge ({u},{v})")
    for side in (left, right):
        for u, v in combinations(side, 2):
            if g.has_edge(u, v):
                raise InconsistencyError("biclique side is not independent")


def extract_clique_biclique_or_matching(g, k, matching):
    """From a plain matching in g, distill one of three clean structures.

    Matching edges are oriented as (min, max) and pairs of them get a 4-bit
    color recording which of the four cross adjacencies are present.  A
    monochromatic 2k-set of edge indices then collapses: any adjacency bit
    set yields a 2k-clique (trimmed to k) or a k+k-biclique with independent
    sides, and the all-zero color means the edges form an induced matching.

    Returns ("clique", vertices), ("biclique", (left, right)) or
    ("matching", edges), all independently re-verified, or None when the
    chain fails (guaranteed to succeed for astronomically large matchings;
    in practice it succeeds far earlier).
    """
    if k < 1:
        raise PreconditionError("need k >= 1")
    pairs = []
    used = set()
    for (u, v) in matching:
        if not g.has_edge(u, v):
            raise PreconditionError(f"({u},{v}) is not an edge of the graph")
        if u in used or v in used:
            raise PreconditionError("matching edges overlap")
        used.update((u, v))
        pairs.append((min(u, v), max(u, v)))

    def pair_color(i, j):
        xi, yi = pairs[i]
        xj, yj = pairs[j]
        return (int(g.has_edge(xi, xj)), int(g.has_edge(xi, yj)),
                int(g.has_edge(yi, xj)), int(g.has_edge(yi, yj)))

    picked = ramsey_monochromatic_clique(len(pairs), pair_color, 2 * k)
    if picked is None:
        return None
    xx, xy, yx, yy = pair_color(picked[0], picked[1])
    if xx or yy:
        side = 0 if xx else 1
        verts = tuple(pairs[i][side] for i in picked[:k])
        _check_clique(g, verts)
        return ("clique", verts)
    if xy or yx:
        # indices ascend, so every low index is "i" against every high "j"
        low, high = picked[:k], picked[k:]
        if xy:
            left = tuple(pairs[i][0] for i in low)
            right = tuple(pairs[j][1] for j in high)
        else:
            left = tuple(pairs[i][1] for i in low)
            right = tuple(pairs[j][0] for j in high)
        _check_biclique(g, left, right)
        return ("biclique", (left, right))
    edges = tuple(pairs[i] for i in picked[:k])
    validate_induced_matching(g, edges)
    return ("matching", edges)


# -- greedy matching refinement --------------------------------------------

def _ball(g, verts, radius):
    """Vertices within the given distance of the seed set (seed included)."""
    seen = set(verts)
    frontier = set(verts)
    for _ in range(radius):
        frontier = {w for u in frontier for w in g.neighbors(u)} - seen
        seen |= frontier
    return seen


def _ceil_div(a, b):
    return -(-a // b)


def greedy_induced_matching(g, f_edges, mode="induced"):
    """Thin an edge set down to an induced matching, greedily.

    mode "induced" keeps edges whose endpoints avoid the closed neighborhood
    of everything already picked; with max degree D each pick wipes out at
    most 2*D**2 candidates, so at least ceil(|F|/(2 D^2)) survive.  mode
    "separated" insists on distance at least 3 between picked edges (no
    vertex sees two of them) at the cost of one more degree factor.
    """
    if mode not in ("induced", "separated"):
        raise PreconditionError(f"unknown mode {mode!r}")
    pool = []
    seen = set()
    for (u, v) in f_edges:
        if not g.has_edge(u, v):
            raise PreconditionError(f"({u},{v}) is not an edge of the graph")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise PreconditionError(f"duplicate edge {e}")
        seen.add(e)
        pool.append(e)
    pool.sort()
    total = len(pool)
    radius = 1 if mode == "induced" else 2

    chosen = []
    while pool:
        e = pool[0]
        chosen.append(e)
        ball = _ball(g, e, radius)
        pool = [f for f in pool[1:] if f[0] not in ball and f[1] not in ball]

    if total:
        d = max(g.degree(v) for v in range(g.n))
        need = _ceil_div(total, 2 * d ** (2 if mode == "induced" else 3))
        if len(chosen) < need:
            raise InconsistencyError(
                f"greedy kept {len(chosen)} edges, guarantee was {need}")
    validate_induced_matching(g, chosen)
    if mode == "separated":
        _audit_separated(g, chosen)
    return tuple(chosen)


def _audit_separated(g, edges):
    """No vertex of g may be in the closed neighborhood of two edges."""
    touched = Counter()
    for e in edges:
        for w in _ball(g, e, 1):
            touched[w] += 1
    bad = [w for w, c in touched.items() if c > 1]
    if bad:
        raise InconsistencyError(f"vertices {bad} touch two matching edges")


def induced_matching_separated_by_stars(g, matching, star_bound, k):
    """Pick k edges of an induced matching that are pairwise far apart.

    Requires psi(g, v) <= star_bound everywhere.  Greedy selection: take the
    first surviving edge, discard every edge within distance 2 of it.  Each
    pick discards at most 2*star_bound**2 others, so |matching| >= about
    2*k*star_bound**2 makes success likely; when the greedy run comes up
    short it returns None instead of pretending.
    """
    pairs = list(validate_induced_matching(g, matching))
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    bad = [v for v in range(g.n) if psi(g, v) > star_bound]
    if bad:
        raise PreconditionError(
            f"psi exceeds {star_bound} at vertices {bad[:4]}")
    chosen = []
    pool = sorted(pairs)
    while pool and len(chosen) < k:
        e = pool[0]
        chosen.append(e)
        ball = _ball(g, e, 2)
        pool = [f for f in pool[1:] if f[0] not in ball and f[1] not in ball]
    if len(chosen) < k:
        return None
    _audit_separated(g, chosen)
    return tuple(chosen)


def degree_gap_filter(g, matching, low, width, star_bound):
    """Shrink an induced matching so its neighborhood dodges a degree band.

    Scans windows [low + j*width, low + (j+1)*width) for j = 0 .. 4*(2L+2)
    and takes the first window crossed by at most |F|/2 edges between
    window-degree vertices and matched endpoints; edges of F with an
    endpoint next to such a vertex are dropped.  Averaging over the windows
    guarantees one of them works, because a matched endpoint has at most
    psi(v) <= L neighbors of degree >= 2L+2.  Returns (kept_edges, gap_lo),
    with no vertex of degree in [gap_lo, gap_lo + width) adjacent to a kept
    endpoint.
    """
    pairs = validate_induced_matching(g, matching)
    if width < 1:
        raise PreconditionError("window width must be at least 1")
    if low < 2 * star_bound + 2:
        raise PreconditionError(
            f"window base {low} below 2*{star_bound}+2")
    endpoints = sorted({v for e in pairs for v in e})
    bad = [v for v in endpoints if psi(g, v) > star_bound]
    if bad:
        raise PreconditionError(
            f"psi exceeds {star_bound} at matched vertices {bad[:4]}")

    deg = [g.degree(v) for v in range(g.n)]
    gap_lo = None
    for j in range(4 * (2 * star_bound + 2) + 1):
        lo = low + j * width
        hits = sum(1 for v in endpoints for u in g.neighbors(v)
                   if lo <= deg[u] < lo + width)
        if 2 * hits <= len(pairs):
            gap_lo = lo
            break
    if gap_lo is None:
        raise InconsistencyError("no light degree window; averaging failed")

    def clear(v):
        return all(not gap_lo <= deg[u] < gap_lo + width
                   for u in g.neighbors(v))

    kept = tuple(e for e in pairs if clear(e[0]) and clear(e[1]))
    if 2 * len(kept) < len(pairs):
        raise InconsistencyError(
            f"gap filter kept {len(kept)} of {len(pairs)} edges")
    return kept, gap_lo


# -- subcollection selection ------------------------------------------------

def select_subcollection(family, k, spare, max_size):
    """Choose k sets so every element is nearly private or well covered.

    Given at least (1 + spare*max_size)*k sets of size <= max_size, returns
    indices of k of them such that each element either lies in at most one
    chosen set or lies in at least ``spare`` unchosen ones.  Construction:
    take the first available set, and for each of its elements retire up to
    ``spare`` later sets containing that element from future consideration
    (retired sets stay unchosen, which is exactly what the guarantee needs).
    """
    sets = [frozenset(s) for s in family]
    if k < 0 or spare < 0 or max_size < 0:
        raise PreconditionError("k, spare and max_size must be nonnegative")
    if any(len(s) > max_size for s in sets):
        raise PreconditionError(f"a set exceeds size {max_size}")
    if len(sets) < (1 + spare * max_size) * k:
        raise PreconditionError(
            f"need at least {(1 + spare * max_size) * k} sets, "
            f"got {len(sets)}")

    available = list(range(len(sets)))
    chosen = []
    for _ in range(k):
        head = available.pop(0)
        chosen.append(head)
        for x in sorted(sets[head]):
            holders = [i for i in available if x in sets[i]]
            for i in holders[:spare]:
                available.remove(i)

    chosen_set = set(chosen)
    for x in set().union(*sets) if sets else ():
        inside = sum(1 for i in chosen if x in sets[i])
        if inside <= 1:
            continue
        outside = sum(1 for i in range(len(sets))
                      if i not in chosen_set and x in sets[i])
        if outside < spare:
            raise InconsistencyError(
                f"element {x!r}: {inside} chosen but only {outside} spare")
    return tuple(chosen)


# -- tree decompositions -----------------------------------------------------

class TreeDecomposition:
    """A rooted tree decomposition.

    ``parent[t]`` is the parent node id (-1 at the unique root) and
    ``bags[t]`` the sorted vertex bag of node t.  The constructor checks only
    tree shape; ``validate_for`` checks the three decomposition conditions
    against a concrete graph.
    """

    __slots__ = ("parent", "bags")

    def __init__(self, parent, bags):
        parent = tuple(int(p) for p in parent)
        bags = tuple(tuple(sorted(set(b))) for b in bags)
        if len(parent) != len(bags):
            raise PreconditionError("parent and bag lists disagree in length")
        if not parent:
            raise PreconditionError("a decomposition needs at least one node")
        roots = [t for t, p in enumerate(parent) if p == -1]
        if len(roots) != 1:
            raise PreconditionError(f"expected one root, found {len(roots)}")
        for t, p in enumerate(parent):
            if p != -1 and not (0 <= p < len(parent)):
                raise PreconditionError(f"node {t} has bad parent {p}")
            if p == t:
                raise PreconditionError(f"node {t} is its own parent")
        for t in range(len(parent)):
            seen = set()
            cur = t
            while cur != -1:
                if cur in seen:
                    raise PreconditionError("parent pointers form a cycle")
                seen.add(cur)
                cur = parent[cur]
        self.parent = parent
        self.bags = bags

    def __len__(self):
        return len(self.bags)

    def __repr__(self):
        return (f"TreeDecomposition(nodes={len(self.bags)}, "
                f"width={self.width})")

    @property
    def width(self):
        return max(len(b) for b in self.bags) - 1

    @property
    def root(self):
        return self.parent.index(-1)

    def children(self, t):
        return tuple(s for s, p in enumerate(self.parent) if p == t)

    def depth(self, t):
        d = 0
        while self.parent[t] != -1:
            t = self.parent[t]
            d += 1
        return d

    def is_ancestor(self, a, t):
        """True when a is t or an ancestor of t."""
        while t != -1:
            if t == a:
                return True
            t = self.parent[t]
        return False

    def descendants(self, t):
        """Node ids in the subtree rooted at t, t included."""
        out = [t]
        stack = [t]
        while stack:
            cur = stack.pop()
            for c in self.children(cur):
                out.append(c)
                stack.append(c)
        return tuple(sorted(out))

    def vertices_below(self, t):
        """Union of the bags in the subtree at t."""
        verts = set()
        for s in self.descendants(t):
            verts.update(self.bags[s])
        return frozenset(verts)

    def validate_for(self, h):
        covered = set()
        for b in self.bags:
            for v in b:
                if not 0 <= v < h.n:
                    raise PreconditionError(f"bag vertex {v} out of range")
            covered.update(b)
        if covered != set(range(h.n)):
            raise PreconditionError("bags do not cover the vertex set")
        for (u, v) in h.edges:
            if not any(u in b and v in b for b in self.bags):
                raise PreconditionError(f"edge ({u},{v}) lies in no bag")
        for v in range(h.n):
            holders = {t for t, b in enumerate(self.bags) if v in b}
            tops = sum(1 for t in holders if self.parent[t] not in holders)
            if tops != 1:
                raise PreconditionError(
                    f"bags containing vertex {v} are not connected")


def exact_tree_decomposition(h):
    """Optimal-width rooted decomposition of a small graph.

    Dynamic programming over elimination prefixes: the back degree of v
    eliminated after the set T is the number of vertices outside T union {v}
    reachable from v through T, which is order-independent.  Exponential in
    h.n, so this refuses graphs beyond a dozen vertices.
    """
    n = h.n
    if n > 12:
        raise PreconditionError("exhaustive treewidth only runs up to n=12")
    if n == 0:
        return TreeDecomposition((-1,), ((),))

    nbr = [h.adj_mask(v) for v in range(n)]

    def back_degree(t_mask, v):
        seen = 1 << v
        frontier = 1 << v
        while frontier:
            grown = 0
            m = frontier
            while m:
                low = m & -m
                grown |= nbr[low.bit_length() - 1]
                m ^= low
            grown &= ~seen
            seen |= grown
            frontier = grown & t_mask
        return (seen & ~t_mask & ~(1 << v)).bit_count()

    full = (1 << n) - 1
    cost = [0] * (full + 1)
    last = [0] * (full + 1)
    for s in range(1, full + 1):
        best = n + 1
        pick = -1
        m = s
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            c = max(cost[s ^ low], back_degree(s ^ low, v))
            if c < best:
                best, pick = c, v
        cost[s] = best
        last[s] = pick

    order = [0] * n
    s = full
    while s:
        v = last[s]
        order[s.bit_count() - 1] = v
        s ^= 1 << v

    # replay the elimination, collecting one bag per vertex
    adj = [set(h.neighbors(v)) for v in range(n)]
    alive = set(range(n))
    position = {v: i for i, v in enumerate(order)}
    bags = []
    parent = []
    for i, v in enumerate(order):
        around = sorted(adj[v] & alive, key=position.get)
        bags.append((v, *around))
        if around:
            parent.append(position[around[0]])
        elif i + 1 < n:
            parent.append(i + 1)
        else:
            parent.append(-1)
        for a, b in combinations(around, 2):
            adj[a].add(b)
            adj[b].add(a)
        alive.discard(v)

    td = TreeDecomposition(parent, bags)
    td.validate_for(h)
    if td.width != cost[full]:
        raise InconsistencyError(
            f"rebuilt width {td.width} != programmed width {cost[full]}")
    return td


# -- induced matchings with small star numbers -------------------------------

def _edges_within(h, allowed):
    return [e for e in h.edges if e[0] in allowed and e[1] in allowed]


def nice_matching(h, td, k):
    """Find an induced k-matching whose endpoints have small star numbers.

    Walks the tree decomposition bottom-up, repeatedly taking the deepest
    node whose subtree still contains an uncovered edge.  Either several
    previously harvested regions merge under one of its children (then only
    the bookkeeping node set X grows) or each child donates one fresh edge.
    Every endpoint of the result satisfies psi <= 2*(width+1), and the
    matching is induced; both facts are re-verified before returning.  Comes
    back empty-handed (None) when the graph's vertex cover number is too
    small for k disjoint harvests, which the caller treats as "not found".

    The vertex-cover invariant from the correctness argument is audited on
    every iteration, so a successful return has survived an exact
    tau(H[V_i - S_i]) <= (w+1)(3|M|-|X|-|Xhat|) check each round.
    """
    td.validate_for(h)
    if k <= 0:
        return ()
    w = td.width
    nodes = range(len(td))
    below = {t: td.vertices_below(t) for t in nodes}
    depth = {t: td.depth(t) for t in nodes}

    matching = []          # harvested edges, insertion order
    x_nodes = []           # bookkeeping nodes, insertion order

    def maximal_nodes():
        xs = set(x_nodes)
        return [t for t in x_nodes
                if not any(a != t and td.is_ancestor(a, t) for a in xs)]

    while len(matching) < k:
        s_set = {v for t in x_nodes for v in td.bags[t]}
        v_set = set().union(*(below[t] for t in x_nodes)) if x_nodes else set()
        xhat = maximal_nodes()

        def live_edge(t, blocked):
            allowed = below[t] - blocked - v_set
            return _edges_within(h, allowed)

        candidates = [t for t in nodes if live_edge(t, set(td.bags[t]))]
        if not candidates:
            return None
        t_star = min(candidates, key=lambda t: (-depth[t], t))
        block = set(td.bags[t_star])
        busy = [c for c in td.children(t_star) if live_edge(c, block)]
        if not busy:
            raise InconsistencyError("live node with no live child subtree")

        heavy = None
        for c in busy:
            inside = [x for x in xhat if td.is_ancestor(c, x)]
            if len(inside) > 1:
                heavy = (c, inside)
                break
        if heavy is not None:
            _, inside = heavy
            mergers = [t for t in nodes
                       if sum(td.is_ancestor(t, x) for x in inside) >= 2]
            t_merge = min(mergers, key=lambda t: (-depth[t], t))
            if t_merge in set(x_nodes):
                raise InconsistencyError("merge node already tracked")
            x_nodes.append(t_merge)
        else:
            for c in busy:
                matching.append(min(live_edge(c, block)))
            if t_star in set(x_nodes):
                raise InconsistencyError("harvest node already tracked")
            x_nodes.append(t_star)

        _audit_nice_invariants(h, td, matching, x_nodes, below, w)

    chosen = tuple(matching[:k])
    validate_induced_matching(h, chosen)
    cap = 2 * (w + 1)
    for e in chosen:
        for v in e:
            got = psi(h, v)
            if got > cap:
                raise InconsistencyError(
                    f"matched vertex {v} has psi {got} > {cap}")
    return chosen


def _audit_nice_invariants(h, td, matching, x_nodes, below, w):
    s_set = {v for t in x_nodes for v in td.bags[t]}
    v_set = set().union(*(below[t] for t in x_nodes))
    if s_set & {v for e in matching for v in e}:
        raise InconsistencyError("bookkeeping bags touch the matching")
    xs = set(x_nodes)
    xhat = [t for t in x_nodes
            if not any(a != t and td.is_ancestor(a, t) for a in xs)]
    region = sorted(v_set - s_set)
    sub = h.induced(region)
    tau = min_vertex_cover(sub)[0]
    cap = (w + 1) * (3 * len(matching) - len(x_nodes) - len(xhat))
    if tau > cap:
        raise InconsistencyError(f"cover invariant broken: {tau} > {cap}")
    back = {v: i for i, v in enumerate(region)}
    comp_of = {}
    for ci, comp in enumerate(sub.components()):
        for v in comp:
            comp_of[region[v]] = ci
    seen_comps = set()
    for (u, v) in matching:
        if u not in back or v not in back:
            raise InconsistencyError("matching edge left the tracked region")
        c = comp_of[u]
        if comp_of[v] != c or c in seen_comps:
            raise InconsistencyError("two matching edges share a component")
        seen_comps.add(c)


# -- minor models and the bicubic rebuild ------------------------------------

class MinorModel:
    """Branch sets witnessing a minor: ``branch_sets[v]`` hosts pattern
    vertex v, ``discard`` holds the leftovers.  Validity (disjoint, connected,
    every pattern edge crossed) is checked by ``validate_for``; contraction
    may legitimately create extra adjacencies beyond the pattern.
    """

    __slots__ = ("branch_sets", "discard")

    def __init__(self, branch_sets, discard=()):
        self.branch_sets = tuple(tuple(sorted(set(b))) for b in branch_sets)
        self.discard = tuple(sorted(set(discard)))

    def __repr__(self):
        return (f"MinorModel(parts={len(self.branch_sets)}, "
                f"discard={len(self.discard)})")

    def validate_for(self, pattern, host):
        if len(self.branch_sets) != pattern.n:
            raise PreconditionError("one branch set per pattern vertex")
        used = set()
        for v, part in enumerate(self.branch_sets):
            if not part:
                raise PreconditionError(f"branch set {v} is empty")
            for x in part:
                if not 0 <= x < host.n:
                    raise PreconditionError(f"branch vertex {x} out of range")
                if x in used:
                    raise PreconditionError(f"host vertex {x} used twice")
                used.add(x)
            if len(host.induced(part).components()) != 1:
                raise PreconditionError(f"branch set {v} is disconnected")
        for x in self.discard:
            if not 0 <= x < host.n:
                raise PreconditionError(f"discard vertex {x} out of range")
            if x in used:
                raise PreconditionError(f"host vertex {x} used twice")
            used.add(x)
        owner = self._owner_map(host)
        for (a, b) in pattern.edges:
            if not any(owner.get(y) == b
                       for x in self.branch_sets[a]
                       for y in host.neighbors(x)):
                raise PreconditionError(f"pattern edge ({a},{b}) not crossed")

    def _owner_map(self, host):
        owner = {}
        for v, part in enumerate(self.branch_sets):
            for x in part:
                owner[x] = v
        return owner

    def contracted(self, host):
        """Contract each branch set to a point, dropping the discard set."""
        owner = self._owner_map(host)
        edges = set()
        for (x, y) in host.edges:
            a, b = owner.get(x), owner.get(y)
            if a is not None and b is not None and a != b:
                edges.add((min(a, b), max(a, b)))
        return Graph(len(self.branch_sets), sorted(edges))


def _filler_block(deficit):
    """A little graph with ``deficit`` degree-2 slots and all else degree 3."""
    if deficit == 1:
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3), (2, 4)]
        return 5, edges, [0]
    if deficit == 2:
        edges = [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]
        return 4, edges, [0, 2]
    edges = [(i, (i + 1) % deficit) for i in range(deficit)]
    return deficit, edges, list(range(deficit))


def make_bicubic(h):
    """Rebuild a graph as a 3-regular bipartite one containing it as a minor.

    Degrees below 3 are raised by wiring deficient vertices into a small
    filler block, degrees above 3 are spread around a cycle, every edge is
    subdivided (which forces the bipartition), and the degree-2 subdivision
    vertices are topped up by fresh vertices adopting them in triples by
    ascending id.  Returns the rebuilt graph plus a minor model mapping each
    original vertex to its cycle (or itself) with the adopted subdividers;
    3-regularity, bipartiteness, the 20*|E| size bound and an exact
    contraction replay are all asserted before returning.
    """
    if h.isolated_vertices():
        raise PreconditionError("isolated vertices cannot reach degree 3")
    if h.n == 0:
        return Graph(0), MinorModel(())

    deficits = [max(0, 3 - h.degree(v)) for v in range(h.n)]
    total_deficit = sum(deficits)
    base_edges = list(h.edges)
    filler_lo = h.n
    slot_edges = []
    if total_deficit:
        fn, fe, slots = _filler_block(total_deficit)
        base_edges += [(filler_lo + a, filler_lo + b) for (a, b) in fe]
        queue = [filler_lo + s for s in slots]
        for v in range(h.n):
            for _ in range(deficits[v]):
                slot_edges.append((v, queue.pop(0)))
    else:
        fn = 0
    base_edges += slot_edges
    base = Graph(h.n + fn, base_edges)

    # spread high degrees around cycles; port(v, u) is where the edge
    # toward u now attaches
    ids = {}
    port = {}
    ring_edges = []
    nxt = 0
    for v in range(base.n):
        nbs = sorted(base.neighbors(v))
        if len(nbs) <= 3:
            ids[v] = (nxt,)
            for u in nbs:
                port[(v, u)] = nxt
            nxt += 1
        else:
            ring = tuple(range(nxt, nxt + len(nbs)))
            ids[v] = ring
            for i, u in enumerate(nbs):
                port[(v, u)] = ring[i]
            ring_edges += [(ring[i], ring[(i + 1) % len(ring)])
                           for i in range(len(ring))]
            nxt += len(nbs)
    cubic_edges = sorted(
        {(min(a, b), max(a, b)) for a, b in ring_edges}
        | {(min(port[(u, v)], port[(v, u)]), max(port[(u, v)], port[(v, u)]))
           for (u, v) in base.edges})
    v3 = nxt
    if any(sum(1 for e in cubic_edges if x in e) != 3 for x in range(v3)):
        raise InconsistencyError("cycle spreading missed degree 3")

    sub_of = {}
    final_edges = []
    for e in cubic_edges:
        s = nxt
        sub_of[e] = s
        nxt += 1
        final_edges += [(e[0], s), (s, e[1])]
    subdividers = [sub_of[e] for e in cubic_edges]
    groupers = []
    for i in range(0, len(subdividers), 3):
        gv = nxt
        nxt += 1
        groupers.append(gv)
        final_edges += [(gv, s) for s in subdividers[i:i + 3]]
    dagger = Graph(nxt, final_edges)

    if any(dagger.degree(x) != 3 for x in range(dagger.n)):
        raise InconsistencyError("rebuilt graph is not 3-regular")
    if not dagger.is_bipartite():
        raise InconsistencyError("rebuilt graph is not bipartite")
    if dagger.n > 20 * h.m:
        raise InconsistencyError(
            f"size bound broken: {dagger.n} > 20*{h.m}")

    branch = []
    for v in range(h.n):
        part = set(ids[v])
        for (a, b) in cubic_edges:
            if a in part and b in part:      # ring edge of v
                part.add(sub_of[(a, b)])
        branch.append(part)
    # each original edge's subdivider goes to its smaller endpoint
    for (u, v) in h.edges:
        a, b = port[(u, v)], port[(v, u)]
        branch[min(u, v)].add(sub_of[(min(a, b), max(a, b))])
    assigned = set().union(*branch)
    discard = [x for x in range(dagger.n) if x not in assigned]
    model = MinorModel(branch, discard)
    model.validate_for(h, dagger)
    if model.contracted(dagger) != Graph(h.n, h.edges):
        raise InconsistencyError("contraction replay does not give H back")
    return dagger, model


def minor_lift_instance(h, dagger, model, g):
    """Transfer color-preserving pattern counting across a minor model.

    h must be colorful; g carries colors from the same palette.  Every
    g-vertex of color i is replaced by a copy of the branch set hosting the
    i-colored pattern vertex, copies are fully joined when their g-vertices
    are adjacent (or when the pattern lacks that edge entirely, in which
    case adjacency in g is irrelevant), and one copy of the discard block is
    joined to everything.  Output vertices are colored by their originating
    dagger vertex, so counting dagger (colored by identity) in the result
    equals counting h in g.
    """
    if not is_colorful(h):
        raise PreconditionError("pattern must be colorful")
    if g.vcolors is None:
        raise PreconditionError("host carries no vertex colors")
    model.validate_for(h, dagger)
    covered = {x for part in model.branch_sets for x in part}
    covered.update(model.discard)
    if covered != set(range(dagger.n)):
        raise PreconditionError("model must partition the rebuilt graph")

    owner_vertex = {h.vcolors[v]: v for v in range(h.n)}
    blocks = []               # (g vertex or None, dagger vertex list)
    for u in range(g.n):
        c = g.vcolors[u]
        if c not in owner_vertex:
            raise PreconditionError(f"host color {c} unknown to the pattern")
        blocks.append((u, list(model.branch_sets[owner_vertex[c]])))
    blocks.append((None, list(model.discard)))

    offset = []
    nxt = 0
    for _, part in blocks:
        offset.append(nxt)
        nxt += len(part)
    colors = [x for _, part in blocks for x in part]

    index = []               # per block: dagger vertex -> lifted id
    for bi, (_, part) in enumerate(blocks):
        index.append({x: offset[bi] + i for i, x in enumerate(part)})

    edges = []
    for bi, (_, part) in enumerate(blocks):
        for (x, y) in dagger.edges:
            if x in index[bi] and y in index[bi]:
                edges.append((index[bi][x], index[bi][y]))

    pat_edge = {(min(a, b), max(a, b)) for (a, b) in h.edges}
    for bi in range(g.n):
        for bj in range(bi + 1, g.n):
            ci = owner_vertex[g.vcolors[bi]]
            cj = owner_vertex[g.vcolors[bj]]
            if ci == cj:
                continue
            e = (min(ci, cj), max(ci, cj))
            if e in pat_edge and not g.has_edge(bi, bj):
                continue
            for x in index[bi].values():
                for y in index[bj].values():
                    edges.append((x, y))
    b0 = len(blocks) - 1
    for x in index[b0].values():
        for bi in range(g.n):
            for y in index[bi].values():
                edges.append((x, y))

    return Graph(nxt, edges, vcolors=colors)


# -- grid instances -----------------------------------------------------------

def grid_pattern(k):
    """The k-by-k grid, colored so every vertex is its own color class."""
    edges = []
    for i in range(k):
        for j in range(k):
            if j + 1 < k:
                edges.append((i * k + j, i * k + j + 1))
            if i + 1 < k:
                edges.append((i * k + j, (i + 1) * k + j))
    return Graph(k * k, edges, vcolors=range(k * k))


def build_grid_instance(g, k):
    """Encode k-clique counting as colored grid counting.

    The host gets a diagonal vertex (i,i,x,x) for every graph vertex x and
    an off-diagonal (i,j,x,y) for every edge {x,y}, oriented so x < y
    exactly when i < j (one orientation per cell; keeping both would count
    every clique k! times).  Rows chain vertices that agree in (i,x),
    columns those that agree in (j,y), so a color-faithful grid copy pins
    down one increasing vertex tuple whose pairs are all adjacent.  Returns
    (colored grid, colored host).
    """
    if k < 2:
        raise PreconditionError("grid instances need k >= 2")
    ids = {}
    colors = []
    for i in range(k):
        for x in range(g.n):
            ids[(i, i, x, x)] = len(colors)
            colors.append(i * k + i)
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            for (x, y) in g.edges:
                key = (i, j, x, y) if (i < j) == (x < y) else (i, j, y, x)
                ids[key] = len(colors)
                colors.append(i * k + j)

    edges = []
    for (i, j, x, y), a in ids.items():
        right = [(i, j + 1, x, yy) for yy in range(g.n)]
        down = [(i + 1, j, xx, y) for xx in range(g.n)]
        for key in right + down:
            b = ids.get(key)
            if b is not None:
                edges.append((a, b))
    host = Graph(len(colors), edges, vcolors=colors)
    return grid_pattern(k), host
