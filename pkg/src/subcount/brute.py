"""Reference counters by exhaustive search.

These are the ground-truth oracles everything else in the package is checked
against, so they favor obviousness over speed: plain backtracking over
adjacency bitmasks, no clever algebra.  They are fast enough for the graph
sizes the test corpus and the reductions feed them (a couple dozen vertices).

Counting conventions
--------------------
* embeddings: injective maps preserving adjacency (images of non-edges are
  unconstrained).
* subgraph copies: embeddings divided by automorphisms; the division must be
  exact or something is deeply wrong.
* color-preserving copies: the pattern carries pairwise-distinct vertex
  colors, so copies and color-respecting embeddings are the same thing.
* paths/cycles are counted as subgraphs, once each; see count_walk_patterns.
"""

from __future__ import annotations

from .graphs import Graph, InconsistencyError, PreconditionError, iter_bits


def _search_order(h: Graph, pinned=()):
    """Vertex order for backtracking: pinned first, then greedily prefer
    vertices with many already-placed neighbors (ties: higher degree)."""
    order = list(pinned)
    placed = set(order)
    while len(order) < h.n:
        best, best_key = None, None
        for v in range(h.n):
            if v in placed:
                continue
            back = sum(1 for u in h.neighbors(v) if u in placed)
            key = (back, h.degree(v), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
    return order


def count_embeddings(h: Graph, g: Graph, *, respect_colors=False, anchor=None) -> int:
    """Number of injective adjacency-preserving maps V(h) -> V(g).

    ``anchor`` optionally pins pattern vertices to host vertices ({h_v: g_v});
    ``respect_colors`` additionally demands vcolor(h_v) == vcolor(map(h_v)).
    """
    if h.directed or g.directed:
        raise PreconditionError("embedding counting is for undirected graphs")
    if h.n > g.n:
        return 0
    anchor = dict(anchor or {})
    if respect_colors and (h.vcolors is None or g.vcolors is None):
        raise PreconditionError("respect_colors needs vertex colors on both graphs")
    for hv, gv in anchor.items():
        if respect_colors and h.vcolors[hv] != g.vcolors[gv]:
            return 0
    if len(set(anchor.values())) != len(anchor):
        return 0
    order = _search_order(h, pinned=sorted(anchor))
    image = [-1] * h.n
    used = 0
    for hv, gv in anchor.items():
        image[hv] = gv
        used |= 1 << gv

    full = (1 << g.n) - 1
    n_h = h.n

    def extend(pos, used):
        if pos == n_h:
            return 1
        hv = order[pos]
        if image[hv] != -1:  # anchored; just validate adjacency
            gv = image[hv]
            for u in h.neighbors(hv):
                im = image[u]
                if im != -1 and not g.adj_mask(gv) & (1 << im):
                    return 0
            return extend(pos + 1, used)
        cand = full & ~used
        for u in h.neighbors(hv):
            im = image[u]
            if im != -1:
                cand &= g.adj_mask(im)
                if not cand:
                    return 0
        total = 0
        for gv in iter_bits(cand):
            if respect_colors and h.vcolors[hv] != g.vcolors[gv]:
                continue
            image[hv] = gv
            total += extend(pos + 1, used | (1 << gv))
            image[hv] = -1
        return total

    return extend(0, used)


def find_embedding(h: Graph, g: Graph, *, respect_colors=False):
    """One embedding as a tuple image[h_v] = g_v, or None."""
    if h.directed or g.directed:
        raise PreconditionError("embedding search is for undirected graphs")
    if h.n > g.n:
        return None
    order = _search_order(h)
    image = [-1] * h.n
    full = (1 << g.n) - 1

    def extend(pos, used):
        if pos == h.n:
            return tuple(image)
        hv = order[pos]
        cand = full & ~used
        for u in h.neighbors(hv):
            im = image[u]
            if im != -1:
                cand &= g.adj_mask(im)
        for gv in iter_bits(cand):
            if respect_colors and h.vcolors[hv] != g.vcolors[gv]:
                continue
            image[hv] = gv
            got = extend(pos + 1, used | (1 << gv))
            if got is not None:
                return got
            image[hv] = -1
        return None

    return extend(0, 0)


def automorphism_count(h: Graph) -> int:
    """|Aut(h)|.  An injective self-homomorphism of a finite graph is forced
    to be edge-surjective, hence an automorphism, so this equals #Emb(h, h)."""
    return count_embeddings(h, h)


def count_subgraphs(h: Graph, g: Graph) -> int:
    """Number of subgraphs of g isomorphic to h (copies, not embeddings)."""
    emb = count_embeddings(h, g)
    aut = automorphism_count(h)
    if emb % aut:
        raise InconsistencyError(f"#Emb={emb} not divisible by #Aut={aut}")
    return emb // aut


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    if sorted(a.degree(v) for v in range(a.n)) != sorted(b.degree(v) for v in range(b.n)):
        return False
    # an injective hom between graphs of equal order and size is an isomorphism
    return find_embedding(a, b) is not None


def is_colorful(h: Graph) -> bool:
    """All vertex colors present and pairwise distinct."""
    return h.vcolors is not None and len(set(h.vcolors)) == h.n


def count_colorpreserving_subgraphs(h: Graph, g: Graph) -> int:
    """Copies of a colorful pattern in a vertex-colored host, where the copy
    isomorphism must preserve colors.

    Distinct colors kill all nontrivial color-preserving automorphisms, so
    copies are in bijection with color-respecting embeddings.
    """
    if not is_colorful(h):
        raise PreconditionError("pattern must carry pairwise-distinct vertex colors")
    if g.vcolors is None:
        raise PreconditionError("host must be vertex-colored")
    return count_embeddings(h, g, respect_colors=True)


def count_colorful_matchings(g: Graph, colors) -> int:
    """Edge subsets that are matchings and hit each color of ``colors``
    exactly once.  Edges of other colors are simply not usable."""
    if g.ecolors is None:
        raise PreconditionError("host must be edge-colored")
    want = list(colors)
    if len(set(want)) != len(want):
        raise PreconditionError("color set has repeats")
    by_color: dict[int, list[tuple[int, int]]] = {c: [] for c in want}
    for (u, v), c in zip(g.edges, g.ecolors):
        if c in by_color:
            by_color[c].append((u, v))
    groups = sorted(by_color.values(), key=len)

    def branch(i, used):
        if i == len(groups):
            return 1
        total = 0
        for (u, v) in groups[i]:
            mask = (1 << u) | (1 << v)
            if used & mask == 0:
                total += branch(i + 1, used | mask)
        return total

    return branch(0, 0)


def iter_colorful_matchings(g: Graph, colors):
    """Yield each colorful matching as a tuple of edges, one per color of
    ``colors`` in the iteration order of the sorted color list."""
    if g.ecolors is None:
        raise PreconditionError("host must be edge-colored")
    want = sorted(set(colors))
    by_color = {c: [] for c in want}
    for (u, v), c in zip(g.edges, g.ecolors):
        if c in by_color:
            by_color[c].append((u, v))
    groups = [by_color[c] for c in want]

    def branch(i, used, acc):
        if i == len(groups):
            yield tuple(acc)
            return
        for (u, v) in groups[i]:
            mask = (1 << u) | (1 << v)
            if used & mask == 0:
                acc.append((u, v))
                yield from branch(i + 1, used | mask, acc)
                acc.pop()

    yield from branch(0, 0, [])


def count_matchings(g: Graph, k: int) -> int:
    """Number of k-edge matchings (equivalently #Sub of a k-matching)."""
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    edges = g.edges

    def branch(i, used, need):
        if need == 0:
            return 1
        if len(edges) - i < need:
            return 0
        (u, v) = edges[i]
        total = branch(i + 1, used, need)
        mask = (1 << u) | (1 << v)
        if used & mask == 0:
            total += branch(i + 1, used | mask, need - 1)
        return total

    return branch(0, 0, k)


def count_walk_patterns(g: Graph, kind: str, k: int) -> int:
    """Exact number of path/cycle subgraphs with k edges.

    Undirected paths need k >= 1, undirected cycles k >= 3, directed paths
    k >= 1, directed cycles k >= 2.  Each subgraph is counted once: paths by
    orienting from the smaller endpoint, cycles by anchoring at their minimum
    vertex (and, undirected, walking toward its smaller neighbor first).
    """
    if kind not in ("path", "cycle"):
        raise PreconditionError(f"unknown walk pattern kind {kind!r}")
    if kind == "path" and k < 1:
        raise PreconditionError("paths need k >= 1")
    if kind == "cycle":
        if g.directed and k < 2:
            raise PreconditionError("directed cycles need k >= 2")
        if not g.directed and k < 3:
            raise PreconditionError("undirected cycles need k >= 3")

    step = g.out_mask if g.directed else g.adj_mask
    total = 0

    if kind == "path":
        def walk(v, seen, left, first):
            nonlocal total
            if left == 0:
                if g.directed or first < v:
                    total += 1
                return
            for w in iter_bits(step(v) & ~seen):
                walk(w, seen | (1 << w), left - 1, first)
        for s in range(g.n):
            walk(s, 1 << s, k, s)
        return total

    # cycles: anchor at the minimum vertex of the subgraph
    def cyc(v, seen, left, start, second):
        nonlocal total
        if left == 0:
            if step(v) & (1 << start):
                if g.directed or second < v:
                    total += 1
            return
        for w in iter_bits(step(v) & ~seen):
            if w <= start:
                continue
            cyc(w, seen | (1 << w), left - 1, start, second if second >= 0 else w)

    for s in range(g.n):
        cyc(s, 1 << s, k - 1, s, -1)
    return total
