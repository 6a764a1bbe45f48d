"""Embedding counts driven by a minimum vertex cover of the pattern.

Fix a minimum vertex cover c_1..c_tau of the pattern H.  Everything outside
the cover is an independent set, so once the cover's image is pinned the rest
of an embedding is an injective assignment of independent vertices into
compatible host vertices, and that assignment factors into a small flow
problem between "demand" classes (pattern vertices grouped by which cover
vertices they see) and "supply" classes (host vertices grouped by which cover
images they see).  The grouped count is

    sum over flows h of
        prod_X  multinomial(d_X; h(Y1,X), h(Y2,X), ...)
        * prod_Y falling_factorial(m_Y, sum_X h(Y,X))

where a demand class X may only send to supply classes Y >= X.  The
multinomial chooses which of the d_X labeled pattern vertices go to each
supply class; the falling factorial places every arrival injectively.  Both
factors are exercised against brute-force enumeration in the tests; dropping
the multinomial undercounts as soon as one demand class splits.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Iterator

from .brute import automorphism_count
from .graphs import Graph, InconsistencyError, PreconditionError, min_vertex_cover
from .polynomials import falling_factorial

ClassKey = frozenset


@dataclass(frozen=True)
class FlowInstance:
    """Grouped placement problem: demands d_X and supplies m_Y.

    Keys are frozensets of cover positions.  Supplies are not capped here;
    overfull flows are killed by the falling factorial weight.
    """
    demands: tuple[tuple[ClassKey, int], ...]
    supplies: tuple[tuple[ClassKey, int], ...]

    @staticmethod
    def build(demands: dict, supplies: dict) -> "FlowInstance":
        return FlowInstance(tuple(sorted(demands.items(), key=lambda t: (sorted(t[0]), t[1]))),
                            tuple(sorted(supplies.items(), key=lambda t: (sorted(t[0]), t[1]))))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_flows(inst: FlowInstance) -> Iterator[dict]:
    """Every flow {(Y, X): amount} meeting each demand exactly, respecting
    the X <= Y compatibility rule.  Zero entries are kept so the example
    splits of a demand of 2 over two supplies read (2,0), (1,1), (0,2)."""
    def rec(i, acc):
        if i == len(inst.demands):
            yield dict(acc)
            return
        x, d = inst.demands[i]
        targets = [y for (y, _m) in inst.supplies if x <= y]
        if not targets and d > 0:
            return
        for comp in _compositions(d, len(targets)):
            step = acc + [((y, x), c) for y, c in zip(targets, comp)]
            yield from rec(i + 1, step)
    yield from rec(0, [])


def flow_weight(inst: FlowInstance, flow: dict) -> int:
    """Multinomial-times-falling-factorial weight of one flow."""
    weight = 1
    for x, d in inst.demands:
        rem = d
        for (y, xx), c in flow.items():
            if xx == x:
                weight = weight * factorial(rem) // (factorial(c) * factorial(rem - c))
                rem -= c
        if rem != 0:
            raise PreconditionError("flow does not meet its demands")
    for y, m in inst.supplies:
        inflow = sum(c for (yy, _x), c in flow.items() if yy == y)
        weight *= falling_factorial(m, inflow)
    return weight


def _grouped_count(inst: FlowInstance) -> int:
    """sum of flow_weight over enumerate_flows, computed by direct recursion
    (same tree, without materializing the flow dicts)."""
    supplies = list(inst.supplies)

    def rec(i, caps):
        if i == len(inst.demands):
            return 1
        x, d = inst.demands[i]
        targets = [t for t, (y, _m) in enumerate(supplies) if x <= y]
        if not targets and d > 0:
            return 0
        total = 0
        for comp in _compositions(d, len(targets)):
            w = 1
            rem = d
            new_caps = list(caps)
            for t, c in zip(targets, comp):
                w = w * factorial(rem) // (factorial(c) * factorial(rem - c))
                rem -= c
                w *= falling_factorial(new_caps[t], c)
                new_caps[t] -= c
                if w == 0:
                    break
            if w:
                total += w * rec(i + 1, new_caps)
        return total

    return rec(0, [m for (_y, m) in supplies])


def anchored_embedding_count(h: Graph, cover: tuple[int, ...], g: Graph,
                             image: tuple[int, ...]) -> int:
    """Embeddings of h into g that send cover[i] to image[i].

    The cover must touch every edge of h; the non-cover remainder is then
    placed by the grouped flow count.
    """
    cset = set(cover)
    for (u, v) in h.edges:
        if u not in cset and v not in cset:
            raise PreconditionError("given set is not a vertex cover of the pattern")
    if len(set(image)) != len(image):
        return 0
    pos = {c: i for i, c in enumerate(cover)}
    # edges inside the cover must be honored by the anchor itself
    for (u, v) in h.edges:
        if u in cset and v in cset:
            if not g.has_edge(image[pos[u]], image[pos[v]]):
                return 0
    demands: dict[ClassKey, int] = {}
    for u in range(h.n):
        if u in cset:
            continue
        key = frozenset(pos[w] for w in h.neighbors(u))
        demands[key] = demands.get(key, 0) + 1
    used = set(image)
    supplies: dict[ClassKey, int] = {}
    for v in range(g.n):
        if v in used:
            continue
        key = frozenset(i for i, gi in enumerate(image) if g.has_edge(v, gi))
        supplies[key] = supplies.get(key, 0) + 1
    return _grouped_count(FlowInstance.build(demands, supplies))


def count_emb_vc(h: Graph, g: Graph, *, threads: int = 1) -> int:
    """#Emb(h -> g) by summing anchored counts over all injective placements
    of a minimum vertex cover of h."""
    if h.directed or g.directed:
        raise PreconditionError("embedding counting is for undirected graphs")
    if h.n > g.n:
        return 0
    tau, cover = min_vertex_cover(h)
    anchors = list(permutations(range(g.n), tau))
    if threads <= 1 or len(anchors) < 64:
        return sum(anchored_embedding_count(h, cover, g, a) for a in anchors)
    chunk = (len(anchors) + threads - 1) // threads
    blocks = [anchors[i:i + chunk] for i in range(0, len(anchors), chunk)]

    def total(block):
        return sum(anchored_embedding_count(h, cover, g, a) for a in block)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(total, blocks))


def count_sub_vc(h: Graph, g: Graph, *, threads: int = 1) -> int:
    """#Sub(h -> g) via the cover-driven embedding count."""
    emb = count_emb_vc(h, g, threads=threads)
    aut = automorphism_count(h)
    if emb % aut:
        raise InconsistencyError(f"#Emb={emb} not divisible by #Aut={aut}")
    return emb // aut
