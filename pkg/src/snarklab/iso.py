"""Isomorphism and embedding search for semi-graphs.

Isomorphism here means: a vertex bijection preserving edge multiplicities and
per-vertex semi-edge counts (labels are ignored; use
``SemiGraph.same_structure`` for exact labeled equality).  The search is
backtracking over a connectivity-first vertex order, pruned by iterated
degree refinement (1-WL colors computed jointly on both graphs).

``find_embedding`` searches for an injective map of a pattern into a host,
either induced (edge multiplicities between mapped vertices must match
exactly) or subgraph-style (pattern multiplicities bounded by the host's).
Embeddings ignore semi-edges except through optional degree dominance, which
is what the containment relation needs.
"""
from __future__ import annotations

from typing import Mapping

from .semigraph import SemiGraph, VertexId


def _adj_mult(g: SemiGraph) -> dict[VertexId, dict[VertexId, int]]:
    out: dict[VertexId, dict[VertexId, int]] = {v: {} for v in g.vertices}
    for lk in g.links():
        if lk.is_edge:
            out[lk.u][lk.v] = out[lk.u].get(lk.v, 0) + 1
            out[lk.v][lk.u] = out[lk.v].get(lk.u, 0) + 1
    return out


def _semi_counts(g: SemiGraph) -> dict[VertexId, int]:
    out = {v: 0 for v in g.vertices}
    for lk in g.links():
        if lk.is_semi:
            out[lk.u] += 1
    return out


def joint_wl_colors(
    g1: SemiGraph, g2: SemiGraph, rounds: int | None = None
) -> tuple[dict[VertexId, int], dict[VertexId, int]]:
    """Iterated neighborhood refinement over both graphs in one color space."""
    a1, a2 = _adj_mult(g1), _adj_mult(g2)
    s1, s2 = _semi_counts(g1), _semi_counts(g2)
    palette: dict[object, int] = {}

    def tone(key):
        if key not in palette:
            palette[key] = len(palette)
        return palette[key]

    c1 = {v: tone((g1.degree(v), s1[v])) for v in g1.vertices}
    c2 = {v: tone((g2.degree(v), s2[v])) for v in g2.vertices}
    limit = rounds if rounds is not None else g1.num_vertices + g2.num_vertices
    for _ in range(limit):
        n1 = {
            v: tone((c1[v], tuple(sorted((m, c1[w]) for w, m in a1[v].items()))))
            for v in c1
        }
        n2 = {
            v: tone((c2[v], tuple(sorted((m, c2[w]) for w, m in a2[v].items()))))
            for v in c2
        }
        if len(set(n1.values())) == len(set(c1.values())) and len(
            set(n2.values())
        ) == len(set(c2.values())):
            c1, c2 = n1, n2
            break
        c1, c2 = n1, n2
    return c1, c2


def _order_and_candidates(
    pattern: SemiGraph,
    cand: dict[VertexId, list[VertexId]],
    pat_adj: dict[VertexId, dict[VertexId, int]],
) -> list[VertexId]:
    """Connectivity-first static order, most-constrained start per component."""
    order: list[VertexId] = []
    placed: set[VertexId] = set()
    remaining = set(pattern.vertices)
    while remaining:
        # fresh component: start at the smallest candidate set
        start = min(remaining, key=lambda v: (len(cand[v]), v))
        frontier = [start]
        while frontier:
            nxt = max(
                frontier,
                key=lambda v: (
                    sum(1 for w in pat_adj[v] if w in placed),
                    -len(cand[v]),
                    -v,
                ),
            )
            frontier.remove(nxt)
            order.append(nxt)
            placed.add(nxt)
            remaining.discard(nxt)
            for w in pat_adj[nxt]:
                if w in remaining and w not in frontier:
                    frontier.append(w)
        # isolated leftovers of the component loop handled by outer while
    return order


def _backtrack(
    order: list[VertexId],
    cand: dict[VertexId, list[VertexId]],
    pat_adj,
    host_adj,
    induced: bool,
) -> dict[VertexId, VertexId] | None:
    mapping: dict[VertexId, VertexId] = {}
    used: set[VertexId] = set()
    n = len(order)
    # precompute, per position, the placed pattern vertices to test against
    earlier: list[list[VertexId]] = []
    seen: list[VertexId] = []
    for u in order:
        if induced:
            earlier.append(list(seen))
        else:
            earlier.append([w for w in seen if w in pat_adj[u]])
        seen.append(u)

    def bt(i: int) -> bool:
        if i == n:
            return True
        u = order[i]
        au = pat_adj[u]
        for v in cand[u]:
            if v in used:
                continue
            av = host_adj[v]
            ok = True
            if induced:
                for u2 in earlier[i]:
                    if au.get(u2, 0) != av.get(mapping[u2], 0):
                        ok = False
                        break
            else:
                for u2 in earlier[i]:
                    if au.get(u2, 0) > av.get(mapping[u2], 0):
                        ok = False
                        break
            if not ok:
                continue
            mapping[u] = v
            used.add(v)
            if bt(i + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    return mapping if bt(0) else None


def find_isomorphism(
    g1: SemiGraph,
    g2: SemiGraph,
    fixed: Mapping[VertexId, VertexId] | None = None,
    candidates: Mapping[VertexId, set[VertexId]] | None = None,
) -> dict[VertexId, VertexId] | None:
    """A structure-preserving vertex bijection g1 -> g2, or None.

    ``fixed`` pins chosen images; ``candidates`` restricts images per vertex
    (both optional).  Labels play no role.
    """
    if (
        g1.num_vertices != g2.num_vertices
        or g1.num_edges != g2.num_edges
        or g1.num_semi_edges != g2.num_semi_edges
    ):
        return None
    c1, c2 = joint_wl_colors(g1, g2)
    hist1: dict[int, int] = {}
    hist2: dict[int, int] = {}
    for v, c in c1.items():
        hist1[c] = hist1.get(c, 0) + 1
    for v, c in c2.items():
        hist2[c] = hist2.get(c, 0) + 1
    if hist1 != hist2:
        return None
    by_color: dict[int, list[VertexId]] = {}
    for v in sorted(g2.vertices):
        by_color.setdefault(c2[v], []).append(v)
    cand = {v: list(by_color.get(c1[v], ())) for v in g1.vertices}
    if candidates:
        for v, allowed in candidates.items():
            cand[v] = [w for w in cand[v] if w in allowed]
    if fixed:
        for v, w in fixed.items():
            if w not in cand.get(v, ()):
                return None
            cand[v] = [w]
    if any(not c for c in cand.values()):
        return None
    pat_adj = _adj_mult(g1)
    host_adj = _adj_mult(g2)
    order = _order_and_candidates(g1, cand, pat_adj)
    return _backtrack(order, cand, pat_adj, host_adj, induced=True)


def is_isomorphic(
    g1: SemiGraph,
    g2: SemiGraph,
    fixed: Mapping[VertexId, VertexId] | None = None,
) -> tuple[bool, dict[VertexId, VertexId] | None]:
    m = find_isomorphism(g1, g2, fixed=fixed)
    return (m is not None), m


def find_embedding(
    pattern: SemiGraph,
    host: SemiGraph,
    induced: bool = True,
    degree_dominance: bool = False,
    fixed: Mapping[VertexId, VertexId] | None = None,
) -> dict[VertexId, VertexId] | None:
    """Injective vertex map carrying the pattern's edges into the host.

    induced=True: edge multiplicities between mapped vertices match exactly
    (the image is an induced sub-multigraph).  induced=False: pattern
    multiplicities are only bounded above (plain subgraph containment).
    ``degree_dominance`` additionally requires deg_pattern(v) <= deg_host(f(v))
    with semi-edges counted, which gives the containment relation for
    semi-graphs.
    """
    if pattern.num_vertices > host.num_vertices:
        return None
    pat_adj = _adj_mult(pattern)
    host_adj = _adj_mult(host)
    hosts = sorted(host.vertices)
    cand: dict[VertexId, list[VertexId]] = {}
    for u in pattern.vertices:
        du = len(pat_adj[u])  # distinct neighbors
        mu = sum(pat_adj[u].values())
        degu = pattern.degree(u)
        cs = []
        for v in hosts:
            if sum(host_adj[v].values()) < mu or len(host_adj[v]) < du:
                continue
            if degree_dominance and host.degree(v) < degu:
                continue
            cs.append(v)
        cand[u] = cs
    if fixed:
        for u, v in fixed.items():
            if v not in cand.get(u, ()):
                return None
            cand[u] = [v]
    if any(not c for c in cand.values()):
        return None
    order = _order_and_candidates(pattern, cand, pat_adj)
    return _backtrack(order, cand, pat_adj, host_adj, induced=induced)


def contains(inner: SemiGraph, outer: SemiGraph) -> bool:
    """Containment: inner's vertices/edges embed into outer, degrees dominated.

    Semi-edges of the inner graph need no explicit images; they only demand
    degree headroom at the mapped vertex.
    """
    return (
        find_embedding(inner, outer, induced=False, degree_dominance=True)
        is not None
    )
