"""Flows over the Klein four-group on cubic semi-graphs.

Values are 0..3 with xor as the group operation.  An assignment is a flow
when the incident values xor to zero at every vertex; semi-edges contribute
at their single endpoint.  On cubic graphs a nowhere-zero flow is the same
thing as a proper 3-edge-coloring, which is what ties the flow solver and
the coloring solver together as mutual cross-checks.
"""
from __future__ import annotations

import random
import time
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple

from . import kernels
from ._flat import active_mask, flatten
from .coloring import COLORS, Coloring, is_colorable
from .semigraph import LinkId, SemiGraph, VertexId, from_data

FlowAssignment = dict[int, int]

KLEIN = (0, 1, 2, 3)


def vertex_balance(g: SemiGraph, phi: Mapping[LinkId, int], v: VertexId) -> int:
    acc = 0
    for lid in g.incident(v):
        acc ^= phi[lid]
    return acc


def is_flow(g: SemiGraph, phi: Mapping[LinkId, int]) -> bool:
    """Every link carries a value in 0..3 and every vertex balances to zero."""
    for link in g.links():
        if phi.get(link.id) not in KLEIN:
            return False
    return all(vertex_balance(g, phi, v) == 0 for v in g.vertices)


def zero_links(phi: Mapping[LinkId, int]) -> list[LinkId]:
    return sorted(lid for lid, x in phi.items() if x == 0)


def zero_count(phi: Mapping[LinkId, int]) -> int:
    return sum(1 for x in phi.values() if x == 0)


def is_nzf(g: SemiGraph, phi: Mapping[LinkId, int]) -> bool:
    return is_flow(g, phi) and zero_count(phi) == 0


def cut_sum_check(g: SemiGraph, phi: Mapping[LinkId, int],
                  X: Iterable[VertexId]) -> bool:
    """The boundary of X xors to zero under any valid flow.

    Conservation summed over X cancels internal edges pairwise, leaving the
    crossing edges and the semi-edges rooted in X.  Raises if ``phi`` is not
    a flow (the identity's hypothesis).
    """
    if not is_flow(g, phi):
        raise ValueError("cut_sum_check needs a valid flow")
    acc = 0
    for lid in g.boundary(X).boundary:
        acc ^= phi[lid]
    return acc == 0


def find_flow(g: SemiGraph, max_zeros: int, *, removed: Iterable[LinkId] = (),
              deadline: float | None = None) -> FlowAssignment | None:
    """A flow of g minus ``removed`` with at most ``max_zeros`` zeros, or None."""
    flat = flatten(g)
    mask = active_mask(flat, tuple(removed))
    sol = kernels.flow_first(flat.n, flat.eu, flat.ev, max_zeros, mask, deadline)
    if sol is None:
        return None
    out = {flat.lids[i]: sol[i] for i in range(len(sol))}
    for lid in removed:
        del out[lid]
    return out


class FlowResistanceResult(NamedTuple):
    value: int | None               # None when the search budget was exhausted
    flow: FlowAssignment | None     # witness with exactly ``value`` zeros


def flow_resistance(g: SemiGraph, budget: int | None = None, *,
                    deadline: float | None = None) -> FlowResistanceResult:
    """Minimum number of zeros over all flows, by iterative deepening.

    Each zero budget k is a complete search, so the first witness found has
    the exact minimum.  ``budget`` caps the answer (default: the link count,
    which always succeeds because the all-zero assignment is a flow).
    """
    top = g.num_edges + g.num_semi_edges if budget is None else budget
    for k in range(0, top + 1):
        phi = find_flow(g, k, deadline=deadline)
        if phi is not None:
            return FlowResistanceResult(k, phi)
    return FlowResistanceResult(None, None)


def coloring_to_flow(g: SemiGraph, coloring: Coloring) -> FlowAssignment:
    """Read a proper coloring of a cubic semi-graph as a nowhere-zero flow.

    The three colors are the three nonzero Klein elements; a degree-3 vertex
    seeing all of 1, 2, 3 balances since 1 ^ 2 ^ 3 = 0.
    """
    if not g.is_cubic():
        raise ValueError("coloring_to_flow needs a cubic semi-graph")
    if any(coloring.get(link.id) not in COLORS for link in g.links()):
        raise ValueError("coloring_to_flow needs a total coloring")
    phi = dict(coloring)
    if not is_flow(g, phi):
        raise ValueError("coloring is not proper: the induced assignment does not balance")
    return phi


def flow_to_coloring(g: SemiGraph, phi: Mapping[LinkId, int]) -> Coloring:
    """Read a nowhere-zero flow on a cubic semi-graph as a proper coloring."""
    if not g.is_cubic():
        raise ValueError("flow_to_coloring needs a cubic semi-graph")
    if not is_nzf(g, phi):
        raise ValueError("assignment is not a nowhere-zero flow")
    return dict(phi)


def complete_flow(g: SemiGraph, preset: Mapping[LinkId, int], *,
                  deadline: float | None = None) -> FlowAssignment | None:
    """Extend ``preset`` to a flow whose only zeros are the preset ones.

    Unassigned links take nonzero values; backtracking in ascending link id
    order with xor propagation (a vertex with one unassigned link forces it).
    Returns None when no extension exists.
    """
    phi: FlowAssignment = dict(preset)
    inc = {v: g.incident(v) for v in g.vertices}
    remaining = {v: sum(1 for lid in inc[v] if lid not in phi) for v in g.vertices}

    def partial_balance(v: VertexId) -> int:
        acc = 0
        for lid in inc[v]:
            acc ^= phi.get(lid, 0)
        return acc

    def feasible(v: VertexId) -> bool:
        # remaining 0: must balance; remaining 1: the last link must take a
        # nonzero value, so the residual must be nonzero
        if remaining[v] == 0:
            return partial_balance(v) == 0
        if remaining[v] == 1:
            return partial_balance(v) != 0
        return True

    if not all(feasible(v) for v in g.vertices):
        return None
    todo = [link.id for link in g.links() if link.id not in phi]

    nodes = 0

    def extend(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise kernels.KernelTimeout("flow completion deadline exceeded")
        if i == len(todo):
            return True
        lid = todo[i]
        ends = g.link(lid).endpoints()
        for x in (1, 2, 3):
            phi[lid] = x
            for w in ends:
                remaining[w] -= 1
            if all(feasible(w) for w in ends) and extend(i + 1):
                return True
            for w in ends:
                remaining[w] += 1
            del phi[lid]
        return False

    return phi if extend(0) else None


def witness_flow_H(n: int) -> FlowAssignment:
    """A valid flow on H_n whose zeros are exactly the epsilon-labeled edges.

    Built by the recursive value recipe of the construction module, not by
    search; validated here before returning.
    """
    from .constructions import build_H_meta

    meta = build_H_meta(n)
    phi = meta.flow
    g = meta.graph
    if not is_flow(g, phi):
        raise RuntimeError("witness flow recipe produced an unbalanced assignment")
    expected = sorted(meta.epsilon_edges)
    if zero_links(phi) != expected:
        raise RuntimeError("witness flow zeros are not exactly the epsilon edges")
    return phi


def random_flow(g: SemiGraph, rng: random.Random) -> FlowAssignment:
    """A uniform random flow (zeros allowed), via the GF(2) solution space.

    Conservation splits into two independent GF(2) systems, one per value
    bit; each is homogeneous, so sampling means xoring a random subset of a
    nullspace basis.
    """
    flat = flatten(g)
    m = len(flat.lids)
    rows = []
    for vpos in range(flat.n):
        row = 0
        for i in range(m):
            if flat.eu[i] == vpos or flat.ev[i] == vpos:
                row |= 1 << i
        rows.append(row)
    # row echelon over GF(2); record pivot columns
    pivots: list[int] = []
    reduced: list[int] = []
    for row in rows:
        for col, red in zip(pivots, reduced):
            if row >> col & 1:
                row ^= red
        if row:
            low = (row & -row).bit_length() - 1
            pivots.append(low)
            reduced.append(row)
    pivot_set = set(pivots)
    basis: list[int] = []
    for free_col in range(m):
        if free_col in pivot_set:
            continue
        vec = 1 << free_col
        # back-substitute in reverse: echelon rows never contain earlier
        # pivot columns, so later fixes cannot break rows already balanced
        for col, red in zip(reversed(pivots), reversed(reduced)):
            if bin(vec & red).count("1") % 2:
                vec ^= 1 << col
        basis.append(vec)
    bits = []
    for _ in range(2):
        acc = 0
        for vec in basis:
            if rng.randrange(2):
                acc ^= vec
        bits.append(acc)
    return {
        flat.lids[i]: (bits[0] >> i & 1) | ((bits[1] >> i & 1) << 1)
        for i in range(m)
    }


# ---------------------------------------------------------------------------
# independent minimum-zero oracle: delete, suppress, then ask the coloring
# solver instead of the flow solver
# ---------------------------------------------------------------------------


def _suppress_for_nzf(g: SemiGraph, removed: Iterable[LinkId]):
    """Cubic semi-graph equivalent to g minus ``removed`` for nowhere-zero
    solvability, or None when a degree-1 vertex forces a zero.

    Degree-2 vertices force their two links to carry equal values, so the
    pair collapses to one link; 2-cycles and twin semi-edges are always
    satisfiable on their own and vanish.
    """
    removed = set(removed)
    vertices = set(g.vertices)
    links: dict[int, tuple[int, int | None]] = {}
    for link in g.links():
        if link.id not in removed:
            links[link.id] = (link.u, link.v)
    nid = max(links, default=0) + 1
    inc: dict[int, set[int]] = {v: set() for v in vertices}
    for lid, (u, v) in links.items():
        inc[u].add(lid)
        if v is not None:
            inc[v].add(lid)

    def drop_link(lid):
        u, v = links.pop(lid)
        inc[u].discard(lid)
        if v is not None:
            inc[v].discard(lid)

    pending = set(vertices)
    while pending:
        v = pending.pop()
        if v not in vertices:
            continue
        deg = len(inc[v])
        if deg >= 3:
            continue
        if deg == 0:
            vertices.remove(v)
            del inc[v]
            continue
        if deg == 1:
            return None
        l1, l2 = sorted(inc[v])
        u1, v1 = links[l1]
        u2, v2 = links[l2]
        a = v1 if u1 == v else u1   # far end of l1 (None for a semi-edge at v)
        b = v2 if u2 == v else u2
        drop_link(l1)
        drop_link(l2)
        vertices.remove(v)
        del inc[v]
        if a is None and b is None:
            continue                 # twin semi-edges: satisfiable, gone
        if a == b:
            # 2-cycle through v: equal nonzero values, balance at a unaffected
            pending.add(a)
            continue
        if a is None or b is None:
            far = a if b is None else b
            links[nid] = (far, None)
            inc[far].add(nid)
        else:
            links[nid] = (min(a, b), max(a, b))
            inc[a].add(nid)
            inc[b].add(nid)
        for w in (a, b):
            if w is not None:
                pending.add(w)
        nid += 1

    edges = []
    semis = []
    for lid in sorted(links):
        u, v = links[lid]
        if v is None:
            semis.append(u)
        else:
            edges.append((u, v))
    return from_data(sorted(vertices), edges, semis)


def min_zeros_by_deletion(g: SemiGraph, *, kmax: int,
                          deadline: float | None = None) -> int | None:
    """Minimum zeros over all flows, through the deletion characterisation.

    A flow with zero set S restricts to a nowhere-zero flow of g minus S and
    conversely extends by zeros, so the minimum equals the smallest S whose
    deletion (after suppressing degree-2 vertices) leaves a 3-edge-colorable
    cubic semi-graph.  Exhaustive over sizes 0..kmax; deliberately avoids the
    flow kernel so the two routes stay independent.
    """
    lids = [link.id for link in g.links()]
    for k in range(0, kmax + 1):
        for combo in combinations(lids, k):
            sup = _suppress_for_nzf(g, combo)
            if sup is None:
                continue
            if is_colorable(sup, deadline=deadline):
                return k
    return None
