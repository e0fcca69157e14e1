"""Builders for the snark family H_n and its gadget semi-graphs.

Everything grows out of the Petersen graph.  Fragment M (Petersen minus a
three-vertex path) and fragment N (Petersen minus a vertex, with one more
edge cut open) combine into the carrier gadget Z, whose five boundary
stubs are z1..z5.  Y_1 joins two Z copies around one M copy; each later
Y_i adds a Z pair plus six fresh vertices to Y_{i-1}.  Closing Y_n's five
stubs with one merge (the edge pi) and one new vertex x yields the cubic
graph H_n.  The junction graph J is cut back out of H_2 and is the right
factor of the decomposition H_{n+1} in H_n * J.

Stub labels follow fixed names: e1..e5 on M, f1..f5 on N, z1..z5 on Z,
alpha_i..epsilon_i on Y_i, and pi on H_n's merge edge.

The builders leave two degrees of freedom open: how each growth step's
six fresh vertices are wired, and which two stubs form J's marked edge
e2.  Both are searched once against a battery of checks (derive_registry)
and then frozen in the wiring registry; load-time digest checks guard
against drift.
"""

from __future__ import annotations

import itertools
import sys
import time
from functools import lru_cache
from typing import Any, Callable, Iterable, NamedTuple, Sequence

from . import kernels
from ._flat import flatten
from .coloring import (
    Coloring,
    all_colorings,
    complete_coloring,
    conflicts,
    find_coloring,
    kempe_chain,
    kempe_switch,
)
from .connectivity import cyclic_connectivity_at_least
from .flows import FlowAssignment, complete_flow, find_flow, is_flow, zero_links
from .formats import digest
from .iso import is_isomorphic
from .registry import (
    REGISTRY_VERSION,
    Registry,
    RegistryError,
    load_registry,
    save_registry,
)
from .semigraph import LinkId, SemiGraph, SemiGraphError, VertexId, from_data


class ConstructionError(RuntimeError):
    """A builder could not realize its contract."""


_STUB_NAMES = ("alpha", "beta", "gamma", "delta", "epsilon")


# -- small fixed graphs --------------------------------------------------


@lru_cache(maxsize=1)
def petersen() -> SemiGraph:
    """Kneser graph on the 2-subsets of a 5-set; vertices 0..9 in lex order."""
    pairs = list(itertools.combinations(range(5), 2))
    edges = []
    for i, a in enumerate(pairs):
        for j in range(i + 1, len(pairs)):
            if not set(a) & set(pairs[j]):
                edges.append((i, j))
    edges.sort()
    return from_data(range(10), edges, [])


def k33() -> SemiGraph:
    """Complete bipartite graph on 3+3 vertices."""
    return from_data(range(6), [(i, 3 + j) for i in range(3) for j in range(3)], [])


def prism3() -> SemiGraph:
    """Two triangles joined by a perfect matching."""
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)]
    return from_data(range(6), edges, [])


def random_cubic(n: int, rng, max_tries: int = 2000) -> SemiGraph:
    """Connected simple cubic graph on n vertices via the pairing model."""
    if n < 4 or n % 2:
        raise ValueError("cubic graphs need an even order of at least 4")
    for _ in range(max_tries):
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        edges = []
        seen = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v or (min(u, v), max(u, v)) in seen:
                ok = False
                break
            seen.add((min(u, v), max(u, v)))
            edges.append((u, v))
        if not ok:
            continue
        g = from_data(range(n), edges, [])
        if g.is_connected():
            return g
    raise ConstructionError(f"no connected cubic pairing found for n={n}")


# -- the Petersen fragments M and N ---------------------------------------


@lru_cache(maxsize=1)
def build_M() -> SemiGraph:
    """Petersen minus the path 0-7-3; five stubs labeled e1..e5.

    e1, e2 replace the edges from vertex 0 (at the lex-smaller neighbors
    first), e3, e4 the edges from vertex 3, e5 the edge from vertex 7.
    """
    p = petersen()
    g, st0 = p.remove_vertex(0)
    g, st7 = g.remove_vertex(7)
    g, st3 = g.remove_vertex(3)
    return g.with_labels({
        st0[8][0]: "e1",
        st0[9][0]: "e2",
        st3[4][0]: "e3",
        st3[5][0]: "e4",
        st7[6][0]: "e5",
    })


@lru_cache(maxsize=1)
def build_N() -> SemiGraph:
    """Petersen minus a vertex, plus one cut-open edge; stubs f1..f5.

    Vertex 0 is removed (stubs f3, f4, f5 at its neighbors in ascending
    order) and the lexicographically first edge at distance 2 from vertex
    0 is trimmed into f1, f2.
    """
    p = petersen()
    target = None
    for lk in p.links():
        if p.distance(0, lk.id, to_link=True) == 2:
            target = lk.id
            break
    if target is None:
        raise ConstructionError("no edge at distance 2 from the removed vertex")
    g, st0 = p.remove_vertex(0)
    g, (f1, f2) = g.trim(target)
    return g.with_labels({
        f1: "f1",
        f2: "f2",
        st0[7][0]: "f3",
        st0[8][0]: "f4",
        st0[9][0]: "f5",
    })


# -- the carrier gadget Z -------------------------------------------------


@lru_cache(maxsize=1)
def build_Z() -> SemiGraph:
    """Join M and N into the 17-vertex carrier; stubs z1..z5.

    e3 merges with f1, e4 with f2; e5 and f5 meet at a fresh vertex whose
    third incidence is the new stub z5.  The surviving stubs are renamed
    z1 := e1, z2 := e2, z3 := f3, z4 := f4.
    """
    m = build_M()
    n = build_N()
    mid = {name: m.link_by_label(name).id for name in ("e1", "e2", "e3", "e4", "e5")}
    g, _, lmap = m.without_labels().disjoint_union(n.without_labels())
    nid = {name: lmap[n.link_by_label(name).id]
           for name in ("f1", "f2", "f3", "f4", "f5")}
    g, _ = g.merge(mid["e3"], nid["f1"])
    g, _ = g.merge(mid["e4"], nid["f2"])
    res = g.attach_new_vertex([mid["e5"], nid["f5"]])
    return res.graph.with_labels({
        mid["e1"]: "z1",
        mid["e2"]: "z2",
        nid["f3"]: "z3",
        nid["f4"]: "z4",
        res.fresh_semi_ids[0]: "z5",
    })


class _ZInfo(NamedTuple):
    graph: SemiGraph
    stub: dict[str, LinkId]        # z1..z5
    c: Coloring                    # canonical stub pattern (3, 3, 1, 2, 3)
    c_switched: Coloring           # (2,3)-switch from z4: pattern (3, 3, 1, 3, 2)
    c_swapped: Coloring            # (1,2)-switch from z3: pattern (3, 3, 2, 1, 3)


@lru_cache(maxsize=1)
def _z_info() -> _ZInfo:
    """The canonical proper coloring of Z used by every witness recipe.

    Wanted: z1 = z2 = 3, z3 = 1, z4 = 2, z5 = 3, and the two-color chain
    in {2, 3} through z4 ends at z5 without touching z1 or z2.  The chain
    condition makes the (2,3) Kempe switch flip exactly z4 and z5, which
    is what the growth step needs on its second Z copy.  The (1,2) switch
    from z3 always ends at z4 (the other three stubs carry color 3), so it
    swaps z3 and z4; Y_1's second copy uses that variant.
    """
    z = build_Z()
    stub = {f"z{k}": z.link_by_label(f"z{k}").id for k in range(1, 6)}
    target = {stub["z1"]: 3, stub["z2"]: 3, stub["z3"]: 1,
              stub["z4"]: 2, stub["z5"]: 3}
    for col in all_colorings(z):
        for perm in itertools.permutations((1, 2, 3)):
            relab = {lid: perm[c - 1] for lid, c in col.items()}
            if any(relab[s] != want for s, want in target.items()):
                continue
            chain = kempe_chain(z, relab, stub["z4"], (2, 3))
            if stub["z1"] in chain or stub["z2"] in chain:
                continue
            if stub["z5"] not in chain:
                continue
            sw = kempe_switch(z, relab, stub["z4"], (2, 3))
            if sw[stub["z4"]] != 3 or sw[stub["z5"]] != 2:
                continue
            swp = kempe_switch(z, relab, stub["z3"], (1, 2))
            if swp[stub["z3"]] != 2 or swp[stub["z4"]] != 1:
                raise ConstructionError("the (1,2) chain from z3 escaped to z5")
            return _ZInfo(z, stub, relab, sw, swp)
    raise ConstructionError("no coloring of Z matches the canonical stub pattern")


# -- Y_1 -------------------------------------------------------------------


class _Y1Build(NamedTuple):
    graph: SemiGraph
    stubs: dict[str, LinkId]          # alpha..epsilon
    z_links: dict[LinkId, LinkId]     # Z link id -> id in Y_1 (first copy)
    zp_links: dict[LinkId, LinkId]    # second copy
    m_links: dict[LinkId, LinkId]     # M link id -> id in Y_1
    v: VertexId                       # planned conflict vertex (epsilon's root)


@lru_cache(maxsize=1)
def _y1_build() -> _Y1Build:
    """Two Z copies around one M copy.

    Merges: z3-e2, z4-e1 (first copy), e4-z3', e3-z4' (second copy), and
    z5-z5' straight across.  Remaining stubs: z1, z2, z1', z2', e5, which
    become alpha_1, beta_1, gamma_1, delta_1, epsilon_1.
    """
    zi = _z_info()
    zbare = zi.graph.without_labels()
    m = build_M()
    mid = {name: m.link_by_label(name).id for name in ("e1", "e2", "e3", "e4", "e5")}
    zs = zi.stub

    g, _, lmap_m = zbare.disjoint_union(m.without_labels())
    g, _, lmap_p = g.disjoint_union(zbare)
    ztr = {lid: lid for lid in zbare.link_ids()}
    mtr = {lid: lmap_m[lid] for lid in m.link_ids()}
    ptr = {lid: lmap_p[lid] for lid in zbare.link_ids()}

    def weld(ta, ka, tb, kb):
        nonlocal g
        g, eid = g.merge(ta[ka], tb[kb])
        ta[ka] = eid
        tb[kb] = eid

    weld(ztr, zs["z3"], mtr, mid["e2"])
    weld(ztr, zs["z4"], mtr, mid["e1"])
    weld(mtr, mid["e4"], ptr, zs["z3"])
    weld(mtr, mid["e3"], ptr, zs["z4"])
    weld(ztr, zs["z5"], ptr, zs["z5"])

    stubs = {
        "alpha": ztr[zs["z1"]],
        "beta": ztr[zs["z2"]],
        "gamma": ptr[zs["z1"]],
        "delta": ptr[zs["z2"]],
        "epsilon": mtr[mid["e5"]],
    }
    g = g.with_labels({stubs[name]: f"{name}_1" for name in _STUB_NAMES})
    v = g.link(stubs["epsilon"]).u
    return _Y1Build(g, stubs, ztr, ptr, mtr, v)


@lru_cache(maxsize=1)
def _y1_witnesses() -> tuple[Coloring, FlowAssignment]:
    """Near-proper coloring of Y_1 (one conflict at v) and its flow reading.

    The first Z copy carries the canonical stub coloring and the second
    its z3/z4-swapped variant; the five merged edges are then consistent
    from both sides and the boundary reads (3, 3, 3, 3) on alpha..delta
    with epsilon at 1.  The M interior cannot absorb that boundary
    properly; with the swap it can place its single conflict at epsilon's
    root v, on the two non-epsilon links.  Zeroing epsilon then balances
    v and turns the coloring into a flow whose only zero is epsilon.
    """
    zi = _z_info()
    y1 = _y1_build()
    g = y1.graph
    preset: dict[LinkId, int] = {}
    for orig, cur in y1.z_links.items():
        preset[cur] = zi.c[orig]
    for orig, cur in y1.zp_links.items():
        preset[cur] = zi.c_swapped[orig]
    eps = y1.stubs["epsilon"]
    preset[eps] = 1
    others = [lid for lid in g.incident(y1.v) if lid != eps]
    col = None
    for r in (2, 3):
        trial = dict(preset)
        trial[others[0]] = trial[others[1]] = r
        col = complete_coloring(g, trial, conflict_vertices=[y1.v])
        if col is not None:
            break
    if col is None:
        raise ConstructionError("Y_1 rejects the canonical one-conflict coloring")
    phi = dict(col)
    phi[eps] = 0
    if not is_flow(g, phi) or zero_links(phi) != [eps]:
        raise ConstructionError("Y_1 witness flow failed validation")
    return col, phi


# -- growth-step wiring -----------------------------------------------------

# Open incidences at the six fresh vertices after their fixed attachments:
# w1 (z3 + old gamma), w2 (z4 + old alpha), w3 (z3' + old delta),
# w4 (z5 + z5') have one each; w5 (z4') and w6 (old beta) have two.
_SLOT_CAPACITY = (1, 1, 1, 1, 2, 2)


class GadgetWiring(NamedTuple):
    """How a growth step fills the eight open incidences at w1..w6."""

    eps_prev: int                            # w index absorbing the inherited epsilon
    eps_new: int                             # w index carrying the fresh epsilon stub
    internal: tuple[tuple[int, int], ...]    # three edges between w's
    alpha_is_z1: bool                        # alpha_i sits on the new copy's z1
    gamma_is_z1: bool                        # gamma_i sits on the second copy's z1

    def to_dict(self) -> dict[str, Any]:
        return {
            "eps_prev": self.eps_prev,
            "eps_new": self.eps_new,
            "internal": [list(p) for p in self.internal],
            "alpha_is_z1": self.alpha_is_z1,
            "gamma_is_z1": self.gamma_is_z1,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "GadgetWiring":
        try:
            return cls(
                int(d["eps_prev"]),
                int(d["eps_new"]),
                tuple((int(a), int(b)) for a, b in d["internal"]),
                bool(d["alpha_is_z1"]),
                bool(d["gamma_is_z1"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise RegistryError(f"malformed wiring record: {exc}") from exc


def _slot_matchings(items: Sequence[int]) -> list[tuple[tuple[int, int], ...]]:
    """Perfect matchings of a multiset of w indices, no pair within one w."""
    out: set[tuple[tuple[int, int], ...]] = set()

    def rec(rem: tuple[int, ...], acc: tuple[tuple[int, int], ...]):
        if not rem:
            out.add(tuple(sorted(acc)))
            return
        first = rem[0]
        for k in range(1, len(rem)):
            if rem[k] == first:
                continue
            pair = (first, rem[k])
            rec(rem[1:k] + rem[k + 1:], acc + (pair,))

    rec(tuple(items), ())
    return sorted(out)


def enumerate_wirings() -> list[GadgetWiring]:
    """Every capacity-respecting wiring, in deterministic order."""
    out = []
    for eps_prev in range(1, 7):
        for eps_new in range(1, 7):
            counts = list(_SLOT_CAPACITY)
            counts[eps_prev - 1] -= 1
            counts[eps_new - 1] -= 1
            if min(counts) < 0:
                continue
            items = tuple(w + 1 for w, c in enumerate(counts) for _ in range(c))
            for matching in _slot_matchings(items):
                for a_z1 in (True, False):
                    for g_z1 in (True, False):
                        out.append(GadgetWiring(eps_prev, eps_new, matching,
                                                a_z1, g_z1))
    return out


# -- the growth step and the Y chain ----------------------------------------


class _StepBuild(NamedTuple):
    graph: SemiGraph
    stubs: dict[str, LinkId]
    renames: dict[LinkId, LinkId]     # previous boundary stub id -> new edge id
    z_links: dict[LinkId, LinkId]     # Z link id -> id in Y_i (first copy)
    zp_links: dict[LinkId, LinkId]    # second copy
    internal: tuple[LinkId, ...]      # the three wiring edges, in wiring order
    eps_edge: LinkId                  # merged epsilon_{i-1} edge
    new_vertices: tuple[VertexId, ...]


def _grow(prev: SemiGraph, prev_stubs: dict[str, LinkId],
          wiring: GadgetWiring, i: int) -> _StepBuild:
    """Attach a fresh Z pair and six new vertices to the previous level."""
    zi = _z_info()
    zbare = zi.graph.without_labels()
    zs = zi.stub

    g, _, lmap_z = prev.disjoint_union(zbare)
    g, _, lmap_p = g.disjoint_union(zbare)
    ztr = {lid: lmap_z[lid] for lid in zbare.link_ids()}
    ptr = {lid: lmap_p[lid] for lid in zbare.link_ids()}
    btr = dict(prev_stubs)
    renames: dict[LinkId, LinkId] = {}
    pads: dict[int, list[LinkId]] = {}
    ws: list[VertexId] = []

    def spawn(windex: int, sources):
        nonlocal g
        res = g.attach_new_vertex([trk[key] for trk, key in sources])
        g = res.graph
        for (trk, key), eid in zip(sources, res.edge_ids):
            if trk is btr:
                renames[trk[key]] = eid
            trk[key] = eid
        pads[windex] = list(res.fresh_semi_ids)
        ws.append(res.vertex)

    spawn(1, [(ztr, zs["z3"]), (btr, "gamma")])
    spawn(2, [(ztr, zs["z4"]), (btr, "alpha")])
    spawn(3, [(ptr, zs["z3"]), (btr, "delta")])
    spawn(4, [(ztr, zs["z5"]), (ptr, zs["z5"])])
    spawn(5, [(ptr, zs["z4"])])
    spawn(6, [(btr, "beta")])

    old_eps = btr["epsilon"]
    g, eps_edge = g.merge(old_eps, pads[wiring.eps_prev].pop(0),
                          label=f"epsilon_{i - 1}")
    renames[old_eps] = eps_edge
    eps_new = pads[wiring.eps_new].pop(0)
    internal = []
    for a, b in wiring.internal:
        g, eid = g.merge(pads[a].pop(0), pads[b].pop(0))
        internal.append(eid)
    if any(pads.values()):
        raise ConstructionError("growth step left open incidences")

    stubs = {
        "alpha": ztr[zs["z1" if wiring.alpha_is_z1 else "z2"]],
        "beta": ztr[zs["z2" if wiring.alpha_is_z1 else "z1"]],
        "gamma": ptr[zs["z1" if wiring.gamma_is_z1 else "z2"]],
        "delta": ptr[zs["z2" if wiring.gamma_is_z1 else "z1"]],
        "epsilon": eps_new,
    }
    g = g.with_labels({stubs[name]: f"{name}_{i}" for name in _STUB_NAMES})
    return _StepBuild(g, stubs, renames, ztr, ptr, tuple(internal),
                      eps_edge, tuple(ws))


class YBuild(NamedTuple):
    graph: SemiGraph
    stubs: dict[str, LinkId]                      # current boundary alpha..epsilon
    vertex_levels: tuple[frozenset[VertexId], ...]  # V(Y_1) .. V(Y_i)
    eps_edges: tuple[LinkId, ...]                 # merged epsilon_1..epsilon_{i-1}
    steps: tuple[_StepBuild, ...]
    v: VertexId


@lru_cache(maxsize=64)
def _y_chain(wiring: GadgetWiring, i: int) -> YBuild:
    if i < 1:
        raise ValueError("Y_i needs i >= 1")
    y1 = _y1_build()
    g, stubs = y1.graph, dict(y1.stubs)
    levels = [frozenset(g.vertices)]
    eps_edges: list[LinkId] = []
    steps: list[_StepBuild] = []
    for level in range(2, i + 1):
        sb = _grow(g, stubs, wiring, level)
        g, stubs = sb.graph, dict(sb.stubs)
        levels.append(frozenset(g.vertices))
        eps_edges.append(sb.eps_edge)
        steps.append(sb)
    return YBuild(g, stubs, tuple(levels), tuple(eps_edges), tuple(steps), y1.v)


# -- witness recipes ---------------------------------------------------------


class _StepTemplates(NamedTuple):
    col_z: dict[LinkId, int]          # by Z link id, for the first copy
    col_zp: dict[LinkId, int]
    col_internal: tuple[int, ...]
    flow_z: dict[LinkId, int]
    flow_zp: dict[LinkId, int]
    flow_internal: tuple[int, ...]


_TEMPLATE_CACHE: dict[GadgetWiring, _StepTemplates] = {}


def _rekey(values: dict[LinkId, int], renames: dict[LinkId, LinkId]) -> dict[LinkId, int]:
    return {renames.get(k, k): v for k, v in values.items()}


def _step_templates(wiring: GadgetWiring) -> _StepTemplates:
    """Per-step witness values, solved once on Y_2 and reused for every level.

    Sound because each growth step repeats the same local constraint
    pattern: the previous boundary always carries (3, 3, 3, 3) with
    epsilon at 1 (coloring) or 0 (flow), and the step's interior sees
    nothing else.  The fast path presets both Z copies with the canonical
    coloring (second copy Kempe-switched) and solves only the three
    wiring edges; if the wiring places epsilon where those values clash,
    the copies are solved freely instead.
    """
    if wiring in _TEMPLATE_CACHE:
        return _TEMPLATE_CACHE[wiring]
    zi = _z_info()
    y2 = _y_chain(wiring, 2)
    sb = y2.steps[0]
    c1, phi1 = _y1_witnesses()
    g = y2.graph
    eps_new = sb.stubs["epsilon"]
    boundary = {sb.stubs[name]: 3 for name in ("alpha", "beta", "gamma", "delta")}

    base_c = _rekey(c1, sb.renames)
    preset = dict(base_c)
    preset[eps_new] = 1
    for orig, cur in sb.z_links.items():
        preset[cur] = zi.c[orig]
    for orig, cur in sb.zp_links.items():
        preset[cur] = zi.c_switched[orig]
    col = complete_coloring(g, preset, conflict_vertices=[y2.v])
    if col is None:
        preset = dict(base_c)
        preset[eps_new] = 1
        preset.update(boundary)
        col = complete_coloring(g, preset, conflict_vertices=[y2.v])
    if col is None:
        raise ConstructionError("growth step admits no one-conflict coloring")
    if any(col[s] != 3 for s in boundary):
        raise ConstructionError("growth step moved the boundary colors")

    base_f = _rekey(phi1, sb.renames)
    preset = dict(base_f)
    preset[eps_new] = 0
    for orig, cur in sb.z_links.items():
        preset[cur] = zi.c[orig]
    for orig, cur in sb.zp_links.items():
        preset[cur] = zi.c_switched[orig]
    phi = complete_flow(g, preset)
    if phi is None:
        preset = dict(base_f)
        preset[eps_new] = 0
        preset.update(boundary)
        phi = complete_flow(g, preset)
    if phi is None:
        raise ConstructionError("growth step admits no two-zero flow")
    if zero_links(phi) != sorted((sb.eps_edge, eps_new)):
        raise ConstructionError("growth step flow has stray zeros")

    tpl = _StepTemplates(
        {orig: col[cur] for orig, cur in sb.z_links.items()},
        {orig: col[cur] for orig, cur in sb.zp_links.items()},
        tuple(col[e] for e in sb.internal),
        {orig: phi[cur] for orig, cur in sb.z_links.items()},
        {orig: phi[cur] for orig, cur in sb.zp_links.items()},
        tuple(phi[e] for e in sb.internal),
    )
    if len(_TEMPLATE_CACHE) > 64:
        _TEMPLATE_CACHE.clear()
    _TEMPLATE_CACHE[wiring] = tpl
    return tpl


def _witnesses_for(yb: YBuild, wiring: GadgetWiring) -> tuple[Coloring, FlowAssignment]:
    """Deterministic one-conflict coloring and all-epsilon-zeros flow of Y_i."""
    col, phi = _y1_witnesses()
    col, phi = dict(col), dict(phi)
    tpl = _step_templates(wiring) if yb.steps else None
    for sb in yb.steps:
        col = _rekey(col, sb.renames)
        phi = _rekey(phi, sb.renames)
        for orig, cur in sb.z_links.items():
            col[cur] = tpl.col_z[orig]
            phi[cur] = tpl.flow_z[orig]
        for orig, cur in sb.zp_links.items():
            col[cur] = tpl.col_zp[orig]
            phi[cur] = tpl.flow_zp[orig]
        for eid, c_val, f_val in zip(sb.internal, tpl.col_internal, tpl.flow_internal):
            col[eid] = c_val
            phi[eid] = f_val
        col[sb.stubs["epsilon"]] = 1
        phi[sb.stubs["epsilon"]] = 0
    g = yb.graph
    expected_zeros = sorted(yb.eps_edges + (yb.stubs["epsilon"],))
    if conflicts(g, col) != [yb.v]:
        raise ConstructionError("Y witness coloring lost its single conflict")
    if not is_flow(g, phi) or zero_links(phi) != expected_zeros:
        raise ConstructionError("Y witness flow failed validation")
    return col, phi


# -- H_n ---------------------------------------------------------------------


class HBuild(NamedTuple):
    graph: SemiGraph
    n: int
    x: VertexId                       # the closing vertex
    v: VertexId                       # interior conflict vertex
    pi: LinkId                        # merge edge alpha_n/gamma_n
    epsilon_edges: tuple[LinkId, ...]
    coloring: Coloring                # conflicts exactly at {v, x}
    flow: FlowAssignment              # zeros exactly on the epsilon edges
    vertex_levels: tuple[frozenset[VertexId], ...]


def _h_build(wiring: GadgetWiring, n: int) -> HBuild:
    yb = _y_chain(wiring, n)
    col, phi = _witnesses_for(yb, wiring)
    g, pi = yb.graph.merge(yb.stubs["alpha"], yb.stubs["gamma"], label="pi")
    res = g.attach_new_vertex(
        [yb.stubs["beta"], yb.stubs["delta"], yb.stubs["epsilon"]])
    g = res.graph
    renames = {
        yb.stubs["alpha"]: pi,
        yb.stubs["gamma"]: pi,
        yb.stubs["beta"]: res.edge_ids[0],
        yb.stubs["delta"]: res.edge_ids[1],
        yb.stubs["epsilon"]: res.edge_ids[2],
    }
    col = _rekey(col, renames)
    phi = _rekey(phi, renames)
    eps_edges = yb.eps_edges + (res.edge_ids[2],)

    if not (g.is_graph() and g.is_cubic() and g.is_simple() and g.is_connected()):
        raise ConstructionError(f"H_{n} is not a connected simple cubic graph")
    if g.num_vertices != 40 * n + 2:
        raise ConstructionError(f"H_{n} has order {g.num_vertices}")
    if conflicts(g, col) != sorted((yb.v, res.vertex)):
        raise ConstructionError(f"H_{n} witness coloring has wrong conflicts")
    if not is_flow(g, phi) or zero_links(phi) != sorted(eps_edges):
        raise ConstructionError(f"H_{n} witness flow failed validation")
    return HBuild(g, n, res.vertex, yb.v, pi, eps_edges, col, phi,
                  yb.vertex_levels)


# -- J and the star product ---------------------------------------------------


class JBuild(NamedTuple):
    graph: SemiGraph
    v2: VertexId
    e2: LinkId


def _k_part(wiring: GadgetWiring) -> SemiGraph:
    """H_2 with Y_1's vertices cut away; the five crossing-edge stubs keep
    the boundary names alpha_1..epsilon_1 and everything else is unlabeled."""
    hb = _h_build(wiring, 2)
    outer = hb.graph.vertices - hb.vertex_levels[0]
    k, stub_map = hb.graph.induced(outer)
    if len(stub_map) != 5:
        raise ConstructionError("Y_1 boundary is not a five-edge cut in H_2")
    prov = {}
    for eid, sid in stub_map.items():
        lab = hb.graph.label_of(eid)
        if lab is None:
            raise ConstructionError("unlabeled crossing edge at the Y_1 boundary")
        prov[sid] = lab
    return k.without_labels().with_labels(prov)


def _j_split_candidates() -> list[tuple[str, str]]:
    names = [f"{name}_1" for name in _STUB_NAMES]
    return [tuple(pair) for pair in itertools.combinations(sorted(names), 2)]


def _build_J_with(wiring: GadgetWiring, split: tuple[str, str]) -> JBuild:
    """Close K's five stubs: two merge into the marked edge e2, the other
    three meet the fresh vertex v2.  Raises when the split is degenerate."""
    k = _k_part(wiring)
    a, b = split
    g, e2 = k.merge(k.link_by_label(a).id, k.link_by_label(b).id)
    rest = [k.link_by_label(name).id
            for name in sorted(k.labels.values()) if name not in split]
    res = g.attach_new_vertex(rest)
    g = res.graph.without_labels().with_labels({e2: "e2"})
    return JBuild(g, res.vertex, e2)


def _j_roundtrip_ok(wiring: GadgetWiring, jb: JBuild) -> bool:
    """Undo J's closing surgery and compare against K, labels included.

    Stub identities are recovered positionally: each reopened stub must sit
    at the vertex where K roots the like-named stub.
    """
    k = _k_part(wiring)
    g, (s1, s2) = jb.graph.trim(jb.e2)
    g, nbr_stubs = g.remove_vertex(jb.v2)
    hosts: dict[VertexId, list[LinkId]] = {}
    for sid in (s1, s2):
        hosts.setdefault(g.link(sid).u, []).append(sid)
    for sids in nbr_stubs.values():
        for sid in sids:
            hosts.setdefault(g.link(sid).u, []).append(sid)
    assign: dict[LinkId, str] = {}
    for name in sorted(k.labels.values()):
        root = k.link_by_label(name).u
        if not hosts.get(root):
            return False
        assign[hosts[root].pop()] = name
    if any(hosts.values()):
        return False
    return g.without_labels().with_labels(assign).same_structure(k)


def _graph_part(g: SemiGraph) -> SemiGraph:
    """The underlying graph: semi-edges dropped, labels and ids discarded."""
    verts = sorted(g.vertices)
    edges = [lk.sorted_endpoints() for lk in g.links() if lk.is_edge]
    return from_data(verts, edges, [])


def _residue(g: SemiGraph, v: VertexId, e: LinkId) -> SemiGraph:
    """g minus vertex v minus edge e, with the leftover stubs deleted."""
    gg, _ = g.remove_vertex(v)
    gg, _ = gg.trim(e)
    return _graph_part(gg)


def _side_match(G: SemiGraph, X: frozenset[VertexId],
                a_part: SemiGraph, b_part: SemiGraph) -> bool:
    inner, _ = G.induced(X)
    outer, _ = G.induced(G.vertices - X)
    return (is_isomorphic(_graph_part(inner), a_part)[0]
            and is_isomorphic(_graph_part(outer), b_part)[0])


def star_membership(G: SemiGraph, G1: SemiGraph, v1: VertexId, e1: LinkId,
                    G2: SemiGraph, v2: VertexId, e2: LinkId, *,
                    split_hint: Iterable[VertexId] | None = None,
                    deadline: float | None = None,
                    ) -> tuple[bool, tuple[LinkId, ...] | None]:
    """Is G a join of G1 - v1 - e1 and G2 - v2 - e2 by five edges?

    Returns (verdict, connecting edge ids).  A correct ``split_hint``
    (the G1-side vertex set) is verified directly; otherwise every
    five-edge cut of G is enumerated and both sides are tested up to
    isomorphism, so a False verdict is exhaustive.
    """
    for gi, vi, ei in ((G1, v1, e1), (G2, v2, e2)):
        if not (gi.is_graph() and gi.is_cubic()):
            raise ValueError("star factors must be cubic graphs")
        if vi in gi.link(ei).endpoints():
            raise ValueError("marked edge is incident to the marked vertex")
    if not (G.is_graph() and G.is_cubic()):
        return False, None
    a_part = _residue(G1, v1, e1)
    b_part = _residue(G2, v2, e2)
    na, nb = a_part.num_vertices, b_part.num_vertices
    if G.num_vertices != na + nb:
        return False, None

    if split_hint is not None:
        X = frozenset(split_hint)
        if X and X < G.vertices:
            cut = G.boundary(X).boundary
            if len(cut) == 5 and len(X) == na and _side_match(G, X, a_part, b_part):
                return True, tuple(sorted(cut))

    flat = flatten(G)
    buckets = kernels.small_disconnecting_sets(
        flat.n, flat.eu, flat.ev, 5, deadline=deadline, expand_supersets=True)
    seen: set[frozenset[VertexId]] = set()
    for combo in buckets[5] if len(buckets) > 5 else ():
        ids = [flat.lids[i] for i in combo]
        comps = _components_without(G, ids)
        if len(comps) < 2:
            continue
        sizes = [len(c) for c in comps]
        for mask in range(1, 1 << (len(comps) - 1)):
            chosen = [c for j, c in enumerate(comps) if (mask >> j) & 1]
            if sum(len(c) for c in chosen) != na:
                continue
            X = frozenset().union(*chosen)
            if X in seen:
                continue
            seen.add(X)
            cut = G.boundary(X).boundary
            if len(cut) != 5:
                continue
            if _side_match(G, X, a_part, b_part):
                return True, tuple(sorted(cut))
    return False, None


def _components_without(g: SemiGraph, removed: Iterable[LinkId]) -> list[frozenset[VertexId]]:
    dead = set(removed)
    seen: set[VertexId] = set()
    comps = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for lid in g.incident(u):
                lk = g.link(lid)
                if lid in dead or lk.is_semi:
                    continue
                w = lk.other(u)
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


# -- wiring search -----------------------------------------------------------


class BatteryReject(Exception):
    """Internal: a candidate wiring failed one battery stage."""


def _require(ok: bool, stage: str):
    if not ok:
        raise BatteryReject(stage)


def _battery(wiring: GadgetWiring, *, heavy_seconds: float = 300.0,
             ) -> tuple[str, ...] | None:
    """Run a candidate wiring through the acceptance battery.

    Returns the passing J split as a tuple, or raises BatteryReject with
    the failed stage's name.  Checks are ordered cheapest first; the
    minimum-zero flow search dominates the cost (minutes), so it runs
    last, only for wirings that survived everything else.  The deadlined
    stages treat a timeout as a rejection.
    """
    try:
        y2 = _y_chain(wiring, 2)
    except SemiGraphError:
        raise BatteryReject("step-surgery") from None
    g2 = y2.graph
    _require(g2.num_vertices == 81 and g2.num_semi_edges == 5, "y2-shape")
    _require(g2.is_cubic() and g2.is_simple() and g2.is_connected(), "y2-structure")

    try:
        h2 = _h_build(wiring, 2)
    except (SemiGraphError, ConstructionError):
        raise BatteryReject("witness-recipes") from None
    _require(h2.graph.girth() == 5, "h2-girth")
    _require(h2.graph.distance(h2.x, h2.pi, to_link=True) >= 3, "x-pi-distance")

    deadline = time.monotonic() + heavy_seconds
    try:
        _require(cyclic_connectivity_at_least(h2.graph, 5, deadline=deadline).satisfied,
                 "h2-cyclic-connectivity")
    except kernels.KernelTimeout:
        raise BatteryReject("h2-cut-timeout") from None

    h1 = _h_build(wiring, 1)
    split_found = None
    for split in _j_split_candidates():
        try:
            jb = _build_J_with(wiring, split)
        except SemiGraphError:
            continue
        if not (jb.graph.is_graph() and jb.graph.is_cubic() and jb.graph.is_simple()):
            continue
        if jb.graph.distance(jb.v2, jb.e2, to_link=True) != 2:
            continue
        if not _j_roundtrip_ok(wiring, jb):
            continue
        if not cyclic_connectivity_at_least(jb.graph, 5).satisfied:
            continue
        verdict, _ = star_membership(
            h2.graph, h1.graph, h1.x, h1.pi, jb.graph, jb.v2, jb.e2,
            split_hint=h2.vertex_levels[0])
        if verdict:
            split_found = split
            break
    if split_found is None:
        raise BatteryReject("no-j-split")

    try:
        _require(find_flow(y2.graph, 1, deadline=deadline) is None,
                 "y2-flow-lower-bound")
    except kernels.KernelTimeout:
        raise BatteryReject("flow-timeout") from None
    return split_found


def derive_registry(out_path=None, *, log: Callable[[str], None] | None = None,
                    heavy_seconds: float = 300.0) -> Registry:
    """Search all wirings, freeze the first one that passes the battery.

    Wiring-independent facts are established first: the canonical Z
    coloring exists, Y_1 admits the one-conflict witness, and Y_1 has no
    proper coloring at all (the lower bound every later resistance claim
    leans on).
    """
    emit = log or (lambda msg: print(msg, file=sys.stderr))
    _z_info()
    _y1_witnesses()
    if find_coloring(_y1_build().graph) is not None:
        raise ConstructionError("Y_1 is properly colorable; construction is wrong")
    emit("base facts: Y_1 uncolorable, canonical Z coloring fixed")

    stats: dict[str, int] = {}
    candidates = enumerate_wirings()
    emit(f"searching {len(candidates)} candidate wirings")
    for idx, wiring in enumerate(candidates):
        try:
            split = _battery(wiring, heavy_seconds=heavy_seconds)
        except BatteryReject as rej:
            stage = rej.args[0]
            stats[stage] = stats.get(stage, 0) + 1
            if (idx + 1) % 200 == 0:
                emit(f"  {idx + 1}/{len(candidates)} tried, rejects: {stats}")
            continue
        emit(f"wiring {idx} accepted with split {split}; rejects so far: {stats}")
        jb = _build_J_with(wiring, split)
        digests = {
            "M": digest(build_M()),
            "N": digest(build_N()),
            "Z": digest(build_Z()),
            "Y_1": digest(_y1_build().graph),
            "J": digest(jb.graph),
        }
        reg = Registry(REGISTRY_VERSION, wiring.to_dict(), split, digests)
        path = save_registry(reg, out_path)
        emit(f"registry frozen at {path}")
        return reg
    raise ConstructionError(f"no wiring passed the battery; rejects: {stats}")


# -- frozen public builders ----------------------------------------------------


@lru_cache(maxsize=1)
def _frozen_state() -> tuple[GadgetWiring, tuple[str, str]]:
    reg = load_registry()
    wiring = GadgetWiring.from_dict(reg.wiring)
    split = tuple(reg.j_split)
    built = {
        "M": build_M(),
        "N": build_N(),
        "Z": build_Z(),
        "Y_1": _y1_build().graph,
        "J": _build_J_with(wiring, split).graph,
    }
    if set(reg.digests) != set(built):
        raise RegistryError("registry digest set does not name M, N, Z, Y_1, J")
    for name, g in sorted(built.items()):
        got = digest(g)
        if got != reg.digests[name]:
            raise RegistryError(
                f"registry digest mismatch for {name}: construction drifted")
    return wiring, split


def frozen_wiring() -> GadgetWiring:
    return _frozen_state()[0]


def build_Y(i: int) -> SemiGraph:
    """The semi-graph Y_i under the frozen wiring (order 40i + 1, 5 stubs)."""
    return _y_chain(frozen_wiring(), i).graph


def y_meta(i: int) -> YBuild:
    return _y_chain(frozen_wiring(), i)


def witness_coloring_Y(i: int) -> tuple[Coloring, VertexId]:
    """One-conflict coloring of Y_i plus its conflict vertex."""
    yb = _y_chain(frozen_wiring(), i)
    col, _ = _witnesses_for(yb, frozen_wiring())
    return col, yb.v


def witness_flow_Y(i: int) -> FlowAssignment:
    """Flow of Y_i whose zeros are exactly the i epsilon links."""
    yb = _y_chain(frozen_wiring(), i)
    _, phi = _witnesses_for(yb, frozen_wiring())
    return phi


@lru_cache(maxsize=16)
def build_H_meta(n: int) -> HBuild:
    """H_n plus its landmarks and validated witness coloring and flow."""
    return _h_build(frozen_wiring(), n)


def build_H(n: int) -> SemiGraph:
    """The snark candidate H_n under the frozen wiring (order 40n + 2)."""
    return build_H_meta(n).graph


@lru_cache(maxsize=1)
def build_J_meta() -> JBuild:
    wiring, split = _frozen_state()
    jb = _build_J_with(wiring, split)
    if not _j_roundtrip_ok(wiring, jb):
        raise ConstructionError("frozen J split no longer round-trips")
    return jb


def build_J() -> SemiGraph:
    """The junction graph J (order 42, cubic, marked edge e2, vertex v2)."""
    return build_J_meta().graph


def j_surgery_roundtrip(jb: JBuild) -> bool:
    """Does undoing the closing surgery of ``jb`` reproduce the junction core?

    True for the shipped J; False for any rewired imitation whose trim and
    vertex removal no longer match the five labeled stubs of the core.
    """
    return _j_roundtrip_ok(frozen_wiring(), jb)
