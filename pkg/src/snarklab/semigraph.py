"""Semi-graphs: finite multigraphs whose links are edges or semi-edges.

A link is either an edge between two distinct vertices or a semi-edge (a
"stub") rooted at a single vertex.  Parallel edges and parallel semi-edges are
allowed, self-loops are not.  The degree of a vertex counts incident edges and
semi-edges alike, so the handshake identity reads

    sum(deg) == 2 * #edges + #semi-edges.

Values are immutable: every surgery operation returns a new ``SemiGraph``.
Links carry stable integer identifiers that survive surgery of other links,
plus an optional injective label map used by the gadget builders (``e1``,
``z5``, ``eps_3``, ...).
"""
from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Iterator, Mapping, NamedTuple

VertexId = int
LinkId = int


class SemiGraphError(ValueError):
    """Raised for structurally invalid semi-graphs or invalid surgery."""


class Link(NamedTuple):
    id: LinkId
    u: VertexId
    v: VertexId | None  # None marks a semi-edge rooted at u

    @property
    def is_edge(self) -> bool:
        return self.v is not None

    @property
    def is_semi(self) -> bool:
        return self.v is None

    def endpoints(self) -> tuple[VertexId, ...]:
        return (self.u,) if self.v is None else (self.u, self.v)

    def other(self, w: VertexId) -> VertexId | None:
        """The endpoint opposite ``w`` (None when this is a semi-edge)."""
        if self.v is None:
            if w != self.u:
                raise SemiGraphError(f"vertex {w} not on link {self.id}")
            return None
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise SemiGraphError(f"vertex {w} not on link {self.id}")

    def sorted_endpoints(self) -> tuple[VertexId, ...]:
        return (self.u,) if self.v is None else tuple(sorted((self.u, self.v)))


class CutSpec(NamedTuple):
    """A vertex set together with its boundary ``links``.

    The boundary contains every edge with exactly one endvertex in ``X`` and
    every semi-edge rooted in ``X``.
    """

    X: frozenset[VertexId]
    boundary: frozenset[LinkId]


class AttachResult(NamedTuple):
    graph: "SemiGraph"
    vertex: VertexId
    edge_ids: tuple[LinkId, ...]   # edges created from the joined stubs, in call order
    fresh_semi_ids: tuple[LinkId, ...]  # padding stubs at the new vertex


class SemiGraph:
    """Immutable semi-graph value.

    Construction validates endpoints, the no-self-loop rule and label
    injectivity.  All mutating-looking methods return new instances.
    """

    __slots__ = ("_vertices", "_links", "_labels", "_adj", "_next_id")

    def __init__(
        self,
        vertices: Iterable[VertexId],
        links: Iterable[Link],
        labels: Mapping[LinkId, str] | None = None,
        _next_id: int | None = None,
    ):
        vset = frozenset(int(v) for v in vertices)
        link_map: dict[LinkId, Link] = {}
        adj: dict[VertexId, list[LinkId]] = {v: [] for v in vset}
        for lk in links:
            if not isinstance(lk, Link):
                lk = Link(*lk)
            if lk.id in link_map:
                raise SemiGraphError(f"duplicate link id {lk.id}")
            if lk.u not in vset:
                raise SemiGraphError(f"link {lk.id}: unknown vertex {lk.u}")
            if lk.v is not None:
                if lk.v not in vset:
                    raise SemiGraphError(f"link {lk.id}: unknown vertex {lk.v}")
                if lk.u == lk.v:
                    raise SemiGraphError(f"link {lk.id}: self-loops are not allowed")
                adj[lk.v].append(lk.id)
            adj[lk.u].append(lk.id)
            link_map[lk.id] = lk
        lab: dict[LinkId, str] = {}
        if labels:
            for lid, name in labels.items():
                if lid not in link_map:
                    raise SemiGraphError(f"label {name!r} on unknown link {lid}")
                lab[lid] = str(name)
            if len(set(lab.values())) != len(lab):
                raise SemiGraphError("labels must be injective")
        self._vertices = vset
        self._links = link_map
        self._labels = lab
        self._adj = {v: tuple(sorted(ids)) for v, ids in adj.items()}
        top = max(link_map) + 1 if link_map else 0
        self._next_id = top if _next_id is None else max(_next_id, top)

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> frozenset[VertexId]:
        return self._vertices

    @property
    def labels(self) -> Mapping[LinkId, str]:
        return dict(self._labels)

    def links(self) -> Iterator[Link]:
        for lid in sorted(self._links):
            yield self._links[lid]

    def link(self, lid: LinkId) -> Link:
        try:
            return self._links[lid]
        except KeyError:
            raise SemiGraphError(f"no link with id {lid}") from None

    def has_link(self, lid: LinkId) -> bool:
        return lid in self._links

    def link_ids(self) -> list[LinkId]:
        return sorted(self._links)

    def label_of(self, lid: LinkId) -> str | None:
        return self._labels.get(lid)

    def link_by_label(self, name: str) -> Link:
        for lid, lab in self._labels.items():
            if lab == name:
                return self._links[lid]
        raise SemiGraphError(f"no link labeled {name!r}")

    def incident(self, v: VertexId) -> tuple[LinkId, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise SemiGraphError(f"no vertex {v}") from None

    def degree(self, v: VertexId) -> int:
        return len(self.incident(v))

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return sum(1 for lk in self._links.values() if lk.is_edge)

    @property
    def num_semi_edges(self) -> int:
        return sum(1 for lk in self._links.values() if lk.is_semi)

    def semi_edge_ids(self) -> list[LinkId]:
        return sorted(lid for lid, lk in self._links.items() if lk.is_semi)

    def edge_ids(self) -> list[LinkId]:
        return sorted(lid for lid, lk in self._links.items() if lk.is_edge)

    def is_cubic(self) -> bool:
        return all(len(ids) == 3 for ids in self._adj.values())

    def is_graph(self) -> bool:
        """True when there are no semi-edges."""
        return self.num_semi_edges == 0

    def is_simple(self) -> bool:
        """No parallel edges (self-loops are impossible by construction)."""
        seen = set()
        for lk in self._links.values():
            if lk.is_edge:
                key = lk.sorted_endpoints()
                if key in seen:
                    return False
                seen.add(key)
        return True

    def multiplicity(self, u: VertexId, v: VertexId) -> int:
        if u == v:
            return 0
        return sum(
            1 for lid in self._adj.get(u, ()) if self._links[lid].other(u) == v
        )

    def canonical_link_order(self) -> list[Link]:
        """Deterministic ordering: (sorted endpoints, label, insertion id)."""
        return sorted(
            self._links.values(),
            key=lambda lk: (lk.sorted_endpoints(), self._labels.get(lk.id, ""), lk.id),
        )

    # -- label surgery -----------------------------------------------------

    def with_labels(self, new: Mapping[LinkId, str | None]) -> "SemiGraph":
        """Return a copy with labels added/replaced (None removes a label)."""
        lab = dict(self._labels)
        for lid, name in new.items():
            if lid not in self._links:
                raise SemiGraphError(f"no link with id {lid}")
            if name is None:
                lab.pop(lid, None)
            else:
                lab[lid] = str(name)
        return SemiGraph(self._vertices, self._links.values(), lab, self._next_id)

    def without_labels(self) -> "SemiGraph":
        return SemiGraph(self._vertices, self._links.values(), {}, self._next_id)

    # -- surgery -----------------------------------------------------------

    def trim(self, e: LinkId) -> tuple["SemiGraph", tuple[LinkId, LinkId]]:
        """Replace edge ``e = uv`` by two semi-edges (u) and (v).

        Returns the new graph and the fresh stub ids ``(at_u, at_v)``.
        """
        lk = self.link(e)
        if not lk.is_edge:
            raise SemiGraphError(f"trim: link {e} is a semi-edge")
        links = [l for l in self._links.values() if l.id != e]
        s1 = Link(self._next_id, lk.u, None)
        s2 = Link(self._next_id + 1, lk.v, None)
        links += [s1, s2]
        lab = {k: v for k, v in self._labels.items() if k != e}
        g = SemiGraph(self._vertices, links, lab, self._next_id + 2)
        return g, (s1.id, s2.id)

    def merge(
        self, s1: LinkId, s2: LinkId, label: str | None = None
    ) -> tuple["SemiGraph", LinkId]:
        """Merge two semi-edges into a single edge joining their endvertices.

        Merging two stubs of the same vertex would create a self-loop and is
        an error.
        """
        a, b = self.link(s1), self.link(s2)
        if s1 == s2:
            raise SemiGraphError("merge: need two distinct semi-edges")
        if not (a.is_semi and b.is_semi):
            raise SemiGraphError("merge: both links must be semi-edges")
        if a.u == b.u:
            raise SemiGraphError(
                f"merge: stubs {s1},{s2} share endvertex {a.u} (self-loop)"
            )
        links = [l for l in self._links.values() if l.id not in (s1, s2)]
        new = Link(self._next_id, a.u, b.u)
        links.append(new)
        lab = {k: v for k, v in self._labels.items() if k not in (s1, s2)}
        if label is not None:
            lab[new.id] = label
        g = SemiGraph(self._vertices, links, lab, self._next_id + 1)
        return g, new.id

    def attach_new_vertex(
        self, semis: Iterable[LinkId], pad_labels: Iterable[str] | None = None
    ) -> AttachResult:
        """Join 1..3 semi-edges to a fresh vertex, padding it to degree 3.

        Each joined stub ``(u)`` becomes an edge ``u w`` (keeping the stub's
        label, if any); missing incidences at the new vertex ``w`` become
        fresh unlabeled stubs unless ``pad_labels`` supplies names.
        """
        sids = list(semis)
        if not 1 <= len(sids) <= 3:
            raise SemiGraphError("attach_new_vertex: need 1..3 semi-edges")
        if len(set(sids)) != len(sids):
            raise SemiGraphError("attach_new_vertex: duplicate semi-edge ids")
        stubs = [self.link(s) for s in sids]
        for lk in stubs:
            if not lk.is_semi:
                raise SemiGraphError(f"attach_new_vertex: link {lk.id} is an edge")
        w = max(self._vertices) + 1 if self._vertices else 0
        links = [l for l in self._links.values() if l.id not in set(sids)]
        lab = {k: v for k, v in self._labels.items() if k not in set(sids)}
        nid = self._next_id
        edge_ids = []
        for lk in stubs:
            links.append(Link(nid, lk.u, w))
            if lk.id in self._labels:
                lab[nid] = self._labels[lk.id]
            edge_ids.append(nid)
            nid += 1
        pads = list(pad_labels) if pad_labels is not None else []
        fresh = []
        for i in range(3 - len(sids)):
            links.append(Link(nid, w, None))
            if i < len(pads):
                lab[nid] = pads[i]
            fresh.append(nid)
            nid += 1
        g = SemiGraph(self._vertices | {w}, links, lab, nid)
        return AttachResult(g, w, tuple(edge_ids), tuple(fresh))

    def remove_vertex(
        self, v: VertexId
    ) -> tuple["SemiGraph", dict[VertexId, tuple[LinkId, ...]]]:
        """Delete ``v``; edges to neighbors become stubs at the neighbors.

        Semi-edges rooted at ``v`` are deleted outright.  Returns the new
        graph plus ``{neighbor: fresh stub ids}``.
        """
        if v not in self._vertices:
            raise SemiGraphError(f"no vertex {v}")
        dead = set(self._adj[v])
        links = [l for l in self._links.values() if l.id not in dead]
        lab = {k: x for k, x in self._labels.items() if k not in dead}
        nid = self._next_id
        stubs: dict[VertexId, list[LinkId]] = {}
        for lid in sorted(dead):
            lk = self._links[lid]
            if lk.is_semi:
                continue
            nbr = lk.other(v)
            links.append(Link(nid, nbr, None))
            stubs.setdefault(nbr, []).append(nid)
            nid += 1
        g = SemiGraph(self._vertices - {v}, links, lab, nid)
        return g, {u: tuple(ids) for u, ids in stubs.items()}

    def induced(
        self, X: Iterable[VertexId]
    ) -> tuple["SemiGraph", dict[LinkId, LinkId]]:
        """Semi-graph induced by ``X``: crossing edges become stubs in X.

        Equivalent to removing every vertex outside ``X`` one by one.
        Returns the new graph plus ``{crossing edge id: fresh stub id}``.
        """
        keep = frozenset(X)
        if not keep <= self._vertices:
            raise SemiGraphError("induced: X is not a subset of the vertices")
        links = []
        lab = {}
        nid = self._next_id
        stub_map: dict[LinkId, LinkId] = {}
        for lk in (self._links[i] for i in sorted(self._links)):
            ends = lk.endpoints()
            inside = [w for w in ends if w in keep]
            if len(inside) == len(ends):
                links.append(lk)
                if lk.id in self._labels:
                    lab[lk.id] = self._labels[lk.id]
            elif lk.is_edge and len(inside) == 1:
                links.append(Link(nid, inside[0], None))
                stub_map[lk.id] = nid
                nid += 1
        return SemiGraph(keep, links, lab, nid), stub_map

    def disjoint_union(
        self, other: "SemiGraph"
    ) -> tuple["SemiGraph", dict[VertexId, VertexId], dict[LinkId, LinkId]]:
        """Union with fresh ids for ``other``; self's ids are preserved.

        Returns (graph, vertex map for other, link map for other).
        """
        voff = max(self._vertices) + 1 if self._vertices else 0
        vmap = {v: voff + i for i, v in enumerate(sorted(other._vertices))}
        lmap = {}
        links = list(self._links.values())
        lab = dict(self._labels)
        nid = self._next_id
        for lk in (other._links[i] for i in sorted(other._links)):
            nv = None if lk.v is None else vmap[lk.v]
            links.append(Link(nid, vmap[lk.u], nv))
            lmap[lk.id] = nid
            if lk.id in other._labels:
                name = other._labels[lk.id]
                if name in lab.values():
                    raise SemiGraphError(
                        f"disjoint_union: label {name!r} present on both sides"
                    )
                lab[nid] = name
            nid += 1
        g = SemiGraph(
            self._vertices | set(vmap.values()), links, lab, nid
        )
        return g, vmap, lmap

    # -- metrics and cuts ----------------------------------------------------

    def distance(self, a: VertexId, b: VertexId | LinkId, *, to_link: bool = False):
        """Shortest-path distance in edge count; semi-edges are not traversable.

        ``b`` is a vertex by default; pass ``to_link=True`` to measure the
        distance from vertex ``a`` to the link with id ``b`` (minimum over the
        link's endvertices).  Returns ``math.inf`` when unreachable.
        """
        if a not in self._vertices:
            raise SemiGraphError(f"no vertex {a}")
        if to_link:
            targets = set(self.link(b).endpoints())
        else:
            if b not in self._vertices:
                raise SemiGraphError(f"no vertex {b}")
            targets = {b}
        if a in targets:
            return 0
        dist = {a: 0}
        q = deque([a])
        while q:
            x = q.popleft()
            for lid in self._adj[x]:
                lk = self._links[lid]
                if lk.is_semi:
                    continue
                y = lk.other(x)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if y in targets:
                        return dist[y]
                    q.append(y)
        return math.inf

    def boundary(self, X: Iterable[VertexId]) -> CutSpec:
        xs = frozenset(X)
        if not xs <= self._vertices:
            raise SemiGraphError("boundary: X is not a subset of the vertices")
        out = []
        for lk in self._links.values():
            if lk.is_semi:
                if lk.u in xs:
                    out.append(lk.id)
            else:
                if (lk.u in xs) != (lk.v in xs):
                    out.append(lk.id)
        return CutSpec(xs, frozenset(out))

    def components(self) -> list[frozenset[VertexId]]:
        """Connected components; semi-edges connect nothing."""
        seen: set[VertexId] = set()
        comps = []
        for v in sorted(self._vertices):
            if v in seen:
                continue
            comp = {v}
            q = deque([v])
            seen.add(v)
            while q:
                x = q.popleft()
                for lid in self._adj[x]:
                    lk = self._links[lid]
                    if lk.is_semi:
                        continue
                    y = lk.other(x)
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        q.append(y)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def contains_cycle(self, X: Iterable[VertexId] | None = None) -> bool:
        """Does the sub-semi-graph induced by ``X`` (default: all) have a cycle?

        A parallel pair counts as a 2-cycle.  Decided by edge count versus
        forest size: a subgraph on n vertices with c components is acyclic
        iff it has exactly n - c edges.
        """
        xs = self._vertices if X is None else frozenset(X)
        if not xs <= self._vertices:
            raise SemiGraphError("contains_cycle: X is not a subset of the vertices")
        # count inner edges and components of the induced subgraph
        inner = sum(
            1
            for lk in self._links.values()
            if lk.is_edge and lk.u in xs and lk.v in xs
        )
        seen: set[VertexId] = set()
        ncomp = 0
        for v in xs:
            if v in seen:
                continue
            ncomp += 1
            q = deque([v])
            seen.add(v)
            while q:
                x = q.popleft()
                for lid in self._adj[x]:
                    lk = self._links[lid]
                    if lk.is_semi:
                        continue
                    y = lk.other(x)
                    if y in xs and y not in seen:
                        seen.add(y)
                        q.append(y)
        return inner > len(xs) - ncomp

    def girth(self):
        """Length of a shortest cycle, or ``math.inf`` for a forest.

        Parallel edges give girth 2.  BFS from every vertex with parent-link
        tracking, standard shortest-cycle bound.
        """
        best = math.inf
        for m in self._links.values():
            if m.is_edge and self.multiplicity(m.u, m.v) >= 2:
                return 2
        for s in sorted(self._vertices):
            dist = {s: 0}
            par: dict[VertexId, LinkId] = {}
            q = deque([s])
            while q:
                x = q.popleft()
                if 2 * dist[x] >= best - 1:
                    continue
                for lid in self._adj[x]:
                    lk = self._links[lid]
                    if lk.is_semi or lid == par.get(x):
                        continue
                    y = lk.other(x)
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        par[y] = lid
                        q.append(y)
                    else:
                        best = min(best, dist[x] + dist[y] + 1)
        return best

    def girth_cycle(self) -> list[VertexId] | None:
        """Vertices of one shortest cycle (None for a forest)."""
        g = self.girth()
        if g is math.inf:
            return None
        for s in sorted(self._vertices):
            # BFS tree with parents; first non-tree link closing length g wins
            dist = {s: 0}
            parv: dict[VertexId, VertexId] = {}
            parl: dict[VertexId, LinkId] = {}
            q = deque([s])
            order = []
            while q:
                x = q.popleft()
                order.append(x)
                for lid in self._adj[x]:
                    lk = self._links[lid]
                    if lk.is_semi:
                        continue
                    y = lk.other(x)
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parv[y] = x
                        parl[y] = lid
                        q.append(y)
            for x in order:
                for lid in self._adj[x]:
                    lk = self._links[lid]
                    if lk.is_semi or lid == parl.get(x):
                        continue
                    y = lk.other(x)
                    if y in dist and lid != parl.get(y):
                        if dist[x] + dist[y] + 1 == g:
                            up_x = []
                            w = x
                            while w != s:
                                up_x.append(w)
                                w = parv[w]
                            up_x.append(s)
                            up_y = []
                            w = y
                            while w != s:
                                up_y.append(w)
                                w = parv[w]
                            up_y.append(s)
                            # join at the lowest common ancestor
                            sx, sy = set(up_x), set(up_y)
                            lca = next(w for w in up_x if w in sy)
                            path_x = up_x[: up_x.index(lca) + 1]
                            path_y = up_y[: up_y.index(lca)]
                            cyc = path_x + list(reversed(path_y))
                            if len(cyc) == g:
                                return cyc
        return None

    # -- structural equality ----------------------------------------------

    def structure_key(self, include_labels: bool = True):
        """Canonical hashable key: vertex set + link multiset (ids ignored)."""
        items = sorted(
            (lk.sorted_endpoints(), self._labels.get(lk.id, "") if include_labels else "")
            for lk in self._links.values()
        )
        return (tuple(sorted(self._vertices)), tuple(items))

    def same_structure(self, other: "SemiGraph", include_labels: bool = True) -> bool:
        """Equal up to link ids: same vertices, same (endpoints, label) multiset."""
        return self.structure_key(include_labels) == other.structure_key(include_labels)

    def __repr__(self) -> str:
        return (
            f"SemiGraph(n={self.num_vertices}, edges={self.num_edges}, "
            f"semi_edges={self.num_semi_edges})"
        )


def from_data(
    vertices: Iterable[VertexId],
    edges: Iterable[tuple] = (),
    semi_edges: Iterable = (),
    labels_by_index: bool = True,
) -> SemiGraph:
    """Convenience builder used by tests and importers.

    ``edges`` items are ``(u, v)`` or ``(u, v, label)``; ``semi_edges`` items
    are ``u`` or ``(u, label)``.  Link ids are assigned in listing order,
    edges first.
    """
    links = []
    labels = {}
    nid = 0
    for item in edges:
        if len(item) == 3:
            u, v, lab = item
            labels[nid] = lab
        else:
            u, v = item
        links.append(Link(nid, u, v))
        nid += 1
    for item in semi_edges:
        if isinstance(item, (tuple, list)):
            u = item[0]
            if len(item) > 1 and item[1] is not None:
                labels[nid] = item[1]
        else:
            u = item
        links.append(Link(nid, u, None))
        nid += 1
    return SemiGraph(vertices, links, labels)
