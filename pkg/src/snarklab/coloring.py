"""Proper 3-edge-colorings of cubic semi-graphs.

A coloring is a plain dict mapping link id to a color in {1, 2, 3}.
Semi-edges are colored like edges; they see one endpoint.  Properness is
always judged per vertex: no two incident links may share a color.
"""
from __future__ import annotations

import time
from itertools import combinations, permutations, product
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import kernels
from ._flat import active_mask, flatten
from .semigraph import LinkId, SemiGraph, VertexId

Coloring = dict[int, int]

COLORS = (1, 2, 3)


def color_counts(g: SemiGraph, coloring: Mapping[LinkId, int], v: VertexId) -> dict[int, int]:
    counts: dict[int, int] = {}
    for lid in g.incident(v):
        c = coloring.get(lid)
        if c is not None:
            counts[c] = counts.get(c, 0) + 1
    return counts


def conflict_degree(g: SemiGraph, coloring: Mapping[LinkId, int], v: VertexId) -> int:
    """Number of repeated-color pairs at v, counting a triple as 2."""
    return sum(c - 1 for c in color_counts(g, coloring, v).values() if c > 1)


def conflicts(g: SemiGraph, coloring: Mapping[LinkId, int]) -> list[VertexId]:
    """Vertices where two colored incident links share a color (sorted)."""
    return sorted(v for v in g.vertices if conflict_degree(g, coloring, v) > 0)


def is_proper(g: SemiGraph, coloring: Mapping[LinkId, int], *, partial: bool = False) -> bool:
    """True if no vertex sees a repeated color; with partial=False also
    requires every link to be colored with a value in {1, 2, 3}."""
    if not partial:
        for link in g.links():
            if coloring.get(link.id) not in COLORS:
                return False
    return not conflicts(g, coloring)


def color_classes(g: SemiGraph, coloring: Mapping[LinkId, int]) -> dict[int, list[LinkId]]:
    out: dict[int, list[LinkId]] = {1: [], 2: [], 3: []}
    for lid, c in sorted(coloring.items()):
        out[c].append(lid)
    return out


def parity_check(g: SemiGraph, coloring: Mapping[LinkId, int],
                 X: Iterable[VertexId]) -> bool:
    """Each color's count on the boundary of X matches |boundary| mod 2.

    Requires a proper coloring (the hypothesis of the statement being
    checked).  Holds because summing "each vertex of X sees each color
    once" over X cancels internal edges in pairs, leaving one contribution
    per boundary link.
    """
    if not is_proper(g, coloring):
        raise ValueError("parity_check needs a proper coloring")
    cut = g.boundary(X).boundary
    total = len(cut)
    for c in COLORS:
        s_c = sum(1 for lid in cut if coloring[lid] == c)
        if (s_c - total) % 2 != 0:
            return False
    return True


def _sol_to_coloring(flat, sol: list[int]) -> Coloring:
    return {flat.lids[i]: sol[i] for i in range(len(sol)) if sol[i] != 0}


def find_coloring(g: SemiGraph, *, removed: Iterable[LinkId] = (),
                  preset: Mapping[LinkId, int] | None = None,
                  deadline: float | None = None) -> Coloring | None:
    """One proper 3-edge-coloring of g minus ``removed``, or None.

    ``preset`` pins colors on some links; any returned coloring extends it.
    """
    flat = flatten(g)
    mask = active_mask(flat, tuple(removed))
    pinned = None
    if preset:
        pinned = {flat.lpos[lid]: c for lid, c in preset.items()}
    sol = kernels.coloring_first(flat.n, flat.eu, flat.ev, mask, deadline, pinned)
    return None if sol is None else _sol_to_coloring(flat, sol)


def is_colorable(g: SemiGraph, *, removed: Iterable[LinkId] = (),
                 deadline: float | None = None) -> bool:
    return find_coloring(g, removed=removed, deadline=deadline) is not None


class ColoringCount(NamedTuple):
    raw: int                        # total proper colorings
    canonical: int                  # representatives under color permutation


def enumerate_colorings(g: SemiGraph, visitor=None, *, limit: int = 1_000_000,
                        deadline: float | None = None) -> ColoringCount:
    """Visit every proper coloring once up to color permutation.

    The search canonicalizes the color-permutation symmetry (the first
    colored link gets color 1, the first link with a second color gets 2),
    so ``visitor`` sees one representative per equivalence class.  The raw
    count multiplies each class by its orbit size: 6 when two or more
    distinct colors occur, 3 for a single color, 1 for the empty coloring.
    """
    flat = flatten(g)
    sols = kernels.coloring_enumerate(flat.n, flat.eu, flat.ev, None, limit, deadline)
    raw = 0
    for s in sols:
        k = len(set(s) - {0})
        raw += (1, 3, 6, 6)[k]
        if visitor is not None:
            visitor(_sol_to_coloring(flat, s))
    return ColoringCount(raw, len(sols))


def all_colorings(g: SemiGraph, *, limit: int = 1_000_000,
                  deadline: float | None = None) -> list[Coloring]:
    """The canonical representatives of enumerate_colorings as a list."""
    out: list[Coloring] = []
    enumerate_colorings(g, out.append, limit=limit, deadline=deadline)
    return out


def complete_coloring(g: SemiGraph, preset: Mapping[LinkId, int], *,
                      conflict_vertices: Iterable[VertexId] = (),
                      deadline: float | None = None) -> Coloring | None:
    """Extend ``preset`` to all links, proper except at ``conflict_vertices``.

    Each conflict vertex must end up with exactly one repeated pair (never
    three alike); all other vertices must be proper.  Preset colors are kept
    as given, even when they violate the target pattern on their own, so the
    caller can detect infeasible presets by the None result.  Search order is
    ascending link id with colors 1, 2, 3.
    """
    allowed = {v: (1 if v in set(conflict_vertices) else 0) for v in g.vertices}
    coloring: Coloring = dict(preset)
    todo = [link.id for link in g.links() if link.id not in coloring]
    for v in g.vertices:
        if conflict_degree(g, coloring, v) > allowed[v]:
            return None

    nodes = 0

    def extend(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise kernels.KernelTimeout("coloring completion deadline exceeded")
        if i == len(todo):
            return all(
                conflict_degree(g, coloring, v) == allowed[v]
                for v in g.vertices
            )
        lid = todo[i]
        link = g.link(lid)
        for c in COLORS:
            coloring[lid] = c
            if all(
                conflict_degree(g, coloring, w) <= allowed[w]
                for w in link.endpoints()
            ) and extend(i + 1):
                return True
            del coloring[lid]
        return False

    return coloring if extend(0) else None


def kempe_chain(g: SemiGraph, coloring: Mapping[LinkId, int], start: LinkId,
                colors: Iterable[int]) -> list[LinkId]:
    """Links of the two-color chain through ``start`` (sorted ids).

    ``colors`` names the two colors; ``start`` must carry one of them.
    Meaningful on colorings that are proper along the chain, where links in
    the two colors form disjoint paths and cycles.
    """
    a, b = sorted(set(colors))
    if coloring.get(start) not in (a, b):
        raise ValueError(f"link {start} is not colored {a} or {b}")
    seen = {start}
    frontier = [start]
    while frontier:
        lid = frontier.pop()
        for w in g.link(lid).endpoints():
            for lid2 in g.incident(w):
                if lid2 not in seen and coloring.get(lid2) in (a, b):
                    seen.add(lid2)
                    frontier.append(lid2)
    return sorted(seen)


def kempe_switch(g: SemiGraph, coloring: Mapping[LinkId, int], start: LinkId,
                 colors: Iterable[int]) -> Coloring:
    """Swap the two colors on the chain through ``start``; returns a new dict."""
    a, b = sorted(set(colors))
    swapped = dict(coloring)
    other = {a: b, b: a}
    for lid in kempe_chain(g, coloring, start, (a, b)):
        swapped[lid] = other[swapped[lid]]
    return swapped


class ResistanceResult(NamedTuple):
    value: int | None               # None when the search budget was exhausted
    deleted: tuple[LinkId, ...] | None
    coloring: Coloring | None       # proper coloring of g minus the deleted set


def resistance(g: SemiGraph, budget: int = 3, *,
               deadline: float | None = None) -> ResistanceResult:
    """Minimum number of links to delete for 3-edge-colorability.

    Exhaustive by increasing size; within a size, candidate deletion sets are
    tried in lexicographic id order and the first hit is returned with its
    witness coloring.  Semi-edges are deletable like edges.  Returns
    (None, None, None) if every set of size at most ``budget`` leaves the
    graph uncolorable.
    """
    flat = flatten(g)
    m = len(flat.lids)
    for k in range(0, budget + 1):
        for combo in combinations(range(m), k):
            mask = None
            if combo:
                mask = [1] * m
                for i in combo:
                    mask[i] = 0
            sol = kernels.coloring_first(flat.n, flat.eu, flat.ev, mask, deadline)
            if sol is not None:
                return ResistanceResult(k, tuple(flat.lids[i] for i in combo),
                                        _sol_to_coloring(flat, sol))
    return ResistanceResult(None, None, None)


_PERMS3 = tuple(permutations(COLORS))


def _orbit_rep(pattern: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least image of ``pattern`` under color permutation."""
    return min(tuple(perm[c - 1] for c in pattern) for perm in _PERMS3)


class BlockChain:
    """Exact 3-edge-colorability for a semi-graph cut into a chain of blocks.

    ``blocks`` is an ordered partition of the vertex set in which every link
    stays inside one block or joins two consecutive ones; the constructor
    refuses anything else.  Colorability, with any set of links removed, is
    then decided by composing the blocks: an exhaustive kernel search per
    block records which color patterns on its boundary links extend to a
    proper coloring of that block, and the feasible patterns are swept down
    the chain.  Every vertex has all of its links active in exactly the
    search that owns its block, so the verdict agrees with the direct search
    on the whole graph, at a cost growing with the number of blocks instead
    of exponentially with the order.

    Block relations are cached, keyed by the removed links inside them, so a
    one-deletion sweep pays for each intact block once.
    """

    def __init__(self, g: SemiGraph, blocks: Sequence[Iterable[VertexId]]):
        flat = flatten(g)
        parts = [frozenset(b) for b in blocks]
        if not parts or any(not p for p in parts):
            raise ValueError("blocks must be nonempty vertex sets")
        bidx: dict[VertexId, int] = {}
        for i, part in enumerate(parts):
            for v in part:
                if v in bidx:
                    raise ValueError(f"vertex {v} appears in two blocks")
                bidx[v] = i
        if set(bidx) != set(g.vertices):
            raise ValueError("blocks do not partition the vertex set")
        nb = len(parts)
        internal: list[list[int]] = [[] for _ in range(nb)]
        crossing: list[list[int]] = [[] for _ in range(nb - 1)]
        for pos, lid in enumerate(flat.lids):
            iu = bidx[flat.vids[flat.eu[pos]]]
            pv = flat.ev[pos]
            iv = iu if pv < 0 else bidx[flat.vids[pv]]
            lo, hi = min(iu, iv), max(iu, iv)
            if lo == hi:
                internal[lo].append(pos)
            elif hi == lo + 1:
                crossing[lo].append(pos)
            else:
                raise ValueError(f"link {lid} joins blocks {lo} and {hi}, "
                                 "which are not consecutive")
        self.g = g
        self.blocks = tuple(parts)
        self._flat = flat
        self._internal = tuple(tuple(x) for x in internal)
        self._crossing = tuple(tuple(x) for x in crossing)
        scopes = []
        for i in range(nb):
            scope = list(internal[i])
            if i > 0:
                scope += crossing[i - 1]
            if i < nb - 1:
                scope += crossing[i]
            scopes.append(tuple(sorted(scope)))
        self._scope = tuple(scopes)
        self._relations: dict[tuple[int, frozenset[int]], dict] = {}

    @property
    def boundary_links(self) -> tuple[tuple[LinkId, ...], ...]:
        """Link ids crossing each consecutive block pair, ascending."""
        lids = self._flat.lids
        return tuple(tuple(lids[p] for p in cross) for cross in self._crossing)

    def block_links(self, i: int) -> tuple[LinkId, ...]:
        """Link ids lying inside block ``i`` (semi-edges included)."""
        return tuple(self._flat.lids[p] for p in self._internal[i])

    def _relation(self, i: int, removed: frozenset[int],
                  deadline: float | None) -> dict:
        """Feasible boundary patterns of block ``i`` minus ``removed``.

        Maps each canonical left pattern to the frozenset of concrete right
        patterns that extend to a proper coloring of the block; the map is
        closed under color permutation of both sides at once, so canonical
        left keys lose nothing.
        """
        key = (i, removed)
        got = self._relations.get(key)
        if got is not None:
            return got
        flat = self._flat
        mask = [0] * len(flat.lids)
        for pos in self._scope[i]:
            if pos not in removed:
                mask[pos] = 1
        left = tuple(p for p in (self._crossing[i - 1] if i > 0 else ())
                     if p not in removed)
        nb = len(self.blocks)
        right = tuple(p for p in (self._crossing[i] if i < nb - 1 else ())
                      if p not in removed)
        rel: dict[tuple[int, ...], frozenset] = {}
        for p in product(COLORS, repeat=len(left)):
            if _orbit_rep(p) != p:
                continue
            feasible = set()
            for q in product(COLORS, repeat=len(right)):
                preset = dict(zip(left, p))
                preset.update(zip(right, q))
                sol = kernels.coloring_first(flat.n, flat.eu, flat.ev, mask,
                                             deadline, preset)
                if sol is not None:
                    feasible.add(q)
            rel[p] = frozenset(feasible)
        self._relations[key] = rel
        return rel

    def colorable(self, removed: Iterable[LinkId] = (), *,
                  deadline: float | None = None) -> bool:
        """Is the graph minus ``removed`` properly 3-edge-colorable?"""
        gone = frozenset(self._flat.lpos[lid] for lid in removed)
        feasible = {()}
        for i in range(len(self.blocks)):
            rel = self._relation(i, gone & set(self._scope[i]), deadline)
            feasible = {_orbit_rep(q) for p in feasible for q in rel[p]}
            if not feasible:
                return False
        return True
