"""Pure-Python kernels: reference semantics for the compiled backend.

All functions take flat arrays describing a semi-graph with vertices
``0..n-1`` and links ``0..m-1``: ``eu[i]`` is the first endpoint, ``ev[i]``
the second (or ``-1`` for a semi-edge).  ``active`` is an optional 0/1 mask;
inactive links are treated as deleted.  Link *positions* are the unit of
lexicographic order everywhere.

The compiled twin in ``_cyk.pyx`` must produce bit-identical results; the
agreement tests pin that down.
"""
from __future__ import annotations

import time
from itertools import combinations

from .errors import KernelLimit, KernelTimeout

BACKEND_NAME = "py"

_MISSING = {3: 3, 5: 2, 6: 1}  # used-mask (bits 1,2,4 for colors 1,2,3) -> missing color

_POPCOUNT = (0, 1, 1, 2, 1, 2, 2, 3)  # of a 3-bit color mask


def _incidence(n: int, eu: list[int], ev: list[int], active) -> list[list[int]]:
    inc: list[list[int]] = [[] for _ in range(n)]
    for i in range(len(eu)):
        if active is not None and not active[i]:
            continue
        inc[eu[i]].append(i)
        if ev[i] >= 0:
            inc[ev[i]].append(i)
    return inc


def _link_order(n: int, eu: list[int], ev: list[int], active, inc) -> list[int]:
    """Static scan order for branching: BFS over links sharing a vertex.

    Branch link selection is dynamic (most constrained first); this order
    only decides the very first link and breaks score ties, keeping the
    search anchored to one connected frontier.
    """
    m = len(eu)
    seen = [False] * m
    order: list[int] = []
    for start in range(m):
        if seen[start] or (active is not None and not active[start]):
            continue
        queue = [start]
        seen[start] = True
        qi = 0
        while qi < len(queue):
            l = queue[qi]
            qi += 1
            order.append(l)
            for w in (eu[l], ev[l]):
                if w < 0:
                    continue
                for l2 in inc[w]:
                    if not seen[l2]:
                        seen[l2] = True
                        queue.append(l2)
    return order


# ---------------------------------------------------------------------------
# proper 3-edge-coloring search
# ---------------------------------------------------------------------------


def _color_search(n, eu, ev, active, find_all, limit, deadline, preset=None):
    m = len(eu)
    items = sorted(dict(preset).items()) if preset else []
    for l, c in items:
        if l < 0 or l >= m or (active is not None and not active[l]):
            raise ValueError("preset on a missing or inactive link")
        if not 1 <= c <= 3:
            raise ValueError(f"preset color {c} out of range")
    inc = _incidence(n, eu, ev, active)
    for v in range(n):
        if len(inc[v]) > 3:
            return []  # pigeonhole: no proper 3-coloring
    order = _link_order(n, eu, ev, active, inc)
    if not order:
        sol = [0] * m
        return [sol]
    color = [0] * m
    used = [0] * n
    free = [len(inc[v]) for v in range(n)]
    trail: list[int] = []
    solutions: list[list[int]] = []

    def assign(l: int, c: int) -> bool:
        """Assign and propagate; returns False on conflict (trail still grows).

        All failure checks happen before any state mutation so that every
        trailed link is fully applied; undo() is then an exact inverse.
        """
        stack = [(l, c)]
        while stack:
            l2, c2 = stack.pop()
            if color[l2]:
                if color[l2] != c2:
                    return False
                continue
            bit = 1 << (c2 - 1)
            u2, v2 = eu[l2], ev[l2]
            if used[u2] & bit:
                return False
            if v2 >= 0 and used[v2] & bit:
                return False
            color[l2] = c2
            trail.append(l2)
            for w in (u2, v2):
                if w < 0:
                    continue
                used[w] |= bit
                free[w] -= 1
                if free[w] == 1 and used[w] in _MISSING:
                    forced = _MISSING[used[w]]
                    for l3 in inc[w]:
                        if not color[l3]:
                            stack.append((l3, forced))
                            break
        return True

    def undo(mark: int):
        while len(trail) > mark:
            l2 = trail.pop()
            c2 = color[l2]
            color[l2] = 0
            bit = 1 << (c2 - 1)
            for w in (eu[l2], ev[l2]):
                if w < 0:
                    continue
                used[w] &= ~bit
                free[w] += 1

    def pick() -> int:
        """Unassigned link seeing the most endpoint colors; scan-order ties.

        Color-permutation equivariant (depends on used masks only through
        their popcount), which keeps the canonical enumeration exact.
        """
        best = -1
        best_score = -1
        for l2 in order:
            if color[l2]:
                continue
            bits = used[eu[l2]]
            w = ev[l2]
            if w >= 0:
                bits |= used[w]
            score = _POPCOUNT[bits]
            if score > best_score:
                best_score = score
                best = l2
                if score >= 3:
                    break
        return best

    # frames: (branch link, color tried, trail mark, maxc)
    maxc = 0
    if items:
        # preset colors fix the gauge, so the color-permutation quotient is
        # off: branch over all three colors everywhere
        maxc = 3
        for l, c in items:
            if not assign(l, c):
                return solutions
    frames: list[tuple[int, int, int, int]] = []
    cand_color = 1
    cur = pick()
    nodes = 0
    while True:
        nodes += 1
        if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
            raise KernelTimeout("coloring search deadline exceeded")
        if cur < 0:
            solutions.append(list(color))
            if not find_all:
                return solutions
            if len(solutions) > limit:
                raise KernelLimit("coloring enumeration limit exceeded")
            # force backtrack
            cand_color = 4
        if cand_color > min(maxc + 1, 3):
            # exhaust frame: backtrack
            if not frames:
                return solutions
            cur, cand_color, mark, maxc = frames.pop()
            undo(mark)
            cand_color += 1
            continue
        mark = len(trail)
        if assign(cur, cand_color):
            frames.append((cur, cand_color, mark, maxc))
            if cand_color > maxc:
                maxc = cand_color
            cand_color = 1
            cur = pick()
        else:
            undo(mark)
            cand_color += 1


def coloring_first(n, eu, ev, active=None, deadline=None, preset=None):
    """One proper 3-edge-coloring (canonical branch order) or None.

    ``preset`` maps link positions to required colors; solutions then extend
    it, with the color-permutation quotient disabled.
    """
    sols = _color_search(n, eu, ev, active, find_all=False, limit=1,
                         deadline=deadline, preset=preset)
    return sols[0] if sols else None


def coloring_enumerate(n, eu, ev, active=None, limit=1_000_000, deadline=None,
                       preset=None):
    """All proper colorings up to color permutation (canonical representatives).

    With a ``preset`` the quotient is off and the list holds every concrete
    completion instead.
    """
    return _color_search(n, eu, ev, active, find_all=True, limit=limit,
                         deadline=deadline, preset=preset)


# ---------------------------------------------------------------------------
# flows over Z2 x Z2 with a zero budget
# ---------------------------------------------------------------------------


def flow_first(n, eu, ev, budget, active=None, deadline=None):
    """A conservation-satisfying assignment with at most ``budget`` zeros.

    Values are 0..3 (the Klein four-group under xor); a valid flow xors to 0
    at every vertex over incident active links.  Returns the value array or
    None; value order tried is 0 (when budget remains), then nonzero values
    under the symmetry quotient (first nonzero branch is 1, second distinct 2).
    """
    m = len(eu)
    inc = _incidence(n, eu, ev, active)
    order = _link_order(n, eu, ev, active, inc)
    # isolated-vertex components and fully inactive graphs are trivially fine
    val = [-1] * m
    acc = [0] * n
    free = [len(inc[v]) for v in range(n)]
    trail: list[int] = []
    zeros = 0

    def assign(l: int, x: int):
        """Like the coloring assign: all checks precede any mutation."""
        nonlocal zeros
        stack = [(l, x)]
        while stack:
            l2, x2 = stack.pop()
            if val[l2] >= 0:
                if val[l2] != x2:
                    return False
                continue
            if x2 == 0 and zeros >= budget:
                return False
            u2, v2 = eu[l2], ev[l2]
            if free[u2] == 1 and (acc[u2] ^ x2) != 0:
                return False
            if v2 >= 0 and free[v2] == 1 and (acc[v2] ^ x2) != 0:
                return False
            val[l2] = x2
            trail.append(l2)
            if x2 == 0:
                zeros += 1
            for w in (u2, v2):
                if w < 0:
                    continue
                acc[w] ^= x2
                free[w] -= 1
                if free[w] == 1:
                    for l3 in inc[w]:
                        if val[l3] < 0:
                            stack.append((l3, acc[w]))
                            break
        return True

    def undo(mark: int):
        nonlocal zeros
        while len(trail) > mark:
            l2 = trail.pop()
            x2 = val[l2]
            val[l2] = -1
            if x2 == 0:
                zeros -= 1
            for w in (eu[l2], ev[l2]):
                if w < 0:
                    continue
                acc[w] ^= x2
                free[w] += 1

    if not order:
        return [0] * m
    deg = [len(inc[v]) for v in range(n)]

    def pick() -> int:
        """Unassigned link with the most assigned endpoint links; scan-order ties.

        Equivariant under permutations of the nonzero values, which keeps the
        intro-level symmetry quotient complete.
        """
        best = -1
        best_score = -1
        for l2 in order:
            if val[l2] >= 0:
                continue
            u2, v2 = eu[l2], ev[l2]
            score = deg[u2] - free[u2]
            if v2 >= 0:
                score += deg[v2] - free[v2]
            if score > best_score:
                best_score = score
                best = l2
        return best

    intro = 0  # 0: no nonzero used; 1: only value 1; 2: values 1,2 (span = all)
    frames: list[tuple[int, int, int, int]] = []
    cand = 0
    cur = order[0]
    nodes = 0

    def options(level):
        # value candidates in canonical order for the current symmetry level
        if level == 0:
            return (0, 1)
        if level == 1:
            return (0, 1, 2)
        return (0, 1, 2, 3)

    while True:
        nodes += 1
        if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
            raise KernelTimeout("flow search deadline exceeded")
        if cur < 0:
            return [x if x > 0 else 0 for x in val]
        opts = options(intro)
        if cand >= len(opts):
            if not frames:
                return None
            cur, cand, mark, intro = frames.pop()
            undo(mark)
            cand += 1
            continue
        x = opts[cand]
        if x == 0 and zeros >= budget:
            cand += 1
            continue
        mark = len(trail)
        saved = intro
        if assign(cur, x):
            frames.append((cur, cand, mark, saved))
            # symmetry level bumps only at branches that introduce a new value:
            # forced values cannot leave the xor-span of what is already used
            if x == 1 and saved == 0:
                intro = 1
            elif x == 2 and saved == 1:
                intro = 2
            cand = 0
            cur = pick()
        else:
            undo(mark)
            cand += 1


# ---------------------------------------------------------------------------
# small disconnecting edge sets (exhaustive, bridge-accelerated)
# ---------------------------------------------------------------------------


def _csr(n, eu, ev):
    deg = [0] * n
    m = len(eu)
    for i in range(m):
        deg[eu[i]] += 1
        deg[ev[i]] += 1
    off = [0] * (n + 1)
    for v in range(n):
        off[v + 1] = off[v] + deg[v]
    adj_v = [0] * off[n]
    adj_e = [0] * off[n]
    fill = list(off[:n])
    for i in range(m):
        u, v = eu[i], ev[i]
        adj_v[fill[u]] = v
        adj_e[fill[u]] = i
        fill[u] += 1
        adj_v[fill[v]] = u
        adj_e[fill[v]] = i
        fill[v] += 1
    return off, adj_v, adj_e


def _bridges_excluded(n, off, adj_v, adj_e, excluded):
    """(all-reached-from-0, bridge edge ids) of the graph minus excluded edges."""
    disc = [-1] * n
    low = [0] * n
    sv = [0]
    spe = [-1]
    sptr = [off[0]]
    disc[0] = low[0] = 0
    timer = 1
    nvis = 1
    bridges = []
    while sv:
        v = sv[-1]
        i = sptr[-1]
        advanced = False
        hi = off[v + 1]
        while i < hi:
            e = adj_e[i]
            w = adj_v[i]
            i += 1
            if excluded[e] or e == spe[-1]:
                continue
            if disc[w] < 0:
                sptr[-1] = i
                disc[w] = low[w] = timer
                timer += 1
                nvis += 1
                sv.append(w)
                spe.append(e)
                sptr.append(off[w])
                advanced = True
                break
            elif disc[w] < low[v]:
                low[v] = disc[w]
        if advanced:
            continue
        sv.pop()
        pe = spe.pop()
        sptr.pop()
        if sv:
            p = sv[-1]
            if low[v] < low[p]:
                low[p] = low[v]
            if low[v] > disc[p]:
                bridges.append(pe)
    return nvis == n, bridges


def bridges(n, eu, ev, excluded_ids=()):
    """Bridges of the graph minus ``excluded_ids`` (graph must stay connected
    from vertex 0's side for the list to be complete; the caller checks)."""
    off, adj_v, adj_e = _csr(n, eu, ev)
    excl = [False] * len(eu)
    for e in excluded_ids:
        excl[e] = True
    ok, br = _bridges_excluded(n, off, adj_v, adj_e, excl)
    return ok, sorted(br)


def small_disconnecting_sets(n, eu, ev, kmax, limit=1_000_000, deadline=None,
                             expand_supersets=True):
    """All edge subsets of size 1..kmax whose removal disconnects the graph.

    Exhaustive over all C(m, k) subsets, decided losslessly: S of size k
    disconnects iff some (k-1)-prefix already disconnects or the remaining
    edge is a bridge of the graph minus that prefix.  Returns one sorted list
    of sorted index tuples per size.  Links must all be edges.

    With ``expand_supersets=False`` only the sets found directly by the
    prefix-plus-bridge scan are reported.  Every minimal cut (a set whose
    edges all cross one bipartition) still appears, because removing any
    k-1 of its edges leaves the last one a bridge; what is skipped are the
    non-minimal supersets of smaller disconnecting sets.
    """
    m = len(eu)
    if kmax > 5:
        raise ValueError("small_disconnecting_sets supports kmax <= 5")
    off, adj_v, adj_e = _csr(n, eu, ev)
    excl = [False] * m
    found: list[set[tuple[int, ...]]] = [set() for _ in range(kmax)]

    def note(size_idx, tup):
        bucket = found[size_idx]
        bucket.add(tup)
        if len(bucket) > limit:
            raise KernelLimit("disconnecting-set enumeration limit exceeded")

    def expand_supersets_of(base: tuple[int, ...]):
        # every superset of a disconnecting set disconnects
        for size_idx in range(len(base), kmax):
            k_extra = size_idx + 1 - len(base)
            others = [f for f in range(m) if f not in base]
            for extra in combinations(others, k_extra):
                note(size_idx, tuple(sorted(base + extra)))

    ticks = 0
    for prefix_size in range(0, kmax):
        for prefix in combinations(range(m), prefix_size):
            ticks += 1
            if (
                deadline is not None
                and ticks % 2048 == 0
                and time.monotonic() > deadline
            ):
                raise KernelTimeout("cut enumeration deadline exceeded")
            for e in prefix:
                excl[e] = True
            connected, br = _bridges_excluded(n, off, adj_v, adj_e, excl)
            for e in prefix:
                excl[e] = False
            if not connected:
                # already recorded at its own size via a smaller prefix pass
                continue
            for b in br:
                if b in prefix:
                    continue
                note(prefix_size, tuple(sorted(prefix + (b,))))
    # supersets of smaller disconnecting sets
    if expand_supersets:
        for size_idx in range(kmax - 1):
            for base in list(found[size_idx]):
                expand_supersets_of(base)
    return [sorted(found[i]) for i in range(kmax)]
