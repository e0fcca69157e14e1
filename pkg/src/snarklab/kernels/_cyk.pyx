# cython: language_level=3
"""Compiled kernels; must stay bit-identical with ``_pyk``.

Same API, same orders, same canonical representatives.  The agreement tests
compare both backends link by link, so any change here needs its mirror in
the pure-Python module first.
"""
from __future__ import annotations

import time
from itertools import combinations

from libc.stdlib cimport free, malloc
from libc.string cimport memset

from .errors import KernelLimit, KernelTimeout

BACKEND_NAME = "c"

cdef int _MISSING_C[8]
_MISSING_C[0] = 0; _MISSING_C[1] = 0; _MISSING_C[2] = 0; _MISSING_C[3] = 3
_MISSING_C[4] = 0; _MISSING_C[5] = 2; _MISSING_C[6] = 1; _MISSING_C[7] = 0

cdef int _POP_C[8]
_POP_C[0] = 0; _POP_C[1] = 1; _POP_C[2] = 1; _POP_C[3] = 2
_POP_C[4] = 1; _POP_C[5] = 2; _POP_C[6] = 2; _POP_C[7] = 3


cdef struct Arrays:
    int n
    int m
    int *eu
    int *ev
    char *act


cdef int _load(Arrays *a, int n, object eu, object ev, object active) except -1:
    cdef int m = len(eu)
    cdef int i
    a.n = n
    a.m = m
    a.eu = <int *> malloc(m * sizeof(int))
    a.ev = <int *> malloc(m * sizeof(int))
    a.act = <char *> malloc(m if m else 1)
    if a.eu == NULL or a.ev == NULL or a.act == NULL:
        raise MemoryError()
    for i in range(m):
        a.eu[i] = eu[i]
        a.ev[i] = ev[i]
        a.act[i] = 1
    if active is not None:
        for i in range(m):
            a.act[i] = 1 if active[i] else 0
    return 0


cdef void _unload(Arrays *a):
    free(a.eu)
    free(a.ev)
    free(a.act)


cdef int _build_incidence(Arrays *a, int **inc_off, int **inc_dat) except -1:
    """CSR incidence: per-vertex link ids in ascending id order."""
    cdef int n = a.n, m = a.m
    cdef int i, v
    cdef int *off = <int *> malloc((n + 1) * sizeof(int))
    cdef int *deg = <int *> malloc((n if n else 1) * sizeof(int))
    if off == NULL or deg == NULL:
        raise MemoryError()
    memset(deg, 0, n * sizeof(int))
    for i in range(m):
        if not a.act[i]:
            continue
        deg[a.eu[i]] += 1
        if a.ev[i] >= 0:
            deg[a.ev[i]] += 1
    off[0] = 0
    for v in range(n):
        off[v + 1] = off[v] + deg[v]
    cdef int *dat = <int *> malloc((off[n] if off[n] else 1) * sizeof(int))
    if dat == NULL:
        free(off); free(deg)
        raise MemoryError()
    memset(deg, 0, n * sizeof(int))
    for i in range(m):
        if not a.act[i]:
            continue
        v = a.eu[i]
        dat[off[v] + deg[v]] = i
        deg[v] += 1
        v = a.ev[i]
        if v >= 0:
            dat[off[v] + deg[v]] = i
            deg[v] += 1
    free(deg)
    inc_off[0] = off
    inc_dat[0] = dat
    return 0


cdef int _build_order(Arrays *a, int *inc_off, int *inc_dat, int *order) except -1:
    """BFS over links sharing a vertex, from the lowest unseen id; returns count."""
    cdef int m = a.m
    cdef int cnt = 0, qi, l, l2, w, j, side
    cdef char *seen = <char *> malloc(m if m else 1)
    if seen == NULL:
        raise MemoryError()
    memset(seen, 0, m)
    cdef int start
    for start in range(m):
        if seen[start] or not a.act[start]:
            continue
        qi = cnt
        order[cnt] = start
        cnt += 1
        seen[start] = 1
        while qi < cnt:
            l = order[qi]
            qi += 1
            for side in range(2):
                w = a.eu[l] if side == 0 else a.ev[l]
                if w < 0:
                    continue
                for j in range(inc_off[w], inc_off[w + 1]):
                    l2 = inc_dat[j]
                    if not seen[l2]:
                        seen[l2] = 1
                        order[cnt] = l2
                        cnt += 1
    free(seen)
    return cnt


# ---------------------------------------------------------------------------
# proper 3-edge-coloring search
# ---------------------------------------------------------------------------


def _color_search(int n, eu, ev, active, bint find_all, long limit, deadline,
                  preset=None):
    cdef Arrays a
    _load(&a, n, eu, ev, active)
    cdef int *inc_off = NULL
    cdef int *inc_dat = NULL
    cdef int *order = NULL
    cdef int *color = NULL
    cdef int *used = NULL
    cdef int *fre = NULL
    cdef int *trail = NULL
    cdef int *stk = NULL
    cdef int *fr_link = NULL
    cdef int *fr_cand = NULL
    cdef int *fr_mark = NULL
    cdef int *fr_maxc = NULL
    cdef int m = a.m
    cdef int v, i, nlinks, ntrail, nstk, nfr
    cdef int cur, maxc, cand_color, mark, l2, c2, u2, v2, w, bit, forced, j, side
    cdef int ok, best, best_score, bits, sc, pl, pc
    cdef long nodes = 0
    cdef double dl = -1.0
    if deadline is not None:
        dl = deadline
    solutions = []
    try:
        items = sorted(dict(preset).items()) if preset else []
        for pl, pc in items:
            if pl < 0 or pl >= m or not a.act[pl]:
                raise ValueError("preset on a missing or inactive link")
            if pc < 1 or pc > 3:
                raise ValueError(f"preset color {pc} out of range")
        _build_incidence(&a, &inc_off, &inc_dat)
        for v in range(n):
            if inc_off[v + 1] - inc_off[v] > 3:
                return []
        order = <int *> malloc((m if m else 1) * sizeof(int))
        color = <int *> malloc((m if m else 1) * sizeof(int))
        trail = <int *> malloc((m if m else 1) * sizeof(int))
        stk = <int *> malloc((2 * (n + m) + 8) * sizeof(int))
        used = <int *> malloc((n if n else 1) * sizeof(int))
        fre = <int *> malloc((n if n else 1) * sizeof(int))
        fr_link = <int *> malloc((m + 2) * sizeof(int))
        fr_cand = <int *> malloc((m + 2) * sizeof(int))
        fr_mark = <int *> malloc((m + 2) * sizeof(int))
        fr_maxc = <int *> malloc((m + 2) * sizeof(int))
        if (order == NULL or color == NULL or trail == NULL or stk == NULL
                or used == NULL or fre == NULL or fr_link == NULL
                or fr_cand == NULL or fr_mark == NULL or fr_maxc == NULL):
            raise MemoryError()
        nlinks = _build_order(&a, inc_off, inc_dat, order)
        memset(color, 0, m * sizeof(int))
        memset(used, 0, n * sizeof(int))
        for v in range(n):
            fre[v] = inc_off[v + 1] - inc_off[v]
        if nlinks == 0:
            return [[0] * m]
        ntrail = 0
        nfr = 0
        maxc = 0
        if items:
            # preset colors fix the gauge, so the color-permutation quotient
            # is off: branch over all three colors everywhere
            maxc = 3
            for pl, pc in items:
                stk[0] = pl
                stk[1] = pc
                nstk = 2
                ok = 1
                while nstk:
                    nstk -= 2
                    l2 = stk[nstk]
                    c2 = stk[nstk + 1]
                    if color[l2]:
                        if color[l2] != c2:
                            ok = 0
                            break
                        continue
                    bit = 1 << (c2 - 1)
                    u2 = a.eu[l2]
                    v2 = a.ev[l2]
                    if used[u2] & bit:
                        ok = 0
                        break
                    if v2 >= 0 and used[v2] & bit:
                        ok = 0
                        break
                    color[l2] = c2
                    trail[ntrail] = l2
                    ntrail += 1
                    for side in range(2):
                        w = u2 if side == 0 else v2
                        if w < 0:
                            continue
                        used[w] |= bit
                        fre[w] -= 1
                        if fre[w] == 1 and _MISSING_C[used[w]]:
                            forced = _MISSING_C[used[w]]
                            for j in range(inc_off[w], inc_off[w + 1]):
                                if not color[inc_dat[j]]:
                                    stk[nstk] = inc_dat[j]
                                    stk[nstk + 1] = forced
                                    nstk += 2
                                    break
                if not ok:
                    return solutions
        best = -1
        best_score = -1
        for j in range(nlinks):
            l2 = order[j]
            if color[l2]:
                continue
            bits = used[a.eu[l2]]
            w = a.ev[l2]
            if w >= 0:
                bits |= used[w]
            sc = _POP_C[bits]
            if sc > best_score:
                best_score = sc
                best = l2
                if sc >= 3:
                    break
        cur = best
        cand_color = 1
        while True:
            nodes += 1
            if dl >= 0.0 and nodes % 4096 == 0 and time.monotonic() > dl:
                raise KernelTimeout("coloring search deadline exceeded")
            if cur < 0:
                solutions.append([color[i] for i in range(m)])
                if not find_all:
                    return solutions
                if len(solutions) > limit:
                    raise KernelLimit("coloring enumeration limit exceeded")
                cand_color = 4
            if cand_color > (maxc + 1 if maxc + 1 < 3 else 3):
                if nfr == 0:
                    return solutions
                nfr -= 1
                cur = fr_link[nfr]
                cand_color = fr_cand[nfr]
                mark = fr_mark[nfr]
                maxc = fr_maxc[nfr]
                # undo to mark
                while ntrail > mark:
                    ntrail -= 1
                    l2 = trail[ntrail]
                    c2 = color[l2]
                    color[l2] = 0
                    bit = 1 << (c2 - 1)
                    for side in range(2):
                        w = a.eu[l2] if side == 0 else a.ev[l2]
                        if w < 0:
                            continue
                        used[w] &= ~bit
                        fre[w] += 1
                cand_color += 1
                continue
            mark = ntrail
            # assign cur with cand_color, propagating forced colors
            nstk = 0
            stk[0] = cur
            stk[1] = cand_color
            nstk = 2
            ok = 1
            while nstk:
                nstk -= 2
                l2 = stk[nstk]
                c2 = stk[nstk + 1]
                if color[l2]:
                    if color[l2] != c2:
                        ok = 0
                        break
                    continue
                bit = 1 << (c2 - 1)
                u2 = a.eu[l2]
                v2 = a.ev[l2]
                if used[u2] & bit:
                    ok = 0
                    break
                if v2 >= 0 and used[v2] & bit:
                    ok = 0
                    break
                color[l2] = c2
                trail[ntrail] = l2
                ntrail += 1
                for side in range(2):
                    w = u2 if side == 0 else v2
                    if w < 0:
                        continue
                    used[w] |= bit
                    fre[w] -= 1
                    if fre[w] == 1 and _MISSING_C[used[w]]:
                        forced = _MISSING_C[used[w]]
                        for j in range(inc_off[w], inc_off[w + 1]):
                            if not color[inc_dat[j]]:
                                stk[nstk] = inc_dat[j]
                                stk[nstk + 1] = forced
                                nstk += 2
                                break
            if ok:
                fr_link[nfr] = cur
                fr_cand[nfr] = cand_color
                fr_mark[nfr] = mark
                fr_maxc[nfr] = maxc
                nfr += 1
                if cand_color > maxc:
                    maxc = cand_color
                cand_color = 1
                # next branch link: most endpoint colors seen, scan-order ties
                best = -1
                best_score = -1
                for j in range(nlinks):
                    l2 = order[j]
                    if color[l2]:
                        continue
                    bits = used[a.eu[l2]]
                    w = a.ev[l2]
                    if w >= 0:
                        bits |= used[w]
                    sc = _POP_C[bits]
                    if sc > best_score:
                        best_score = sc
                        best = l2
                        if sc >= 3:
                            break
                cur = best
            else:
                while ntrail > mark:
                    ntrail -= 1
                    l2 = trail[ntrail]
                    c2 = color[l2]
                    color[l2] = 0
                    bit = 1 << (c2 - 1)
                    for side in range(2):
                        w = a.eu[l2] if side == 0 else a.ev[l2]
                        if w < 0:
                            continue
                        used[w] &= ~bit
                        fre[w] += 1
                cand_color += 1
    finally:
        free(inc_off); free(inc_dat); free(order); free(color); free(trail)
        free(stk); free(used); free(fre)
        free(fr_link); free(fr_cand); free(fr_mark); free(fr_maxc)
        _unload(&a)


def coloring_first(n, eu, ev, active=None, deadline=None, preset=None):
    """One proper 3-edge-coloring (canonical branch order) or None.

    ``preset`` maps link positions to required colors; solutions then extend
    it, with the color-permutation quotient disabled.
    """
    sols = _color_search(n, eu, ev, active, False, 1, deadline, preset)
    return sols[0] if sols else None


def coloring_enumerate(n, eu, ev, active=None, limit=1_000_000, deadline=None,
                       preset=None):
    """All proper colorings up to color permutation (canonical representatives).

    With a ``preset`` the quotient is off and the list holds every concrete
    completion instead.
    """
    return _color_search(n, eu, ev, active, True, limit, deadline, preset)


# ---------------------------------------------------------------------------
# flows over Z2 x Z2 with a zero budget
# ---------------------------------------------------------------------------


def flow_first(int n, eu, ev, int budget, active=None, deadline=None):
    """A conservation-satisfying assignment with at most ``budget`` zeros."""
    cdef Arrays a
    _load(&a, n, eu, ev, active)
    cdef int *inc_off = NULL
    cdef int *inc_dat = NULL
    cdef int *order = NULL
    cdef int *val = NULL
    cdef int *acc = NULL
    cdef int *fre = NULL
    cdef int *trail = NULL
    cdef int *stk = NULL
    cdef int *fr_link = NULL
    cdef int *fr_cand = NULL
    cdef int *fr_mark = NULL
    cdef int *fr_intro = NULL
    cdef int m = a.m
    cdef int v, i, nlinks, ntrail, nstk, nfr
    cdef int cur, intro, cand, mark, zeros, nopts, x, l2, x2, u2, v2, w, j, side
    cdef int saved, ok, best, best_score, sc
    cdef long nodes = 0
    cdef double dl = -1.0
    if deadline is not None:
        dl = deadline
    try:
        _build_incidence(&a, &inc_off, &inc_dat)
        order = <int *> malloc((m if m else 1) * sizeof(int))
        val = <int *> malloc((m if m else 1) * sizeof(int))
        trail = <int *> malloc((m if m else 1) * sizeof(int))
        stk = <int *> malloc((2 * (n + m) + 8) * sizeof(int))
        acc = <int *> malloc((n if n else 1) * sizeof(int))
        fre = <int *> malloc((n if n else 1) * sizeof(int))
        fr_link = <int *> malloc((m + 2) * sizeof(int))
        fr_cand = <int *> malloc((m + 2) * sizeof(int))
        fr_mark = <int *> malloc((m + 2) * sizeof(int))
        fr_intro = <int *> malloc((m + 2) * sizeof(int))
        if (order == NULL or val == NULL or trail == NULL or stk == NULL
                or acc == NULL or fre == NULL or fr_link == NULL
                or fr_cand == NULL or fr_mark == NULL or fr_intro == NULL):
            raise MemoryError()
        nlinks = _build_order(&a, inc_off, inc_dat, order)
        if nlinks == 0:
            return [0] * m
        for i in range(m):
            val[i] = -1
        memset(acc, 0, n * sizeof(int))
        for v in range(n):
            fre[v] = inc_off[v + 1] - inc_off[v]
        ntrail = 0
        nfr = 0
        cur = order[0]
        intro = 0
        cand = 0
        zeros = 0
        while True:
            nodes += 1
            if dl >= 0.0 and nodes % 4096 == 0 and time.monotonic() > dl:
                raise KernelTimeout("flow search deadline exceeded")
            if cur < 0:
                return [val[i] if val[i] > 0 else 0 for i in range(m)]
            nopts = 2 if intro == 0 else (3 if intro == 1 else 4)
            if cand >= nopts:
                if nfr == 0:
                    return None
                nfr -= 1
                cur = fr_link[nfr]
                cand = fr_cand[nfr]
                mark = fr_mark[nfr]
                intro = fr_intro[nfr]
                while ntrail > mark:
                    ntrail -= 1
                    l2 = trail[ntrail]
                    x2 = val[l2]
                    val[l2] = -1
                    if x2 == 0:
                        zeros -= 1
                    for side in range(2):
                        w = a.eu[l2] if side == 0 else a.ev[l2]
                        if w < 0:
                            continue
                        acc[w] ^= x2
                        fre[w] += 1
                cand += 1
                continue
            x = cand  # canonical option order is (0, 1, 2, 3) truncated
            if x == 0 and zeros >= budget:
                cand += 1
                continue
            mark = ntrail
            saved = intro
            # assign cur with value x, propagating forced values
            stk[0] = cur
            stk[1] = x
            nstk = 2
            ok = 1
            while nstk:
                nstk -= 2
                l2 = stk[nstk]
                x2 = stk[nstk + 1]
                if val[l2] >= 0:
                    if val[l2] != x2:
                        ok = 0
                        break
                    continue
                if x2 == 0 and zeros >= budget:
                    ok = 0
                    break
                u2 = a.eu[l2]
                v2 = a.ev[l2]
                if fre[u2] == 1 and (acc[u2] ^ x2) != 0:
                    ok = 0
                    break
                if v2 >= 0 and fre[v2] == 1 and (acc[v2] ^ x2) != 0:
                    ok = 0
                    break
                val[l2] = x2
                trail[ntrail] = l2
                ntrail += 1
                if x2 == 0:
                    zeros += 1
                for side in range(2):
                    w = u2 if side == 0 else v2
                    if w < 0:
                        continue
                    acc[w] ^= x2
                    fre[w] -= 1
                    if fre[w] == 1:
                        for j in range(inc_off[w], inc_off[w + 1]):
                            if val[inc_dat[j]] < 0:
                                stk[nstk] = inc_dat[j]
                                stk[nstk + 1] = acc[w]
                                nstk += 2
                                break
            if ok:
                fr_link[nfr] = cur
                fr_cand[nfr] = cand
                fr_mark[nfr] = mark
                fr_intro[nfr] = saved
                nfr += 1
                if x == 1 and saved == 0:
                    intro = 1
                elif x == 2 and saved == 1:
                    intro = 2
                cand = 0
                # next branch link: most assigned endpoint links, scan-order ties
                best = -1
                best_score = -1
                for j in range(nlinks):
                    l2 = order[j]
                    if val[l2] >= 0:
                        continue
                    u2 = a.eu[l2]
                    v2 = a.ev[l2]
                    sc = (inc_off[u2 + 1] - inc_off[u2]) - fre[u2]
                    if v2 >= 0:
                        sc += (inc_off[v2 + 1] - inc_off[v2]) - fre[v2]
                    if sc > best_score:
                        best_score = sc
                        best = l2
                cur = best
            else:
                while ntrail > mark:
                    ntrail -= 1
                    l2 = trail[ntrail]
                    x2 = val[l2]
                    val[l2] = -1
                    if x2 == 0:
                        zeros -= 1
                    for side in range(2):
                        w = a.eu[l2] if side == 0 else a.ev[l2]
                        if w < 0:
                            continue
                        acc[w] ^= x2
                        fre[w] += 1
                cand += 1
    finally:
        free(inc_off); free(inc_dat); free(order); free(val); free(trail)
        free(stk); free(acc); free(fre)
        free(fr_link); free(fr_cand); free(fr_mark); free(fr_intro)
        _unload(&a)


# ---------------------------------------------------------------------------
# small disconnecting edge sets (exhaustive, bridge-accelerated)
# ---------------------------------------------------------------------------


cdef struct Csr:
    int n
    int m
    int *off
    int *adj_v
    int *adj_e


cdef int _csr_build(Csr *c, int n, eu, ev) except -1:
    cdef int m = len(eu)
    cdef int i, u, v
    c.n = n
    c.m = m
    c.off = <int *> malloc((n + 1) * sizeof(int))
    cdef int *deg = <int *> malloc((n if n else 1) * sizeof(int))
    if c.off == NULL or deg == NULL:
        raise MemoryError()
    memset(deg, 0, n * sizeof(int))
    for i in range(m):
        deg[<int> eu[i]] += 1
        deg[<int> ev[i]] += 1
    c.off[0] = 0
    for v in range(n):
        c.off[v + 1] = c.off[v] + deg[v]
    c.adj_v = <int *> malloc((c.off[n] if c.off[n] else 1) * sizeof(int))
    c.adj_e = <int *> malloc((c.off[n] if c.off[n] else 1) * sizeof(int))
    if c.adj_v == NULL or c.adj_e == NULL:
        free(deg)
        raise MemoryError()
    memset(deg, 0, n * sizeof(int))
    for i in range(m):
        u = eu[i]
        v = ev[i]
        c.adj_v[c.off[u] + deg[u]] = v
        c.adj_e[c.off[u] + deg[u]] = i
        deg[u] += 1
        c.adj_v[c.off[v] + deg[v]] = u
        c.adj_e[c.off[v] + deg[v]] = i
        deg[v] += 1
    free(deg)
    return 0


cdef void _csr_free(Csr *c):
    free(c.off)
    free(c.adj_v)
    free(c.adj_e)


cdef struct Scratch:
    int *disc
    int *low
    int *sv
    int *spe
    int *sptr
    int *out


cdef int _scratch_alloc(Scratch *s, int n, int m) except -1:
    s.disc = <int *> malloc((n if n else 1) * sizeof(int))
    s.low = <int *> malloc((n if n else 1) * sizeof(int))
    s.sv = <int *> malloc((n + 1) * sizeof(int))
    s.spe = <int *> malloc((n + 1) * sizeof(int))
    s.sptr = <int *> malloc((n + 1) * sizeof(int))
    s.out = <int *> malloc((m if m else 1) * sizeof(int))
    if (s.disc == NULL or s.low == NULL or s.sv == NULL or s.spe == NULL
            or s.sptr == NULL or s.out == NULL):
        raise MemoryError()
    return 0


cdef void _scratch_free(Scratch *s):
    free(s.disc); free(s.low); free(s.sv); free(s.spe); free(s.sptr); free(s.out)


cdef int _bridges_excluded_c(Csr *c, char *excluded, Scratch *s, int *nbr):
    """Returns 1 if all vertices reached from 0, fills s.out with bridges."""
    cdef int n = c.n
    cdef int i, v, w, e, p, pe, hi, timer, nvis, top, advanced
    for i in range(n):
        s.disc[i] = -1
    s.sv[0] = 0
    s.spe[0] = -1
    s.sptr[0] = c.off[0]
    top = 0
    s.disc[0] = 0
    s.low[0] = 0
    timer = 1
    nvis = 1
    nbr[0] = 0
    while top >= 0:
        v = s.sv[top]
        i = s.sptr[top]
        advanced = 0
        hi = c.off[v + 1]
        while i < hi:
            e = c.adj_e[i]
            w = c.adj_v[i]
            i += 1
            if excluded[e] or e == s.spe[top]:
                continue
            if s.disc[w] < 0:
                s.sptr[top] = i
                s.disc[w] = timer
                s.low[w] = timer
                timer += 1
                nvis += 1
                top += 1
                s.sv[top] = w
                s.spe[top] = e
                s.sptr[top] = c.off[w]
                advanced = 1
                break
            elif s.disc[w] < s.low[v]:
                s.low[v] = s.disc[w]
        if advanced:
            continue
        pe = s.spe[top]
        top -= 1
        if top >= 0:
            p = s.sv[top]
            if s.low[v] < s.low[p]:
                s.low[p] = s.low[v]
            if s.low[v] > s.disc[p]:
                s.out[nbr[0]] = pe
                nbr[0] += 1
    return 1 if nvis == n else 0


def bridges(int n, eu, ev, excluded_ids=()):
    """Bridges of the graph minus ``excluded_ids`` (graph must stay connected
    from vertex 0's side for the list to be complete; the caller checks)."""
    cdef Csr c
    cdef Scratch s
    cdef int m = len(eu)
    cdef int nbr = 0, i
    cdef char *excl = <char *> malloc(m if m else 1)
    if excl == NULL:
        raise MemoryError()
    memset(excl, 0, m)
    for e in excluded_ids:
        excl[<int> e] = 1
    _csr_build(&c, n, eu, ev)
    try:
        _scratch_alloc(&s, n, m)
    except BaseException:
        _csr_free(&c)
        free(excl)
        raise
    try:
        ok = _bridges_excluded_c(&c, excl, &s, &nbr)
        return bool(ok), sorted(s.out[i] for i in range(nbr))
    finally:
        _scratch_free(&s)
        _csr_free(&c)
        free(excl)


def small_disconnecting_sets(int n, eu, ev, int kmax, limit=1_000_000, deadline=None,
                             expand_supersets=True):
    """All edge subsets of size 1..kmax whose removal disconnects the graph.

    Same contract as the pure-Python twin: exhaustive over all C(m, k)
    subsets via the bridge characterisation, one sorted list of sorted index
    tuples per size.  Links must all be edges.  ``expand_supersets=False``
    skips the non-minimal supersets of smaller disconnecting sets.
    """
    cdef int m = len(eu)
    if kmax > 5:
        raise ValueError("small_disconnecting_sets supports kmax <= 5")
    cdef Csr c
    cdef Scratch s
    cdef int pa, pb, pc, pd, b, i, nbr, connected, prefix_size
    cdef long ticks = 0
    cdef long lim = limit
    cdef double dl = -1.0
    if deadline is not None:
        dl = deadline
    cdef char *excl = <char *> malloc(m if m else 1)
    if excl == NULL:
        raise MemoryError()
    memset(excl, 0, m)
    _csr_build(&c, n, eu, ev)
    try:
        _scratch_alloc(&s, n, m)
    except BaseException:
        _csr_free(&c)
        free(excl)
        raise
    found = [set() for _ in range(kmax)]

    def note(size_idx, tup):
        bucket = found[size_idx]
        bucket.add(tup)
        if len(bucket) > lim:
            raise KernelLimit("disconnecting-set enumeration limit exceeded")

    def expand_supersets_of(base):
        for size_idx in range(len(base), kmax):
            k_extra = size_idx + 1 - len(base)
            others = [f for f in range(m) if f not in base]
            for extra in combinations(others, k_extra):
                note(size_idx, tuple(sorted(base + extra)))

    def check_deadline():
        if dl >= 0.0 and time.monotonic() > dl:
            raise KernelTimeout("cut enumeration deadline exceeded")

    try:
        for prefix_size in range(0, kmax):
            if prefix_size == 0:
                nbr = 0
                connected = _bridges_excluded_c(&c, excl, &s, &nbr)
                if connected:
                    for i in range(nbr):
                        note(0, (s.out[i],))
            elif prefix_size == 1:
                for pa in range(m):
                    ticks += 1
                    if ticks % 2048 == 0:
                        check_deadline()
                    excl[pa] = 1
                    nbr = 0
                    connected = _bridges_excluded_c(&c, excl, &s, &nbr)
                    excl[pa] = 0
                    if not connected:
                        continue
                    for i in range(nbr):
                        b = s.out[i]
                        if b != pa:
                            note(1, tuple(sorted((pa, b))))
            elif prefix_size == 2:
                for pa in range(m):
                    for pb in range(pa + 1, m):
                        ticks += 1
                        if ticks % 2048 == 0:
                            check_deadline()
                        excl[pa] = 1
                        excl[pb] = 1
                        nbr = 0
                        connected = _bridges_excluded_c(&c, excl, &s, &nbr)
                        excl[pa] = 0
                        excl[pb] = 0
                        if not connected:
                            continue
                        for i in range(nbr):
                            b = s.out[i]
                            if b != pa and b != pb:
                                note(2, tuple(sorted((pa, pb, b))))
            elif prefix_size == 3:
                for pa in range(m):
                    for pb in range(pa + 1, m):
                        for pc in range(pb + 1, m):
                            ticks += 1
                            if ticks % 2048 == 0:
                                check_deadline()
                            excl[pa] = 1
                            excl[pb] = 1
                            excl[pc] = 1
                            nbr = 0
                            connected = _bridges_excluded_c(&c, excl, &s, &nbr)
                            excl[pa] = 0
                            excl[pb] = 0
                            excl[pc] = 0
                            if not connected:
                                continue
                            for i in range(nbr):
                                b = s.out[i]
                                if b != pa and b != pb and b != pc:
                                    note(3, tuple(sorted((pa, pb, pc, b))))
            else:
                for pa in range(m):
                    for pb in range(pa + 1, m):
                        for pc in range(pb + 1, m):
                            for pd in range(pc + 1, m):
                                ticks += 1
                                if ticks % 2048 == 0:
                                    check_deadline()
                                excl[pa] = 1
                                excl[pb] = 1
                                excl[pc] = 1
                                excl[pd] = 1
                                nbr = 0
                                connected = _bridges_excluded_c(&c, excl, &s, &nbr)
                                excl[pa] = 0
                                excl[pb] = 0
                                excl[pc] = 0
                                excl[pd] = 0
                                if not connected:
                                    continue
                                for i in range(nbr):
                                    b = s.out[i]
                                    if b != pa and b != pb and b != pc and b != pd:
                                        note(4, tuple(sorted((pa, pb, pc, pd, b))))
        if expand_supersets:
            for size_idx in range(kmax - 1):
                for base in list(found[size_idx]):
                    expand_supersets_of(base)
        return [sorted(found[i]) for i in range(kmax)]
    finally:
        _scratch_free(&s)
        _csr_free(&c)
        free(excl)
