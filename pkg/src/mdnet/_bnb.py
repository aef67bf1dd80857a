"""Depth-first exact search kernel for fixed community count.

Vertices are assigned in a fixed order (descending degree); a vertex may
join any occupied community slot or open the next unused one, which walks
each set partition exactly once. A node is cut when its optimistic value
bound cannot beat the incumbent: each community's final density is at most
the largest degree it can still contain, so

    bound = sum_l max(maxdeg(members_l), maxdeg(unassigned))

with unopened slots bounded by maxdeg(unassigned) alone. Densities are
compared as integers scaled by lcm(1..n); the numba kernel is used whenever
those integers provably fit in int64, with a plain-Python twin as fallback.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def bnb_kernel(n, m, nbr_idx, nbr_ptr, deg, order, sufmax, zdiv, weak_l, best_assign):
    """Returns (best_scaled, nodes, found). best_assign is filled in place."""
    assign = np.full(n, -1, np.int64)
    a = np.zeros(m, np.int64)  # 4e - K per slot
    sz = np.zeros(m, np.int64)
    cmax = np.zeros(m, np.int64)
    used = 0
    nxt = np.zeros(n + 1, np.int64)
    chosen = np.full(n, -1, np.int64)
    opened = np.zeros(n, np.int8)
    prev_cmax = np.zeros(n, np.int64)
    cnt = np.zeros((n, m), np.int64)
    best = np.int64(-(2**62))
    nodes = np.int64(0)
    found = False

    pos = 0
    nxt[0] = 0
    while pos >= 0:
        if pos == n:
            ok = True
            if weak_l >= 0:
                for l in range(m):
                    if a[l] < weak_l:
                        ok = False
                        break
            if ok:
                dsc = np.int64(0)
                for l in range(m):
                    dsc += a[l] * zdiv[sz[l]]
                if dsc > best:
                    best = dsc
                    found = True
                    for i in range(n):
                        best_assign[i] = assign[i]
            pos -= 1
            v = order[pos]
            c = chosen[pos]
            a[c] -= 4 * cnt[pos, c] - deg[v]
            sz[c] -= 1
            cmax[c] = prev_cmax[pos]
            if opened[pos] == 1:
                used -= 1
            assign[v] = -1
            continue
        v = order[pos]
        if nxt[pos] == 0:
            for l in range(m):
                cnt[pos, l] = 0
            for ii in range(nbr_ptr[v], nbr_ptr[v + 1]):
                w = nbr_idx[ii]
                if assign[w] >= 0:
                    cnt[pos, assign[w]] += 1
        c = nxt[pos]
        hi = used + 1 if used < m else used
        pick = -1
        while c < hi:
            used2 = used + 1 if c == used else used
            if n - pos - 1 >= m - used2:
                sm = sufmax[pos + 1]
                b = np.int64(0)
                for l in range(used2):
                    cm = cmax[l]
                    if l == c and deg[v] > cm:
                        cm = deg[v]
                    b += cm if cm > sm else sm
                b += (m - used2) * sm
                if b * zdiv[1] > best:
                    pick = c
                    break
            c += 1
        if pick < 0:
            pos -= 1
            if pos >= 0:
                v = order[pos]
                c = chosen[pos]
                a[c] -= 4 * cnt[pos, c] - deg[v]
                sz[c] -= 1
                cmax[c] = prev_cmax[pos]
                if opened[pos] == 1:
                    used -= 1
                assign[v] = -1
            continue
        nxt[pos] = pick + 1
        nodes += 1
        chosen[pos] = pick
        prev_cmax[pos] = cmax[pick]
        if pick == used:
            opened[pos] = 1
            used += 1
        else:
            opened[pos] = 0
        a[pick] += 4 * cnt[pos, pick] - deg[v]
        sz[pick] += 1
        if deg[v] > cmax[pick]:
            cmax[pick] = deg[v]
        assign[v] = pick
        pos += 1
        nxt[pos] = 0
    return best, nodes, found


def bnb_python(n, m, adj0, deg, order, sufmax, zdiv, weak_l):
    """Reference twin of the kernel; identical traversal, plain integers."""
    assign = [-1] * n
    a = [0] * m
    sz = [0] * m
    cmax = [0] * m
    used = 0
    nxt = [0] * (n + 1)
    chosen = [-1] * n
    opened = [0] * n
    prev_cmax = [0] * n
    cnt = [[0] * m for _ in range(n)]
    best = None
    best_assign = None
    nodes = 0

    def undo(pos: int) -> None:
        nonlocal used
        v = order[pos]
        c = chosen[pos]
        a[c] -= 4 * cnt[pos][c] - deg[v]
        sz[c] -= 1
        cmax[c] = prev_cmax[pos]
        if opened[pos]:
            used -= 1
        assign[v] = -1

    pos = 0
    nxt[0] = 0
    while pos >= 0:
        if pos == n:
            if weak_l < 0 or all(a[l] >= weak_l for l in range(m)):
                dsc = sum(a[l] * zdiv[sz[l]] for l in range(m))
                if best is None or dsc > best:
                    best = dsc
                    best_assign = assign.copy()
            pos -= 1
            undo(pos)
            continue
        v = order[pos]
        if nxt[pos] == 0:
            row = cnt[pos]
            for l in range(m):
                row[l] = 0
            for w in adj0[v]:
                if assign[w] >= 0:
                    row[assign[w]] += 1
        c = nxt[pos]
        hi = used + 1 if used < m else used
        pick = -1
        while c < hi:
            used2 = used + 1 if c == used else used
            if n - pos - 1 >= m - used2:
                sm = sufmax[pos + 1]
                b = 0
                for l in range(used2):
                    cm = cmax[l]
                    if l == c and deg[v] > cm:
                        cm = deg[v]
                    b += cm if cm > sm else sm
                b += (m - used2) * sm
                if best is None or b * zdiv[1] > best:
                    pick = c
                    break
            c += 1
        if pick < 0:
            pos -= 1
            if pos >= 0:
                undo(pos)
            continue
        nxt[pos] = pick + 1
        nodes += 1
        chosen[pos] = pick
        prev_cmax[pos] = cmax[pick]
        opened[pos] = 1 if pick == used else 0
        if pick == used:
            used += 1
        a[pick] += 4 * cnt[pos][pick] - deg[v]
        sz[pick] += 1
        if deg[v] > cmax[pick]:
            cmax[pick] = deg[v]
        assign[v] = pick
        pos += 1
        nxt[pos] = 0
    return best, nodes, best_assign
