"""Mutable search state with O(deg) move evaluation.

Densities have denominators dividing lcm(1..n), so the running total
D_scaled = D * lcm(1..n) is an integer and every comparison made during a
search is exact. Python integers make overflow a non-issue here.

The state keeps, per community: internal edge count e, degree sum K, and
size. A move delta touches only the two communities involved and costs one
adjacency scan of the moved vertices.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import InputError
from .graph import Graph, Partition, canonicalize


class SearchState:
    """Partition under modification, with exact incremental totals.

    Communities are numbered 1..m in the public interface; internally they
    are compacted 0-based slots (the last slot is swapped in when one
    empties). ``weak_L`` switches on violation tracking for the penalized
    objective used under the weak community constraint.
    """

    def __init__(self, g: Graph, assign0: list[int], m: int, weak_L: int | None = None,
                 fixed_m: bool = False) -> None:
        self.g = g
        self.n = g.n
        self.adj0 = [[w - 1 for w in g.neighbors(v)] for v in range(1, g.n + 1)]
        self.deg0 = list(g.degree)
        self.Z = lcm(*range(1, g.n + 1))
        self.zdiv = [0] + [self.Z // s for s in range(1, g.n + 1)]
        self.weak_L = weak_L
        self.fixed_m = fixed_m
        self.assign = list(assign0)
        self.m = m
        self.e = [0] * m
        self.K = [0] * m
        self.sz = [0] * m
        for v0 in range(self.n):
            c = self.assign[v0]
            self.sz[c] += 1
            self.K[c] += self.deg0[v0]
            for w0 in self.adj0[v0]:
                if w0 > v0 and self.assign[w0] == c:
                    self.e[c] += 1
        if 0 in self.sz:
            raise InputError("state has an empty community")

    @classmethod
    def from_partition(cls, g: Graph, p: Partition, weak_L: int | None = None,
                       fixed_m: bool = False) -> SearchState:
        if len(p.assign) != g.n:
            raise InputError("partition does not match graph")
        return cls(g, [c - 1 for c in p.assign], p.m, weak_L=weak_L, fixed_m=fixed_m)

    # -- totals ---------------------------------------------------------

    def _term(self, e: int, ksum: int, size: int) -> int:
        return (4 * e - ksum) * self.zdiv[size] if size else 0

    def _viol(self, e: int, ksum: int, size: int) -> int:
        if self.weak_L is None or size == 0:
            return 0
        return max(0, ksum + self.weak_L - 4 * e)

    def d_scaled(self) -> int:
        return sum(self._term(self.e[c], self.K[c], self.sz[c]) for c in range(self.m))

    @property
    def D(self) -> Fraction:
        return Fraction(self.d_scaled(), self.Z)

    def violation_sum(self) -> int:
        return sum(self._viol(self.e[c], self.K[c], self.sz[c]) for c in range(self.m))

    @property
    def weak_violations(self) -> int:
        if self.weak_L is None:
            return 0
        return sum(1 for c in range(self.m) if 4 * self.e[c] - self.K[c] < self.weak_L)

    def is_weak_feasible(self) -> bool:
        return self.weak_violations == 0

    def partition(self) -> Partition:
        return canonicalize([c + 1 for c in self.assign])

    def links(self, v: int, community: int) -> int:
        """Edges between vertex v (1-based) and community (1-based)."""
        c = community - 1
        return sum(1 for w0 in self.adj0[v - 1] if self.assign[w0] == c)

    # -- relocate -------------------------------------------------------

    def _relocate_delta(self, v0: int, b: int) -> tuple[int, int]:
        """(scaled D delta, violation-sum delta) for moving v0 to slot b."""
        a = self.assign[v0]
        la = sum(1 for w0 in self.adj0[v0] if self.assign[w0] == a)
        lb = sum(1 for w0 in self.adj0[v0] if self.assign[w0] == b)
        kv = self.deg0[v0]
        ea2, ka2, sa2 = self.e[a] - la, self.K[a] - kv, self.sz[a] - 1
        eb2, kb2, sb2 = self.e[b] + lb, self.K[b] + kv, self.sz[b] + 1
        dd = (
            self._term(ea2, ka2, sa2) + self._term(eb2, kb2, sb2)
            - self._term(self.e[a], self.K[a], self.sz[a])
            - self._term(self.e[b], self.K[b], self.sz[b])
        )
        dv = (
            self._viol(ea2, ka2, sa2) + self._viol(eb2, kb2, sb2)
            - self._viol(self.e[a], self.K[a], self.sz[a])
            - self._viol(self.e[b], self.K[b], self.sz[b])
        )
        return dd, dv

    def delta_relocate(self, v: int, to: int) -> Fraction:
        """Exact density change of moving vertex v to community `to`."""
        v0, b = v - 1, to - 1
        if not 0 <= v0 < self.n:
            raise InputError(f"vertex {v} outside 1..{self.n}")
        if not 0 <= b < self.m:
            raise InputError(f"community {to} outside 1..{self.m}")
        a = self.assign[v0]
        if a == b:
            raise InputError("vertex already in target community")
        if self.sz[a] == 1 and self.fixed_m:
            raise InputError("move would empty a community under fixed m")
        dd, _ = self._relocate_delta(v0, b)
        return Fraction(dd, self.Z)

    def apply_relocate(self, v: int, to: int) -> None:
        v0, b = v - 1, to - 1
        a = self.assign[v0]
        if a == b:
            raise InputError("vertex already in target community")
        if self.sz[a] == 1 and self.fixed_m:
            raise InputError("move would empty a community under fixed m")
        la = sum(1 for w0 in self.adj0[v0] if self.assign[w0] == a)
        lb = sum(1 for w0 in self.adj0[v0] if self.assign[w0] == b)
        kv = self.deg0[v0]
        self.e[a] -= la
        self.K[a] -= kv
        self.sz[a] -= 1
        self.e[b] += lb
        self.K[b] += kv
        self.sz[b] += 1
        self.assign[v0] = b
        if self.sz[a] == 0:
            self._drop_slot(a)

    def _drop_slot(self, a: int) -> None:
        last = self.m - 1
        if a != last:
            for v0 in range(self.n):
                if self.assign[v0] == last:
                    self.assign[v0] = a
            self.e[a], self.K[a], self.sz[a] = self.e[last], self.K[last], self.sz[last]
        del self.e[last:], self.K[last:], self.sz[last:]
        self.m -= 1

    # -- swap -----------------------------------------------------------

    def _swap_delta(self, u0: int, w0: int) -> tuple[int, int]:
        a, b = self.assign[u0], self.assign[w0]
        uw = 1 if w0 in self.adj0[u0] else 0
        lua = sum(1 for x in self.adj0[u0] if self.assign[x] == a)
        lub = sum(1 for x in self.adj0[u0] if self.assign[x] == b)
        lwa = sum(1 for x in self.adj0[w0] if self.assign[x] == a)
        lwb = sum(1 for x in self.adj0[w0] if self.assign[x] == b)
        ea2 = self.e[a] - lua + lwa - uw
        eb2 = self.e[b] - lwb + lub - uw
        ka2 = self.K[a] - self.deg0[u0] + self.deg0[w0]
        kb2 = self.K[b] - self.deg0[w0] + self.deg0[u0]
        dd = (
            self._term(ea2, ka2, self.sz[a]) + self._term(eb2, kb2, self.sz[b])
            - self._term(self.e[a], self.K[a], self.sz[a])
            - self._term(self.e[b], self.K[b], self.sz[b])
        )
        dv = (
            self._viol(ea2, ka2, self.sz[a]) + self._viol(eb2, kb2, self.sz[b])
            - self._viol(self.e[a], self.K[a], self.sz[a])
            - self._viol(self.e[b], self.K[b], self.sz[b])
        )
        return dd, dv

    def delta_swap(self, u: int, w: int) -> Fraction:
        """Exact density change of exchanging the communities of u and w."""
        u0, w0 = u - 1, w - 1
        if self.assign[u0] == self.assign[w0]:
            raise InputError("swap needs vertices from different communities")
        dd, _ = self._swap_delta(u0, w0)
        return Fraction(dd, self.Z)

    def apply_swap(self, u: int, w: int) -> None:
        u0, w0 = u - 1, w - 1
        a, b = self.assign[u0], self.assign[w0]
        if a == b:
            raise InputError("swap needs vertices from different communities")
        uw = 1 if w0 in self.adj0[u0] else 0
        lua = sum(1 for x in self.adj0[u0] if self.assign[x] == a)
        lub = sum(1 for x in self.adj0[u0] if self.assign[x] == b)
        lwa = sum(1 for x in self.adj0[w0] if self.assign[x] == a)
        lwb = sum(1 for x in self.adj0[w0] if self.assign[x] == b)
        self.e[a] += -lua + lwa - uw
        self.e[b] += -lwb + lub - uw
        self.K[a] += -self.deg0[u0] + self.deg0[w0]
        self.K[b] += -self.deg0[w0] + self.deg0[u0]
        self.assign[u0], self.assign[w0] = b, a

    # -- merge ----------------------------------------------------------

    def _merge_delta(self, a: int, b: int) -> tuple[int, int, int]:
        """(scaled D delta, violation delta, cross edges) for joining b into a."""
        cross = 0
        for v0 in range(self.n):
            if self.assign[v0] == a:
                for w0 in self.adj0[v0]:
                    if self.assign[w0] == b:
                        cross += 1
        e2 = self.e[a] + self.e[b] + cross
        k2 = self.K[a] + self.K[b]
        s2 = self.sz[a] + self.sz[b]
        dd = (
            self._term(e2, k2, s2)
            - self._term(self.e[a], self.K[a], self.sz[a])
            - self._term(self.e[b], self.K[b], self.sz[b])
        )
        dv = (
            self._viol(e2, k2, s2)
            - self._viol(self.e[a], self.K[a], self.sz[a])
            - self._viol(self.e[b], self.K[b], self.sz[b])
        )
        return dd, dv, cross

    def apply_merge(self, a: int, b: int, cross: int) -> None:
        self.e[a] += self.e[b] + cross
        self.K[a] += self.K[b]
        self.sz[a] += self.sz[b]
        for v0 in range(self.n):
            if self.assign[v0] == b:
                self.assign[v0] = a
        self._drop_slot(b)

    # -- split ----------------------------------------------------------

    def best_split(self, c: int) -> tuple[int, int, frozenset[int]] | None:
        """Best greedy bisection of slot c.

        Peels vertices one at a time, always the one with the largest
        external-minus-internal link balance, and keeps the prefix with the
        best exact objective change. Returns (scaled D delta, violation
        delta, peeled vertex set) or None for singleton communities.
        """
        members = sorted(v0 for v0 in range(self.n) if self.assign[v0] == c)
        if len(members) < 2:
            return None
        stay = set(members)
        peel: set[int] = set()
        e_stay, k_stay = self.e[c], self.K[c]
        e_peel = k_peel = 0
        base_term = self._term(self.e[c], self.K[c], self.sz[c])
        base_viol = self._viol(self.e[c], self.K[c], self.sz[c])
        best: tuple[int, int, frozenset[int]] | None = None
        for _ in range(len(members) - 1):
            pick = -1
            pick_gain = None
            for v0 in sorted(stay):
                inside = sum(1 for w0 in self.adj0[v0] if w0 in stay and w0 != v0)
                outside = sum(1 for w0 in self.adj0[v0] if w0 in peel)
                gain = outside - inside
                if pick_gain is None or gain > pick_gain:
                    pick, pick_gain = v0, gain
            inside = sum(1 for w0 in self.adj0[pick] if w0 in stay and w0 != pick)
            outside = sum(1 for w0 in self.adj0[pick] if w0 in peel)
            stay.remove(pick)
            peel.add(pick)
            e_stay -= inside
            e_peel += outside
            k_stay -= self.deg0[pick]
            k_peel += self.deg0[pick]
            dd = self._term(e_stay, k_stay, len(stay)) + self._term(e_peel, k_peel, len(peel)) - base_term
            dv = self._viol(e_stay, k_stay, len(stay)) + self._viol(e_peel, k_peel, len(peel)) - base_viol
            if best is None or dd > best[0]:
                best = (dd, dv, frozenset(peel))
        return best

    def apply_split(self, c: int, peel: frozenset[int]) -> None:
        new = self.m
        self.e.append(0)
        self.K.append(0)
        self.sz.append(0)
        self.m += 1
        for v0 in peel:
            self.assign[v0] = new
        e_new = 0
        cross = 0
        for v0 in peel:
            for w0 in self.adj0[v0]:
                if w0 > v0 and self.assign[w0] == new:
                    e_new += 1
                elif self.assign[w0] == c:
                    cross += 1
        k_new = sum(self.deg0[v0] for v0 in peel)
        self.e[new] = e_new
        self.K[new] = k_new
        self.sz[new] = len(peel)
        self.e[c] -= e_new + cross
        self.K[c] -= k_new
        self.sz[c] -= len(peel)

    # -- integrity ------------------------------------------------------

    def verify(self) -> None:
        """Assert running counts match a fresh recomputation."""
        fresh = SearchState(self.g, self.assign, self.m, weak_L=self.weak_L)
        assert fresh.e == self.e, (fresh.e, self.e)
        assert fresh.K == self.K, (fresh.K, self.K)
        assert fresh.sz == self.sz, (fresh.sz, self.sz)


def delta_relocate(state: SearchState, v: int, frm: int, to: int) -> Fraction:
    """Density change of moving v from community `frm` to `to` (1-based)."""
    if state.assign[v - 1] != frm - 1:
        raise InputError(f"vertex {v} is not in community {frm}")
    return state.delta_relocate(v, to)
