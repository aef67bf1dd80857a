"""Density maximization: exhaustive oracle, exact search, local search.

Three methods share one result type:

* ``solve_exhaustive`` walks every set partition (restricted-growth order)
  of graphs up to 14 vertices. It is the trust anchor the other methods are
  tested against.
* ``solve_branch_and_bound`` proves the optimum for a fixed community count
  with a degree-based bound (see ``_bnb``).
* ``solve_local_search`` runs seeded multi-start steepest descent over
  relocate, swap, merge, and split moves; with the weak constraint active
  the descent objective is penalized and infeasible local optima are
  discarded.

All value comparisons are exact (integers scaled by lcm(1..n)); identical
graph + config always reproduces the identical result, including counters.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator

import numpy as np

from ._bnb import HAVE_NUMBA, bnb_kernel, bnb_python
from .errors import InputError, SolverError
from .graph import Graph, Partition, canonicalize
from .metrics import CommunityReport, full_report
from .numformat import rational_str, sig_str
from .state import SearchState

EXHAUSTIVE_MAX_N = 14

METHODS = ("exhaustive", "bnb", "local-search")


@dataclass(frozen=True)
class SolverConfig:
    """Shared knobs for all methods.

    m_min/m_max bound the community count (m_max=None means up to n); a
    single community is excluded unless ``include_single_community`` is set.
    ``penalty_rho`` weights weak-constraint violations in the local-search
    objective (default: n, large enough to dominate any single-move gain).
    """

    method: str = "local-search"
    m_min: int | None = None
    m_max: int | None = None
    weak_L: int | None = None
    seed: int = 0
    restarts: int = 32
    max_stale_iterations: int = 10_000
    penalty_rho: Fraction | int | None = None
    include_single_community: bool = False

    def resolved_range(self, n: int) -> tuple[int, int]:
        lo = self.m_min if self.m_min is not None else (1 if self.include_single_community else 2)
        hi = self.m_max if self.m_max is not None else n
        floor = 1 if self.include_single_community else 2
        if lo < floor:
            raise InputError(f"m_min={lo} below {floor} (single community needs the explicit flag)")
        if hi < lo:
            raise InputError(f"empty community-count range {lo}..{hi}")
        if hi > n:
            raise InputError(f"m_max={hi} exceeds vertex count {n}")
        return lo, hi

    def validate(self) -> None:
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.weak_L not in (None, 0, 1):
            raise InputError(f"weak_L must be 0 or 1, got {self.weak_L}")
        if self.restarts < 1:
            raise InputError("restarts must be positive")
        if self.max_stale_iterations < 1:
            raise InputError("max_stale_iterations must be positive")
        if self.penalty_rho is not None and Fraction(self.penalty_rho) <= 0:
            raise InputError("penalty_rho must be positive")


@dataclass(frozen=True)
class SolveResult:
    method: str
    status: str  # "proved-optimal" | "heuristic"
    best: Partition
    D: Fraction
    report: CommunityReport
    m: int
    nodes_or_iterations: int
    wall_time: float
    seed: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "status": self.status,
            "seed": self.seed,
            "m": self.m,
            "D": sig_str(self.D),
            "D_rational": rational_str(self.D),
            "partition": {str(v): c for v, c in enumerate(self.best.assign, start=1)},
            "report": self.report.to_json_dict(),
            "nodes_or_iterations": self.nodes_or_iterations,
        }


def enumerate_partitions(n: int, m: int | None = None) -> Iterator[Partition]:
    """Every set partition of {1..n} in restricted-growth order.

    Labels in each emitted partition are canonical (first appearance order).
    With `m`, only partitions with exactly m blocks are produced. Refuses
    n > 14: the count is the n-th Bell number, which passes 10^8 there.
    """
    if n < 1:
        raise InputError("n must be positive")
    if n > EXHAUSTIVE_MAX_N:
        raise SolverError(
            f"refusing n={n}: the number of set partitions (Bell numbers) "
            f"explodes combinatorially beyond n={EXHAUSTIVE_MAX_N}"
        )
    if m is not None and not 1 <= m <= n:
        raise InputError(f"block count {m} outside 1..{n}")
    a = [1] * n
    mx = [1] * n  # running max of a[0..i]
    while True:
        if m is None or mx[n - 1] == m:
            yield Partition(assign=tuple(a), m=mx[n - 1])
        i = n - 1
        while i > 0 and a[i] > mx[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        mx[i] = mx[i - 1] if mx[i - 1] > a[i] else a[i]
        for j in range(i + 1, n):
            a[j] = 1
            mx[j] = mx[i]


def _adj0(g: Graph) -> list[list[int]]:
    return [[w - 1 for w in g.neighbors(v)] for v in range(1, g.n + 1)]


def solve_exhaustive(g: Graph, cfg: SolverConfig) -> SolveResult:
    """Scan all partitions in the configured range; exact and proved."""
    cfg.validate()
    if g.n > EXHAUSTIVE_MAX_N:
        raise SolverError(
            f"exhaustive search refuses n={g.n}: Bell-number growth makes "
            f"anything beyond n={EXHAUSTIVE_MAX_N} intractable to scan"
        )
    m_lo, m_hi = cfg.resolved_range(g.n)
    weak = -1 if cfg.weak_L is None else cfg.weak_L
    t0 = time.perf_counter()
    n = g.n
    adj = _adj0(g)
    deg = list(g.degree)
    Z = lcm(*range(1, n + 1))
    zdiv = [0] + [Z // s for s in range(1, n + 1)]
    assign = [0] * n
    e = [0] * n
    K = [0] * n
    sz = [0] * n
    best: int | None = None
    best_assign: list[int] | None = None
    scanned = 0

    def rec(i: int, used: int) -> None:
        nonlocal best, best_assign, scanned
        if i == n:
            if used < m_lo:
                return
            scanned += 1
            if weak >= 0 and any(4 * e[c] - K[c] < weak for c in range(used)):
                return
            dsc = sum((4 * e[c] - K[c]) * zdiv[sz[c]] for c in range(used))
            if best is None or dsc > best:
                best = dsc
                best_assign = assign.copy()
            return
        cnt = [0] * (used + 1)
        for w in adj[i]:
            if w < i:
                cnt[assign[w]] += 1
        top = used + 1 if used < m_hi else used
        for c in range(top):
            new = 1 if c == used else 0
            if used + new + (n - i - 1) < m_lo:
                continue
            assign[i] = c
            e[c] += cnt[c] if c < used else 0
            K[c] += deg[i]
            sz[c] += 1
            rec(i + 1, used + new)
            e[c] -= cnt[c] if c < used else 0
            K[c] -= deg[i]
            sz[c] -= 1

    rec(0, 0)
    if best is None or best_assign is None:
        raise SolverError("no partition satisfies the active constraints")
    partition = canonicalize([c + 1 for c in best_assign])
    report = full_report(g, partition)
    return SolveResult(
        method="exhaustive",
        status="proved-optimal",
        best=partition,
        D=Fraction(best, Z),
        report=report,
        m=partition.m,
        nodes_or_iterations=scanned,
        wall_time=time.perf_counter() - t0,
        seed=None,
    )


def solve_branch_and_bound(g: Graph, cfg: SolverConfig) -> SolveResult:
    """Prove the optimum for a fixed community count."""
    cfg.validate()
    m_lo, m_hi = cfg.resolved_range(g.n)
    if m_lo != m_hi:
        raise InputError("branch-and-bound needs a fixed community count (m_min == m_max)")
    m = m_lo
    n = g.n
    t0 = time.perf_counter()
    adj = _adj0(g)
    deg = list(g.degree)
    order = sorted(range(n), key=lambda v: (-deg[v], v))
    sufmax = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        sufmax[i] = max(sufmax[i + 1], deg[order[i]])
    Z = lcm(*range(1, n + 1))
    zdiv = [0] + [Z // s for s in range(1, n + 1)]
    weak = -1 if cfg.weak_L is None else cfg.weak_L

    # int64 safety for the kernel: largest magnitudes are the scaled bound
    # (<= n*maxdeg*Z) and the scaled density (<= 6|E|*Z)
    top = max(n * max(deg, default=1), 6 * max(g.edge_count, 1)) * Z
    if HAVE_NUMBA and top < 2**62:
        nbr_ptr = np.zeros(n + 1, np.int64)
        for i in range(n):
            nbr_ptr[i + 1] = nbr_ptr[i] + deg[i]
        nbr_idx = np.zeros(int(nbr_ptr[n]), np.int64)
        k = 0
        for i in range(n):
            for w in adj[i]:
                nbr_idx[k] = w
                k += 1
        out = np.full(n, -1, np.int64)
        best, nodes, found = bnb_kernel(
            n,
            m,
            nbr_idx,
            nbr_ptr,
            np.array(deg, np.int64),
            np.array(order, np.int64),
            np.array(sufmax, np.int64),
            np.array(zdiv, np.int64),
            weak,
            out,
        )
        best = int(best)
        nodes = int(nodes)
        best_assign = [int(x) for x in out] if found else None
    else:
        best, nodes, best_assign = bnb_python(n, m, adj, deg, order, sufmax, zdiv, weak)
    if best_assign is None:
        raise SolverError("no partition satisfies the active constraints")
    partition = canonicalize([c + 1 for c in best_assign])
    report = full_report(g, partition)
    return SolveResult(
        method="bnb",
        status="proved-optimal",
        best=partition,
        D=Fraction(best, Z),
        report=report,
        m=partition.m,
        nodes_or_iterations=nodes,
        wall_time=time.perf_counter() - t0,
        seed=None,
    )


def _descend(st: SearchState, m_lo: int, m_hi: int, rho: Fraction, max_iters: int) -> int:
    """Steepest descent over relocate, swap, merge, split. Returns iterations."""
    rho_num, rho_den = rho.numerator, rho.denominator

    def score(dd: int, dv: int) -> int:
        return dd * rho_den - rho_num * st.Z * dv

    iters = 0
    while iters < max_iters:
        iters += 1
        # relocate
        best = None
        for v0 in range(st.n):
            a = st.assign[v0]
            if st.sz[a] == 1 and st.m - 1 < m_lo:
                continue
            for b in range(st.m):
                if b == a:
                    continue
                s = score(*st._relocate_delta(v0, b))
                if s > 0 and (best is None or s > best[0]):
                    best = (s, v0, b)
        if best is not None:
            st.apply_relocate(best[1] + 1, best[2] + 1)
            continue
        # swap
        best = None
        for u0 in range(st.n):
            for w0 in range(u0 + 1, st.n):
                if st.assign[u0] == st.assign[w0]:
                    continue
                s = score(*st._swap_delta(u0, w0))
                if s > 0 and (best is None or s > best[0]):
                    best = (s, u0, w0)
        if best is not None:
            st.apply_swap(best[1] + 1, best[2] + 1)
            continue
        # merge
        best = None
        if st.m - 1 >= m_lo:
            for a in range(st.m):
                for b in range(a + 1, st.m):
                    dd, dv, cross = st._merge_delta(a, b)
                    s = score(dd, dv)
                    if s > 0 and (best is None or s > best[0]):
                        best = (s, a, b, cross)
        if best is not None:
            st.apply_merge(best[1], best[2], best[3])
            continue
        # split
        best = None
        if st.m + 1 <= m_hi:
            for c in range(st.m):
                found = st.best_split(c)
                if found is None:
                    continue
                dd, dv, peel = found
                s = score(dd, dv)
                if s > 0 and (best is None or s > best[0]):
                    best = (s, c, peel)
        if best is not None:
            st.apply_split(best[1], best[2])
            continue
        break
    return iters


def solve_local_search(g: Graph, cfg: SolverConfig) -> SolveResult:
    """Multi-start steepest descent; deterministic for a given seed."""
    cfg.validate()
    m_lo, m_hi = cfg.resolved_range(g.n)
    n = g.n
    t0 = time.perf_counter()
    rho = Fraction(cfg.penalty_rho) if cfg.penalty_rho is not None else Fraction(n)
    best: tuple[int, int, list[int], int] | None = None
    total_iters = 0
    Z = lcm(*range(1, n + 1))
    for r in range(cfg.restarts):
        rng = random.Random(cfg.seed + r)
        m0 = rng.randint(m_lo, min(m_hi, n))
        assign = [rng.randrange(m0) for _ in range(n)]
        for c in range(m0):
            if c not in assign:
                donors = [v for v in range(n) if assign.count(assign[v]) > 1]
                assign[rng.choice(donors)] = c
        st = SearchState(g, assign, m0, weak_L=cfg.weak_L)
        total_iters += _descend(st, m_lo, m_hi, rho, cfg.max_stale_iterations)
        if cfg.weak_L is not None and not st.is_weak_feasible():
            continue
        d = st.d_scaled()
        if best is None or d > best[0]:
            best = (d, r, list(st.assign), st.m)
    if best is None:
        raise SolverError(
            "no weak-feasible local optimum found; increase restarts or drop the constraint"
        )
    partition = canonicalize([c + 1 for c in best[2]])
    report = full_report(g, partition)
    return SolveResult(
        method="local-search",
        status="heuristic",
        best=partition,
        D=Fraction(best[0], Z),
        report=report,
        m=partition.m,
        nodes_or_iterations=total_iters,
        wall_time=time.perf_counter() - t0,
        seed=cfg.seed,
    )


def solve(g: Graph, cfg: SolverConfig) -> SolveResult:
    """Dispatch on cfg.method."""
    cfg.validate()
    if cfg.method == "exhaustive":
        return solve_exhaustive(g, cfg)
    if cfg.method == "bnb":
        return solve_branch_and_bound(g, cfg)
    return solve_local_search(g, cfg)
