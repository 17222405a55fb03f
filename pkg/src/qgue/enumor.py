"""Brute-force combinatorial ground truth.

Matchings of ``[n]`` (partial pairings) with their crossing and nesting
statistics, and weighted Motzkin paths.  Nothing here is clever on
purpose: every generating function is obtained by visiting every object.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .config import current
from .exceptions import BudgetExceededError
from .qcore import (
    ONE,
    ZERO,
    QPoly,
    double_factorial,
    q_binomial,
    q_double_factorial,
    q_factorial,
    q_integer,
)


@dataclass(frozen=True)
class MatchStats:
    cros: int
    nest: int
    cl_le_j: int = 0

    @property
    def stat(self) -> int:
        return self.cros + 2 * self.nest


@dataclass(frozen=True)
class Matching:
    """A matching on ``{1..n}``: arcs ``(opener, closer)``, the rest isolated."""

    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for a, b in self.arcs:
            if not 1 <= a < b <= self.n:
                raise ValueError(f"invalid arc {(a, b)} on {self.n} vertices")
            if a in seen or b in seen:
                raise ValueError("arcs must be pairwise disjoint")
            seen.update((a, b))

    @property
    def isolated(self) -> tuple[int, ...]:
        used = {v for arc in self.arcs for v in arc}
        return tuple(v for v in range(1, self.n + 1) if v not in used)

    def stats(self, j: int = 0) -> MatchStats:
        """Crossings, nestings and closers ``<= j`` by direct pairwise inspection."""
        cros = nest = 0
        arcs = self.arcs
        for x in range(len(arcs)):
            a, b = arcs[x]
            for y in range(x + 1, len(arcs)):
                c, d = arcs[y]
                if a < c < b < d or c < a < d < b:
                    cros += 1
                elif a < c < d < b or c < a < b < d:
                    nest += 1
        for c in self.isolated:
            for a, b in arcs:
                if a < c < b:
                    cros += 1
                elif c < a:
                    nest += 1
        cl = sum(1 for _, b in arcs if b <= j)
        return MatchStats(cros, nest, cl)

    def first_block_arcs(self, j: int) -> int:
        """Number of arcs with an endpoint among the first ``j`` vertices."""
        return sum(1 for a, _ in self.arcs if a <= j)

    def __str__(self) -> str:
        st = self.stats()
        arcs = "".join(f"({a},{b})" for a, b in self.arcs)
        return f"n={self.n} arcs={arcs} cros={st.cros} nest={st.nest}"


# counting (used only for the budget guard) -------------------------------


@lru_cache(maxsize=None)
def count_matchings(a: int, b: int, first_open: int = 0) -> int:
    """``|Mat_{a,b}|`` or, with ``first_open = j``, the subset with no closer in ``1..j``."""
    if 2 * b > a or b < 0:
        return 0

    @lru_cache(maxsize=None)
    def ways(v: int, open_: int, opened: int) -> int:
        if v > a:
            return 1 if open_ == 0 and opened == b else 0
        iso_used = (v - 1) - opened - (opened - open_)
        total = 0
        if iso_used < a - 2 * b:
            total += ways(v + 1, open_, opened)
        if opened < b:
            total += ways(v + 1, open_ + 1, opened + 1)
        if open_ and v > first_open:
            total += open_ * ways(v + 1, open_ - 1, opened)
        return total

    return ways(1, 0, 0)


def _check_budget(a: int, b: int, first_open: int, budget: int | None) -> int:
    budget = current().enumeration_budget if budget is None else budget
    size = count_matchings(a, b, first_open)
    if size > budget:
        raise BudgetExceededError(size, budget)
    return size


# enumeration -------------------------------------------------------------


def enumerate_matchings(a: int, b: int, first_open: int | None = None) -> Iterator[Matching]:
    """Yield every matching on ``[a]`` with ``b`` arcs exactly once.

    Vertices are scanned left to right; each is isolated, opens an arc, or
    closes one of the currently open arcs.  With ``first_open = j`` the
    first ``j`` vertices may not be closers (pruned during generation).
    """
    if a < 0 or b < 0 or 2 * b > a:
        return
    j = first_open or 0
    n_iso = a - 2 * b
    arcs: list[tuple[int, int]] = []
    open_: list[int] = []

    def rec(v: int, iso: int, opened: int) -> Iterator[Matching]:
        if v > a:
            if not open_ and opened == b:
                yield Matching(a, tuple(sorted(arcs)))
            return
        remaining = a - v + 1
        if 2 * (b - opened) + len(open_) > remaining:
            return
        if iso < n_iso:
            yield from rec(v + 1, iso + 1, opened)
        if opened < b:
            open_.append(v)
            yield from rec(v + 1, iso, opened + 1)
            open_.pop()
        if open_ and v > j:
            for idx in range(len(open_)):
                opener = open_.pop(idx)
                arcs.append((opener, v))
                yield from rec(v + 1, iso, opened)
                arcs.pop()
                open_.insert(idx, opener)

    yield from rec(1, 0, 0)


def stats(m: Matching, j: int = 0) -> MatchStats:
    return m.stats(j)


def _scan_counts(a: int, b: int, first_open: int, j_mark: int,
                 prefix: tuple[int, ...] = ()) -> Counter:
    """Histogram of ``(stat, closers <= j_mark, arcs opened in 1..j_mark)``.

    Statistics are updated incrementally while scanning:

    * isolated ``v``: crosses every currently open arc;
    * opener ``v``: nests with every isolated vertex to its left;
    * closing the open arc at index ``i`` (openers sorted): crosses the
      ``len(open) - 1 - i`` arcs opened later, nests with the ``i`` opened
      earlier.

    ``prefix`` forces the first decisions (0 isolated, 1 open, 2+k close
    open arc ``k``) so disjoint subtrees can be farmed out to workers.
    """
    n_iso = a - 2 * b
    out: Counter = Counter()
    open_: list[int] = []

    def rec(v, iso, opened, st, cl, ifirst):
        if v > a:
            if not open_ and opened == b:
                out[(st, cl, ifirst)] += 1
            return
        if 2 * (b - opened) + len(open_) > a - v + 1:
            return
        depth = v - 1
        forced = prefix[depth] if depth < len(prefix) else None
        n_open = len(open_)
        if iso < n_iso and forced in (None, 0):
            rec(v + 1, iso + 1, opened, st + n_open, cl, ifirst)
        if opened < b and forced in (None, 1):
            open_.append(v)
            rec(v + 1, iso, opened + 1, st + 2 * iso, cl, ifirst + (v <= j_mark))
            open_.pop()
        if n_open and v > first_open:
            new_cl = cl + (v <= j_mark)
            for idx in range(n_open):
                if forced is not None and forced != 2 + idx:
                    continue
                opener = open_.pop(idx)
                rec(v + 1, iso, opened, st + (n_open - 1 - idx) + 2 * idx, new_cl, ifirst)
                open_.insert(idx, opener)

    rec(1, 0, 0, 0, 0, 0)
    return out


def _prefixes(a: int, depth: int) -> list[tuple[int, ...]]:
    # a vertex has at most 2 + (open arcs) choices; over-generate, empty subtrees are harmless
    choices = range(2 + depth)
    out: list[tuple[int, ...]] = [()]
    for _ in range(min(depth, a)):
        out = [p + (c,) for p in out for c in choices]
    return out


def matching_histogram(a: int, b: int, first_open: int = 0, j_mark: int = 0,
                       budget: int | None = None, jobs: int = 1) -> Counter:
    """Visit all of ``Mat_{a,b}`` (optionally restricted) and histogram the statistics."""
    if a < 0 or b < 0 or 2 * b > a:
        return Counter()
    _check_budget(a, b, first_open, budget)
    if jobs <= 1 or a < 8:
        return _scan_counts(a, b, first_open, j_mark)
    depth = 3
    total: Counter = Counter()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_scan_counts, a, b, first_open, j_mark, p) for p in _prefixes(a, depth)]
        for f in futures:
            total.update(f.result())
    return total


def _qpoly_from_exponents(counts: dict[int, int]) -> QPoly:
    return QPoly({e: c for e, c in counts.items() if c})


def matching_sum(p: int, j: int, budget: int | None = None, jobs: int = 1,
                 statistic: str = "stat") -> QPoly:
    """``sum over Mat^{>j}_{2p+j,p}`` of ``q^(cros + 2 nest)``.

    ``statistic="cros"`` weights by ``q^cros`` instead.
    """
    if p < 0 or j < 0:
        raise ValueError("matching_sum requires p, j >= 0")
    a = 2 * p + j
    if statistic == "stat":
        hist = matching_histogram(a, p, first_open=j, budget=budget, jobs=jobs)
        acc: Counter = Counter()
        for (st, _, _), c in hist.items():
            acc[st] += c
        return _qpoly_from_exponents(acc)
    if statistic == "cros":
        _check_budget(a, p, j, budget)
        acc = Counter(m.stats().cros for m in enumerate_matchings(a, p, j))
        return _qpoly_from_exponents(acc)
    raise ValueError(f"unknown statistic {statistic!r}")


def matching_total(N: int, p: int, budget: int | None = None, jobs: int = 1) -> QPoly:
    """Brute-force total moment: ``sum_{j<N} matching_sum(p, j)``."""
    total = QPoly(0)
    for j in range(N):
        total = total + matching_sum(p, j, budget=budget, jobs=jobs)
    return total


def refined_sum(p: int, j: int, i: int, budget: int | None = None) -> QPoly:
    """Sum over ``Mat^{>j}_{2p+j,p}(i)``: exactly ``i`` arcs open in the first ``j`` vertices."""
    hist = matching_histogram(2 * p + j, p, first_open=j, j_mark=j, budget=budget)
    acc: Counter = Counter()
    for (st, _, ifirst), c in hist.items():
        if ifirst == i:
            acc[st] += c
    return _qpoly_from_exponents(acc)


def refined_rhs(p: int, j: int, i: int) -> QPoly:
    """Closed form for the refined class: ``q^e [j choose i] [2p]! / ([2p-2i]!! [i]!)``.

    ``e = (j-i)(2p-i) + i(i-1)/2``; zero when ``i > min(p, j)``.
    """
    if i < 0 or i > min(p, j):
        return ZERO
    quot = q_factorial(2 * p).exact_div(q_double_factorial(2 * p - 2 * i) * q_factorial(i))
    e = (j - i) * (2 * p - i) + i * (i - 1) // 2
    return (q_binomial(j, i) * quot).shift(e)


def refined_identity_check(p: int, j: int, i: int, budget: int | None = None) -> bool:
    return refined_sum(p, j, i, budget) == refined_rhs(p, j, i)


def marked_closer_sides(p: int, j: int, r: int, budget: int | None = None) -> tuple[QPoly, QPoly]:
    """Both sides of the marked-closer identity over unrestricted ``Mat_{2p+j,p}``.

    LHS weights each matching by ``q^stat [cl^{<=j} choose r]_{q^2}``; RHS is
    ``[j choose 2r] [2r-1]!! [j+2p-2r choose 2p-2r] [2p-2r-1]!!``.
    """
    hist = matching_histogram(2 * p + j, p, first_open=0, j_mark=j, budget=budget)
    lhs = ZERO
    by_cl: dict[int, Counter] = {}
    for (st, cl, _), c in hist.items():
        by_cl.setdefault(cl, Counter())[st] += c
    for cl, acc in by_cl.items():
        lhs = lhs + _qpoly_from_exponents(acc) * q_binomial(cl, r, 2)
    if r < 0 or 2 * r > j or r > p:
        rhs = ZERO
    else:
        rhs = (q_binomial(j, 2 * r) * q_double_factorial(2 * r - 1)
               * q_binomial(j + 2 * p - 2 * r, 2 * p - 2 * r) * q_double_factorial(2 * p - 2 * r - 1))
    return lhs, rhs


def marked_closer_check(p: int, j: int, r: int, budget: int | None = None) -> bool:
    """Compare both sides; a ``False`` is a reported violation, not an exception."""
    lhs, rhs = marked_closer_sides(p, j, r, budget)
    return lhs == rhs


def perfect_matching_count(p: int) -> int:
    return double_factorial(2 * p - 1)


# Motzkin paths -----------------------------------------------------------

NE, E, SE = "NE", "E", "SE"


@dataclass(frozen=True)
class MotzkinPath:
    start: int
    steps: tuple[str, ...]

    @property
    def heights(self) -> tuple[int, ...]:
        h = [self.start]
        for s in self.steps:
            h.append(h[-1] + (1 if s == NE else -1 if s == SE else 0))
        return tuple(h)

    @property
    def end(self) -> int:
        return self.heights[-1]

    def __len__(self) -> int:
        return len(self.steps)

    def weight(self, b_seq: Callable[[int], object], lambda_seq: Callable[[int], object]):
        w = 1
        for s, h in zip(self.steps, self.heights):
            if s == E:
                w = w * b_seq(h)
            elif s == SE:
                w = w * lambda_seq(h)
        return w


def enumerate_motzkin_paths(length: int, start: int, end: int,
                            allow_east: bool = True) -> Iterator[MotzkinPath]:
    steps: list[str] = []

    def rec(h: int) -> Iterator[MotzkinPath]:
        left = length - len(steps)
        if abs(h - end) > left:
            return
        if left == 0:
            yield MotzkinPath(start, tuple(steps))
            return
        for s, dh in ((NE, 1), (E, 0), (SE, -1)):
            if s == E and not allow_east:
                continue
            if h + dh < 0:
                continue
            steps.append(s)
            yield from rec(h + dh)
            steps.pop()

    if start < 0 or end < 0 or length < 0:
        return
    yield from rec(start)


def motzkin_weighted_sum(length: int, start: int, end: int,
                         b_seq: Callable[[int], object], lambda_seq: Callable[[int], object]):
    """Sum of ``wt_{b,lam}`` over all Motzkin paths from height ``start`` to ``end``.

    NE steps weigh 1, an E step at height ``k`` weighs ``b_k``, a SE step
    from height ``k`` weighs ``lam_k``.
    """
    total = 0
    for path in enumerate_motzkin_paths(length, start, end):
        total = total + path.weight(b_seq, lambda_seq)
    return total


def hermite_history_weights() -> tuple[Callable[[int], QPoly], Callable[[int], QPoly]]:
    """Recurrence weights of the rescaled q-Hermite family: ``b = 0``, ``lam_k = q^(k-1)[k]_q``."""
    return (lambda k: ZERO), (lambda k: q_integer(k).shift(k - 1) if k else ZERO)


def classical_hermite_count(p: int, j: int) -> int:
    """``(2p-1)!! sum_l C(j,l) C(p,l) 2^l`` (independent integer formula)."""
    return double_factorial(2 * p - 1) * sum(
        math.comb(j, l) * math.comb(p, l) * 2**l for l in range(p + 1)
    )


__all__ = [
    "MatchStats", "Matching", "MotzkinPath", "count_matchings", "enumerate_matchings",
    "stats", "matching_histogram", "matching_sum", "matching_total", "refined_sum", "refined_rhs",
    "refined_identity_check", "marked_closer_sides", "marked_closer_check",
    "enumerate_motzkin_paths", "motzkin_weighted_sum", "hermite_history_weights",
    "perfect_matching_count", "classical_hermite_count", "ONE",
]
