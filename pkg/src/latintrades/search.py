"""Spectrum machinery: the feasible-volume closure, exhaustive search and
constructive certificates.

The closure N(t) is a necessary condition for a volume to occur in S(t, t+1):

* N(1) = {0, 2, 3, 4, ...}
* s is in N(t) iff s = 0, or s = 2a with a a nonzero member of N(t-1), or s
  is a sum of at least three nonzero members of N(t-1).

It mirrors the level argument: in any direction a nonzero trade splits into
at least two nonempty levels, and exactly two levels force equal volumes.
"""

from __future__ import annotations

import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product

from .construct import (ConstructionError, compose, critical_trade, critical_volume,
                        cyclic_one_trade, double, pad_to_k, shift, two_trade)
from .core import (Params, ParameterError, Trade, empty_trade, foundation,
                   from_frequency, FrequencyVector, to_frequency, trade_to_dict,
                   verify, volume)
from . import fixtures
from .inclusion import CapacityError, build_inclusion_matrix, null_check

CLOSURE_LABEL = "necessary condition"


# Closure -----------------------------------------------------------------

@dataclass(frozen=True)
class ClosureSet:
    t: int
    s_max: int
    members: frozenset[int]
    label: str = CLOSURE_LABEL

    def __contains__(self, s: int) -> bool:
        if not 0 <= s <= self.s_max:
            raise ValueError(f"{s} is outside the computed range 0..{self.s_max}")
        return s in self.members

    @property
    def excluded(self) -> list[int]:
        return [s for s in range(self.s_max + 1) if s not in self.members]


def feasible_closure(t: int, s_max: int) -> ClosureSet:
    if t < 1:
        raise ParameterError("closure is defined for t >= 1")
    if s_max < 0:
        raise ParameterError("s_max must be non-negative")
    members = {0} | set(range(2, s_max + 1))
    for _ in range(2, t + 1):
        parts = sorted(members - {0})
        # reach[c][s]: s is a sum of exactly c parts (c capped at 3, meaning >= 3)
        reach = [[False] * (s_max + 1) for _ in range(4)]
        reach[0][0] = True
        for s in range(1, s_max + 1):
            for c in (1, 2, 3):
                reach[c][s] = any(
                    reach[c - 1][s - p] or (c == 3 and reach[3][s - p])
                    for p in parts if p <= s)
        new = {0}
        new |= {2 * a for a in parts if 2 * a <= s_max}
        new |= {s for s in range(s_max + 1) if reach[3][s]}
        members = new
    return ClosureSet(t, s_max, frozenset(members))


def critical_points(t: int) -> list[int]:
    if t < 1:
        raise ParameterError("critical points are defined for t >= 1")
    return [critical_volume(t, i) for i in range(t + 2)]


def min_volume(t: int) -> int:
    """Smallest positive volume of any t-trade, for every k >= t."""
    return 2 ** t


# Verdicts ----------------------------------------------------------------

class VerdictKind(str, Enum):
    CERTIFICATE = "certificate"
    EXHAUSTED_NONEXISTENT = "exhausted_nonexistent"
    CLOSURE_EXCLUDED = "closure_excluded"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchVerdict:
    kind: VerdictKind
    certificate: Trade | None = None
    bound: dict | None = None
    nodes: int = 0
    method: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind.value,
                "certificate": trade_to_dict(self.certificate) if self.certificate else None,
                "bound": self.bound,
                "method": self.method}


def _env_number(name, default, cast):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    if raw.lower() == "none":
        return None
    return cast(raw)


@dataclass(frozen=True)
class Budget:
    """Limits for one exhaustive search; ``None`` means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None

    @classmethod
    def default(cls) -> Budget:
        return cls(_env_number("LATINTRADES_MAX_NODES", 200_000_000, int),
                   _env_number("LATINTRADES_MAX_SECONDS", 600.0, float))


class _BudgetExceeded(Exception):
    pass


class _Found(Exception):
    pass


# Exhaustive search --------------------------------------------------------

def symbol_bound(t: int, s: int) -> int:
    """Distinct symbols any single coordinate of a volume-s t-trade can hold.

    With t >= 1 each symbol x used at coordinate j is balanced, so its level
    is a nonempty (t-1)-trade of volume >= 2^(t-1); the levels' volumes sum
    to s. With t = 0 the two sides need not share symbols.
    """
    if t == 0:
        return max(2 * s, 1)
    return max(s // 2 ** (t - 1), 1)


class _Dfs:
    """Depth-first search over frequency vectors on [1..V]^k in lex order.

    Symbols of every coordinate must first appear in increasing order along
    the lexicographic order of the support (any trade can be relabelled
    coordinate-wise to satisfy this), and the first support block, which is
    then (1, ..., 1), carries a positive entry (sides may be swapped).
    """

    def __init__(self, t, k, s, budget: Budget):
        self.t, self.k, self.s = t, k, s
        self.V = V = symbol_bound(t, s)
        self.floor = 2 ** (t - 1) if t >= 1 else 0
        self.blocks = list(product(range(1, V + 1), repeat=k))
        subsets = list(combinations(range(k), t))
        self.n_sub = len(subsets)
        n_u = V ** t

        def key_id(si, I, b):
            u = 0
            for j in I:
                u = u * V + b[j] - 1
            return si * n_u + u

        self.block_keys = [tuple(key_id(si, I, b) for si, I in enumerate(subsets))
                           for b in self.blocks]
        # the last block (in lex order) containing a key is where it must be zero
        last = {}
        for idx, ks in enumerate(self.block_keys):
            for key in ks:
                last[key] = idx
        self.closing = [[] for _ in self.blocks]
        for key, idx in last.items():
            self.closing[idx].append(key)
        self.n_keys = self.n_sub * n_u
        self.budget = budget
        self.nodes = 0
        self.solution = None

    def run(self) -> bool:
        t, k, s, V = self.t, self.k, self.s, self.V
        floor = self.floor
        blocks, block_keys, closing = self.blocks, self.block_keys, self.closing
        n_blocks = len(blocks)
        n_sub = self.n_sub
        n_u = V ** t
        count = [0] * self.n_keys
        posdef = [0] * n_sub  # per subset: sum of positive counters
        negdef = [0] * n_sub
        pm = [[0] * (V + 1) for _ in range(k)]  # level masses per coordinate
        nm = [[0] * (V + 1) for _ in range(k)]
        level_need = [0] * k
        maxsym = [0] * k
        mult = [0] * n_blocks
        state = {"pos": 0, "neg": 0}
        max_nodes = self.budget.max_nodes
        deadline = (time.monotonic() + self.budget.max_seconds
                    if self.budget.max_seconds is not None else None)
        use_levels = t >= 1

        def apply(idx, m, undo=False):
            """Add entry m at block idx, or take it away again."""
            b = blocks[idx]
            d = -m if undo else m
            for key in block_keys[idx]:
                si = key // n_u
                c = count[key]
                nc = c + d
                count[key] = nc
                posdef[si] += (nc if nc > 0 else 0) - (c if c > 0 else 0)
                negdef[si] += (-nc if nc < 0 else 0) - (-c if c < 0 else 0)
            amount = abs(d) if not undo else -abs(d)
            positive = m > 0
            state["pos" if positive else "neg"] += amount
            if use_levels:
                masses = pm if positive else nm
                for j in range(k):
                    x = b[j]
                    p, q = pm[j][x], nm[j][x]
                    old = max(p, q, floor) if (p or q) else 0
                    masses[j][x] += amount
                    p, q = pm[j][x], nm[j][x]
                    new = max(p, q, floor) if (p or q) else 0
                    level_need[j] += new - old

        def feasible(idx):
            pos, neg = state["pos"], state["neg"]
            if pos > s or neg > s:
                return False
            for key in closing[idx]:
                if count[key]:
                    return False
            pr, nr = s - pos, s - neg
            for si in range(n_sub):
                if posdef[si] > nr or negdef[si] > pr:
                    return False
            if use_levels:
                for j in range(k):
                    if level_need[j] > s:
                        return False
            return True

        def dfs(idx):
            self.nodes += 1
            if max_nodes is not None and self.nodes > max_nodes:
                raise _BudgetExceeded
            if deadline is not None and not self.nodes & 0xFFF and time.monotonic() > deadline:
                raise _BudgetExceeded
            if state["pos"] == s and state["neg"] == s:
                if not any(count):
                    self.solution = list(mult)
                    raise _Found
                return
            if idx == n_blocks:
                return
            b = blocks[idx]
            if b[0] > maxsym[0] + 1:
                return  # no later block may open a new first-coordinate symbol
            allowed = all(b[j] <= maxsym[j] + 1 for j in range(1, k))
            first = state["pos"] == 0 and state["neg"] == 0
            if allowed:
                saved = list(maxsym)
                for j in range(k):
                    if b[j] > maxsym[j]:
                        maxsym[j] = b[j]
                choices = list(range(1, s - state["pos"] + 1))
                if not first:
                    choices += [-m for m in range(1, s - state["neg"] + 1)]
                for m in choices:
                    apply(idx, m)
                    mult[idx] = m
                    if feasible(idx):
                        dfs(idx + 1)
                    apply(idx, m, undo=True)
                    mult[idx] = 0
                maxsym[:] = saved
            if first:
                return  # (1, ..., 1) must be in the support
            if feasible(idx):
                dfs(idx + 1)

        old_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old_limit, n_blocks + 1000))
        try:
            dfs(0)
        except _Found:
            return True
        finally:
            sys.setrecursionlimit(old_limit)
        return False

    def certificate(self) -> Trade:
        entries = {b: m for b, m in zip(self.blocks, self.solution) if m}
        fv = FrequencyVector(Params(self.t, self.k, self.V), entries)
        return from_frequency(fv)


def exhaustive_exists(t: int, k: int, s: int, budget: Budget | None = None) -> SearchVerdict:
    """Decide whether a T(t, v, k) of volume s exists, for some v.

    Returns a certificate, an exhaustion verdict (sound for every v, thanks
    to the per-coordinate symbol bound), or ``UNKNOWN`` if the budget runs out.
    """
    if not 0 <= t <= k:
        raise ParameterError(f"need 0 <= t <= k, got t={t}, k={k}")
    if s < 0:
        raise ParameterError("volume must be non-negative")
    if s == 0:
        return SearchVerdict(VerdictKind.CERTIFICATE, empty_trade(t, k), method="trivial")
    budget = budget or Budget.default()
    search = _Dfs(t, k, s, budget)
    bound = {"symbols_per_coordinate": search.V,
             "level_floor": search.floor,
             "blocks": len(search.blocks)}
    try:
        found = search.run()
    except _BudgetExceeded:
        return SearchVerdict(VerdictKind.UNKNOWN, bound=bound, nodes=search.nodes,
                             method="search")
    if found:
        cert = search.certificate()
        if not certificate_ok(cert, s):
            raise AssertionError("search produced a certificate that fails verification")
        return SearchVerdict(VerdictKind.CERTIFICATE, cert, bound=bound,
                             nodes=search.nodes, method="search")
    return SearchVerdict(VerdictKind.EXHAUSTED_NONEXISTENT, bound=bound,
                         nodes=search.nodes, method="search")


def certificate_ok(trade: Trade, s: int) -> bool:
    """Both oracles accept the trade and its volume is s."""
    if not verify(trade).valid or volume(trade) != s:
        return False
    try:
        m = build_inclusion_matrix(trade.t, trade.v, trade.k)
    except CapacityError:
        return True  # counting oracle only
    return null_check(m, to_frequency(trade)).zero


# Constructive certificates ------------------------------------------------

S34_EXCLUDED = frozenset(list(range(1, 8)) + [9, 10, 11, 13])
_EIGHT = lambda: critical_trade(3, 4, 1)


def _disjoint_plus(a: Trade, b: Trade) -> Trade:
    top = max(foundation(a), default=0)
    return compose(a, shift(b, top), "plus")


def s34_certificate(s: int) -> Trade:
    """A T(3, v, 4) of volume s, assembled by the recipe for S(3,4)."""
    if s < 0 or s in S34_EXCLUDED:
        raise ConstructionError(f"volume {s} is not in S(3,4)")
    if s == 0:
        return empty_trade(3, 4)
    if s % 2 == 0:
        return double(two_trade(s // 2))
    named = {15: fixtures.example1, 17: fixtures.appendix17,
             19: fixtures.appendix19, 21: fixtures.appendix21}
    if s in named:
        return named[s]()
    if s in (23, 25):
        return _disjoint_plus(named[s - 8](), _EIGHT())
    # odd s >= 27: s = (s - 8) + 8
    return _disjoint_plus(s34_certificate(s - 8), _EIGHT())


@dataclass
class SpectrumReport:
    t: int
    k: int
    s_max: int
    verdicts: dict[int, SearchVerdict] = field(default_factory=dict)

    def certified(self) -> list[int]:
        return [s for s, v in sorted(self.verdicts.items())
                if v.kind is VerdictKind.CERTIFICATE]

    def of_kind(self, kind: VerdictKind) -> list[int]:
        return [s for s, v in sorted(self.verdicts.items()) if v.kind is kind]

    def to_dict(self) -> dict:
        return {"t": self.t, "k": self.k, "s_max": self.s_max,
                "closure": CLOSURE_LABEL,
                "verdicts": {str(s): self.verdicts[s].to_dict()
                             for s in sorted(self.verdicts)}}


def spectrum_certificates(s_max: int, t: int = 3) -> SpectrumReport:
    """Certificates for every volume of S(3,4) up to ``s_max``."""
    if t != 3:
        raise ParameterError("constructive certificates are implemented for t = 3")
    report = SpectrumReport(3, 4, s_max)
    for s in range(s_max + 1):
        if s in S34_EXCLUDED:
            report.verdicts[s] = SearchVerdict(
                VerdictKind.CLOSURE_EXCLUDED,
                bound={"closure": f"N(3), {CLOSURE_LABEL}"}, method="closure")
            continue
        cert = s34_certificate(s)
        if not certificate_ok(cert, s):
            raise ConstructionError(f"certificate for volume {s} failed verification")
        report.verdicts[s] = SearchVerdict(VerdictKind.CERTIFICATE, cert,
                                           method="construction")
    return report


def construct_volume(t: int, k: int, s: int) -> Trade | None:
    """A trade of volume s from the known constructions, or None."""
    if s == 0:
        return empty_trade(t, k)
    if t < 1 or k < t:
        return None
    if k > t + 1:
        base = construct_volume(t, k - 1, s) if k - 1 >= t + 1 else None
        if base is not None:
            return pad_to_k(base, k)
    if k >= t + 1 and s in critical_points(t):
        return critical_trade(t, k, critical_points(t).index(s))
    if k != t + 1:
        return None
    if t == 1:
        return cyclic_one_trade(s) if s >= 2 else None
    if t == 2:
        try:
            return two_trade(s)
        except ConstructionError:
            return None
    if t == 3 and s not in S34_EXCLUDED:
        return s34_certificate(s)
    if s % 2 == 0:
        half = construct_volume(t - 1, k - 1, s // 2)
        if half is not None and volume(half):
            return double(half)
    return None


def _search_one(args):
    t, k, s, budget = args
    return exhaustive_exists(t, k, s, budget)


def spectrum_report(t: int, k: int, s_max: int, budget: Budget | None = None,
                    method: str = "full", workers: int = 1) -> SpectrumReport:
    """Per-volume verdicts for S(t, k) on 0..s_max.

    ``closure`` uses the closure and constructions only; ``search`` uses only
    exhaustive search; ``full`` tries closure exclusion, then constructions,
    then search. The closure excludes volumes only when k = t+1 (where it is
    a necessary condition); for other k only the bound s >= 2^t is used.
    """
    if method not in ("closure", "search", "full"):
        raise ParameterError(f"unknown method {method!r}")
    if not 1 <= t <= k:
        raise ParameterError(f"need 1 <= t <= k, got t={t}, k={k}")
    budget = budget or Budget.default()
    report = SpectrumReport(t, k, s_max)
    pending = []
    closure = feasible_closure(t, s_max) if k == t + 1 else None
    for s in range(s_max + 1):
        if method != "search" and t >= 2:
            excluded = (s not in closure) if closure else (0 < s < min_volume(t))
            if excluded:
                report.verdicts[s] = SearchVerdict(
                    VerdictKind.CLOSURE_EXCLUDED,
                    bound={"closure": f"N({t}), {CLOSURE_LABEL}" if closure
                           else f"0 < s < 2^{t}"},
                    method="closure")
                continue
        if method != "search":
            trade = construct_volume(t, k, s)
            if trade is not None:
                report.verdicts[s] = SearchVerdict(VerdictKind.CERTIFICATE, trade,
                                                   method="construction")
                continue
            if method == "closure":
                report.verdicts[s] = SearchVerdict(VerdictKind.UNKNOWN, method="closure")
                continue
        pending.append(s)
    jobs = [(t, k, s, budget) for s in pending]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_search_one, jobs))
    else:
        results = [_search_one(j) for j in jobs]
    for s, verdict in zip(pending, results):
        report.verdicts[s] = verdict
    return report
