"""Trade data model, the counting verifier and frequency-vector conversion.

A t-Latin trade T(t, v, k) is a pair of multisets ``(t1, t2)`` of ordered
k-tuples over ``{1, ..., v}`` such that every pattern fixed on t positions is
contained equally often in both sides. Blocks are plain tuples of ints.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

Block = tuple[int, ...]


class TradeError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(TradeError, ValueError):
    """Malformed input: wrong block length, symbol out of range, bad JSON."""


class ParameterError(TradeError, ValueError):
    """Parameters violate an operation's preconditions (e.g. t > k)."""


class FoundationMismatchError(TradeError):
    """The two sides of a would-be trade cover different symbol sets."""


@dataclass(frozen=True)
class Params:
    t: int
    k: int
    v: int

    def __post_init__(self):
        for name in ("t", "k", "v"):
            if not isinstance(getattr(self, name), int):
                raise StructuralError(f"{name} must be an integer")
        # t = 0 is admitted: it is what a level of a 1-trade is
        if not 0 <= self.t <= self.k:
            raise ParameterError(f"need 0 <= t <= k, got t={self.t}, k={self.k}")
        if self.v < 1:
            raise ParameterError(f"need v >= 1, got v={self.v}")


@dataclass(frozen=True, order=True)
class SubBlockKey:
    """A pattern ``(u_1, ..., u_t)_I``: symbols ``values`` at ``positions``.

    Positions are 1-based and strictly increasing.
    """

    positions: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.positions) != len(self.values):
            raise StructuralError("positions and values differ in length")
        if any(a >= b for a, b in zip(self.positions, self.positions[1:])):
            raise StructuralError("positions must be strictly increasing")

    def contained_in(self, block: Sequence[int]) -> bool:
        return all(block[p - 1] == u for p, u in zip(self.positions, self.values))

    def __str__(self):
        vals = ",".join(map(str, self.values))
        pos = ",".join(map(str, self.positions))
        return f"({vals})_{{{pos}}}"


def _canonical(blocks: Iterable[Sequence[int]]) -> tuple[Block, ...]:
    return tuple(sorted(tuple(b) for b in blocks))


@dataclass(frozen=True)
class Trade:
    """Two multisets of blocks with declared parameters.

    Blocks are kept sorted so that equal multisets compare equal. Neither
    disjointness nor balance is enforced here; that is what :func:`verify`
    decides. If ``v`` is omitted it is taken as the largest symbol used.
    """

    params: Params
    t1: tuple[Block, ...]
    t2: tuple[Block, ...]

    def __init__(self, t: int, k: int, t1: Iterable[Sequence[int]] = (),
                 t2: Iterable[Sequence[int]] = (), v: int | None = None):
        t1 = _canonical(t1)
        t2 = _canonical(t2)
        for b in t1 + t2:
            if len(b) != k:
                raise StructuralError(f"block {b} has length {len(b)}, expected {k}")
            for x in b:
                if not isinstance(x, int) or isinstance(x, bool) or x < 1:
                    raise StructuralError(f"block {b} holds a non-positive or non-integer symbol")
        top = max((max(b) for b in t1 + t2 if b), default=1)
        if v is None:
            v = top
        elif top > v:
            raise StructuralError(f"symbol {top} exceeds v={v}")
        object.__setattr__(self, "params", Params(t, k, v))
        object.__setattr__(self, "t1", t1)
        object.__setattr__(self, "t2", t2)

    @property
    def t(self) -> int:
        return self.params.t

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def v(self) -> int:
        return self.params.v

    def swap(self) -> Trade:
        return Trade(self.t, self.k, self.t2, self.t1, v=self.v)

    def with_params(self, t: int | None = None, v: int | None = None) -> Trade:
        return Trade(self.t if t is None else t, self.k, self.t1, self.t2,
                     v=self.v if v is None else v)

    def __repr__(self):
        return (f"Trade(t={self.t}, k={self.k}, v={self.v}, "
                f"volume={len(self.t1)}|{len(self.t2)})")


def empty_trade(t: int, k: int, v: int = 1) -> Trade:
    return Trade(t, k, (), (), v=v)


def volume(trade: Trade) -> int:
    if len(trade.t1) != len(trade.t2):
        raise StructuralError(
            f"sides have different sizes ({len(trade.t1)} vs {len(trade.t2)})")
    return len(trade.t1)


def foundation(trade: Trade) -> frozenset[int]:
    """Set of symbols used by the trade; both sides must agree on it."""
    f1 = frozenset(x for b in trade.t1 for x in b)
    f2 = frozenset(x for b in trade.t2 for x in b)
    if f1 != f2:
        raise FoundationMismatchError(
            f"t1 covers {sorted(f1)} but t2 covers {sorted(f2)}")
    return f1


@dataclass(frozen=True)
class Violation:
    key: SubBlockKey
    delta: int  # count in t1 minus count in t2


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    violations: tuple[Violation, ...] = ()
    common_blocks: tuple[Block, ...] = ()
    size_mismatch: bool = False

    def __bool__(self):
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return "valid"
        lines = ["invalid"]
        if self.size_mismatch:
            lines.append("  sides have different sizes")
        for b in self.common_blocks:
            lines.append(f"  block {b} occurs in both sides")
        for viol in self.violations:
            lines.append(f"  {viol.key}: t1 - t2 = {viol.delta:+d}")
        return "\n".join(lines)


def pattern_counts(blocks: Iterable[Block], t: int, k: int) -> Counter:
    """Count, for each (I, u), the blocks containing it. Keys are ``(I, u)`` tuples."""
    subsets = list(combinations(range(1, k + 1), t))
    counts: Counter = Counter()
    for b in blocks:
        for I in subsets:
            counts[I, tuple(b[i - 1] for i in I)] += 1
    return counts


def verify(trade: Trade, t: int | None = None) -> VerifyResult:
    """Check the trade condition at strength ``t`` by direct counting.

    Every violated pattern is reported together with the signed discrepancy;
    multiset-disjointness of the two sides is checked as well.
    """
    if t is None:
        t = trade.t
    if not 0 <= t <= trade.k:
        raise ParameterError(f"strength t={t} is not in 0..k={trade.k}")
    c1 = pattern_counts(trade.t1, t, trade.k)
    c2 = pattern_counts(trade.t2, t, trade.k)
    violations = []
    for key in sorted(set(c1) | set(c2)):
        delta = c1[key] - c2[key]
        if delta:
            violations.append(Violation(SubBlockKey(*key), delta))
    common = tuple(sorted(set(trade.t1) & set(trade.t2)))
    mismatch = len(trade.t1) != len(trade.t2)
    return VerifyResult(not violations and not common and not mismatch,
                        tuple(violations), common, mismatch)


@dataclass(frozen=True)
class FrequencyVector:
    """Sparse signed multiplicities over V^k (zero entries are dropped)."""

    params: Params
    entries: Mapping[Block, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for b, c in self.entries.items():
            b = tuple(b)
            if len(b) != self.params.k or any(x < 1 or x > self.params.v for x in b):
                raise StructuralError(f"block {b} does not fit {self.params}")
            if c:
                clean[b] = int(c)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, block: Block) -> int:
        return self.entries.get(tuple(block), 0)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, FrequencyVector):
            return NotImplemented
        return self.params == other.params and self.entries == other.entries

    def positive_mass(self) -> int:
        return sum(c for c in self.entries.values() if c > 0)

    def negative_mass(self) -> int:
        return -sum(c for c in self.entries.values() if c < 0)

    def __add__(self, other: FrequencyVector) -> FrequencyVector:
        return _combine(self, other, 1)

    def __sub__(self, other: FrequencyVector) -> FrequencyVector:
        return _combine(self, other, -1)

    def __neg__(self) -> FrequencyVector:
        return FrequencyVector(self.params, {b: -c for b, c in self.entries.items()})


def _combine(a: FrequencyVector, b: FrequencyVector, sign: int) -> FrequencyVector:
    if a.params.k != b.params.k:
        raise ParameterError("frequency vectors have different block lengths")
    out = Counter(a.entries)
    for blk, c in b.entries.items():
        out[blk] += sign * c
    params = Params(min(a.params.t, b.params.t), a.params.k, max(a.params.v, b.params.v))
    return FrequencyVector(params, dict(out))


def to_frequency(trade: Trade) -> FrequencyVector:
    entries: Counter = Counter()
    for b in trade.t1:
        entries[b] += 1
    for b in trade.t2:
        entries[b] -= 1
    # a block on both sides would cancel here; verify reports such inputs
    return FrequencyVector(trade.params, dict(entries))


def from_frequency(fv: FrequencyVector) -> Trade:
    t1, t2 = [], []
    for b, c in fv.entries.items():
        (t1 if c > 0 else t2).extend([b] * abs(c))
    return Trade(fv.params.t, fv.params.k, t1, t2, v=fv.params.v)


# JSON interchange --------------------------------------------------------

def trade_to_dict(trade: Trade) -> dict:
    return {"t": trade.t, "k": trade.k, "v": trade.v,
            "t1": [list(b) for b in trade.t1],
            "t2": [list(b) for b in trade.t2]}


def trade_from_dict(data: Mapping) -> Trade:
    try:
        t, k, v = data["t"], data["k"], data["v"]
        t1, t2 = data["t1"], data["t2"]
    except (KeyError, TypeError) as exc:
        raise StructuralError(f"trade JSON is missing field {exc}") from None
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in (t, k, v)):
        raise StructuralError("t, k and v must be integers")
    if not isinstance(t1, list) or not isinstance(t2, list):
        raise StructuralError("t1 and t2 must be lists of blocks")
    for b in t1 + t2:
        if not isinstance(b, list):
            raise StructuralError(f"block {b!r} is not a list")
    return Trade(t, k, t1, t2, v=v)


def dumps_trade(trade: Trade) -> str:
    return json.dumps(trade_to_dict(trade)) + "\n"


def loads_trade(text: str) -> Trade:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"not valid JSON: {exc}") from None
    return trade_from_dict(data)


def load_trade(path: str | Path) -> Trade:
    return loads_trade(Path(path).read_text())


def save_trade(trade: Trade, path: str | Path) -> None:
    Path(path).write_text(dumps_trade(trade))
