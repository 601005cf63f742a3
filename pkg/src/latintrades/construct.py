"""Constructions of t-Latin trades.

Everything here returns a :class:`~latintrades.core.Trade` that has been
checked with the counting verifier; a construction that would produce an
invalid trade or the wrong volume raises :class:`ConstructionError`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence, Union

from .core import (FrequencyVector, ParameterError, Params, Trade, TradeError,
                   empty_trade, foundation, from_frequency, to_frequency, verify,
                   volume)


class ConstructionError(TradeError):
    """A construction failed its own postcondition."""


class NonexistenceError(ConstructionError):
    """No trade with the requested parameters exists."""


Factor = Union[int, tuple[int, int]]


@dataclass(frozen=True)
class SignedProductSpec:
    """A signed product of k factors, ordered by coordinate.

    A factor is either a symbol ``a`` (a fixed coordinate) or a pair
    ``(a, b)`` standing for the binomial ``a - b``.
    """

    factors: tuple[Factor, ...]
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(
            tuple(f) if isinstance(f, (list, tuple)) else f for f in self.factors))
        if self.sign not in (1, -1):
            raise ParameterError("sign must be +1 or -1")
        for f in self.factors:
            if isinstance(f, tuple):
                if len(f) != 2 or f[0] == f[1]:
                    raise ParameterError(f"binomial {f} needs two distinct symbols")

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def n_binomials(self) -> int:
        return sum(isinstance(f, tuple) for f in self.factors)


def expand_polynomial(spec: SignedProductSpec, t: int | None = None,
                      v: int | None = None) -> FrequencyVector:
    """Distribute the product into signed blocks, summing coinciding terms.

    A product containing b binomials is a (b-1)-trade, which is the default
    strength recorded on the result.
    """
    choices = []
    for f in spec.factors:
        if isinstance(f, tuple):
            choices.append(((f[0], 1), (f[1], -1)))
        else:
            choices.append(((f, 1),))
    coeffs: Counter = Counter()
    for term in product(*choices):
        sign = spec.sign
        for _, s in term:
            sign *= s
        coeffs[tuple(x for x, _ in term)] += sign
    symbols = [x for ch in choices for x, _ in ch]
    if t is None:
        t = max(spec.n_binomials - 1, 0)
    if v is None:
        v = max(symbols, default=1)
    return FrequencyVector(Params(t, spec.k, v), dict(coeffs))


def _checked(trade: Trade, what: str, expected_volume: int | None = None) -> Trade:
    res = verify(trade)
    if not res.valid:
        raise ConstructionError(f"{what} produced an invalid trade:\n{res.describe()}")
    if expected_volume is not None and volume(trade) != expected_volume:
        raise ConstructionError(
            f"{what} produced volume {volume(trade)}, expected {expected_volume}")
    return trade


def critical_volume(t: int, i: int) -> int:
    return 2 ** (t + 1) - 2 ** (t + 1 - i)


# symbols used to instantiate the variables of the critical construction
X_ODD, X_EVEN, Y_SYMBOL, FIXED_SYMBOL = 1, 2, 3, 1


def critical_trade(t: int, k: int, i: int) -> Trade:
    """A T(t, v, k) of volume ``2^(t+1) - 2^(t+1-i)``.

    Built as P + R where P = (x1-x2)(x3-x4)...(x_{2t+1}-x_{2t+2}) times k-t-1
    fixed symbols, and R is -P with the first variable of the last i
    binomials replaced by a fresh one. The first t+1-i binomials are shared,
    so 2^(t+1-i) terms cancel.
    """
    if t < 1:
        raise ParameterError("critical_trade needs t >= 1")
    if k < t + 1:
        raise ParameterError(f"critical_trade needs k >= t+1, got t={t}, k={k}")
    if not 0 <= i <= t + 1:
        raise ParameterError(f"index i={i} is not in 0..{t + 1}")
    fixed = [FIXED_SYMBOL] * (k - t - 1)
    p = SignedProductSpec(tuple([(X_ODD, X_EVEN)] * (t + 1) + fixed), 1)
    shared = t + 1 - i
    r = SignedProductSpec(
        tuple([(X_ODD, X_EVEN)] * shared + [(Y_SYMBOL, X_EVEN)] * i + fixed), -1)
    fv = expand_polynomial(p, t=t, v=3) + expand_polynomial(r, t=t, v=3)
    trade = from_frequency(fv)
    return _checked(trade, f"critical_trade({t}, {k}, {i})", critical_volume(t, i))


def pad_to_k(trade: Trade, k_new: int, fill: int = 1) -> Trade:
    """Append ``k_new - k`` copies of ``fill`` to every block."""
    if k_new < trade.k:
        raise ParameterError(f"cannot pad from k={trade.k} down to k={k_new}")
    if fill < 1:
        raise ParameterError("fill symbol must be >= 1")
    ext = (fill,) * (k_new - trade.k)
    out = Trade(trade.t, k_new, [b + ext for b in trade.t1],
                [b + ext for b in trade.t2], v=max(trade.v, fill))
    return _checked(out, "pad_to_k", volume(trade))


def double(trade: Trade, x: int = 1, y: int = 2) -> Trade:
    """Lift a T(t, v, k) of volume s to a T(t+1, v, k+1) of volume 2s.

    ``x`` is prepended to t1 and ``y`` to t2 to form the first side; the
    second side is x + t2 together with y + t1.
    """
    if x == y:
        raise ParameterError("double needs two distinct symbols")
    if x < 1 or y < 1:
        raise ParameterError("symbols must be >= 1")
    t1 = [(x,) + b for b in trade.t1] + [(y,) + b for b in trade.t2]
    t2 = [(x,) + b for b in trade.t2] + [(y,) + b for b in trade.t1]
    out = Trade(trade.t + 1, trade.k + 1, t1, t2, v=max(trade.v, x, y))
    return _checked(out, "double", 2 * volume(trade))


def compose(a: Trade, b: Trade, sign: str | int = "plus") -> Trade:
    """Sum (``plus``) or difference (``minus``) of two trades.

    Blocks landing on both sides cancel, exactly as frequency vectors add.
    """
    s = {"plus": 1, "+": 1, 1: 1, "minus": -1, "-": -1, -1: -1}.get(sign)
    if s is None:
        raise ParameterError(f"sign must be plus or minus, got {sign!r}")
    if a.k != b.k or a.t != b.t:
        raise ParameterError(
            f"cannot compose T({a.t},v,{a.k}) with T({b.t},v,{b.k})")
    fa, fb = to_frequency(a), to_frequency(b)
    fv = fa + fb if s == 1 else fa - fb
    out = from_frequency(fv)
    return _checked(out, "compose", remark_volume(a, b, s))


def remark_volume(a: Trade, b: Trade, sign: int = 1) -> int:
    """Volume of a +/- b by multiset arithmetic.

    For a + b this is |A1| + |B1| - |A1 & B2| - |A2 & B1|; for a - b the roles
    of B1 and B2 swap.
    """
    a1, a2 = Counter(a.t1), Counter(a.t2)
    b1, b2 = Counter(b.t1), Counter(b.t2)
    if sign < 0:
        b1, b2 = b2, b1
    inter = lambda p, q: sum((p & q).values())
    return len(a.t1) + sum(b1.values()) - inter(a1, b2) - inter(a2, b1)


def cyclic_one_trade(s: int) -> Trade:
    """T(1, s, 2) of volume s: (i, i) against (i, i+1 mod s)."""
    if s < 0:
        raise ParameterError("volume must be non-negative")
    if s == 0:
        return empty_trade(1, 2)
    if s == 1:
        raise NonexistenceError("a T(1,v,2) of volume 1 does not exist")
    t1 = [(i, i) for i in range(1, s + 1)]
    t2 = [(i, i % s + 1) for i in range(1, s + 1)]
    return _checked(Trade(1, 2, t1, t2, v=s), "cyclic_one_trade", s)


def relabel(trade: Trade, maps: Sequence[Mapping[int, int] | None]) -> Trade:
    """Apply ``maps[j]`` to coordinate j of every block on both sides.

    A ``None`` entry, or a symbol missing from a map, is left unchanged. Each
    map must be injective on the symbols actually used at its coordinate.
    """
    if len(maps) != trade.k:
        raise ParameterError(f"need {trade.k} coordinate maps, got {len(maps)}")
    blocks = trade.t1 + trade.t2
    full = []
    for j, m in enumerate(maps):
        used = sorted({b[j] for b in blocks})
        f = {x: (m.get(x, x) if m else x) for x in used}
        if len(set(f.values())) != len(used):
            raise ParameterError(f"map for coordinate {j + 1} is not injective on {used}")
        if any(y < 1 for y in f.values()):
            raise ParameterError("relabelled symbols must be >= 1")
        full.append(f)
    apply = lambda b: tuple(full[j][x] for j, x in enumerate(b))
    return Trade(trade.t, trade.k, map(apply, trade.t1), map(apply, trade.t2))


def shift(trade: Trade, offset: int) -> Trade:
    """Add ``offset`` to every symbol in every coordinate."""
    return relabel(trade, [{x: x + offset for x in range(1, trade.v + 1)}] * trade.k)


def disjoint_sum(a: Trade, b: Trade) -> Trade:
    """a + b after shifting b onto symbols above the foundation of a."""
    top = max(foundation(a), default=0)
    return compose(a, shift(b, top), "plus")


def latin_square_bitrade(n: int) -> Trade:
    """Bitrade of volume n^2 from the squares i+j and i+j+1 (mod n)."""
    if n < 2:
        raise ParameterError("need n >= 2")
    cells = [(i, j) for i in range(n) for j in range(n)]
    t1 = [(i + 1, j + 1, (i + j) % n + 1) for i, j in cells]
    t2 = [(i + 1, j + 1, (i + j + 1) % n + 1) for i, j in cells]
    return _checked(Trade(2, 3, t1, t2, v=n), "latin_square_bitrade", n * n)


def two_trade(s: int) -> Trade:
    """A T(2, v, 3) of volume s for any s outside {1, 2, 3, 5}.

    Foundation-disjoint sums of pieces of volume 4 (doubled cyclic 1-trade),
    6 and 7 (critical trades) and 9 (a pair of cyclic Latin squares).
    """
    if s in (1, 2, 3, 5):
        raise NonexistenceError(f"a T(2,v,3) of volume {s} does not exist")
    if s < 0:
        raise ParameterError("volume must be non-negative")
    pieces = {4: lambda: double(cyclic_one_trade(2)),
              6: lambda: critical_trade(2, 3, 2),
              7: lambda: critical_trade(2, 3, 3),
              9: lambda: latin_square_bitrade(3)}
    parts = []
    rest = s
    while rest:
        # peel off 4s until the remainder is a base piece
        part = rest if rest in pieces else 4
        parts.append(part)
        rest -= part
    out = empty_trade(2, 3)
    for p in parts:
        out = disjoint_sum(out, pieces[p]())
    return _checked(out, f"two_trade({s})", s)
