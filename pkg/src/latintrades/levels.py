"""Level trades: fix a symbol in one coordinate and delete that coordinate."""

from __future__ import annotations

from dataclasses import dataclass

from .core import ParameterError, Trade, volume


@dataclass(frozen=True)
class LevelDecomposition:
    direction: int
    levels: dict[int, Trade]

    def volumes(self) -> dict[int, int]:
        return {x: volume(lv) for x, lv in self.levels.items()}

    def __len__(self):
        return len(self.levels)


def _check(trade: Trade, j: int) -> None:
    if trade.t < 1:
        raise ParameterError("levels need strength t >= 1")
    if not 1 <= j <= trade.k:
        raise ParameterError(f"direction {j} is not in 1..{trade.k}")


def level_trade(trade: Trade, j: int, x: int) -> Trade:
    """The T(t-1, v, k-1) formed by blocks with ``x`` at coordinate ``j``."""
    _check(trade, j)
    i = j - 1
    cut = lambda side: [b[:i] + b[i + 1:] for b in side if b[i] == x]
    return Trade(trade.t - 1, trade.k - 1, cut(trade.t1), cut(trade.t2), v=trade.v)


def level_decomposition(trade: Trade, j: int) -> LevelDecomposition:
    """One level per symbol that actually occurs at coordinate ``j``."""
    _check(trade, j)
    symbols = sorted({b[j - 1] for b in trade.t1 + trade.t2})
    return LevelDecomposition(j, {x: level_trade(trade, j, x) for x in symbols})
