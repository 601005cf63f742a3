"""Published trades, transcribed from their printed tables.

Each table is stored the way it is printed: one string per coordinate, one
column per block. ``_columns`` turns that into a list of blocks.
"""

from __future__ import annotations

from .core import Trade


def _columns(*rows: str) -> list[tuple[int, ...]]:
    cols = [list(map(int, r.split())) for r in rows]
    assert len({len(c) for c in cols}) == 1, "ragged table"
    return list(zip(*cols))


# 3-(3,4) trade of volume 15 on {1,2,3}
_EXAMPLE1_T1 = _columns(
    "3 3 2 2 2 1 1 2 2 1 1 3 3 2 2",
    "3 2 3 2 1 2 1 2 1 2 1 3 2 3 2",
    "3 3 3 3 3 3 3 2 2 2 2 1 1 1 1",
    "2 3 3 1 2 2 1 2 1 1 2 3 2 2 3",
)
_EXAMPLE1_T2 = _columns(
    "3 3 2 2 2 1 1 2 2 1 1 3 3 2 2",
    "3 2 3 2 1 2 1 2 1 2 1 3 2 3 2",
    "3 3 3 3 3 3 3 2 2 2 2 1 1 1 1",
    "3 2 2 3 1 1 2 1 2 2 1 2 3 3 2",
)

# Latin bitrade of volume 7 printed as a grid; a cell "pq" holds p in the
# first square and q in the second. Blocks are (row, column, symbol).
_EXAMPLE2_GRID = {
    (1, 1): (1, 2), (1, 2): (2, 1),
    (2, 1): (2, 1), (2, 2): (1, 3), (2, 3): (3, 2),
    (3, 2): (3, 2), (3, 3): (2, 3),
}

# level of example 1 in direction 3 at symbol 3, as printed
_EXAMPLE3_T1 = _columns(
    "3 3 2 2 2 1 1",
    "3 2 3 2 1 2 1",
    "2 3 3 1 2 2 1",
)
_EXAMPLE3_T2 = _columns(
    "3 3 2 2 2 1 1",
    "3 2 3 2 1 2 1",
    "3 2 2 3 1 1 2",
)

_APPENDIX17_T1 = _columns(
    "2 2 2 1 1 1 3 3 1 1 3 3 2 2 2 1 1",
    "3 2 1 3 2 1 3 2 3 2 3 2 3 2 1 2 1",
    "3 3 3 3 3 3 2 2 2 2 1 1 1 1 1 1 1",
    "2 3 1 3 1 2 3 2 2 3 2 3 3 1 2 2 1",
)
_APPENDIX17_T2 = _columns(
    "2 2 2 1 1 1 3 3 1 1 3 3 2 2 2 1 1",
    "3 2 1 3 2 1 3 2 3 2 3 2 3 2 1 2 1",
    "3 3 3 3 3 3 2 2 2 2 1 1 1 1 1 1 1",
    "3 1 2 2 3 1 2 3 3 2 3 2 2 3 1 1 2",
)

_APPENDIX19_T1 = _columns(
    "3 3 2 2 2 1 1 1 2 2 1 1 3 3 2 2 2 1 1",
    "3 2 4 3 1 4 2 1 4 2 4 2 3 2 3 2 1 2 1",
    "3 3 3 3 3 3 3 3 2 2 2 2 1 1 1 1 1 1 1",
    "3 2 3 2 1 1 3 2 1 3 3 1 2 3 3 1 2 2 1",
)
_APPENDIX19_T2 = _columns(
    "3 3 2 2 2 1 1 1 2 2 1 1 3 3 2 2 2 1 1",
    "3 2 4 3 1 4 2 1 4 2 4 2 3 2 3 2 1 2 1",
    "3 3 3 3 3 3 3 3 2 2 2 2 1 1 1 1 1 1 1",
    "2 3 1 3 2 3 2 1 3 1 1 3 3 2 2 3 1 1 2",
)

_APPENDIX21_T1 = _columns(
    "3 3 2 2 2 1 1 3 3 2 2 2 1 1 3 3 2 2 2 1 1",
    "3 2 3 2 1 2 1 3 2 3 2 1 2 1 3 2 3 2 1 2 1",
    "3 3 3 3 3 3 3 2 2 2 2 2 2 2 1 1 1 1 1 1 1",
    "1 3 3 2 1 1 2 2 1 1 3 2 2 3 3 2 2 1 3 3 1",
)
_APPENDIX21_T2 = _columns(
    "3 3 2 2 2 1 1 3 3 2 2 2 1 1 3 3 2 2 2 1 1",
    "3 2 3 2 1 2 1 3 2 3 2 1 2 1 3 2 3 2 1 2 1",
    "3 3 3 3 3 3 3 2 2 2 2 2 2 2 1 1 1 1 1 1 1",
    "3 1 1 3 2 2 1 1 2 2 1 3 3 2 2 3 3 2 1 1 3",
)


def example1() -> Trade:
    return Trade(3, 4, _EXAMPLE1_T1, _EXAMPLE1_T2, v=3)


def example2() -> Trade:
    t1 = [(r, c, p) for (r, c), (p, _) in _EXAMPLE2_GRID.items()]
    t2 = [(r, c, q) for (r, c), (_, q) in _EXAMPLE2_GRID.items()]
    return Trade(2, 3, t1, t2, v=3)


def example3() -> Trade:
    return Trade(2, 3, _EXAMPLE3_T1, _EXAMPLE3_T2, v=3)


def appendix17() -> Trade:
    return Trade(3, 4, _APPENDIX17_T1, _APPENDIX17_T2, v=4)


def appendix19() -> Trade:
    return Trade(3, 4, _APPENDIX19_T1, _APPENDIX19_T2, v=4)


def appendix21() -> Trade:
    return Trade(3, 4, _APPENDIX21_T1, _APPENDIX21_T2, v=3)


FIXTURES = {
    "example1": example1,
    "example2": example2,
    "example3": example3,
    "appendix17": appendix17,
    "appendix19": appendix19,
    "appendix21": appendix21,
}

DECLARED_VOLUMES = {
    "example1": 15,
    "example2": 7,
    "example3": 7,
    "appendix17": 17,
    "appendix19": 19,
    "appendix21": 21,
}


def get(name: str) -> Trade:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
