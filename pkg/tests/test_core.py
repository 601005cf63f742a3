import json
from collections import Counter

import pytest

from latintrades import fixtures
from latintrades.core import (FoundationMismatchError, FrequencyVector, ParameterError,
                              Params, StructuralError, SubBlockKey, Trade, dumps_trade,
                              empty_trade, foundation, from_frequency, loads_trade,
                              to_frequency, trade_from_dict, verify, volume)

from oracles import pattern_signature


def test_declared_volumes(fixture_name):
    assert volume(fixtures.get(fixture_name)) == fixtures.DECLARED_VOLUMES[fixture_name]


def test_fixtures_verify_at_declared_strength(fixture_name):
    trade = fixtures.get(fixture_name)
    assert verify(trade, trade.t).valid


def test_fixtures_verify_at_lower_strengths(fixture_name):
    trade = fixtures.get(fixture_name)
    for t in range(trade.t + 1):
        assert verify(trade, t).valid


def test_example1_basics():
    t = fixtures.example1()
    assert (t.t, t.k) == (3, 4)
    assert volume(t) == 15
    assert foundation(t) == {1, 2, 3}


def test_appendix_volumes_and_foundations():
    assert volume(fixtures.appendix21()) == 21
    # the volume-19 table uses symbol 4 in its second coordinate
    assert foundation(fixtures.appendix19()) == {1, 2, 3, 4}


def test_example2_is_the_printed_level_of_example1():
    assert fixtures.example2() == fixtures.example3()


def test_empty_trade():
    e = empty_trade(2, 3)
    assert volume(e) == 0
    assert foundation(e) == frozenset()
    assert verify(e).valid
    assert len(to_frequency(e)) == 0


def test_identical_sides_violate_disjointness():
    b = (1, 2, 3)
    res = verify(Trade(2, 3, [b], [b]))
    assert not res.valid
    assert res.common_blocks == (b,)
    assert res.violations == ()


def test_mutated_example1_reports_the_recounted_violations():
    base = fixtures.example1()
    t1 = list(base.t1)
    i = t1.index((1, 1, 3, 1))
    t1[i] = (1, 1, 3, 2)
    mutated = Trade(3, 4, t1, base.t2, v=3)
    res = verify(mutated)
    assert not res.valid
    # independent recount of every (I, u) on both sides
    c1 = Counter(dict(pattern_signature(mutated.t1, 3, 4)))
    c2 = Counter(dict(pattern_signature(mutated.t2, 3, 4)))
    expected = {(tuple(i + 1 for i in I), u): c1[I, u] - c2[I, u]
                for I, u in set(c1) | set(c2) if c1[I, u] != c2[I, u]}
    got = {(v.key.positions, v.key.values): v.delta for v in res.violations}
    assert got == expected
    assert len(got) == 6


def test_every_single_entry_mutation_of_example1_fails():
    base = fixtures.example1()
    for side in (0, 1):
        blocks = [list(base.t1), list(base.t2)]
        for i, b in enumerate(blocks[side]):
            for j in range(4):
                for x in range(1, 4):
                    if x == b[j]:
                        continue
                    mutated = [list(s) for s in blocks]
                    mutated[side][i] = b[:j] + (x,) + b[j + 1:]
                    assert not verify(Trade(3, 4, *mutated, v=3)).valid


def test_verify_rejects_t_above_k():
    with pytest.raises(ParameterError):
        verify(fixtures.example1(), 5)


def test_unequal_sides():
    tr = Trade(1, 2, [(1, 1), (2, 2)], [(1, 2)])
    assert not verify(tr).valid
    assert verify(tr).size_mismatch
    with pytest.raises(StructuralError):
        volume(tr)


@pytest.mark.parametrize("t1, t2", [
    ([(1, 2, 3)], [(1, 2)]),
    ([(0, 1, 1)], [(1, 1, 1)]),
])
def test_structural_errors(t1, t2):
    with pytest.raises(StructuralError):
        Trade(1, 3, t1, t2)


def test_symbol_above_v():
    with pytest.raises(StructuralError):
        Trade(1, 2, [(1, 5)], [(5, 1)], v=4)


def test_params_bounds():
    with pytest.raises(ParameterError):
        Params(3, 2, 2)
    with pytest.raises(ParameterError):
        Params(1, 2, 0)


def test_foundation_mismatch():
    with pytest.raises(FoundationMismatchError):
        foundation(Trade(1, 2, [(1, 1)], [(2, 2)]))


def test_frequency_vector_of_example1():
    fv = to_frequency(fixtures.example1())
    assert len(fv) == 30
    assert set(fv.entries.values()) == {1, -1}
    assert fv.positive_mass() == 15


def test_from_frequency_multiplicities():
    b, c, d = (1, 1), (2, 2), (1, 2)
    tr = from_frequency(FrequencyVector(Params(1, 2, 2), {b: 2, c: -1, d: -1}))
    assert tr.t1 == (b, b)
    assert tr.t2 == (d, c)


def test_roundtrip_fixtures(fixture_name):
    trade = fixtures.get(fixture_name)
    assert from_frequency(to_frequency(trade)) == trade
    assert loads_trade(dumps_trade(trade)) == trade


def test_json_is_canonical():
    text = '{"t": 1, "k": 2, "v": 2, "t1": [[2, 2], [1, 1]], "t2": [[2, 1], [1, 2]]}'
    tr = loads_trade(text)
    assert json.loads(dumps_trade(tr))["t1"] == [[1, 1], [2, 2]]
    assert dumps_trade(loads_trade(dumps_trade(tr))) == dumps_trade(tr)


@pytest.mark.parametrize("bad", [
    {"t": 1, "k": 2, "t1": [], "t2": []},
    {"t": 1, "k": 2, "v": 2, "t1": [[1]], "t2": [[1]]},
    {"t": "1", "k": 2, "v": 2, "t1": [], "t2": []},
    {"t": 1, "k": 2, "v": 2, "t1": [5], "t2": []},
])
def test_bad_json(bad):
    with pytest.raises(StructuralError):
        trade_from_dict(bad)


def test_subblock_key():
    key = SubBlockKey((1, 3), (2, 1))
    assert key.contained_in((2, 9, 1))
    assert not key.contained_in((1, 9, 1))
    with pytest.raises(StructuralError):
        SubBlockKey((3, 1), (2, 1))
