import pytest

from latintrades import fixtures
from latintrades.construct import (NonexistenceError, SignedProductSpec, compose,
                                   critical_trade, critical_volume, cyclic_one_trade,
                                   disjoint_sum, double, expand_polynomial,
                                   latin_square_bitrade, pad_to_k, relabel,
                                   remark_volume, shift, two_trade)
from latintrades.core import (ParameterError, Trade, empty_trade, foundation,
                              from_frequency, verify, volume)
from latintrades.levels import level_trade


def test_expand_single_binomial():
    fv = expand_polynomial(SignedProductSpec(((1, 2),)))
    assert fv.entries == {(1,): 1, (2,): -1}


def test_expand_two_binomials():
    fv = expand_polynomial(SignedProductSpec(((1, 2), (1, 2))))
    assert fv.entries == {(1, 1): 1, (1, 2): -1, (2, 1): -1, (2, 2): 1}


def test_expand_with_monomial():
    fv = expand_polynomial(SignedProductSpec(((1, 2), 3)))
    assert fv.entries == {(1, 3): 1, (2, 3): -1}


def test_expand_sign_and_cancellation():
    fv = expand_polynomial(SignedProductSpec(((1, 2), (2, 1)), sign=-1))
    assert fv.entries == {(1, 2): -1, (1, 1): 1, (2, 2): 1, (2, 1): -1}


def test_binomial_needs_distinct_symbols():
    with pytest.raises(ParameterError):
        SignedProductSpec(((1, 1),))


def test_critical_t1_k2_i2_default_instantiation():
    tr = critical_trade(1, 2, 2)
    assert sorted(tr.t1) == sorted([(1, 1), (3, 2), (2, 3)])
    assert sorted(tr.t2) == sorted([(1, 2), (2, 1), (3, 3)])


def test_critical_i0_is_empty():
    for t in (1, 2, 3):
        assert volume(critical_trade(t, t + 1, 0)) == 0


@pytest.mark.parametrize("t, k, i, vol", [(3, 4, 1, 8), (3, 4, 2, 12), (3, 4, 3, 14),
                                          (3, 4, 4, 15), (2, 3, 3, 7), (1, 2, 1, 2)])
def test_critical_volumes(t, k, i, vol):
    tr = critical_trade(t, k, i)
    assert volume(tr) == vol == critical_volume(t, i)
    assert verify(tr, t).valid


def test_critical_bad_args():
    with pytest.raises(ParameterError):
        critical_trade(2, 2, 1)
    with pytest.raises(ParameterError):
        critical_trade(2, 3, 4)


def test_pad_example2():
    tr = pad_to_k(fixtures.example2(), 4)
    assert (tr.t, tr.k, volume(tr)) == (2, 4, 7)
    assert verify(tr, 2).valid


def test_pad_identity_and_errors():
    tr = fixtures.example1()
    assert pad_to_k(tr, 4) == tr
    with pytest.raises(ParameterError):
        pad_to_k(tr, 3)


def test_pad_cyclic():
    tr = pad_to_k(cyclic_one_trade(2), 3)
    assert (tr.t, tr.k, volume(tr)) == (1, 3, 2)
    assert verify(tr, 1).valid


def test_pad_fill_symbol():
    tr = pad_to_k(cyclic_one_trade(3), 4, fill=7)
    assert all(b[2:] == (7, 7) for b in tr.t1 + tr.t2)


def test_double_cyclic():
    tr = double(cyclic_one_trade(2), 1, 2)
    assert (tr.t, tr.k, volume(tr)) == (2, 3, 4)
    assert verify(tr, 2).valid


def test_double_empty():
    assert volume(double(empty_trade(1, 2), 1, 2)) == 0


def test_double_example2():
    tr = double(fixtures.example2(), 4, 5)
    assert (tr.t, tr.k, volume(tr)) == (3, 4, 14)
    assert verify(tr, 3).valid


def test_double_layout_matches_figure():
    base = fixtures.example2()
    tr = double(base, 1, 2)
    assert level_trade(tr, 1, 1) == base
    assert level_trade(tr, 1, 2) == base.swap()


def test_double_needs_distinct_symbols():
    with pytest.raises(ParameterError):
        double(fixtures.example2(), 3, 3)


def test_compose_eight_and_fifteen():
    eight = critical_trade(3, 4, 1)
    fifteen = shift(fixtures.example1(), max(foundation(eight)))
    assert not foundation(eight) & foundation(fifteen)
    tr = compose(eight, fifteen, "plus")
    assert volume(tr) == 23
    assert verify(tr, 3).valid


def test_compose_self_minus_is_empty():
    tr = fixtures.example1()
    assert volume(compose(tr, tr, "minus")) == 0


@pytest.mark.parametrize("maps, vol", [
    ([{1: 3, 3: 1}, {1: 3, 3: 1}], 0),  # the relabelled copy is the swap
    ([{1: 3, 3: 1}, None], 4),          # one block cancels on each side
])
def test_compose_with_cancellation_matches_remark_formula(maps, vol):
    a = critical_trade(1, 2, 2)
    b = relabel(a, maps)
    out = compose(a, b, "plus")
    # direct multiset arithmetic, written out for this pair
    a1, a2, b1, b2 = set(a.t1), set(a.t2), set(b.t1), set(b.t2)
    expected = len(a1) + len(b1) - len(a1 & b2) - len(a2 & b1)
    assert volume(out) == expected == remark_volume(a, b, 1) == vol
    assert verify(out, 1).valid


def test_compose_parameter_mismatch():
    with pytest.raises(ParameterError):
        compose(fixtures.example1(), fixtures.example2())
    with pytest.raises(ParameterError):
        compose(fixtures.example1(), fixtures.example1(), "times")


def test_cyclic():
    tr = cyclic_one_trade(2)
    assert tr.t1 == ((1, 1), (2, 2))
    assert tr.t2 == ((1, 2), (2, 1))
    with pytest.raises(NonexistenceError, match="volume 1 does not exist"):
        cyclic_one_trade(1)
    assert volume(cyclic_one_trade(0)) == 0
    five = cyclic_one_trade(5)
    assert volume(five) == 5 and verify(five, 1).valid
    assert foundation(five) == set(range(1, 6))


def test_relabel_identity():
    tr = fixtures.example1()
    assert relabel(tr, [None] * 4) == tr
    assert relabel(tr, [{}] * 4) == tr


def test_relabel_shift_gives_disjoint_foundation():
    tr = fixtures.example1()
    sh = shift(tr, max(foundation(tr)))
    assert not foundation(tr) & foundation(sh)
    assert verify(sh, 3).valid and volume(sh) == 15


def test_relabel_swap_first_coordinate():
    tr = relabel(fixtures.example1(), [{1: 2, 2: 1}, None, None, None])
    assert verify(tr, 3).valid and volume(tr) == 15


def test_relabel_rejects_non_injective():
    with pytest.raises(ParameterError):
        relabel(fixtures.example1(), [{1: 2}, None, None, None])


def test_latin_square_bitrade():
    for n in (2, 3, 4):
        tr = latin_square_bitrade(n)
        assert volume(tr) == n * n and verify(tr, 2).valid


def test_two_trade_volumes():
    for s in [0, 4] + list(range(6, 31)):
        tr = two_trade(s)
        assert volume(tr) == s and verify(tr, 2).valid
    for s in (1, 2, 3, 5):
        with pytest.raises(NonexistenceError):
            two_trade(s)


def test_disjoint_sum_adds_volumes():
    tr = disjoint_sum(fixtures.appendix17(), critical_trade(3, 4, 1))
    assert volume(tr) == 25 and verify(tr, 3).valid
