"""
Building trades from signed products
====================================

Expanding (x1 - x2)(x3 - x4)... gives a trade. Reusing variables makes
terms cancel, which is how the small volumes are reached.
"""

from latintrades import SignedProductSpec, compose, critical_trade, double, expand_polynomial, volume
from latintrades.construct import cyclic_one_trade, disjoint_sum, pad_to_k

# three binomials expand to a 2-trade with 8 blocks
fv = expand_polynomial(SignedProductSpec(((1, 2), (1, 2), (1, 2))))
print(sorted(fv.entries.items()))

# the critical volumes of 3-(v,4) trades: 0, 8, 12, 14, 15
for i in range(5):
    print(i, volume(critical_trade(3, 4, i)))

# doubling lifts strength and size together
c = cyclic_one_trade(5)
d = double(c)
print(c.t, volume(c), "->", d.t, volume(d))

# extra constant coordinates change nothing
print(volume(pad_to_k(critical_trade(2, 3, 3), 6)))

# trades on disjoint symbols add their volumes
print(volume(disjoint_sum(critical_trade(2, 3, 2), critical_trade(2, 3, 3))))

# overlapping sums cancel shared blocks
a, b = critical_trade(2, 3, 3), critical_trade(2, 3, 2)
print(volume(compose(a, b, "minus")))
