"""
Slicing a trade into levels
===========================

Fix one coordinate to a symbol and drop it. What remains is a trade of
strength one lower, and the level volumes add up to the whole.
"""

from latintrades import double, fixtures, level_decomposition, verify, volume

ex1 = fixtures.example1()
for j in range(1, ex1.k + 1):
    dec = level_decomposition(ex1, j)
    print(j, dec.volumes(), sum(dec.volumes().values()) == volume(ex1))

# each level is itself a 2-trade
dec = level_decomposition(ex1, 1)
print(all(verify(lv).valid for lv in dec.levels.values()))

# a doubled trade splits into two equal halves in the new coordinate
d = double(fixtures.example2())
print(level_decomposition(d, 1).volumes())
