"""
Published trades and the two ways to check them
===============================================

A t-Latin trade is a pair of disjoint multisets of k-tuples whose
t-position patterns occur equally often on both sides.
"""

from latintrades import build_inclusion_matrix, fixtures, null_check, to_frequency, verify, volume
from latintrades.cli import grid_text

# the smallest known 3-(v,4) trade outside the doubled family, volume 15
ex1 = fixtures.example1()
print(ex1.t, ex1.k, ex1.v, volume(ex1))

# direct counting: every pattern on every t positions balances
res = verify(ex1)
print("counting says valid:", res.valid)

# linear algebra: the signed frequency vector lies in the kernel of M
m = build_inclusion_matrix(ex1.t, ex1.v, ex1.k)
print("matrix shape:", m.matrix.shape)
print("kernel says valid:", null_check(m, to_frequency(ex1)).zero)

# change one symbol and both checks complain
t1 = list(ex1.t1)
t1[0] = t1[0][:3] + (2 if t1[0][3] != 2 else 1,)
broken = type(ex1)(ex1.t, ex1.k, t1, ex1.t2, v=ex1.v)
print(verify(broken).describe())

# a volume-7 2-(v,3) trade reads best as a grid, with "p/q" per cell
print(grid_text(fixtures.example2()))
