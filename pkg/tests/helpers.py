"""Shared hypothesis strategies and small fixtures-by-value."""
from fractions import Fraction

from hypothesis import strategies as st

from wallcross.chern import ChernCharacter
from wallcross.lattice import hirzebruch, lattice_surface, product_of_lines


def rationals(lo=-6, hi=6, max_den=4):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


def positive_rationals(max_num=9, max_den=4):
    return st.builds(Fraction, st.integers(1, max_num), st.integers(1, max_den))


def rank_two_surfaces():
    return st.sampled_from([
        hirzebruch(0), hirzebruch(1), hirzebruch(2), hirzebruch(3), product_of_lines(),
        hirzebruch(1, h0=(3, 1)), hirzebruch(2, h0=(5, 2)),
        lattice_surface([[-1, 2], [2, -1]], (1, 1), [(1, 0), (0, 1)]),
        lattice_surface([[1, 3], [3, 1]], (1, 1), [(1, 0), (0, 1)]),
    ])


def chern_on(lattice, rank=st.integers(-3, 3)):
    return st.builds(lambda r, x, y, c: ChernCharacter(r, lattice.divisor(x, y), c),
                     rank, rationals(), rationals(), rationals())


def as_tuple(ch):
    return (ch.r, list(ch.c1.coeffs), ch.c)
