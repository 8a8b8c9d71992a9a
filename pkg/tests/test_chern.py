import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import chern_on, rank_two_surfaces, rationals
from wallcross.chern import (
    ChernCharacter,
    bogomolov_ok,
    ideal_sheaf_twist,
    line_bundle,
    mumford_slope,
    shift,
    skyscraper,
    slice_coords,
    structure_sheaf,
    torsion_on_curve,
    twist,
)
from wallcross.errors import LatticeError, PreconditionError
from wallcross.lattice import IntersectionLattice, hirzebruch, make_frame

F1 = hirzebruch(1)
F, E = F1.lattice.basis()


def test_basic_classes_on_f1():
    assert line_bundle(-E) == ChernCharacter(1, -E, Fraction(-1, 2))
    assert line_bundle(-F) == ChernCharacter(1, -F, 0)
    assert ideal_sheaf_twist(E, 2) == ChernCharacter(1, -E, Fraction(-5, 2))
    assert torsion_on_curve(E) == line_bundle(E) - structure_sheaf(F1.lattice)
    assert skyscraper(F1.lattice) == ChernCharacter(0, F1.lattice.zero(), 1)
    assert shift(structure_sheaf(F1.lattice)).r == -1


def test_slice_coordinates_of_examples():
    fr = F1.frame
    sc = slice_coords(line_bundle(-E), fr)
    assert (sc.a, sc.b, sc.alpha_sq) == (-1, 2, 0)
    sc = slice_coords(line_bundle(-F), fr)
    assert (sc.a, sc.b) == (-1, -1)


def test_slopes():
    fr = F1.frame
    assert mumford_slope(line_bundle(-E), fr) == Fraction(-1, 3)
    assert mumford_slope(torsion_on_curve(E), fr) == math.inf
    with pytest.raises(PreconditionError):
        mumford_slope(shift(line_bundle(E)), fr)


def test_bogomolov():
    assert bogomolov_ok(line_bundle(E * 3 - F))
    assert bogomolov_ok(ideal_sheaf_twist(E, 4))
    assert not bogomolov_ok(ChernCharacter(1, -E, 1))
    with pytest.raises(PreconditionError):
        bogomolov_ok(ChernCharacter(-1, E, 0))


def test_bad_inputs():
    with pytest.raises(PreconditionError):
        ideal_sheaf_twist(E, -1)
    with pytest.raises(PreconditionError):
        ideal_sheaf_twist(E, Fraction(1, 2))
    with pytest.raises(LatticeError):
        ChernCharacter(Fraction(1, 2), E, 0)


def test_orthogonal_part_in_higher_rank():
    lat = IntersectionLattice([[1, 0, 0], [0, -1, 0], [0, 0, -2]])
    H, G, A = lat.basis()
    fr = make_frame(lat, H, G)
    sc = slice_coords(ChernCharacter(1, H * 2 + G + A, 0), fr)
    assert (sc.a, sc.b, sc.alpha_sq) == (2, 1, -2)


@given(rank_two_surfaces().flatmap(lambda p: st.tuples(st.just(p), chern_on(p.lattice))),
       rationals(), rationals(), rationals(), rationals())
def test_twist_composes_and_inverts(pc, a, b, c, d):
    p, ch = pc
    x, y = p.lattice.divisor(a, b), p.lattice.divisor(c, d)
    assert twist(twist(ch, x), y) == twist(ch, x + y)
    assert twist(twist(ch, x), -x) == ch


@given(rank_two_surfaces().flatmap(lambda p: st.tuples(st.just(p), chern_on(p.lattice), chern_on(p.lattice))),
       rationals(), rationals())
def test_twist_is_additive(pcc, a, b):
    p, e1, e2 = pcc
    d = p.lattice.divisor(a, b)
    assert twist(e1 + e2, d) == twist(e1, d) + twist(e2, d)


@given(rank_two_surfaces().flatmap(lambda p: st.tuples(st.just(p), chern_on(p.lattice, st.integers(1, 4)))),
       rationals(), rationals())
def test_bogomolov_discriminant_is_twist_invariant(pc, a, b):
    p, ch = pc
    d = p.lattice.divisor(a, b)
    disc = lambda x: x.c1.square() - 2 * x.r * x.c  # noqa: E731
    assert disc(twist(ch, d)) == disc(ch)
    assert bogomolov_ok(twist(ch, d)) == bogomolov_ok(ch)
