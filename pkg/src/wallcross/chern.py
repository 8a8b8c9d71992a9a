"""Chern characters, slice coordinates and the distinguished objects."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import LatticeError, PreconditionError
from .lattice import DivisorClass, IntersectionLattice, SliceFrame

__all__ = [
    "ChernCharacter",
    "SliceCoords",
    "slice_coords",
    "twist",
    "shift",
    "structure_sheaf",
    "line_bundle",
    "ideal_sheaf_twist",
    "torsion_on_curve",
    "skyscraper",
    "mumford_slope",
    "bogomolov_ok",
]


@dataclass(frozen=True)
class ChernCharacter:
    """``(rank, c1, ch2)`` of an object of the derived category."""

    r: int
    c1: DivisorClass
    c: Fraction

    def __post_init__(self):
        if int(self.r) != self.r:
            raise LatticeError("rank must be an integer")
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "c", Fraction(self.c))

    @property
    def lattice(self) -> IntersectionLattice:
        return self.c1.lattice

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.r + other.r, self.c1 + other.c1, self.c + other.c)

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.r - other.r, self.c1 - other.c1, self.c - other.c)

    def __neg__(self) -> "ChernCharacter":
        return ChernCharacter(-self.r, -self.c1, -self.c)

    def sort_key(self):
        return (self.r, self.c1.coeffs, self.c)

    def __str__(self):
        return f"({self.r}, {self.c1}, {self.c})"


@dataclass(frozen=True)
class SliceCoords:
    """``a = c1.H0``, ``b = -c1.G0`` and the square of the orthogonal part."""

    a: Fraction
    b: Fraction
    alpha_sq: Fraction


def slice_coords(ch: ChernCharacter, frame: SliceFrame) -> SliceCoords:
    a = ch.c1.dot(frame.h0)
    b = -ch.c1.dot(frame.g0)
    alpha_sq = ch.c1.square() - a * a / frame.h + b * b / frame.g
    if alpha_sq > 0:
        raise LatticeError(f"class {ch.c1} has positive orthogonal square {alpha_sq}; lattice violates Hodge index")
    if ch.lattice.rank == 2 and alpha_sq != 0:
        raise LatticeError("nonzero orthogonal part in a rank-2 lattice")
    return SliceCoords(a, b, alpha_sq)


def twist(ch: ChernCharacter, d: DivisorClass) -> ChernCharacter:
    """Chern character of ``E ⊗ O(d)``."""
    return ChernCharacter(ch.r, ch.c1 + d * ch.r, ch.c + ch.c1.dot(d) + Fraction(ch.r, 2) * d.square())


def shift(ch: ChernCharacter) -> ChernCharacter:
    return -ch


def structure_sheaf(lattice: IntersectionLattice) -> ChernCharacter:
    return ChernCharacter(1, lattice.zero(), 0)


def line_bundle(d: DivisorClass) -> ChernCharacter:
    return twist(structure_sheaf(d.lattice), d)


def ideal_sheaf_twist(C: DivisorClass, n=0) -> ChernCharacter:
    """``ch(I_Z(-C)) = (1, -C, C^2/2 - n)`` for a zero-dimensional Z of length n."""
    n = Fraction(n)
    if n < 0 or n.denominator != 1:
        raise PreconditionError("length of Z must be a non-negative integer")
    return ChernCharacter(1, -C, C.square() / 2 - n)


def torsion_on_curve(C: DivisorClass) -> ChernCharacter:
    """``ch(O(C)|_C) = ch(O(C)) - ch(O)``."""
    return ChernCharacter(0, C, C.square() / 2)


def skyscraper(lattice: IntersectionLattice) -> ChernCharacter:
    return ChernCharacter(0, lattice.zero(), 1)


def mumford_slope(ch: ChernCharacter, frame: SliceFrame):
    """Slope in tilde units, ``a / (r*h)``; ``+inf`` for torsion classes."""
    if ch.r < 0:
        raise PreconditionError("slope is defined for r >= 0; shift the object first")
    if ch.r == 0:
        return math.inf
    return ch.c1.dot(frame.h0) / (ch.r * frame.h)


def bogomolov_ok(ch: ChernCharacter) -> bool:
    if ch.r < 0:
        raise PreconditionError("Bogomolov inequality is checked for r >= 0")
    return ch.c1.square() - 2 * ch.r * ch.c >= 0
