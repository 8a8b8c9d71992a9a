"""Numerical intersection lattices, slice frames and surface presets.

All scalars are :class:`fractions.Fraction`. A frame stores the unnormalized
pair ``(H0, G0)`` together with ``h = H0^2`` and ``g = -G0^2``; the normalized
divisors ``H = H0/sqrt(h)`` and ``G = G0/sqrt(g)`` are never built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import LatticeError

__all__ = [
    "IntersectionLattice",
    "DivisorClass",
    "SliceFrame",
    "SurfacePreset",
    "pair",
    "make_frame",
    "hirzebruch",
    "signature",
    "product_of_lines",
    "lattice_surface",
]


def _frac_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def signature(gram) -> tuple[int, int, int]:
    """Return ``(n_pos, n_neg, n_zero)`` of a symmetric rational matrix.

    Uses congruence diagonalization over the rationals, so zero diagonal
    entries (e.g. a fiber class with ``F^2 = 0``) are handled by pivoting.
    """
    m = [list(map(Fraction, row)) for row in gram]
    n = len(m)
    diag = []
    k = 0
    while k < n:
        # bring a nonzero diagonal entry to position k
        piv = next((i for i in range(k, n) if m[i][i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if m[i][j] != 0), None)
            if off is None:
                diag.extend([Fraction(0)] * (n - k))
                break
            i, j = off
            # row/col i += row/col j makes m[i][i] = m_ii + 2 m_ij + m_jj; use a sign that is nonzero
            t = 1 if m[i][i] + 2 * m[i][j] + m[j][j] != 0 else -1
            for c in range(n):
                m[i][c] += t * m[j][c]
            for r in range(n):
                m[r][i] += t * m[r][j]
            piv = i
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            for row in m:
                row[k], row[piv] = row[piv], row[k]
        p = m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / p
            if f:
                for c in range(k, n):
                    m[i][c] -= f * m[k][c]
                for r in range(k, n):
                    m[r][i] -= f * m[r][k]
        diag.append(p)
        k += 1
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return pos, neg, n - pos - neg


@dataclass(frozen=True)
class IntersectionLattice:
    """Numerical divisor lattice with its intersection pairing.

    The Gram matrix must be symmetric, non-degenerate and of signature
    ``(1, rank - 1)``.
    """

    gram: tuple
    labels: tuple = field(default=None, compare=False)

    def __post_init__(self):
        g = _frac_matrix(self.gram)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise LatticeError("gram must be a non-empty square matrix")
        for i in range(n):
            for j in range(i + 1, n):
                if g[i][j] != g[j][i]:
                    raise LatticeError("gram must be symmetric")
        pos, neg, zero = signature(g)
        if zero:
            raise LatticeError("gram is degenerate")
        if pos != 1:
            raise LatticeError(f"gram has signature ({pos}, {neg}); Hodge index requires (1, {n - 1})")
        object.__setattr__(self, "gram", g)
        labels = self.labels
        if labels is None:
            labels = tuple(f"D{i + 1}" for i in range(n))
        elif len(labels) != n:
            raise LatticeError("one label per basis vector required")
        object.__setattr__(self, "labels", tuple(labels))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def divisor(self, *coeffs) -> "DivisorClass":
        if len(coeffs) == 1 and isinstance(coeffs[0], (list, tuple)):
            coeffs = coeffs[0]
        return DivisorClass(self, tuple(coeffs))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def basis(self) -> tuple["DivisorClass", ...]:
        n = self.rank
        return tuple(DivisorClass(self, tuple(int(i == j) for j in range(n))) for i in range(n))

    def pair(self, a: "DivisorClass", b: "DivisorClass") -> Fraction:
        return pair(self, a, b)


@dataclass(frozen=True)
class DivisorClass:
    """A class in an :class:`IntersectionLattice`, in the lattice basis."""

    lattice: IntersectionLattice
    coeffs: tuple

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs)
        if len(c) != self.lattice.rank:
            raise LatticeError(f"expected {self.lattice.rank} coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    def _check(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.lattice != self.lattice:
            raise LatticeError("classes live in different lattices")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return DivisorClass(self.lattice, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return DivisorClass(self.lattice, tuple(x - y for x, y in zip(self.coeffs, o.coeffs)))

    def __neg__(self):
        return DivisorClass(self.lattice, tuple(-x for x in self.coeffs))

    def __mul__(self, k):
        return DivisorClass(self.lattice, tuple(Fraction(k) * x for x in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return DivisorClass(self.lattice, tuple(x / Fraction(k) for x in self.coeffs))

    def dot(self, other: "DivisorClass") -> Fraction:
        return pair(self.lattice, self, other)

    def square(self) -> Fraction:
        return pair(self.lattice, self, self)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        terms = []
        for c, lab in zip(self.coeffs, self.lattice.labels):
            if c:
                terms.append(f"{c}*{lab}" if c != 1 else lab)
        return " + ".join(terms) if terms else "0"


def pair(lattice: IntersectionLattice, a: DivisorClass, b: DivisorClass) -> Fraction:
    """Intersection number ``a^T * gram * b``."""
    if len(a.coeffs) != lattice.rank or len(b.coeffs) != lattice.rank:
        raise LatticeError("dimension mismatch")
    total = Fraction(0)
    for ai, row in zip(a.coeffs, lattice.gram):
        if ai:
            total += ai * sum((gij * bj for gij, bj in zip(row, b.coeffs) if gij and bj), Fraction(0))
    return total


def _primitive(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    return tuple(Fraction(x // g) for x in ints) if g else tuple(Fraction(0) for _ in ints)


@dataclass(frozen=True)
class SliceFrame:
    """The pair ``(H0, G0)`` cutting out a slice of stability conditions.

    ``h = H0^2 > 0``, ``g = -G0^2 > 0`` and ``q = g/h``.
    """

    h0: DivisorClass
    g0: DivisorClass

    def __post_init__(self):
        if self.h0.lattice != self.g0.lattice:
            raise LatticeError("h0 and g0 live in different lattices")
        if self.h0.square() <= 0:
            raise LatticeError("h0^2 must be positive")
        if self.h0.dot(self.g0) != 0:
            raise LatticeError("g0 must be orthogonal to h0")
        if self.g0.square() >= 0:
            raise LatticeError("g0^2 must be negative")

    @property
    def lattice(self) -> IntersectionLattice:
        return self.h0.lattice

    @property
    def h(self) -> Fraction:
        return self.h0.square()

    @property
    def g(self) -> Fraction:
        return -self.g0.square()

    @property
    def q(self) -> Fraction:
        return self.g / self.h

    def decompose(self, d: DivisorClass) -> tuple[Fraction, Fraction]:
        """Coordinates ``(x, y)`` with ``d = x*H0 + y*G0 + alpha``, alpha orthogonal to both."""
        return d.dot(self.h0) / self.h, -d.dot(self.g0) / self.g

    def flipped(self) -> "SliceFrame":
        return SliceFrame(self.h0, -self.g0)


def make_frame(lattice: IntersectionLattice, h0: DivisorClass, g0: Optional[DivisorClass] = None,
               orient: Optional[DivisorClass] = None) -> SliceFrame:
    """Build a :class:`SliceFrame`, completing ``g0`` in rank 2.

    If ``orient`` is given and pairs nonzero with ``g0``, the sign of ``g0``
    is chosen so that ``orient . G0 > 0``.
    """
    if h0.lattice != lattice:
        raise LatticeError("h0 is not in this lattice")
    if h0.square() <= 0:
        raise LatticeError("h0^2 must be positive")
    if g0 is None:
        if lattice.rank != 2:
            raise LatticeError("g0 must be supplied when the lattice rank exceeds 2")
        w = [sum(lattice.gram[i][j] * h0.coeffs[j] for j in range(2)) for i in range(2)]
        g0 = DivisorClass(lattice, _primitive((w[1], -w[0])))
    elif g0.lattice != lattice:
        raise LatticeError("g0 is not in this lattice")
    if h0.dot(g0) != 0:
        raise LatticeError("g0 is not orthogonal to h0")
    if g0.square() >= 0:
        raise LatticeError("g0^2 must be negative")
    if orient is not None and orient.dot(g0) < 0:
        g0 = -g0
    return SliceFrame(h0, g0)


@dataclass(frozen=True)
class SurfacePreset:
    lattice: IntersectionLattice
    frame: SliceFrame
    effective_generators: Optional[tuple] = None
    negative_curves: tuple = ()
    name: str = field(default="surface", compare=False)

    def __post_init__(self):
        gens = self.effective_generators
        if gens is not None:
            gens = tuple(gens)
            if len(gens) != 2 or self.lattice.rank != 2:
                raise LatticeError("effective generators are supported for Picard rank 2 only")
            c1, c2 = gens
            if not (c1.dot(self.frame.g0) > 0 and c2.dot(self.frame.g0) < 0):
                raise LatticeError("orientation requires C1.G0 > 0 and C2.G0 < 0")
            object.__setattr__(self, "effective_generators", gens)
        object.__setattr__(self, "negative_curves", tuple(self.negative_curves))

    @property
    def generators(self) -> tuple[DivisorClass, DivisorClass]:
        if self.effective_generators is None:
            raise LatticeError(f"{self.name}: no effective cone generators declared")
        return self.effective_generators

    def negative_generators(self) -> tuple[DivisorClass, ...]:
        return tuple(c for c in self.generators if c.square() < 0)

    def cone_class(self, a, b) -> DivisorClass:
        c1, c2 = self.generators
        return c1 * a + c2 * b

    def cone_coordinates(self, d: DivisorClass) -> tuple[Fraction, Fraction]:
        """Coordinates ``(a, b)`` with ``d = a*C1 + b*C2``."""
        (x1, y1), (x2, y2) = (c.coeffs for c in self.generators)
        det = x1 * y2 - x2 * y1
        if det == 0:
            raise LatticeError("cone generators are dependent")
        x, y = d.coeffs
        return (x * y2 - x2 * y) / det, (x1 * y - x * y1) / det

    def is_effective(self, d: DivisorClass) -> bool:
        a, b = self.cone_coordinates(d)
        return a >= 0 and b >= 0

    def effective_classes(self, n: int):
        """Yield ``(a, b, a*C1 + b*C2)`` for ``0 <= a, b <= n``, excluding zero."""
        for a in range(n + 1):
            for b in range(n + 1):
                if a or b:
                    yield a, b, self.cone_class(a, b)


def hirzebruch(e: int, h0=None, name: Optional[str] = None) -> SurfacePreset:
    """Hirzebruch surface ``F_e`` in the basis (fiber F, section E).

    ``F^2 = 0``, ``E^2 = -e`` and ``F.E = 1``. ``h0 = a*F + b*E`` must satisfy
    ``a > b*e`` and ``b > 0``. Defaults to ``(e + 1)*F + E``.
    """
    if e < 0 or int(e) != e:
        raise LatticeError("e must be a non-negative integer")
    e = int(e)
    labels = ("F1", "F2") if e == 0 else ("F", "E")
    lat = IntersectionLattice(((0, 1), (1, -e)), labels=labels)
    if h0 is None:
        h0 = (e + 1, 1)
    if not isinstance(h0, DivisorClass):
        h0 = lat.divisor(*h0)
    a, b = h0.coeffs
    if not (b > 0 and a > b * e):
        raise LatticeError(f"h0 = {a}F + {b}E is not ample on F_{e} (need a > b*e, b > 0)")
    F, E = lat.basis()
    frame = make_frame(lat, h0, orient=E)
    negative = (E,) if e > 0 else ()
    return SurfacePreset(lat, frame, (E, F), negative, name or f"F{e}")


def product_of_lines() -> SurfacePreset:
    """``P^1 x P^1`` with fibers F1, F2 and the ample class F1 + F2."""
    preset = hirzebruch(0)
    return SurfacePreset(preset.lattice, preset.frame, preset.effective_generators, (), "P1xP1")


def lattice_surface(gram, h0, generators, name: str = "lattice") -> SurfacePreset:
    """Abstract Picard-rank-2 surface from a Gram matrix and two cone generators.

    ``G0`` is oriented so that the first generator pairs positively with it.
    Generators of negative square are recorded as the negative curves.
    """
    lat = IntersectionLattice(gram)
    if lat.rank != 2:
        raise LatticeError("abstract surfaces are supported for Picard rank 2 only")
    h0 = h0 if isinstance(h0, DivisorClass) else lat.divisor(*h0)
    gens = tuple(g if isinstance(g, DivisorClass) else lat.divisor(*g) for g in generators)
    if len(gens) != 2:
        raise LatticeError("exactly two effective generators required")
    for c in gens:
        if c.dot(h0) <= 0:
            raise LatticeError(f"h0 is not positive on the generator {c}")
    frame = make_frame(lat, h0, orient=gens[0])
    negative = tuple(c for c in gens if c.square() < 0)
    return SurfacePreset(lat, frame, gens, negative, name)
