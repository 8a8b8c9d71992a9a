"""Walls ``W(E, B)`` in tilde coordinates and their exact geometry.

A wall is the quadric

    A*(s^2 + t^2) + B2*s*u + C2*u^2 + D1*s + E1*u + F0 = 0

obtained from ``Re Z(E) Im Z(B) - Re Z(B) Im Z(E) = 0`` after cancelling
the factor ``t``. Against ``O_S`` or ``O_S[1]`` one has ``E1 = F0 = 0`` and,
up to scale, ``(A, B2, C2, D1) = (-a, 2b, -a*q, 2c)`` for ``ch(E) = (r, c1, c)``.
Coefficients are stored in canonical form: coprime integers with the
leading nonzero entry positive.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .chern import ChernCharacter, slice_coords
from .errors import EmptySliceError, NestingError, PreconditionError
from .lattice import SliceFrame
from .surd import Surd

__all__ = [
    "WallKind",
    "WallClass",
    "WallConic",
    "Semicircle",
    "Nesting",
    "SpecialPoints",
    "Asymptotes",
    "wall",
    "wall_from_coords",
    "classify",
    "special_points",
    "asymptote_directions",
    "pi_u_circle",
    "nesting_compare",
    "coincidence_u",
    "crosses_line",
    "meets_window",
    "mirror",
    "s_range",
]


class WallKind(str, enum.Enum):
    PARABOLA = "Parabola"
    ELLIPSE = "Ellipse"
    CONE = "Cone"
    RIGHT_HYPERBOLA = "RightHyperbola"
    LEFT_HYPERBOLA = "LeftHyperbola"
    VERTICAL_LINE = "VerticalLine"
    DEGENERATE = "Degenerate"


class Nesting(str, enum.Enum):
    FIRST_INSIDE_SECOND = "FirstInsideSecond"
    SECOND_INSIDE_FIRST = "SecondInsideFirst"
    EQUAL = "Equal"
    FIRST_EMPTY = "FirstEmpty"
    SECOND_EMPTY = "SecondEmpty"
    BOTH_EMPTY = "BothEmpty"
    EXTERNALLY_DISJOINT = "ExternallyDisjoint"


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _canonical(coeffs) -> tuple[Fraction, ...]:
    fr = [Fraction(x) for x in coeffs]
    if not any(fr):
        return tuple(Fraction(0) for _ in fr)
    den = math.lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


@dataclass(frozen=True)
class WallConic:
    A: Fraction
    B2: Fraction
    C2: Fraction
    D1: Fraction
    E1: Fraction = Fraction(0)
    F0: Fraction = Fraction(0)
    ch_e: Optional[ChernCharacter] = field(default=None, compare=False, repr=False)
    ch_b: Optional[ChernCharacter] = field(default=None, compare=False, repr=False)
    frame: Optional[SliceFrame] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        canon = _canonical((self.A, self.B2, self.C2, self.D1, self.E1, self.F0))
        for name, val in zip(("A", "B2", "C2", "D1", "E1", "F0"), canon):
            object.__setattr__(self, name, val)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.A, self.B2, self.C2, self.D1, self.E1, self.F0)

    @property
    def is_degenerate(self) -> bool:
        return not any(self.coefficients)

    @property
    def through_origin(self) -> bool:
        return self.E1 == 0 and self.F0 == 0

    @property
    def q(self) -> Fraction:
        if self.frame is not None:
            return self.frame.q
        if self.A == 0:
            raise PreconditionError("q is undetermined for a wall with A = 0 and no frame")
        return self.C2 / self.A

    @property
    def delta(self) -> Fraction:
        """Discriminant ``B2^2 - 4*A*C2`` of the t = 0 conic."""
        return self.B2 * self.B2 - 4 * self.A * self.C2

    def __call__(self, s, u, t=0):
        return (self.A * (s * s + t * t) + self.B2 * s * u + self.C2 * u * u
                + self.D1 * s + self.E1 * u + self.F0)

    def d_ds(self, s, u):
        return 2 * self.A * s + self.B2 * u + self.D1

    def d_du(self, s, u):
        return self.B2 * s + 2 * self.C2 * u + self.E1

    def with_provenance(self, ch_e=None, ch_b=None, frame=None) -> "WallConic":
        return WallConic(*self.coefficients, ch_e=ch_e, ch_b=ch_b, frame=frame)


def wall(ch_e: ChernCharacter, ch_b: ChernCharacter, frame: SliceFrame) -> WallConic:
    """Expand ``Re Z(E) Im Z(B) - Re Z(B) Im Z(E)`` and divide by ``t``."""
    e = slice_coords(ch_e, frame)
    b = slice_coords(ch_b, frame)
    h, g = frame.h, frame.g
    k = ch_b.r * e.a - ch_e.r * b.a
    coeffs = (
        -h * k / 2,
        h * (e.b * ch_b.r - b.b * ch_e.r),
        -g * k / 2,
        h * (ch_e.c * ch_b.r - ch_b.c * ch_e.r),
        e.a * b.b - b.a * e.b,
        e.a * ch_b.c - b.a * ch_e.c,
    )
    return WallConic(*coeffs, ch_e=ch_e, ch_b=ch_b, frame=frame)


def wall_from_coords(a, b, c, q) -> WallConic:
    """Wall against O_S of a class with slice coordinates ``(a, b)`` and ch2 ``c``."""
    a, b, c, q = map(Fraction, (a, b, c, q))
    return WallConic(-a, 2 * b, -a * q, 2 * c)


@dataclass(frozen=True)
class WallClass:
    kind: WallKind
    delta_sign: int
    c_sign: int
    weakly_destabilizing: bool


def classify(w: WallConic) -> WallClass:
    """Conic type of the t = 0 section, read from the signs of Delta and c = D1/2."""
    ds, cs = _sgn(w.delta), _sgn(w.D1)
    if w.is_degenerate:
        return WallClass(WallKind.DEGENERATE, ds, cs, False)
    if w.A == 0 and w.B2 == 0 and w.C2 == 0:
        return WallClass(WallKind.VERTICAL_LINE, ds, cs, False)
    if ds == 0:
        kind = WallKind.PARABOLA
        weak = cs > 0
    elif ds < 0:
        kind = WallKind.ELLIPSE
        weak = cs > 0
    else:
        kind = {0: WallKind.CONE, 1: WallKind.RIGHT_HYPERBOLA, -1: WallKind.LEFT_HYPERBOLA}[cs]
        weak = True
    return WallClass(kind, ds, cs, weak)


@dataclass(frozen=True)
class SpecialPoints:
    origin: tuple
    p_w: tuple
    horiz1: tuple
    horiz2: tuple


def _origin_wall(w: WallConic):
    if not w.through_origin:
        raise PreconditionError("operation requires a wall through the origin (base O_S or O_S[1])")


def special_points(w: WallConic) -> SpecialPoints:
    """Vertical-tangent points (origin and P_W) and the two horizontal-tangent points.

    ``horiz1`` lies on ``u = s`` and ``horiz2`` on ``u = -s`` in normalized
    units, i.e. ``u~ = ±s~/sqrt(q)``; these are :class:`Surd` values unless
    ``q`` is a rational square.
    """
    _origin_wall(w)
    if w.delta == 0:
        raise PreconditionError("special points need a nonzero discriminant")
    if w.D1 == 0:
        raise PreconditionError("special points need c != 0")
    if w.A == 0:
        raise PreconditionError("special points need A != 0")
    d = w.delta
    p_w = (4 * w.C2 * w.D1 / d, -2 * w.B2 * w.D1 / d)
    rho = Surd.sqrt(w.C2 / w.A)
    s1 = -w.D1 / (2 * w.A + w.B2 / rho)
    s2 = -w.D1 / (2 * w.A - w.B2 / rho)
    return SpecialPoints((Fraction(0), Fraction(0)), p_w, (s1, s1 / rho), (s2, -s2 / rho))


@dataclass(frozen=True)
class Asymptotes:
    slopes: tuple          # u~/s~ per asymptote; None for a vertical one
    directions: tuple      # direction vectors (ds, du)
    approx: tuple          # float slopes (inf for vertical)
    center: tuple


def asymptote_directions(w: WallConic) -> Asymptotes:
    kind = classify(w).kind
    if kind not in (WallKind.LEFT_HYPERBOLA, WallKind.RIGHT_HYPERBOLA, WallKind.CONE):
        raise PreconditionError(f"{kind.value} walls have no asymptotes")
    d = w.delta
    det = -d
    center = ((-2 * w.C2 * w.D1 + w.B2 * w.E1) / det, (w.B2 * w.D1 - 2 * w.A * w.E1) / det)
    if w.C2 == 0:
        # leading form B2*s*u (+ A*s^2): u = 0 and s = -(B2/A) u directions
        if w.A == 0:
            slopes = (Fraction(0), None)
        else:
            slopes = (Fraction(0), -w.A / w.B2)
    else:
        root = Surd.sqrt(d)
        slopes = ((-w.B2 + root) / (2 * w.C2), (-w.B2 - root) / (2 * w.C2))
    directions = tuple((Fraction(0), Fraction(1)) if m is None else (Fraction(1), m) for m in slopes)
    approx = tuple(math.inf if m is None else float(m) for m in slopes)
    return Asymptotes(slopes, directions, approx, center)


@dataclass(frozen=True)
class Semicircle:
    """Section of a wall by the plane of fixed u: ``(s - center)^2 + t^2 = radius_sq``."""

    center: Fraction
    radius_sq: Fraction

    def left_end_below(self, x) -> bool:
        """``center - radius < x``, exactly."""
        d = self.center - x
        return d < 0 or d * d < self.radius_sq

    def right_end_above(self, x) -> bool:
        """``center + radius > x``, exactly."""
        d = x - self.center
        return d < 0 or d * d < self.radius_sq

    def approx(self) -> tuple[float, float]:
        return float(self.center), math.sqrt(self.radius_sq)


def pi_u_circle(w: WallConic, u) -> Optional[Semicircle]:
    """Semicircle of the wall in the plane of fixed ``u``; None when empty."""
    if w.A == 0:
        raise EmptySliceError("wall has A = 0 (no semicircle in the plane of fixed u)")
    u = Fraction(u)
    center = -(w.B2 * u + w.D1) / (2 * w.A)
    radius_sq = center * center - (w.C2 * u * u + w.E1 * u + w.F0) / w.A
    if radius_sq <= 0:
        return None
    return Semicircle(center, radius_sq)


def _slice(w: WallConic, u) -> Optional[Semicircle]:
    if w.A == 0:
        return None
    return pi_u_circle(w, u)


def _disk_inside(inner: Semicircle, outer: Semicircle) -> bool:
    """Closed disk ``inner`` contained in closed disk ``outer``."""
    if inner.radius_sq > outer.radius_sq:
        return False
    d2 = (inner.center - outer.center) ** 2
    # |d| <= R - r  <=>  R^2 + r^2 - d^2 >= 2 R r (with R >= r)
    x = outer.radius_sq + inner.radius_sq - d2
    return x >= 0 and x * x >= 4 * inner.radius_sq * outer.radius_sq


def _disks_apart(c1: Semicircle, c2: Semicircle) -> bool:
    """Closed disks meet in at most one point."""
    d2 = (c1.center - c2.center) ** 2
    y = d2 - c1.radius_sq - c2.radius_sq
    return y >= 0 and y * y >= 4 * c1.radius_sq * c2.radius_sq


def nesting_compare(w1: WallConic, w2: WallConic, u) -> Nesting:
    """Relative position of the two semicircles in the plane of fixed ``u``.

    Tangency counts as inside / apart, never as crossing; the open
    semicircles (t > 0) are disjoint in those cases.
    """
    k1, k2 = _slice(w1, u), _slice(w2, u)
    if k1 is None and k2 is None:
        return Nesting.BOTH_EMPTY
    if k1 is None:
        return Nesting.FIRST_EMPTY
    if k2 is None:
        return Nesting.SECOND_EMPTY
    if k1 == k2:
        return Nesting.EQUAL
    if _disk_inside(k1, k2):
        return Nesting.FIRST_INSIDE_SECOND
    if _disk_inside(k2, k1):
        return Nesting.SECOND_INSIDE_FIRST
    if _disks_apart(k1, k2):
        return Nesting.EXTERNALLY_DISJOINT
    raise NestingError(f"walls {w1.coefficients} and {w2.coefficients} cross transversally at u={u}")


def coincidence_u(w1: WallConic, w2: WallConic) -> Optional[Fraction]:
    """The unique ``u`` at which the two semicircles could coincide, or None.

    Equal centers force equal radii for walls through the origin sharing ``q``.
    """
    _origin_wall(w1)
    _origin_wall(w2)
    if w1 == w2:
        raise PreconditionError("walls coincide everywhere")
    if w1.A == 0 or w2.A == 0:
        return None
    if w1.C2 * w2.A != w2.C2 * w1.A:
        raise PreconditionError("walls come from frames with different q")
    lhs = w1.B2 * w2.A - w2.B2 * w1.A
    rhs = w2.D1 * w1.A - w1.D1 * w2.A
    if lhs == 0:
        if rhs == 0:
            raise PreconditionError("walls coincide everywhere")
        return None
    return rhs / lhs


def crosses_line(w: WallConic, u, s_line) -> bool:
    """Whether the semicircle meets the vertical line ``s = s_line`` at some t > 0."""
    k = _slice(w, u)
    if k is None:
        return False
    d = Fraction(s_line) - k.center
    return d * d < k.radius_sq


def meets_window(w: WallConic, u, lo, hi) -> bool:
    """Whether the open semicircle has a point with ``lo <= s < hi``."""
    k = _slice(w, u)
    if k is None:
        return False
    if hi != math.inf and not k.left_end_below(hi):
        return False
    if lo != -math.inf and not k.right_end_above(lo):
        return False
    return True


def mirror(w: WallConic) -> WallConic:
    """Image under ``(s, u) -> (-s, -u)``."""
    return WallConic(w.A, w.B2, w.C2, -w.D1, -w.E1, w.F0, ch_e=w.ch_e, ch_b=w.ch_b, frame=w.frame)


def s_range(w: WallConic):
    """Infimum and supremum of s over the points of the wall with t > 0.

    Returns ``(lo, hi)`` with infinite ends where unbounded, or None when
    the wall has no point with t > 0 (a double line or an isolated point).
    """
    _origin_wall(w)
    cls = classify(w)
    if cls.kind is WallKind.DEGENERATE:
        return (-math.inf, math.inf)
    if cls.kind is WallKind.VERTICAL_LINE:
        return (Fraction(0), Fraction(0))
    if cls.delta_sign < 0:
        if w.D1 == 0:
            return None
        ps = 4 * w.C2 * w.D1 / w.delta
        return (min(Fraction(0), ps), max(Fraction(0), ps))
    if cls.delta_sign == 0:
        if w.D1 == 0:
            return None
        if w.A == 0:
            return (-math.inf, math.inf)
        # A*(s + k*u)^2 + A*t^2 = -D1*s
        return (Fraction(0), math.inf) if -w.D1 * w.A > 0 else (-math.inf, Fraction(0))
    return (-math.inf, math.inf)
