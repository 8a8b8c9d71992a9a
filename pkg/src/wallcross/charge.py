"""Central charge, Bridgeland slope and heart membership in tilde coordinates.

A point ``(s, u, t)`` in tilde units stands for the stability condition
built from ``D = s*H0 + u*G0`` and ``t*H0``; in normalized units this is
``(s*sqrt(h), u*sqrt(g), t*sqrt(h))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .chern import ChernCharacter, bogomolov_ok, mumford_slope, slice_coords
from .errors import PreconditionError, ZeroChargeError
from .lattice import DivisorClass, SliceFrame

__all__ = [
    "StabilityPoint",
    "HNProfile",
    "central_charge",
    "central_charge_divisor",
    "beta",
    "in_heart_semistable",
    "subobject_window",
    "translate",
    "s0_subobject_witness",
]


@dataclass(frozen=True, order=True)
class StabilityPoint:
    s: Fraction
    u: Fraction
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("s", "u", "t"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.t < 0:
            raise PreconditionError("t must be non-negative")

    def normalized(self, frame: SliceFrame) -> tuple[float, float, float]:
        """Floating approximation in normalized coordinates (display only)."""
        rh, rg = math.sqrt(frame.h), math.sqrt(frame.g)
        return float(self.s) * rh, float(self.u) * rg, float(self.t) * rh

    def divisor(self, frame: SliceFrame) -> DivisorClass:
        return frame.h0 * self.s + frame.g0 * self.u


def _require_t(pt: StabilityPoint):
    if pt.t <= 0:
        raise PreconditionError("central charge needs t > 0")


def central_charge(ch: ChernCharacter, frame: SliceFrame, pt: StabilityPoint) -> tuple[Fraction, Fraction]:
    """``(Re Z, Im Z)``, both exact rationals."""
    _require_t(pt)
    sc = slice_coords(ch, frame)
    h, g = frame.h, frame.g
    s, u, t = pt.s, pt.u, pt.t
    re = -ch.c + sc.a * s - sc.b * u - Fraction(ch.r, 2) * (h * s * s - g * u * u - h * t * t)
    im = t * (sc.a - ch.r * h * s)
    return re, im


def central_charge_divisor(ch: ChernCharacter, D: DivisorClass, H: DivisorClass) -> tuple[Fraction, Fraction]:
    """``-∫ exp(-(D + iH)) ch(E)`` evaluated directly on lattice classes."""
    re = -ch.c + ch.c1.dot(D) - Fraction(ch.r, 2) * (D.square() - H.square())
    im = ch.c1.dot(H) - ch.r * D.dot(H)
    return re, im


def beta(ch: ChernCharacter, frame: SliceFrame, pt: StabilityPoint):
    """``-Re Z / Im Z`` with ``±inf`` when ``Im Z = 0``."""
    re, im = central_charge(ch, frame, pt)
    if im == 0:
        if re == 0:
            raise ZeroChargeError(f"Z({ch}) = 0 at {pt}")
        return math.inf if re < 0 else -math.inf
    return -re / im


def in_heart_semistable(ch: ChernCharacter, frame: SliceFrame, pt: StabilityPoint, shifted: bool = False) -> bool:
    """Whether a mu-semistable sheaf (``shifted=False``) or its shift lies in the heart."""
    if ch.r < 0:
        raise PreconditionError("pass the sheaf class and use shifted=True")
    mu = mumford_slope(ch, frame)
    if shifted:
        return ch.r > 0 and pt.s >= mu
    return pt.s < mu


def translate(pt: StabilityPoint, frame: SliceFrame, d: DivisorClass) -> StabilityPoint:
    """The point for ``D - d``; requires ``d`` in the span of ``H0, G0``."""
    x, y = frame.decompose(d)
    if frame.h0 * x + frame.g0 * y != d:
        raise PreconditionError("d is not in the span of H0 and G0")
    return StabilityPoint(pt.s - x, pt.u - y, pt.t)


@dataclass(frozen=True)
class HNProfile:
    """Mumford HN factors of a candidate and of ``H^-1`` of its quotient.

    Factors are full Chern characters ordered by strictly decreasing slope.
    """

    factors: tuple
    quotient_factors: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "quotient_factors", tuple(self.quotient_factors))
        for part in (self.factors, self.quotient_factors):
            if any(f.r <= 0 for f in part):
                raise PreconditionError("HN factors must have positive rank")

    def total(self) -> ChernCharacter:
        tot = self.factors[0]
        for f in self.factors[1:]:
            tot = tot + f
        return tot

    def check_slopes(self, frame: SliceFrame):
        for part, label in ((self.factors, "K"), (self.quotient_factors, "J")):
            mus = [mumford_slope(f, frame) for f in part]
            if any(x <= y for x, y in zip(mus, mus[1:])):
                raise PreconditionError(f"{label}-factor slopes must be strictly decreasing, got {mus}")

    def check_bogomolov(self):
        for f in self.factors + self.quotient_factors:
            if not bogomolov_ok(f):
                raise PreconditionError(f"HN factor {f} violates the Bogomolov inequality")


def subobject_window(profile: HNProfile, frame: SliceFrame):
    """Half-open s-interval ``[lo, hi)`` on which the candidate is a subobject of O_S."""
    if not profile.factors:
        raise PreconditionError("profile has no subobject factors")
    profile.check_slopes(frame)
    hi = mumford_slope(profile.factors[-1], frame)
    lo = mumford_slope(profile.quotient_factors[0], frame) if profile.quotient_factors else -math.inf
    if hi >= 0:
        raise PreconditionError(f"smallest subobject slope {hi} is not negative")
    if lo >= hi:
        raise PreconditionError(f"empty subobject window [{lo}, {hi})")
    return lo, hi


def s0_subobject_witness(ch: ChernCharacter, frame: SliceFrame, t=1) -> bool:
    """Whether a class of a sheaf in the torsion part could have ``Im Z = 0`` at ``s = 0``.

    Only such classes could be subobjects of O_S[1] on the plane s = 0.
    Torsion-part sheaves of positive rank need slope > 0; rank 0 is allowed.
    """
    if ch.r < 0:
        raise PreconditionError("expected a sheaf class")
    a = ch.c1.dot(frame.h0)
    if ch.r > 0 and a <= 0:
        return False
    _, im = central_charge(ch, frame, StabilityPoint(0, 0, t))
    return im == 0
