"""Deterministic SVG pictures of walls.

Exact data is converted to floats only here, and every coordinate is
written with 12 decimals so identical inputs give identical bytes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .errors import PreconditionError
from .walls import WallConic, WallKind, asymptote_directions, classify, pi_u_circle, special_points

__all__ = ["RenderSpec", "render_svg"]

WIDTH, HEIGHT, PAD = 640, 480, 24
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


@dataclass(frozen=True)
class RenderSpec:
    """What to draw. ``plane`` is ``"T0"`` (the (s, u) plane at t = 0) or ``"PiU"`` with ``u`` set."""

    plane: str = "T0"
    u: Optional[Fraction] = None
    viewport: tuple = (Fraction(-3), Fraction(3), Fraction(-3), Fraction(3))
    samples: int = 200
    show_pw: bool = True
    show_asymptotes: bool = True
    mu_lines: tuple = field(default=())

    def __post_init__(self):
        vp = tuple(Fraction(x) for x in self.viewport)
        object.__setattr__(self, "viewport", vp)
        object.__setattr__(self, "mu_lines", tuple(Fraction(x) for x in self.mu_lines))
        if len(vp) != 4 or vp[0] >= vp[1] or vp[2] >= vp[3]:
            raise PreconditionError("viewport must be (xmin, xmax, ymin, ymax) with min < max")
        if self.samples < 16:
            raise PreconditionError("samples must be at least 16")
        if self.plane not in ("T0", "PiU"):
            raise PreconditionError(f"unknown plane {self.plane!r}")
        if self.plane == "PiU":
            if self.u is None:
                raise PreconditionError("PiU plane needs u")
            object.__setattr__(self, "u", Fraction(self.u))


def _f(x: float) -> str:
    s = f"{x:.12f}"
    return "0.000000000000" if s == "-0.000000000000" else s


class _Canvas:
    def __init__(self, spec: RenderSpec):
        self.x0, self.x1, self.y0, self.y1 = (float(v) for v in spec.viewport)
        self.parts: list[str] = []

    def px(self, x: float, y: float) -> tuple[float, float]:
        sx = PAD + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2 * PAD)
        sy = HEIGHT - PAD - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2 * PAD)
        return sx, sy

    def inside(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def polyline(self, pts, color, dashed=False, width="1.5"):
        pts = [p for p in pts if self.inside(*p)]
        if len(pts) < 2:
            return
        d = " ".join("{},{}".format(*map(_f, self.px(x, y))) for x, y in pts)
        dash = ' stroke-dasharray="4,3"' if dashed else ""
        self.parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="{width}"{dash} points="{d}"/>')

    def marker(self, x: float, y: float, color, label):
        if not self.inside(x, y):
            return
        sx, sy = self.px(x, y)
        self.parts.append(f'<circle cx="{_f(sx)}" cy="{_f(sy)}" r="3" fill="{color}"/>')
        self.parts.append(f'<text x="{_f(sx + 5)}" y="{_f(sy - 5)}" font-size="10">{escape(label)}</text>')


def _conic_branches(w: WallConic, spec: RenderSpec):
    """Sample the t = 0 conic as polylines parametrized by u (solving for s)."""
    y0, y1 = float(spec.viewport[2]), float(spec.viewport[3])
    n = spec.samples
    A, B2, C2, D1 = (float(x) for x in (w.A, w.B2, w.C2, w.D1))
    E1, F0 = float(w.E1), float(w.F0)
    branches: list[list] = [[], []]
    done: list[list] = []
    for i in range(n):
        u = y0 + (y1 - y0) * i / (n - 1)
        b = B2 * u + D1
        c = C2 * u * u + E1 * u + F0
        roots: list = [None, None]
        if A == 0:
            if b != 0:
                roots[0] = -c / b
        else:
            disc = b * b - 4 * A * c
            if disc >= 0:
                r = math.sqrt(disc)
                roots = [(-b - r) / (2 * A), (-b + r) / (2 * A)]
        for k in range(2):
            if roots[k] is None:
                if len(branches[k]) > 1:
                    done.append(branches[k])
                branches[k] = []
            else:
                branches[k].append((roots[k], u))
    done.extend(b for b in branches if len(b) > 1)
    if A == 0 and B2 == 0 and C2 == 0 and D1 != 0 and E1 == 0:
        s = -F0 / D1
        done.append([(s, y0), (s, y1)])
    return done


def render_svg(walls: Sequence[tuple[str, WallConic]], spec: RenderSpec) -> str:
    cv = _Canvas(spec)
    cv.parts.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
    # axes
    cv.polyline([(cv.x0, 0.0), (cv.x1, 0.0)], "#999999", width="0.75")
    cv.polyline([(0.0, cv.y0), (0.0, cv.y1)], "#999999", width="0.75")
    for mu in spec.mu_lines:
        cv.polyline([(float(mu), cv.y0), (float(mu), cv.y1)], "#555555", dashed=True, width="0.75")
    legend = []
    for idx, (label, w) in enumerate(walls):
        color = PALETTE[idx % len(PALETTE)]
        legend.append((label, color))
        if spec.plane == "PiU":
            if w.A == 0:
                continue
            k = pi_u_circle(w, spec.u)
            if k is None:
                continue
            c, r = k.approx()
            n = spec.samples
            cv.polyline([(c + r * math.cos(math.pi * i / (n - 1)), r * math.sin(math.pi * i / (n - 1)))
                         for i in range(n)], color)
            continue
        for br in _conic_branches(w, spec):
            cv.polyline(br, color)
        kind = classify(w).kind
        if spec.show_pw:
            try:
                pw = special_points(w).p_w
                cv.marker(float(pw[0]), float(pw[1]), color, "P_W")
            except PreconditionError:
                pass
        if spec.show_asymptotes and kind in (WallKind.LEFT_HYPERBOLA, WallKind.RIGHT_HYPERBOLA, WallKind.CONE):
            a = asymptote_directions(w)
            cx, cy = float(a.center[0]), float(a.center[1])
            span = 2 * max(cv.x1 - cv.x0, cv.y1 - cv.y0)
            for dx, dy in a.directions:
                dx, dy = float(dx), float(dy)
                norm = math.hypot(dx, dy)
                dx, dy = dx / norm, dy / norm
                pts = [(cx + span * (2 * i / (spec.samples - 1) - 1) * dx,
                        cy + span * (2 * i / (spec.samples - 1) - 1) * dy) for i in range(spec.samples)]
                cv.polyline(pts, color, dashed=True, width="0.75")
    for i, (label, color) in enumerate(legend):
        cv.parts.append(f'<text x="{PAD}" y="{PAD + 12 * i}" font-size="11" fill="{color}">{escape(label)}</text>')
    title = "t = 0 plane (s, u)" if spec.plane == "T0" else f"plane u = {spec.u} (s, t)"
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">\n<title>{escape(title)}</title>\n')
    return head + "\n".join(cv.parts) + "\n</svg>\n"
