"""JSON forms of surfaces, classes, points, walls and scan configuration.

Rationals are written as strings ``"p/q"`` (or ``"p"``) so round trips are
exact.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .charge import StabilityPoint
from .chern import ChernCharacter
from .errors import PreconditionError
from .lattice import DivisorClass, IntersectionLattice, SliceFrame, SurfacePreset
from .scan import ScanBounds, injected_candidate
from .surd import Surd
from .walls import (
    WallConic,
    WallKind,
    asymptote_directions,
    classify,
    mirror,
    pi_u_circle,
    special_points,
)

__all__ = [
    "frac",
    "unfrac",
    "surface_to_json",
    "surface_from_json",
    "chern_to_json",
    "chern_from_json",
    "point_to_json",
    "point_from_json",
    "wall_to_json",
    "wall_from_json",
    "wall_report",
    "bounds_to_json",
    "bounds_from_json",
    "load_surface",
    "load_scan_config",
    "ScanConfig",
]


def frac(x) -> str:
    return str(Fraction(x))


def unfrac(s) -> Fraction:
    if isinstance(s, float):
        raise PreconditionError(f"refusing inexact float {s!r}; write rationals as strings")
    return Fraction(s)


def _num(x):
    """Exact value as JSON: rationals as strings, surds as a small object."""
    if x is None:
        return None
    if isinstance(x, Surd):
        return {"rational": frac(x.rational), "coeff": frac(x.coeff), "radicand": frac(x.radicand),
                "approx": float(x)}
    if x in (math.inf, -math.inf):
        return "inf" if x > 0 else "-inf"
    return frac(x)


def _coeffs(d: DivisorClass) -> list:
    return [frac(c) for c in d.coeffs]


def surface_to_json(s: SurfacePreset) -> dict:
    return {
        "name": s.name,
        "gram": [[frac(x) for x in row] for row in s.lattice.gram],
        "labels": list(s.lattice.labels),
        "h0": _coeffs(s.frame.h0),
        "g0": _coeffs(s.frame.g0),
        "generators": None if s.effective_generators is None else [_coeffs(c) for c in s.effective_generators],
        "negative_curves": [_coeffs(c) for c in s.negative_curves],
    }


def surface_from_json(d: dict) -> SurfacePreset:
    try:
        lat = IntersectionLattice([[unfrac(x) for x in row] for row in d["gram"]], labels=d.get("labels"))
        div = lambda v: lat.divisor(*[unfrac(x) for x in v])  # noqa: E731
        frame = SliceFrame(div(d["h0"]), div(d["g0"]))
        gens = d.get("generators")
        gens = None if gens is None else tuple(div(v) for v in gens)
        neg = tuple(div(v) for v in d.get("negative_curves", []))
    except KeyError as exc:
        raise PreconditionError(f"surface file is missing the field {exc.args[0]!r}") from exc
    return SurfacePreset(lat, frame, gens, neg, d.get("name", "surface"))


def chern_to_json(ch: ChernCharacter) -> dict:
    return {"r": ch.r, "c1": _coeffs(ch.c1), "ch2": frac(ch.c)}


def chern_from_json(d: dict, lattice: IntersectionLattice) -> ChernCharacter:
    return ChernCharacter(int(d["r"]), lattice.divisor(*[unfrac(x) for x in d["c1"]]), unfrac(d["ch2"]))


def point_to_json(p: StabilityPoint) -> dict:
    return {"s": frac(p.s), "u": frac(p.u), "t": frac(p.t), "coords": "tilde"}


def point_from_json(d: dict) -> StabilityPoint:
    if d.get("coords", "tilde") != "tilde":
        raise PreconditionError("only tilde coordinates are exact; convert before loading")
    return StabilityPoint(unfrac(d["s"]), unfrac(d["u"]), unfrac(d.get("t", "0")))


_NAMES = ("A", "B2", "C2", "D1", "E1", "F0")


def wall_to_json(w: WallConic) -> dict:
    return {k: frac(v) for k, v in zip(_NAMES, w.coefficients)}


def wall_from_json(d: dict) -> WallConic:
    return WallConic(*(unfrac(d.get(k, "0")) for k in _NAMES))


def _class_json(w: WallConic) -> dict:
    c = classify(w)
    return {"kind": c.kind.value, "delta_sign": c.delta_sign, "c_sign": c.c_sign,
            "weakly_destabilizing": c.weakly_destabilizing}


def wall_report(w: WallConic, u_grid=(), shifted_base: bool = False) -> dict:
    """Coefficients, classification, distinguished points and a circle table."""
    out = {"coefficients": wall_to_json(w), "delta": frac(w.delta), "classification": _class_json(w)}
    if shifted_base:
        # walls against O[1] are read through the mirror (s, u) -> (-s, -u)
        out["mirrored_classification"] = _class_json(mirror(w))
    try:
        sp = special_points(w)
        out["special_points"] = {
            "origin": [_num(x) for x in sp.origin],
            "p_w": [_num(x) for x in sp.p_w],
            "horiz1": [_num(x) for x in sp.horiz1],
            "horiz2": [_num(x) for x in sp.horiz2],
        }
    except PreconditionError as exc:
        out["special_points"] = {"unavailable": str(exc)}
    if classify(w).kind in (WallKind.LEFT_HYPERBOLA, WallKind.RIGHT_HYPERBOLA, WallKind.CONE):
        a = asymptote_directions(w)
        out["asymptotes"] = {
            "slopes": [None if m is None else _num(m) for m in a.slopes],
            "approx": [_num(x) if not math.isinf(x) else ("inf" if x > 0 else "-inf") for x in a.approx],
            "center": [_num(x) for x in a.center],
        }
    if u_grid:
        table = []
        for u in u_grid:
            k = pi_u_circle(w, u) if w.A != 0 else None
            table.append({"u": frac(u), "circle": None if k is None else
                          {"center": frac(k.center), "radius_sq": frac(k.radius_sq)}})
        out["circles"] = table
    return out


def bounds_to_json(b: ScanBounds) -> dict:
    return {"max_cone_coeffs": b.max_cone_coeffs, "max_length": b.max_length, "max_rank": b.max_rank,
            "u_grid": [frac(u) for u in b.u_grid]}


def bounds_from_json(d: dict) -> ScanBounds:
    return ScanBounds(int(d["max_cone_coeffs"]), int(d["max_length"]), tuple(unfrac(u) for u in d["u_grid"]),
                      int(d.get("max_rank", 4)))


def load_surface(path) -> SurfacePreset:
    with open(path) as fh:
        return surface_from_json(json.load(fh))


class ScanConfig:
    """Parsed ``scan.json``: surface, bounds, mode and injected candidates."""

    def __init__(self, surface: SurfacePreset, bounds: ScanBounds, mode: str = "one_negative",
                 injected=(), workers: Optional[int] = None):
        self.surface = surface
        self.bounds = bounds
        self.mode = mode
        self.injected = tuple(injected)
        self.workers = workers


def load_scan_config(path) -> ScanConfig:
    path = Path(path)
    with open(path) as fh:
        d = json.load(fh)
    surf = d["surface"]
    if isinstance(surf, str):
        sp = Path(surf)
        surface = load_surface(sp if sp.is_absolute() else path.parent / sp)
    else:
        surface = surface_from_json(surf)
    bounds = bounds_from_json(d["bounds"])
    lat = surface.lattice
    injected = []
    for item in d.get("injected", []):
        K = [chern_from_json(x, lat) for x in item["K"]]
        J = [chern_from_json(x, lat) for x in item.get("J", [])]
        ch = chern_from_json(item["ch"], lat) if "ch" in item else None
        injected.append(injected_candidate(surface.frame, K, J, ch, surface))
    return ScanConfig(surface, bounds, d.get("mode", "one_negative"), injected, d.get("workers"))
