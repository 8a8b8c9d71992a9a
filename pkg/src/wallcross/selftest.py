"""Seeded invariant checks across all modules, for ``wallcross selftest``."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .charge import StabilityPoint, central_charge, s0_subobject_witness
from .chern import ChernCharacter, ideal_sheaf_twist, structure_sheaf, torsion_on_curve, twist
from .errors import NestingError
from .lattice import hirzebruch, lattice_surface, product_of_lines
from .scan import ScanBounds, symmetric_grid, verify_no_negative_curves, verify_rank2_conjecture
from .surd import Surd
from .serialize import chern_from_json, chern_to_json, surface_from_json, surface_to_json
from .walls import (
    Nesting,
    WallKind,
    classify,
    coincidence_u,
    mirror,
    nesting_compare,
    pi_u_circle,
    s_range,
    special_points,
    wall,
    wall_from_coords,
)

__all__ = ["SuiteResult", "run_selftest", "format_table", "SUITES"]


@dataclass(frozen=True)
class SuiteResult:
    key: str
    checked: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _rq(rng: random.Random, lo=-6, hi=6, den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def _random_origin_wall(rng):
    while True:
        a, b, c = _rq(rng), _rq(rng), _rq(rng)
        q = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        w = wall_from_coords(a, b, c, q)
        if a != 0:
            return w, q


def _suite_pw(rng, n):
    bad = 0
    done = 0
    while done < n:
        w, _ = _random_origin_wall(rng)
        if w.delta == 0 or w.D1 == 0:
            continue
        done += 1
        sp = special_points(w)
        s, u = sp.p_w
        if w(s, u) != 0 or w.d_du(s, u) != 0:
            bad += 1
        rho = Surd.sqrt(w.C2 / w.A)
        for (hs, hu), sgn in ((sp.horiz1, 1), (sp.horiz2, -1)):
            # on u = s (sgn 1) or u = -s (sgn -1) in normalized units
            if w(hs, hu) != 0 or w.d_ds(hs, hu) != 0 or hs != sgn * rho * hu:
                bad += 1
    return n, bad


def _suite_nesting(rng, n):
    bad = 0
    for _ in range(n):
        q = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        w1 = wall_from_coords(_rq(rng), _rq(rng), _rq(rng), q)
        w2 = wall_from_coords(_rq(rng), _rq(rng), _rq(rng), q)
        for _ in range(5):
            try:
                nesting_compare(w1, w2, _rq(rng))
            except NestingError:
                bad += 1
    return n * 5, bad


def _suite_coincidence(rng, n):
    bad = 0
    checked = 0
    while checked < n:
        q = Fraction(rng.randint(1, 4))
        w1 = wall_from_coords(_rq(rng), _rq(rng), _rq(rng), q)
        w2 = wall_from_coords(_rq(rng), _rq(rng), _rq(rng), q)
        if w1 == w2 or w1.A == 0 or w2.A == 0:
            continue
        checked += 1
        u0 = coincidence_u(w1, w2)
        probes = {Fraction(k, 8) for k in range(-40, 41)}
        if u0 is not None:
            probes.add(u0)
        eq = {u for u in probes if nesting_compare(w1, w2, u) is Nesting.EQUAL}
        if not eq <= ({u0} | {Fraction(0)}):
            bad += 1
    return n, bad


def _suite_large_t(rng, n):
    bad = 0
    for _ in range(n):
        w, _ = _random_origin_wall(rng)
        k = pi_u_circle(w, _rq(rng))
        if k is not None and k.radius_sq > k.center ** 2:
            bad += 1
    return n, bad


def _suite_classification(rng, n):
    expect = {(0, 1): WallKind.PARABOLA, (-1, 1): WallKind.ELLIPSE, (1, 0): WallKind.CONE,
              (1, 1): WallKind.RIGHT_HYPERBOLA, (1, -1): WallKind.LEFT_HYPERBOLA}
    bad = checked = 0
    for _ in range(n):
        w, _ = _random_origin_wall(rng)
        c = classify(w)
        key = (c.delta_sign, c.c_sign)
        if key in expect:
            checked += 1
            bad += c.kind is not expect[key]
    return checked, bad


def _suite_mirror(rng, n):
    p = hirzebruch(1)
    o = structure_sheaf(p.lattice)
    bad = 0
    for _ in range(n):
        C = p.cone_class(rng.randint(0, 8), rng.randint(0, 8))
        if C.is_zero():
            continue
        lhs = wall(torsion_on_curve(C), -o, p.frame)
        rhs = mirror(wall(ideal_sheaf_twist(C, 0), o, p.frame))
        bad += lhs != rhs
    return n, bad


def _suite_twist(rng, n):
    p = hirzebruch(rng.randint(0, 3))
    lat, fr = p.lattice, p.frame
    bad = 0
    for _ in range(n):
        ch = ChernCharacter(rng.randint(-3, 3), lat.divisor(_rq(rng), _rq(rng)), _rq(rng))
        d = lat.divisor(rng.randint(-4, 4), rng.randint(-4, 4))
        pt = StabilityPoint(_rq(rng), _rq(rng), Fraction(rng.randint(1, 9), rng.randint(1, 4)))
        x, y = fr.decompose(d)
        moved = StabilityPoint(pt.s - x, pt.u - y, pt.t)
        bad += central_charge(ch, fr, pt) != central_charge(twist(ch, -d), fr, moved)
    return n, bad


def _suite_s0(rng, n):
    p = hirzebruch(1)
    bad = 0
    for _ in range(n):
        ch = ChernCharacter(rng.randint(0, 3), p.lattice.divisor(rng.randint(-4, 4), rng.randint(-4, 4)), _rq(rng))
        if s0_subobject_witness(ch, p.frame) and not (ch.r == 0 and ch.c1.dot(p.frame.h0) == 0):
            bad += 1
    return n, bad


def _suite_containment(rng, n):
    bad = checked = 0
    for surf in (hirzebruch(1), product_of_lines()):
        o = structure_sheaf(surf.lattice)
        for _, _, C in surf.effective_classes(5):
            if C.square() < 0:
                continue
            mu = -C.dot(surf.frame.h0) / surf.frame.h
            for k in range(6):
                checked += 1
                rng_s = s_range(wall(ideal_sheaf_twist(C, k), o, surf.frame))
                bad += rng_s is not None and rng_s[0] < mu
    return checked, bad


def _suite_scans(rng, n):
    b = ScanBounds(4, 2, symmetric_grid(8))
    reports = [verify_rank2_conjecture(hirzebruch(1), b), verify_rank2_conjecture(hirzebruch(2), b),
               verify_no_negative_curves(product_of_lines(), b),
               verify_rank2_conjecture(lattice_surface([[-1, 2], [2, -1]], (1, 1), [(1, 0), (0, 1)]), b, "two_negative")]
    return len(reports), sum(not r.certified for r in reports)


def _suite_json(rng, n):
    bad = 0
    for surf in (hirzebruch(1), hirzebruch(2), product_of_lines()):
        bad += surface_from_json(surface_to_json(surf)) != surf
        for _ in range(n // 3):
            ch = ChernCharacter(rng.randint(-3, 3), surf.lattice.divisor(_rq(rng), _rq(rng)), _rq(rng))
            bad += chern_from_json(chern_to_json(ch), surf.lattice) != ch
    return n, bad


SUITES: dict[str, Callable] = {
    "vertical_tangent_point_identity": _suite_pw,
    "semicircles_never_cross": _suite_nesting,
    "unique_coincidence_plane": _suite_coincidence,
    "large_t_boundedness": _suite_large_t,
    "conic_classification_table": _suite_classification,
    "shift_duality_mirror": _suite_mirror,
    "twist_equivariance": _suite_twist,
    "s0_no_subobject_witness": _suite_s0,
    "nonnegative_curve_containment": _suite_containment,
    "desk_scans_certified": _suite_scans,
    "json_round_trip": _suite_json,
}


def run_selftest(seed: int = 0, n: int = 200) -> list[SuiteResult]:
    out = []
    for key, fn in SUITES.items():
        rng = random.Random(f"{seed}:{key}")
        checked, bad = fn(rng, n)
        out.append(SuiteResult(key, checked, bad))
    return out


def format_table(results) -> str:
    width = max(len(r.key) for r in results)
    lines = [f"{'suite'.ljust(width)}  checked  failures  status"]
    for r in results:
        lines.append(f"{r.key.ljust(width)}  {r.checked:7d}  {r.failures:8d}  {'PASS' if r.ok else 'FAIL'}")
    return "\n".join(lines)
