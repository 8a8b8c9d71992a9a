"""Bounded searches for destabilizing subobjects of O_S and O_S[1].

Candidates are the rank-one kernels ``I_Z(-C)`` (and, on the dual side,
torsion classes supported on C), optionally augmented by injected higher
rank classes with a user-supplied Mumford HN profile. Higher rank
candidates are pushed down with Bertram's rank reduction. Every scan is a
certificate for its bounds only.
"""
from __future__ import annotations

import enum
import functools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .charge import HNProfile, s0_subobject_witness, subobject_window
from .chern import ChernCharacter, bogomolov_ok, ideal_sheaf_twist, mumford_slope, structure_sheaf
from .errors import BertramError, NestingError, PreconditionError
from .lattice import DivisorClass, SliceFrame, SurfacePreset
from .walls import (
    Nesting,
    WallConic,
    WallKind,
    classify,
    coincidence_u,
    crosses_line,
    meets_window,
    mirror,
    nesting_compare,
    pi_u_circle,
    wall,
)

__all__ = [
    "ProvenanceKind",
    "Provenance",
    "CandidateSubobject",
    "Exclusion",
    "ScanBounds",
    "ScanReport",
    "OutermostWall",
    "symmetric_grid",
    "rank_one_survey",
    "rank_one_candidates",
    "torsion_candidates",
    "injected_candidate",
    "bertram_reduce",
    "bertram_closure",
    "outermost_wall_at",
    "verify_rank2_conjecture",
    "verify_no_negative_curves",
    "dual_scan_for_shift",
]

INSIDE_OK = (Nesting.FIRST_INSIDE_SECOND, Nesting.EQUAL, Nesting.FIRST_EMPTY, Nesting.BOTH_EMPTY)


class ProvenanceKind(str, enum.Enum):
    LINE_BUNDLE = "LineBundleMinusC"
    IDEAL_SHEAF = "IdealSheaf"
    TORSION = "TorsionOnC"
    BERTRAM = "BertramReduced"
    INJECTED = "Injected"


@dataclass(frozen=True)
class Provenance:
    kind: ProvenanceKind
    curve: Optional[DivisorClass] = None
    length: Optional[int] = None
    parent: Optional["CandidateSubobject"] = field(default=None, compare=False)
    step: Optional[int] = None


def _fmt(x) -> str:
    return str(Fraction(x))


def _class_str(d: DivisorClass) -> str:
    return "(" + ",".join(_fmt(x) for x in d.coeffs) + ")"


@dataclass(frozen=True)
class CandidateSubobject:
    """A numerical subobject: Chern character, HN profile and where it came from.

    ``base`` is ``"O"`` for subobjects of O_S and ``"O[1]"`` for the shift.
    """

    ch: ChernCharacter
    profile: HNProfile
    provenance: Provenance
    quotient_h0_c1: DivisorClass
    base: str = "O"
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    @property
    def label(self) -> str:
        p = self.provenance
        if p.kind in (ProvenanceKind.LINE_BUNDLE, ProvenanceKind.IDEAL_SHEAF):
            return f"I_Z(-C) C={_class_str(p.curve)} n={p.length}"
        if p.kind is ProvenanceKind.TORSION:
            return f"TOR C={_class_str(p.curve)} n={p.length}"
        tag = "bertram" if p.kind is ProvenanceKind.BERTRAM else "injected"
        return f"{tag} r={self.ch.r} c1={_class_str(self.ch.c1)} ch2={_fmt(self.ch.c)}"

    def sort_key(self):
        return (self.base, self.ch.sort_key(), self.label)

    def base_ch(self) -> ChernCharacter:
        o = structure_sheaf(self.ch.lattice)
        return o if self.base == "O" else -o

    def _remember(self, key, frame, compute):
        hit = self._memo.get(key)
        if hit is not None and hit[0] is frame:
            return hit[1]
        val = compute()
        self._memo[key] = (frame, val)
        return val

    def wall(self, frame: SliceFrame) -> WallConic:
        return self._remember("wall", frame, lambda: _cached_wall(self.ch, self.base, frame))

    def window(self, frame: SliceFrame):
        """Interval ``[lo, hi)`` of s on which this is a subobject in the heart."""
        if self.base == "O[1]":
            # T -> O[1] -> O(C)[1] needs mu(O(C)) <= s
            return self._remember("window", frame, lambda: (self.ch.c1.dot(frame.h0) / frame.h, math.inf))
        return self._remember("window", frame, lambda: subobject_window(self.profile, frame))


@functools.lru_cache(maxsize=65536)
def _cached_wall(ch: ChernCharacter, base: str, frame: SliceFrame) -> WallConic:
    o = structure_sheaf(ch.lattice)
    return wall(ch, o if base == "O" else -o, frame)


def _quotient_c1(ch: ChernCharacter, profile: HNProfile) -> DivisorClass:
    # ch(H^0 Q) = ch(O) - ch(E) + ch(H^-1 Q)
    c1 = -ch.c1
    for j in profile.quotient_factors:
        c1 = c1 + j.c1
    return c1


def _rank_one(C: DivisorClass, n: int) -> CandidateSubobject:
    ch = ideal_sheaf_twist(C, n)
    kind = ProvenanceKind.LINE_BUNDLE if n == 0 else ProvenanceKind.IDEAL_SHEAF
    return CandidateSubobject(ch, HNProfile((ch,)), Provenance(kind, C, n), C)


@dataclass(frozen=True)
class Exclusion:
    curve: DivisorClass
    length: Optional[int]
    reason: str


@dataclass(frozen=True)
class ScanBounds:
    max_cone_coeffs: int
    max_length: int
    u_grid: tuple
    max_rank: int = 4

    def __post_init__(self):
        grid = tuple(Fraction(u) for u in self.u_grid)
        object.__setattr__(self, "u_grid", grid)
        if self.max_cone_coeffs <= 0 or self.max_length < 0 or self.max_rank <= 0:
            raise PreconditionError("scan bounds must be positive")
        if not grid:
            raise PreconditionError("u_grid must be non-empty")
        if any(u == 0 for u in grid):
            raise PreconditionError("u = 0 is excluded from scan grids (all walls touch the origin)")


def symmetric_grid(points: int = 25, top=3) -> tuple[Fraction, ...]:
    """``k*top/points`` for ``k = 1..points`` and their negatives."""
    pos = [Fraction(top) * k / points for k in range(1, points + 1)]
    return tuple(pos) + tuple(-u for u in pos)


def rank_one_survey(surface: SurfacePreset, bounds: ScanBounds):
    """Rank-one candidates ``I_Z(-C)`` in bounds, and the classes ruled out with reasons."""
    frame = surface.frame
    keep, excluded = [], []
    for _, _, C in surface.effective_classes(bounds.max_cone_coeffs):
        if C.square() >= 0:
            excluded.append(Exclusion(C, None, "C^2 >= 0: the wall never meets the subobject window, "
                                               "so I_Z(-C) does not weakly destabilize O_S anywhere in the slice"))
            continue
        for n in range(bounds.max_length + 1):
            cand = _rank_one(C, n)
            kind = classify(cand.wall(frame)).kind
            if kind is not WallKind.LEFT_HYPERBOLA:
                excluded.append(Exclusion(C, n, f"wall is a {kind.value}, not a left hyperbola"))
                continue
            keep.append(cand)
    keep.sort(key=CandidateSubobject.sort_key)
    return keep, excluded


def rank_one_candidates(surface: SurfacePreset, bounds: ScanBounds) -> list[CandidateSubobject]:
    return rank_one_survey(surface, bounds)[0]


def torsion_candidates(surface: SurfacePreset, bounds: ScanBounds) -> list[CandidateSubobject]:
    """Dual-side torsion classes ``(0, C, C^2/2 - n)`` for the same curves as the rank-one scan."""
    out = []
    for cand in rank_one_candidates(surface, bounds):
        C, n = cand.provenance.curve, cand.provenance.length
        ch = ChernCharacter(0, C, C.square() / 2 - n)
        out.append(CandidateSubobject(ch, HNProfile(()), Provenance(ProvenanceKind.TORSION, C, n), C, "O[1]"))
    out.sort(key=CandidateSubobject.sort_key)
    return out


def injected_candidate(frame: SliceFrame, factors: Sequence[ChernCharacter],
                       quotient_factors: Sequence[ChernCharacter] = (),
                       ch: Optional[ChernCharacter] = None,
                       surface: Optional[SurfacePreset] = None) -> CandidateSubobject:
    """Validate a user-supplied higher rank candidate and its HN profile.

    ``factors`` are the HN factors of E and ``quotient_factors`` those of
    ``H^-1(Q)`` for ``Q = O_S/E``. Checks: strictly decreasing slopes,
    Bogomolov on every factor, every factor of E of negative slope, ``ch``
    equal to the sum of the factors of E, ``rank H^-1(Q) = rank E - 1``,
    and the image ``I_W(-C')`` of E in O_S numerically valid (``C'``
    effective when ``surface`` is given).
    """
    profile = HNProfile(tuple(factors), tuple(quotient_factors))
    if not profile.factors:
        raise PreconditionError("an injected candidate needs at least one HN factor")
    profile.check_slopes(frame)
    profile.check_bogomolov()
    if any(mumford_slope(f, frame) >= 0 for f in profile.factors):
        raise PreconditionError("every HN factor of a subobject of O_S must have negative slope")
    subobject_window(profile, frame)
    total = profile.total()
    if ch is not None and ch != total:
        raise PreconditionError(f"ch {ch} differs from the sum of its HN factors {total}")
    if sum(j.r for j in profile.quotient_factors) != total.r - 1:
        raise PreconditionError("the kernel of E -> O_S must have rank rank(E) - 1")
    image = total
    for j in profile.quotient_factors:
        image = image - j
    c_img = -image.c1
    if c_img.dot(frame.h0) < 0 or not bogomolov_ok(image):
        raise PreconditionError(f"image {image} of E in O_S is not of the form I_W(-C')")
    if surface is not None and surface.effective_generators is not None and not surface.is_effective(c_img):
        raise PreconditionError(f"c1 of the quotient sheaf, {c_img}, is not effective")
    return CandidateSubobject(total, profile, Provenance(ProvenanceKind.INJECTED), _quotient_c1(total, profile))


def bertram_reduce(cand: CandidateSubobject, u, frame: SliceFrame) -> Optional[CandidateSubobject]:
    """One step of Bertram's rank reduction at the plane of fixed ``u``.

    If the semicircle crosses ``s = mu(K_last)``, drop the last HN factor of
    the subobject; else if it crosses ``s = mu(J_first)``, quotient by the
    first HN factor of ``H^-1`` of the quotient. Returns None when the
    semicircle stays inside the window. The child's wall is checked to
    enclose the parent's.
    """
    if cand.base != "O":
        raise PreconditionError("rank reduction applies to subobjects of O_S")
    u = Fraction(u)
    w = cand.wall(frame)
    if w.A == 0 or pi_u_circle(w, u) is None:
        raise PreconditionError(f"wall of {cand.label} has an empty slice at u={u}")
    K, J = cand.profile.factors, cand.profile.quotient_factors
    if not K:
        raise PreconditionError("malformed profile: no subobject factors")
    cand.profile.check_slopes(frame)
    parent = cand.provenance.parent
    step = (cand.provenance.step or 0) + 1 if parent is not None else 1
    child: Optional[CandidateSubobject] = None
    if len(K) >= 2 and crosses_line(w, u, mumford_slope(K[-1], frame)):
        ch = cand.ch - K[-1]
        # ker(E_{n-1} -> O) sits inside H^-1(Q) but its class is unknown; an empty J
        # only widens the subobject window, so activity is over- rather than under-counted
        prof = HNProfile(K[:-1], ())
        child = CandidateSubobject(ch, prof, Provenance(ProvenanceKind.BERTRAM, None, None, cand, step),
                                   _quotient_c1(ch, prof))
    elif J and crosses_line(w, u, mumford_slope(J[0], frame)):
        ch = cand.ch - J[0]
        if ch.r <= 0:
            raise BertramError(f"malformed profile: quotient by {J[0]} leaves rank {ch.r}")
        # the HN filtration of E/J is not determined numerically; use the coarsest one
        prof = HNProfile((ch,), J[1:])
        child = CandidateSubobject(ch, prof, Provenance(ProvenanceKind.BERTRAM, None, None, cand, step),
                                   _quotient_c1(ch, prof))
    if child is None:
        return None
    try:
        rel = nesting_compare(w, child.wall(frame), u)
    except NestingError as exc:
        raise BertramError(f"child wall crosses the parent wall at u={u}") from exc
    if rel not in (Nesting.FIRST_INSIDE_SECOND, Nesting.EQUAL):
        raise BertramError(f"child wall does not enclose the parent wall at u={u}: {rel.value}")
    return child


def bertram_closure(cand: CandidateSubobject, u, frame: SliceFrame, max_rank: int) -> list[CandidateSubobject]:
    """The chain ``cand, reduce(cand), ...`` at ``u``, at most ``max_rank`` steps long."""
    chain = [cand]
    cur = cand
    for _ in range(max_rank):
        w = cur.wall(frame)
        if w.A == 0 or pi_u_circle(w, u) is None:
            break
        nxt = bertram_reduce(cur, u, frame)
        if nxt is None:
            break
        chain.append(nxt)
        cur = nxt
    return chain


def _is_active(cand: CandidateSubobject, u, frame: SliceFrame) -> bool:
    w = cand.wall(frame)
    if w.A == 0:
        return False
    lo, hi = cand.window(frame)
    return meets_window(w, u, lo, hi)


@dataclass(frozen=True)
class OutermostWall:
    u: Fraction
    candidates: tuple          # tie set, sorted
    center: Optional[Fraction]
    radius_sq: Optional[Fraction]
    active: tuple = ()         # all active candidates, outermost first

    @property
    def is_empty(self) -> bool:
        return not self.candidates


def _outermost(pool: Sequence[CandidateSubobject], u: Fraction, frame: SliceFrame) -> OutermostWall:
    active = [c for c in pool if _is_active(c, u, frame)]
    if not active:
        return OutermostWall(u, (), None, None, ())
    walls = {id(c): c.wall(frame) for c in active}
    best = [active[0]]
    for c in active[1:]:
        rel = nesting_compare(walls[id(c)], walls[id(best[0])], u)
        if rel is Nesting.EQUAL:
            best.append(c)
        elif rel is Nesting.SECOND_INSIDE_FIRST:
            best = [c]
        elif rel is Nesting.EXTERNALLY_DISJOINT:
            raise NestingError(f"active walls {c.label} and {best[0].label} are disjoint at u={u}")
    circle = pi_u_circle(walls[id(best[0])], u)

    def radius_key(c):
        k = pi_u_circle(walls[id(c)], u)
        # nested left circles: the outer one has the smaller left endpoint; order by -center, radius
        return (-k.radius_sq, k.center, c.sort_key())

    ordered = tuple(sorted(active, key=radius_key))
    return OutermostWall(u, tuple(sorted(best, key=CandidateSubobject.sort_key)),
                         circle.center, circle.radius_sq, ordered)


def _pool_at(u, frame, candidates, max_rank):
    pool, seen = [], set()
    for c in candidates:
        chain = bertram_closure(c, u, frame, max_rank) if c.base == "O" and len(c.profile.factors) + len(
            c.profile.quotient_factors) > 1 else [c]
        for x in chain:
            key = (x.base, x.ch.sort_key(), x.label)
            if key not in seen:
                seen.add(key)
                pool.append(x)
    return pool


def outermost_wall_at(u, surface: SurfacePreset, bounds: ScanBounds,
                      injected: Sequence[CandidateSubobject] = ()) -> OutermostWall:
    """Highest active semicircle at ``u`` among rank-one candidates and reduced injected ones."""
    u = Fraction(u)
    cands = list(rank_one_candidates(surface, bounds)) + list(injected)
    pool = _pool_at(u, surface.frame, cands, bounds.max_rank)
    return _outermost(pool, u, surface.frame)


# ---------------------------------------------------------------- reports


@dataclass
class ScanReport:
    """Result of a bounded scan; all values are JSON-ready (rationals as strings)."""

    mode: str
    surface: str
    bounds: dict
    rows: list
    violations: list
    flags: dict
    extras: dict = field(default_factory=dict)
    timing: float = field(default=0.0, compare=False)

    @property
    def certified(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "surface": self.surface,
            "bounds": self.bounds,
            "certified": self.certified,
            "rows": self.rows,
            "violations": self.violations,
            "flags": self.flags,
            "extras": self.extras,
            "timing_seconds": self.timing,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ScanReport":
        return cls(data["mode"], data["surface"], data["bounds"], data["rows"], data["violations"],
                   data["flags"], data.get("extras", {}), data.get("timing_seconds", 0.0))


def _bounds_json(bounds: ScanBounds) -> dict:
    return {
        "max_cone_coeffs": bounds.max_cone_coeffs,
        "max_length": bounds.max_length,
        "max_rank": bounds.max_rank,
        "u_grid": [_fmt(u) for u in bounds.u_grid],
    }


def _witness(cand: CandidateSubobject, frame: SliceFrame, u) -> dict:
    w = cand.wall(frame)
    k = pi_u_circle(w, u) if w.A != 0 else None
    return {
        "label": cand.label,
        "ch": {"r": cand.ch.r, "c1": [_fmt(x) for x in cand.ch.c1.coeffs], "ch2": _fmt(cand.ch.c)},
        "wall": [_fmt(x) for x in w.coefficients],
        "kind": classify(w).kind.value,
        "circle": None if k is None else {"center": _fmt(k.center), "radius_sq": _fmt(k.radius_sq)},
    }


@dataclass(frozen=True)
class _Job:
    u: Fraction
    frame: SliceFrame
    candidates: tuple
    reference: Optional[CandidateSubobject]
    max_rank: int


def _run_job(job: _Job):
    """Evaluate one plane: outermost wall, dominance order and violations."""
    u, frame = job.u, job.frame
    pool = _pool_at(u, frame, job.candidates, job.max_rank)
    out = _outermost(pool, u, frame)
    violations = []
    ref_ok = True
    if job.reference is not None:
        ref_wall = job.reference.wall(frame)
        for c in out.active:
            rel = nesting_compare(c.wall(frame), ref_wall, u)
            if rel not in INSIDE_OK:
                violations.append({"type": "wall_outside_reference", "u": _fmt(u), "relation": rel.value,
                                   "candidate": _witness(c, frame, u),
                                   "reference": _witness(job.reference, frame, u)})
        if out.active:
            ref_ok = any(c.label == job.reference.label and c.ch == job.reference.ch for c in out.candidates)
    # active ideal sheaf walls sit inside the line bundle wall of the same curve
    for c in out.active:
        p = c.provenance
        if p.kind in (ProvenanceKind.IDEAL_SHEAF, ProvenanceKind.TORSION) and p.length:
            ref = _reference(p.curve, c.base)
            if nesting_compare(c.wall(frame), ref.wall(frame), u) not in INSIDE_OK:
                violations.append({"type": "ideal_sheaf_outside_line_bundle", "u": _fmt(u),
                                   "candidate": _witness(c, frame, u), "reference": _witness(ref, frame, u)})
    necessary = True
    for c in out.candidates:
        left = classify(c.wall(frame) if c.base == "O" else mirror(c.wall(frame))).kind is WallKind.LEFT_HYPERBOLA
        negative = c.quotient_h0_c1.square() < 0
        if not (left and negative):
            necessary = False
            violations.append({"type": "outermost_fails_necessary_condition", "u": _fmt(u),
                               "candidate": _witness(c, frame, u)})
    row = {
        "u": _fmt(u),
        "outermost": [c.label for c in out.candidates],
        "circle": None if out.is_empty else {"center": _fmt(out.center), "radius_sq": _fmt(out.radius_sq)},
        "active": len(out.active),
        "dominance": [c.label for c in out.active],
        "outermost_is_reference": ref_ok,
        "outermost_left_hyperbola_negative_curve": necessary,
    }
    return row, violations


def _extend_grid(grid: Sequence[Fraction], reference: Optional[CandidateSubobject], candidates, frame,
                 keep) -> list[Fraction]:
    """Add the exact coincidence values with the reference wall that fall inside the grid range."""
    pts = set(grid)
    if reference is not None and grid:
        lo, hi = min(grid), max(grid)
        rw = reference.wall(frame)
        for c in candidates:
            cw = c.wall(frame)
            if cw == rw:
                continue
            u0 = coincidence_u(cw, rw)
            if u0 is not None and u0 != 0 and lo <= u0 <= hi and keep(u0):
                pts.add(u0)
    return sorted(pts)


def _run(jobs: list[_Job], workers: Optional[int]):
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_run_job(j) for j in jobs]
    rows, violations = [], []
    for row, v in results:
        rows.append(row)
        violations.extend(v)
    return rows, violations


def _reference(C: DivisorClass, base: str = "O") -> CandidateSubobject:
    cand = _rank_one(C, 0)
    if base == "O":
        return cand
    ch = ChernCharacter(0, C, C.square() / 2)
    return CandidateSubobject(ch, HNProfile(()), Provenance(ProvenanceKind.TORSION, C, 0), C, "O[1]")


def _negative_setup(surface: SurfacePreset, mode: str):
    gens = surface.generators
    neg = surface.negative_generators()
    g = surface.frame.g
    if mode == "one_negative":
        if len(neg) != 1:
            raise PreconditionError(f"single-negative-curve mode needs exactly one negative generator, "
                                    f"found {len(neg)}")
        if neg[0] != gens[0]:
            raise PreconditionError("the negative generator must be C1 (flip the frame orientation)")
        return {1: gens[0], -1: gens[0]}, {1: None, -1: None}, g
    if mode == "two_negative":
        if len(neg) != 2:
            raise PreconditionError(f"two-negative-curve mode needs two negative generators, found {len(neg)}")
        c1, c2 = gens
        return {1: c1, -1: c2}, {1: c1.dot(surface.frame.g0) / g, -1: c2.dot(surface.frame.g0) / g}, g
    raise PreconditionError(f"unknown mode {mode!r}")


def verify_rank2_conjecture(surface: SurfacePreset, bounds: ScanBounds, mode: str = "one_negative",
                            injected: Sequence[CandidateSubobject] = (), workers: Optional[int] = None) -> ScanReport:
    """Check that every active wall sits inside ``W(O(-C1), O)``, plane by plane.

    ``one_negative``: one negative generator C1, every u in the grid.
    ``two_negative``: two negative generators; ``u >= C1.G0/g`` against ``O(-C1)``
    and ``u <= C2.G0/g`` against ``O(-C2)``.
    """
    t0 = time.perf_counter()
    refs, thresholds, _ = _negative_setup(surface, mode)
    frame = surface.frame
    cands = tuple(rank_one_candidates(surface, bounds)) + tuple(injected)

    def allowed(u):
        side = 1 if u > 0 else -1
        th = thresholds[side]
        return th is None or (u >= th if side > 0 else u <= th)

    jobs = []
    for side in (1, -1):
        ref = _reference(refs[side])
        grid = [u for u in bounds.u_grid if (u > 0) == (side > 0) and allowed(u)]
        for u in _extend_grid(grid, ref, cands, frame, allowed):
            jobs.append(_Job(u, frame, cands, ref, bounds.max_rank))
    jobs.sort(key=lambda j: j.u)
    rows, violations = _run(jobs, workers)
    skipped = [_fmt(u) for u in bounds.u_grid if not allowed(u)]
    u_max = max((abs(j.u) for j in jobs), default=None)
    flags = {
        "threshold_convention": "C.G0/g",
        "thresholds": {("positive" if k > 0 else "negative"): (None if v is None else _fmt(v))
                       for k, v in thresholds.items()},
        "references": {("positive" if k > 0 else "negative"): _reference(v).label for k, v in refs.items()},
        "skipped_u": skipped,
        "all_outermost_reference": all(r["outermost_is_reference"] for r in rows),
        "asymptotic_u": None if u_max is None else _fmt(u_max),
        "asymptotic_rows": [r for r in rows if u_max is not None and abs(Fraction(r["u"])) == u_max],
    }
    extras = {"candidates": len(cands), "planes": len(rows)}
    return ScanReport(mode, surface.name, _bounds_json(bounds), rows, violations, flags, extras,
                      time.perf_counter() - t0)


def verify_no_negative_curves(surface: SurfacePreset, bounds: ScanBounds,
                              injected: Sequence[CandidateSubobject] = (),
                              workers: Optional[int] = None) -> ScanReport:
    """Certify that no candidate wall is active anywhere on the grid."""
    t0 = time.perf_counter()
    frame = surface.frame
    cands, excluded = rank_one_survey(surface, bounds)
    pool = tuple(cands) + tuple(injected)
    jobs = [_Job(u, frame, pool, None, bounds.max_rank) for u in sorted(bounds.u_grid)]
    rows, violations = _run(jobs, workers)
    for c in cands:
        violations.append({"type": "rank_one_candidate", "candidate": _witness(c, frame, bounds.u_grid[0])})
    for r in rows:
        if r["active"]:
            violations.append({"type": "active_wall", "u": r["u"], "outermost": r["outermost"]})
    flags = {"rank_one_empty": not cands, "exclusions": len(excluded),
             "exclusion_reasons": sorted({e.reason for e in excluded})}
    return ScanReport("no_negative_curves", surface.name, _bounds_json(bounds), rows, violations, flags,
                      {"candidates": len(pool), "planes": len(rows)}, time.perf_counter() - t0)


def _s0_sample(surface: SurfacePreset, count: int, seed: int):
    """Random sheaf classes; a witness at s = 0 must be (0, 0, c)."""
    import random

    rng = random.Random(seed)
    frame = surface.frame
    failures = []
    witnesses = 0
    for _ in range(count):
        r = rng.randint(0, 3)
        coeffs = [rng.randint(-4, 4) for _ in range(surface.lattice.rank)]
        if rng.random() < 0.2:
            coeffs = [0] * surface.lattice.rank
        c1 = surface.lattice.divisor(*coeffs)
        ch = ChernCharacter(r, c1, Fraction(rng.randint(-12, 12), rng.randint(1, 4)))
        if s0_subobject_witness(ch, frame):
            witnesses += 1
            if not (ch.r == 0 and c1.dot(frame.h0) == 0):
                failures.append(str(ch))
    # effective curves: a = 0 forces C = 0 since H0 is ample
    for _, _, C in surface.effective_classes(4):
        if s0_subobject_witness(ChernCharacter(0, C, C.square() / 2), frame):
            failures.append(f"torsion on {C}")
    return {"checked": count, "witnesses": witnesses, "failures": failures}


def dual_scan_for_shift(surface: SurfacePreset, bounds: ScanBounds, mode: str = "one_negative",
                        workers: Optional[int] = None, s0_samples: int = 1000, seed: int = 0) -> ScanReport:
    """Mirror of the O_S scan for O_S[1] with torsion subobjects.

    Also checks wall-by-wall that each torsion wall is the mirror image of
    the matching ``I_Z(-C)`` wall, and that the outermost wall at ``u``
    matches the O_S side at ``-u``.
    """
    t0 = time.perf_counter()
    refs, thresholds, _ = _negative_setup(surface, mode)
    frame = surface.frame
    tors = tuple(torsion_candidates(surface, bounds))
    ones = {(c.provenance.curve.coeffs, c.provenance.length): c for c in rank_one_candidates(surface, bounds)}
    violations = []
    for t in tors:
        src = ones[(t.provenance.curve.coeffs, t.provenance.length)]
        if t.wall(frame) != mirror(src.wall(frame)):
            violations.append({"type": "mirror_mismatch", "candidate": _witness(t, frame, bounds.u_grid[0])})

    def allowed(u):
        side = -1 if u > 0 else 1  # dual side at u mirrors the O_S side at -u
        th = thresholds[side]
        return th is None or (-u >= th if side > 0 else -u <= th)

    jobs = []
    for side in (1, -1):
        ref = _reference(refs[side], "O[1]")
        grid = [u for u in bounds.u_grid if (u < 0) == (side > 0) and allowed(u)]
        for u in _extend_grid(grid, ref, tors, frame, allowed):
            jobs.append(_Job(u, frame, tors, ref, bounds.max_rank))
    jobs.sort(key=lambda j: j.u)
    rows, v = _run(jobs, workers)
    violations.extend(v)
    # dominance transfers through the mirror
    o_side = {j.u: _run_job(_Job(-j.u, frame, tuple(ones.values()), None, bounds.max_rank))[0] for j in jobs}
    for r in rows:
        other = o_side[Fraction(r["u"])]
        mine = [x.replace("TOR", "I_Z(-C)", 1) for x in r["outermost"]]
        if sorted(mine) != sorted(other["outermost"]):
            violations.append({"type": "dominance_not_mirrored", "u": r["u"],
                               "dual": r["outermost"], "o_side": other["outermost"]})
    s0 = _s0_sample(surface, s0_samples, seed)
    for f in s0["failures"]:
        violations.append({"type": "s0_witness", "class": f})
    flags = {
        "threshold_convention": "C.G0/g",
        "references": {("positive" if k > 0 else "negative"): _reference(v, "O[1]").label
                       for k, v in refs.items()},
        "all_outermost_reference": all(r["outermost_is_reference"] for r in rows),
    }
    return ScanReport(f"dual_{mode}", surface.name, _bounds_json(bounds), rows, violations, flags,
                      {"candidates": len(tors), "planes": len(rows), "s0_check": s0}, time.perf_counter() - t0)
