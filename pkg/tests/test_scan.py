import json
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from wallcross.chern import ChernCharacter as Ch, ideal_sheaf_twist, line_bundle
from wallcross.errors import LatticeError, PreconditionError
from wallcross.lattice import IntersectionLattice, hirzebruch, lattice_surface, product_of_lines
from wallcross.scan import (
    ProvenanceKind,
    ScanBounds,
    ScanReport,
    bertram_closure,
    bertram_reduce,
    dual_scan_for_shift,
    injected_candidate,
    outermost_wall_at,
    rank_one_candidates,
    rank_one_survey,
    symmetric_grid,
    torsion_candidates,
    verify_no_negative_curves,
    verify_rank2_conjecture,
)
from wallcross.walls import Nesting, WallKind, classify, mirror, nesting_compare

F1 = hirzebruch(1)
F, E = F1.lattice.basis()
FR = F1.frame
SMALL = ScanBounds(4, 2, symmetric_grid(8))


def _case_one():
    K = [Ch(1, -E, Q(-1, 2)), Ch(1, -F * 2 - E * 2, 2)]
    J = [Ch(1, -F * 2 - E * 3, Q(3, 2))]
    return injected_candidate(FR, K, J, surface=F1)


def _case_two():
    K = [Ch(1, F - E * 3, Q(-15, 2)), Ch(1, -F - E * 2, -1)]
    J = [Ch(1, -E * 4, -8)]
    return injected_candidate(FR, K, J, surface=F1)


def test_bounds_validation():
    with pytest.raises(PreconditionError):
        ScanBounds(4, 2, (0, 1))
    with pytest.raises(PreconditionError):
        ScanBounds(0, 2, (1,))
    with pytest.raises(PreconditionError):
        ScanBounds(4, 2, ())
    g = symmetric_grid(4, 2)
    assert g == (Q(1, 2), Q(1), Q(3, 2), Q(2), Q(-1, 2), Q(-1), Q(-3, 2), Q(-2))


def test_rank_one_counts_on_f1():
    # C = xE + yF is a left hyperbola candidate exactly when C^2 < 0, i.e. x > 2y
    b = ScanBounds(8, 5, (1,))
    cands = rank_one_candidates(F1, b)
    curves = {c.provenance.curve.coeffs for c in cands}
    expected = {(y, x) for x in range(9) for y in range(9) if x > 2 * y}
    assert curves == expected
    assert len(cands) == 6 * len(expected) == 120
    assert all(classify(c.wall(FR)).kind is WallKind.LEFT_HYPERBOLA for c in cands)
    _, excluded = rank_one_survey(F1, b)
    assert all(e.reason for e in excluded)


def test_torsion_candidates_mirror_rank_one():
    tors = torsion_candidates(F1, SMALL)
    ones = {(c.provenance.curve.coeffs, c.provenance.length): c for c in rank_one_candidates(F1, SMALL)}
    assert len(tors) == len(ones)
    for t in tors:
        assert t.base == "O[1]"
        src = ones[t.provenance.curve.coeffs, t.provenance.length]
        assert t.wall(FR) == mirror(src.wall(FR))


def test_bertram_case_one_drops_last_factor():
    cand = _case_one()
    child = bertram_reduce(cand, Q(3, 4), FR)
    assert child.ch == line_bundle(-E)
    assert child.profile.quotient_factors == ()
    assert child.provenance.kind is ProvenanceKind.BERTRAM and child.provenance.parent is cand
    assert nesting_compare(cand.wall(FR), child.wall(FR), Q(3, 4)) in (Nesting.FIRST_INSIDE_SECOND, Nesting.EQUAL)


def test_bertram_case_two_quotients_first_factor():
    cand = _case_two()
    u = Q(11, 6)
    child = bertram_reduce(cand, u, FR)
    assert child.ch == Ch(2, -E * 5, Q(-17, 2)) - Ch(1, -E * 4, -8) == line_bundle(-E)
    assert child.profile.quotient_factors == ()
    chain = bertram_closure(cand, u, FR, 4)
    assert [c.ch.r for c in chain] == [2, 1]
    out = outermost_wall_at(u, F1, ScanBounds(8, 5, (u,)), [cand])
    assert "I_Z(-C) C=(0,1) n=0" in [c.label for c in out.candidates]


def test_bertram_on_rank_one_is_terminal():
    c = next(c for c in rank_one_candidates(F1, SMALL) if c.ch == line_bundle(-E))
    assert bertram_reduce(c, 2, FR) is None
    with pytest.raises(PreconditionError):
        bertram_reduce(torsion_candidates(F1, SMALL)[0], 2, FR)
    with pytest.raises(PreconditionError):
        bertram_reduce(_case_two(), Q(1), FR)   # empty slice


@pytest.mark.parametrize("K, J, msg", [
    ([Ch(1, -F * 2 - E * 2, 2), Ch(1, -E, Q(-1, 2))], [], "decreasing"),
    ([Ch(1, -E, 1)], [], "Bogomolov"),
    ([Ch(1, E, Q(-1, 2))], [], "negative slope"),
    ([Ch(1, -E, Q(-1, 2)), Ch(1, -F * 2 - E * 2, 2)], [], "rank"),
    ([Ch(1, -E, Q(-1, 2)), Ch(1, -F * 2 - E * 2, 2)], [Ch(1, -F * 2 - E * 3, 5)], "Bogomolov"),
])
def test_injected_candidate_validation(K, J, msg):
    with pytest.raises(PreconditionError, match=msg):
        injected_candidate(FR, K, J, surface=F1)


def test_injected_candidate_ch_must_match():
    K = [Ch(1, -E, Q(-1, 2)), Ch(1, -F * 2 - E * 2, 2)]
    J = [Ch(1, -F * 2 - E * 3, Q(3, 2))]
    with pytest.raises(PreconditionError, match="differs"):
        injected_candidate(FR, K, J, ch=Ch(2, -F * 2 - E * 3, 1), surface=F1)


def test_outermost_at_positive_u_is_section_bundle():
    out = outermost_wall_at(2, F1, ScanBounds(8, 5, (2,)))
    assert [c.label for c in out.candidates] == ["I_Z(-C) C=(0,1) n=0"]
    assert (out.center, out.radius_sq) == (Q(-7, 2), Q(33, 4))
    assert out.active[0].ch == line_bundle(-E)


@pytest.mark.parametrize("e", [1, 2])
def test_single_negative_scans_certified(e):
    r = verify_rank2_conjecture(hirzebruch(e), SMALL)
    assert r.certified
    assert r.flags["all_outermost_reference"]
    assert all(row["outermost"] in ([], ["I_Z(-C) C=(0,1) n=0"]) for row in r.rows)


def test_scan_with_injected_candidates():
    r = verify_rank2_conjecture(F1, SMALL, injected=[_case_one(), _case_two()])
    assert r.certified, r.violations[:3]


def test_two_negative_mode():
    p = lattice_surface([[-1, 2], [2, -1]], (1, 1), [(1, 0), (0, 1)])
    r = verify_rank2_conjecture(p, ScanBounds(4, 2, symmetric_grid(12)), "two_negative")
    assert r.certified
    assert r.flags["thresholds"] == {"positive": "1/2", "negative": "-1/2"}
    assert r.flags["skipped_u"]
    with pytest.raises(PreconditionError, match="exactly one negative"):
        verify_rank2_conjecture(p, SMALL)
    with pytest.raises(PreconditionError, match="two negative"):
        verify_rank2_conjecture(F1, SMALL, "two_negative")
    with pytest.raises(PreconditionError):
        verify_rank2_conjecture(F1, SMALL, "bogus")


def test_no_negative_mode():
    r = verify_no_negative_curves(product_of_lines(), SMALL)
    assert r.certified and r.flags["rank_one_empty"]
    sub = lattice_surface([[1, 3], [3, 1]], (1, 1), [(1, 0), (0, 1)])
    assert verify_no_negative_curves(sub, SMALL).certified
    bad = verify_no_negative_curves(F1, SMALL)
    assert not bad.certified
    assert {v["type"] for v in bad.violations} >= {"rank_one_candidate"}


def test_positive_definite_substitute_is_rejected():
    with pytest.raises(LatticeError):
        IntersectionLattice([[2, 1], [1, 2]])


def test_dual_scan_certified():
    r = dual_scan_for_shift(F1, SMALL, s0_samples=200)
    assert r.certified, r.violations[:3]
    assert r.extras["s0_check"]["checked"] == 200
    assert r.extras["s0_check"]["failures"] == []


def test_parallel_matches_sequential():
    a = verify_rank2_conjecture(F1, SMALL)
    b = verify_rank2_conjecture(F1, SMALL, workers=2)
    assert a == b


def test_report_json_round_trip():
    r = verify_rank2_conjecture(F1, SMALL)
    text = json.dumps(r.to_json())
    back = ScanReport.from_json(json.loads(text))
    assert back == r
    assert back.to_json()["certified"] is True


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 4), st.sampled_from([Q(1, 2), Q(1), Q(2), Q(3)]))
def test_active_ideal_sheaf_inside_reference(x, y, n, u):
    C = F1.cone_class(x, y)
    if C.is_zero() or C.square() >= 0:
        return
    out = outermost_wall_at(u, F1, ScanBounds(6, 4, (u,)))
    ref = next(c for c in rank_one_candidates(F1, ScanBounds(1, 0, (u,))) if c.ch == line_bundle(-E)).wall(FR)
    cand = [c for c in out.active if c.ch == ideal_sheaf_twist(C, n)]
    for c in cand:
        assert nesting_compare(c.wall(FR), ref, u) in (Nesting.FIRST_INSIDE_SECOND, Nesting.EQUAL)
