from fractions import Fraction as Fr

import numpy as np
import pytest

from smoothgerms.expr import differentiate, evaluate, evaluate_array, parse
from smoothgerms.smoothkit import (
    BumpSpec,
    ClosedSet,
    CoverageError,
    CoverElement,
    LocalSmoothData,
    OverlapMismatch,
    agreement_error,
    bump,
    extend_beyond,
    partition_of_unity,
    richardson,
    seam_points,
    smooth_step,
    smoothness_reports,
    tietze_extend,
    transition,
)

INF = float("inf")


def test_bump_values():
    b = bump(BumpSpec(Fr(1, 2), 1, 2))
    assert evaluate(b, 0.5) == 1.0
    assert evaluate(b, 2.5) == 0.0
    assert evaluate(b, -1.5) == 0.0
    xs = np.linspace(-0.5, 1.5, 51)
    assert np.all(evaluate_array(b, xs) == 1.0)
    ys = np.linspace(-1.49, 2.49, 301)
    vals = evaluate_array(b, ys)
    assert np.all((vals > 0) & (vals <= 1))


def test_bump_rejects_bad_radii():
    with pytest.raises(ValueError):
        BumpSpec(0, 2, 1)
    with pytest.raises(ValueError):
        BumpSpec(0, 0, 1)


def test_smooth_step():
    g = smooth_step()
    assert evaluate(g, 0) == 0.0
    assert evaluate(g, 1) == 1.0
    assert evaluate(g, 0.5) == 0.5
    for t in (0.1, 0.3, 0.45):
        assert evaluate(g, t) + evaluate(g, 1 - t) == pytest.approx(1.0, abs=1e-15)


def test_transition_is_monotone():
    t = transition(-1, 2)
    vals = evaluate_array(t, np.linspace(-2, 3, 400))
    assert np.all(np.diff(vals) >= 0)
    assert vals[0] == 0.0 and vals[-1] == 1.0


def test_single_element_partition():
    pou = partition_of_unity([(-1, 2)], (0, 1))
    xs = np.linspace(0, 1, 101)
    assert np.all(np.abs(pou.member_values(xs).sum(axis=0) - 1) <= 1e-15)
    assert {m.cover_index for m in pou.members} == {0}
    assert pou.certify(grid=1000).ok


def test_two_element_partition():
    pou = partition_of_unity([(-1, Fr(7, 10)), (Fr(3, 10), 2)], (0, 1))
    vals = pou.member_values(np.array([0.0, 0.5, 1.0]))
    assert np.all(np.abs(vals.sum(axis=0) - 1) <= 1e-12)
    cert = pou.certify()
    assert cert.ok and cert.supports_contained and cert.max_overlap <= cert.overlap_bound


def test_gap_in_cover():
    with pytest.raises(CoverageError):
        partition_of_unity([(-1, Fr(2, 5)), (Fr(3, 5), 2)], (0, 1))


def test_supports_inside_elements():
    cover = [CoverElement(-3, Fr(1, 2)), CoverElement(0, 3), CoverElement(Fr(5, 2), INF)]
    pou = partition_of_unity(cover, (-2, 4))
    for m in pou.members:
        u = cover[m.cover_index]
        assert u.lo < m.support[0] and m.support[1] < u.hi
    assert pou.certify().ok


def test_tietze_one_chart():
    F = ClosedSet.of([(0, INF)])
    data = LocalSmoothData.of([((-1, INF), "x^2")])
    ext = tietze_extend(F, data)
    xs = np.linspace(0, 40, 400)
    assert np.array_equal(evaluate_array(ext, xs), xs * xs)
    assert agreement_error(ext, F, data) == 0.0
    for rep in smoothness_reports(ext, [0.0, -0.5]):
        assert rep.ok


def test_tietze_two_rays():
    F = ClosedSet.of([(-INF, -1), (1, INF)])
    data = LocalSmoothData.of([((-INF, Fr(-1, 2)), "-1"), ((Fr(1, 2), INF), "1")])
    ext = tietze_extend(F, data)
    left = np.linspace(-60, -1, 2000)
    right = np.linspace(1, 60, 2000)
    assert np.max(np.abs(evaluate_array(ext, left) + 1)) == 0.0
    assert np.max(np.abs(evaluate_array(ext, right) - 1)) == 0.0
    inside = np.linspace(-0.9, 0.9, 7)
    reports = smoothness_reports(ext, list(inside) + seam_points(ext))
    assert all(r.ok for r in reports)
    assert sum(r.checked for r in reports) > 0


def test_tietze_whole_line():
    ext = tietze_extend(ClosedSet.line(), LocalSmoothData.of([((-INF, INF), "x^3 - 2")]))
    assert ext.rf == parse("x^3 - 2").rf


def test_tietze_detects_disagreement():
    F = ClosedSet.of([(0, 2)])
    data = LocalSmoothData.of([((-1, Fr(3, 2)), "x"), ((1, 3), "x + 1")])
    with pytest.raises(OverlapMismatch):
        tietze_extend(F, data)


def test_tietze_detects_missing_chart():
    F = ClosedSet.of([(0, 2)])
    with pytest.raises(CoverageError):
        tietze_extend(F, LocalSmoothData.of([((-1, 1), "x")]))


def test_extend_beyond_reciprocal():
    g = parse("1/x")
    ext = extend_beyond(g, 0, 1)
    assert evaluate(ext, 2) == 0.5
    assert evaluate(ext, -1) == 0.0
    xs = np.linspace(1.0, 50.0, 999)[1:]
    assert np.array_equal(evaluate_array(ext, xs), evaluate_array(g, xs))
    for rep in smoothness_reports(ext, [0.25, 0.5, 1.0]):
        assert rep.ok


def test_extend_beyond_needs_order():
    with pytest.raises(ValueError):
        extend_beyond(parse("1/x"), 1, 1)


def test_richardson_flags_a_kink():
    # |x|-like kink: piecewise, not smooth at 0
    e = parse("piecewise(-inf: -x, 0: x)")
    rep = richardson(lambda xs: evaluate_array(e, xs), 0.0, 1, 0.0)
    assert not rep.ok or rep.checked == 0  # the error stays constant in h
    assert rep.errors[0] == pytest.approx(rep.errors[-1])


def test_richardson_smooth_point():
    e = parse("x^3 - 2*x")
    d = differentiate(e)
    rep = richardson(lambda xs: evaluate_array(e, xs), 0.7, 1, evaluate(d, 0.7))
    assert rep.ok and rep.checked >= 2
