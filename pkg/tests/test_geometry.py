import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fluxlab.errors import AccuracyNotReached, FluxlabError
from fluxlab.geometry import (
    BoundaryArc, Chord, CotangentSample, Point, QuadratureSpec,
    clamp_to_disk, convergence_study, disk_integral, eval_eta, eval_eta_many,
    line_integral, pullback_many, radial_gamma, wedge_density,
    wedge_density_many,
)

TWO_PI = 2.0 * math.pi

finite = st.floats(min_value=-10, max_value=10, allow_nan=False)


def test_point_rejects_exterior():
    Point(0.6, 0.8)  # on the boundary is fine
    with pytest.raises(FluxlabError):
        Point(0.8, 0.8)


def test_eval_eta_values():
    cov = eval_eta(Point(0.3, -0.4))
    assert cov.a == pytest.approx(0.2)
    assert cov.b == pytest.approx(0.15)
    many = eval_eta_many(np.array([[0.3, -0.4]]))
    assert many[0, 0] == pytest.approx(0.2)
    assert many[0, 1] == pytest.approx(0.15)


def test_cotangent_rejects_nonfinite():
    with pytest.raises(FluxlabError):
        CotangentSample(float("nan"), 0.0)


def test_clamp_to_disk():
    pts = np.array([[1.0 + 1e-12, 0.0], [0.5, 0.0]])
    out = clamp_to_disk(pts)
    assert math.hypot(*out[0]) <= 1.0
    assert out[1, 0] == 0.5
    with pytest.raises(FluxlabError):
        clamp_to_disk(np.array([[1.1, 0.0]]))


@given(a1=finite, a2=finite, b1=finite, b2=finite)
def test_wedge_antisymmetric(a1, a2, b1, b2):
    alpha = CotangentSample(a1, a2)
    beta = CotangentSample(b1, b2)
    assert wedge_density(alpha, beta) == -wedge_density(beta, alpha)


def test_wedge_density_many_matches_scalar():
    alpha = np.array([[1.0, 2.0]])
    beta = np.array([[3.0, 5.0]])
    assert wedge_density_many(alpha, beta)[0] == pytest.approx(-1.0)


def test_boundary_circulation_is_disk_area():
    # integral of the primitive form around the full boundary circle
    res = line_integral(eval_eta_many, BoundaryArc(0.0, TWO_PI))
    assert res.value == pytest.approx(math.pi, abs=1e-12)


def test_closed_form_has_zero_chord_integral():
    # d(theta-free) exact form: alpha = d(x^2) = 2x dx integrated over a
    # closed triangle-ish chord loop vanishes
    def alpha(pts):
        out = np.zeros_like(pts)
        out[:, 0] = 2.0 * pts[:, 0]
        return out

    a, b, c = (0.1, 0.2), (0.5, -0.3), (-0.4, 0.4)
    total = sum(line_integral(alpha, Chord(p, q)).value
                for p, q in ((a, b), (b, c), (c, a)))
    assert total == pytest.approx(0.0, abs=1e-13)


def test_disk_integral_area_and_moment():
    area = disk_integral(lambda pts: np.ones(len(pts)))
    assert area.value == pytest.approx(math.pi, abs=1e-12)
    moment = disk_integral(lambda pts: pts[:, 0] ** 2 + pts[:, 1] ** 2)
    assert moment.value == pytest.approx(math.pi / 2.0, abs=1e-12)


def test_radial_gamma_endpoints():
    pts, der = radial_gamma().eval(np.array([0.0, 1.0]))
    assert pts[0] == pytest.approx([0.0, 0.0])
    assert pts[1] == pytest.approx([1.0, 0.0])
    assert der[0] == pytest.approx([1.0, 0.0])


def test_line_integral_strict_raises_when_starved():
    # one point per panel cannot resolve a high-frequency integrand
    def wiggly(pts):
        out = np.zeros_like(pts)
        out[:, 0] = np.cos(200.0 * pts[:, 0])
        return out

    spec = QuadratureSpec(gl_order=1, panels_1d=2, refine_factor=1,
                          target_tol=1e-12)
    with pytest.raises(AccuracyNotReached) as err:
        line_integral(wiggly, radial_gamma(), spec, strict=True)
    assert err.value.est_error > err.value.target


def test_quadrature_spec_validation():
    with pytest.raises(FluxlabError):
        QuadratureSpec(gl_order=0)
    with pytest.raises(FluxlabError):
        QuadratureSpec(target_tol=0.0)


def test_pullback_through_identity_jacobian():
    class Id:
        def apply_jac_many(self, pts):
            jac = np.broadcast_to(np.eye(2), pts.shape[:1] + (2, 2)).copy()
            return pts, jac

    pts = np.array([[0.2, 0.5], [-0.1, 0.3]])
    assert np.allclose(pullback_many(Id(), pts), eval_eta_many(pts))


def test_convergence_study_constant_and_smooth():
    const = convergence_study(
        lambda n: disk_integral(lambda pts: np.ones(len(pts)),
                                QuadratureSpec(radial_nodes=n,
                                               angular_nodes=4 * n,
                                               refine_factor=1,
                                               target_tol=1e30)).value,
        [4, 8, 16])
    assert const.order == "exact"
    assert const.monotone()

    smooth = convergence_study(
        lambda n: line_integral(
            lambda pts: np.stack([np.exp(pts[:, 0]),
                                  np.zeros(len(pts))], axis=1),
            radial_gamma(),
            QuadratureSpec(gl_order=2, panels_1d=n, refine_factor=1,
                           target_tol=1e30)).value,
        [1, 2, 4, 8])
    assert smooth.monotone()
    assert smooth.order != "exact" and smooth.order > 3.0


def test_convergence_study_needs_three_rungs():
    with pytest.raises(FluxlabError):
        convergence_study(lambda n: 0.0, [1, 2])
