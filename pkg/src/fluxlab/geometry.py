"""The closed unit disk, its Liouville 1-form, pullbacks and quadrature.

Everything here is a pure function of its arguments.  Scalar entry points
work on :class:`Point` / :class:`CotangentSample`; the ``*_many`` variants
operate on ``(n, 2)`` float arrays and are what the rest of the package
uses internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .errors import AccuracyNotReached, FluxlabError

EPS_DOMAIN = 1e-12
# Flow integration may overshoot the boundary by round-off; points up to
# this far outside are radially clamped before form evaluation.
CLAMP_TOL = 1e-9

ORIGIN = np.array([0.0, 0.0])
X0 = np.array([1.0, 0.0])

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Point:
    """A point of the closed unit disk."""

    x: float
    y: float

    def __post_init__(self):
        if self.x * self.x + self.y * self.y > 1.0 + EPS_DOMAIN:
            raise FluxlabError(f"point ({self.x}, {self.y}) outside the disk")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])


@dataclass(frozen=True)
class CotangentSample:
    """Value of a 1-form at a point, as coefficients of a dx + b dy."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise FluxlabError("non-finite cotangent components")


def clamp_to_disk(pts: np.ndarray) -> np.ndarray:
    """Radially clamp points that overshoot the boundary by round-off."""
    r = np.hypot(pts[:, 0], pts[:, 1])
    over = r > 1.0
    if not np.any(over):
        return pts
    if np.any(r > 1.0 + CLAMP_TOL):
        worst = float(np.max(r))
        raise FluxlabError(f"point left the disk (|p| = {worst!r})")
    out = pts.copy()
    out[over] /= r[over, None]
    return out


def eval_eta_many(pts: np.ndarray) -> np.ndarray:
    """The 1-form (x dy - y dx)/2 sampled at ``(n, 2)`` points."""
    out = np.empty_like(pts)
    out[:, 0] = -0.5 * pts[:, 1]
    out[:, 1] = 0.5 * pts[:, 0]
    return out


def eval_eta(p: Point) -> CotangentSample:
    return CotangentSample(-0.5 * p.y, 0.5 * p.x)


def pullback_many(word, pts: np.ndarray) -> np.ndarray:
    """Pullback of the Liouville form through ``word`` at ``(n, 2)`` points.

    ``word`` needs an ``apply_jac_many`` method; the result row at ``p`` is
    the form at ``word(p)`` composed with the Jacobian there.
    """
    image, jac = word.apply_jac_many(pts)
    eta_img = eval_eta_many(clamp_to_disk(image))
    out = np.empty_like(eta_img)
    out[:, 0] = eta_img[:, 0] * jac[:, 0, 0] + eta_img[:, 1] * jac[:, 1, 0]
    out[:, 1] = eta_img[:, 0] * jac[:, 0, 1] + eta_img[:, 1] * jac[:, 1, 1]
    return out


def pullback_oneform(word, p: Point) -> CotangentSample:
    row = pullback_many(word, p.as_array()[None, :])[0]
    return CotangentSample(float(row[0]), float(row[1]))


def wedge_density_many(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Coefficient of dx^dy in alpha^beta, vectorized."""
    return alpha[:, 0] * beta[:, 1] - alpha[:, 1] * beta[:, 0]


def wedge_density(alpha: CotangentSample, beta: CotangentSample) -> float:
    return alpha.a * beta.b - alpha.b * beta.a


# ---------------------------------------------------------------------------
# Paths


@dataclass(frozen=True)
class Chord:
    """Straight segment between two points of the disk."""

    start: tuple
    end: tuple

    def eval(self, t: np.ndarray):
        p = np.asarray(self.start, dtype=float)
        q = np.asarray(self.end, dtype=float)
        pts = p[None, :] + t[:, None] * (q - p)[None, :]
        der = np.broadcast_to(q - p, pts.shape)
        return pts, der


@dataclass(frozen=True)
class BoundaryArc:
    """Arc of the boundary circle between two *lifted* angles.

    Lifted endpoints keep arcs of length > 2*pi legal; nothing is reduced
    mod 2*pi.
    """

    theta_start: float
    theta_end: float

    def eval(self, t: np.ndarray):
        dth = self.theta_end - self.theta_start
        th = self.theta_start + t * dth
        pts = np.stack([np.cos(th), np.sin(th)], axis=1)
        der = dth * np.stack([-np.sin(th), np.cos(th)], axis=1)
        return pts, der


def radial_gamma() -> Chord:
    """The radius t -> (t, 0), the reference integration chain."""
    return Chord((0.0, 0.0), (1.0, 0.0))


# ---------------------------------------------------------------------------
# Quadrature


@dataclass(frozen=True)
class QuadratureSpec:
    gl_order: int = 16
    panels_1d: int = 8
    radial_nodes: int = 64
    angular_nodes: int = 256
    refine_factor: int = 2
    target_tol: float = 1e-8

    def __post_init__(self):
        if min(self.gl_order, self.panels_1d, self.radial_nodes,
               self.angular_nodes, self.refine_factor) < 1:
            raise FluxlabError("quadrature counts must be >= 1")
        if not self.target_tol > 0:
            raise FluxlabError("target_tol must be positive")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class QuadResult:
    value: float
    est_error: float
    converged: bool


@lru_cache(maxsize=64)
def _composite_gl(order: int, panels: int):
    """Nodes/weights of a composite Gauss-Legendre rule on [0, 1]."""
    x, w = roots_legendre(order)
    width = 1.0 / panels
    starts = np.arange(panels) * width
    nodes = (starts[:, None] + 0.5 * width * (x[None, :] + 1.0)).ravel()
    weights = np.tile(0.5 * width * w, panels)
    return nodes, weights


def _line_value(form, path, order: int, panels: int) -> float:
    t, w = _composite_gl(order, panels)
    pts, der = path.eval(t)
    cov = form(clamp_to_disk(pts))
    return float(np.sum(w * np.sum(cov * der, axis=1)))


def line_integral(form, path, spec: QuadratureSpec = DEFAULT_SPEC,
                  strict: bool = False) -> QuadResult:
    """Integrate a 1-form along a path.

    ``form`` maps ``(n, 2)`` points to ``(n, 2)`` covector coefficients.
    The value at the spec resolution is compared against half the panel
    count for the error estimate; panels double until the estimate meets
    ``target_tol`` or ``refine_factor`` doublings are spent.
    """
    panels = spec.panels_1d
    coarse = _line_value(form, path, spec.gl_order, max(1, panels // 2))
    fine = _line_value(form, path, spec.gl_order, panels)
    err = abs(fine - coarse)
    for _ in range(spec.refine_factor):
        if err <= spec.target_tol:
            break
        panels *= 2
        coarse, fine = fine, _line_value(form, path, spec.gl_order, panels)
        err = abs(fine - coarse)
    converged = err <= spec.target_tol
    if strict and not converged:
        raise AccuracyNotReached(fine, err, spec.target_tol)
    return QuadResult(fine, err, converged)


def _disk_value(density, n_r: int, n_th: int) -> float:
    r, wr = roots_legendre(n_r)
    r = 0.5 * (r + 1.0)
    wr = 0.5 * wr
    th = TWO_PI * (np.arange(n_th) + 0.5) / n_th
    R, TH = np.meshgrid(r, th, indexing="ij")
    pts = np.stack([(R * np.cos(TH)).ravel(), (R * np.sin(TH)).ravel()],
                   axis=1)
    vals = density(pts).reshape(n_r, n_th)
    # polar measure r dr dtheta, uniform periodic rule in theta
    return float(np.sum(wr * r * vals.sum(axis=1)) * TWO_PI / n_th)


def disk_integral(density, spec: QuadratureSpec = DEFAULT_SPEC,
                  strict: bool = False) -> QuadResult:
    """Integrate a scalar density over the unit disk.

    Tensor-product rule: Gauss-Legendre in radius against the weight r,
    uniform periodic rule in angle.  Error estimated against the
    half-resolution grid.
    """
    n_r, n_th = spec.radial_nodes, spec.angular_nodes
    coarse = _disk_value(density, max(2, n_r // 2), max(4, n_th // 2))
    fine = _disk_value(density, n_r, n_th)
    err = abs(fine - coarse)
    for _ in range(spec.refine_factor):
        if err <= spec.target_tol:
            break
        n_r *= 2
        n_th *= 2
        coarse, fine = fine, _disk_value(density, n_r, n_th)
        err = abs(fine - coarse)
    converged = err <= spec.target_tol
    if strict and not converged:
        raise AccuracyNotReached(fine, err, spec.target_tol)
    return QuadResult(fine, err, converged)


def boundary_periodic_integral(f_theta, spec: QuadratureSpec = DEFAULT_SPEC,
                               strict: bool = False) -> QuadResult:
    """Integrate a smooth function of the angle over one boundary turn.

    ``f_theta`` maps an array of angles to values; the uniform rule is
    spectrally accurate for smooth periodic integrands.
    """

    def value(n):
        th = TWO_PI * (np.arange(n) + 0.5) / n
        return float(np.sum(f_theta(th)) * TWO_PI / n)

    n = spec.angular_nodes
    coarse = value(max(4, n // 2))
    fine = value(n)
    err = abs(fine - coarse)
    for _ in range(spec.refine_factor):
        if err <= spec.target_tol:
            break
        n *= 2
        coarse, fine = fine, value(n)
        err = abs(fine - coarse)
    converged = err <= spec.target_tol
    if strict and not converged:
        raise AccuracyNotReached(fine, err, spec.target_tol)
    return QuadResult(fine, err, converged)


# ---------------------------------------------------------------------------
# Convergence studies


@dataclass(frozen=True)
class ConvergenceRecord:
    labels: tuple
    values: tuple
    errors: tuple       # |v_i - v_top| for each rung below the top
    order: object       # float estimate or the string "exact"

    def monotone(self) -> bool:
        e = self.errors
        return all(e[i + 1] <= e[i] + 1e-15 for i in range(len(e) - 1))


def convergence_study(integral_thunk, spec_ladder) -> ConvergenceRecord:
    """Evaluate a quadrature thunk on a resolution ladder (>= 3 rungs)."""
    if len(spec_ladder) < 3:
        raise FluxlabError("ladder needs at least 3 resolutions")
    values = [float(integral_thunk(s)) for s in spec_ladder]
    top = values[-1]
    errors = [abs(v - top) for v in values[:-1]]
    if max(errors, default=0.0) < 1e-14:
        order = "exact"
    else:
        rates = []
        for i in range(len(errors) - 1):
            if errors[i] > 0 and errors[i + 1] > 0:
                rates.append(math.log(errors[i] / errors[i + 1]) / math.log(2.0))
        order = float(np.median(rates)) if rates else "exact"
    labels = tuple(str(s) for s in spec_ladder)
    return ConvergenceRecord(labels, tuple(values), tuple(errors), order)
