"""Symplectomorphisms of the disk as words of twist and flow primitives.

Two primitive kinds are provided:

* analytic twists ``(r, theta) -> (r, theta + beta(r))`` with
  ``beta(r) = (1 - r^2)^m P(r^2)``, whose Jacobians are closed form and
  exactly area preserving;
* time-t flows of Hamiltonians ``H = (1 - x^2 - y^2)^k q(x, y)``,
  integrated by a fixed-step classical Runge-Kutta scheme, with Jacobians
  transported by the variational equation.

Words are immutable tuples of (primitive, exponent) factors and evaluate
right to left: ``compose_words(a, b)`` applies ``b`` first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._kernels import ham_flow, ham_flow_jac
from .errors import IntegrationFailure, InvalidSpec
from .geometry import Point

DEFAULT_STEPS_PER_UNIT = 512


def _poly1_der(c: np.ndarray) -> np.ndarray:
    if len(c) <= 1:
        return np.zeros(1)
    return c[1:] * np.arange(1, len(c))


def _poly2_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1))
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if a[i, j] != 0.0:
                out[i:i + b.shape[0], j:j + b.shape[1]] += a[i, j] * b
    return out


def _poly2_der(c: np.ndarray, axis: int) -> np.ndarray:
    if c.shape[axis] <= 1:
        return np.zeros((1, 1))
    k = np.arange(1, c.shape[axis])
    if axis == 0:
        return c[1:, :] * k[:, None]
    return c[:, 1:] * k[None, :]


def _polyval2(c: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # Horner in y inside Horner in x; c[i, j] multiplies x^i y^j.
    acc = np.zeros_like(x)
    for row in c[::-1]:
        inner = np.full_like(x, row[-1])
        for cij in row[-2::-1]:
            inner = inner * y + cij
        acc = acc * x + inner
    return acc


@dataclass(frozen=True)
class TwistPrimitive:
    """Rotation by the radial profile beta(r) = (1 - r^2)^m P(r^2)."""

    m: int
    poly_u: tuple  # coefficients of P in u = r^2, low order first

    def __post_init__(self):
        if self.m < 0:
            raise InvalidSpec("twist exponent m must be >= 0")
        if len(self.poly_u) == 0:
            raise InvalidSpec("twist polynomial must have coefficients")

    @cached_property
    def _beta_coeffs(self) -> np.ndarray:
        # (1 - u)^m expanded, times P(u)
        bump = np.array([1.0])
        for _ in range(self.m):
            bump = np.convolve(bump, np.array([1.0, -1.0]))
        return np.convolve(bump, np.asarray(self.poly_u, dtype=float))

    @cached_property
    def _dbeta_du(self) -> np.ndarray:
        return _poly1_der(self._beta_coeffs)

    @property
    def fixes_origin(self) -> bool:
        return True

    @property
    def boundary_identity(self) -> bool:
        return self.m >= 1

    def beta_of_u(self, u):
        return np.polynomial.polynomial.polyval(u, self._beta_coeffs)

    def apply_many(self, pts: np.ndarray, sign: int) -> np.ndarray:
        u = pts[:, 0] ** 2 + pts[:, 1] ** 2
        ang = sign * self.beta_of_u(u)
        c, s = np.cos(ang), np.sin(ang)
        out = np.empty_like(pts)
        out[:, 0] = c * pts[:, 0] - s * pts[:, 1]
        out[:, 1] = s * pts[:, 0] + c * pts[:, 1]
        return out

    def apply_jac_many(self, pts: np.ndarray, sign: int):
        u = pts[:, 0] ** 2 + pts[:, 1] ** 2
        ang = sign * self.beta_of_u(u)
        dang = sign * 2.0 * np.polynomial.polynomial.polyval(u, self._dbeta_du)
        c, s = np.cos(ang), np.sin(ang)
        out = np.empty_like(pts)
        out[:, 0] = c * pts[:, 0] - s * pts[:, 1]
        out[:, 1] = s * pts[:, 0] + c * pts[:, 1]
        # D(R(beta) p) = R(beta) (I + beta_u' J p p^T) with J the quarter turn
        x, y = pts[:, 0], pts[:, 1]
        inner = np.empty(pts.shape[:1] + (2, 2))
        inner[:, 0, 0] = 1.0 - dang * y * x
        inner[:, 0, 1] = -dang * y * y
        inner[:, 1, 0] = dang * x * x
        inner[:, 1, 1] = 1.0 + dang * x * y
        jac = np.empty_like(inner)
        jac[:, 0, 0] = c * inner[:, 0, 0] - s * inner[:, 1, 0]
        jac[:, 0, 1] = c * inner[:, 0, 1] - s * inner[:, 1, 1]
        jac[:, 1, 0] = s * inner[:, 0, 0] + c * inner[:, 1, 0]
        jac[:, 1, 1] = s * inner[:, 0, 1] + c * inner[:, 1, 1]
        return out, jac


@dataclass(frozen=True)
class HamiltonianPrimitive:
    """Time-t flow of H = (1 - x^2 - y^2)^k q(x, y).

    ``k = 1`` keeps the flow tangent to the boundary; ``k = 2`` makes it
    the identity there pointwise.  The vector field convention is
    X_H = (dH/dy, -dH/dx).
    """

    k: int
    q: tuple            # 2-d coefficient rows, q[i][j] multiplies x^i y^j
    time: float
    steps_per_unit: int = DEFAULT_STEPS_PER_UNIT

    def __post_init__(self):
        if self.k not in (1, 2):
            raise InvalidSpec("boundary-vanishing order k must be 1 or 2")
        if self.steps_per_unit < 1:
            raise InvalidSpec("steps_per_unit must be >= 1")
        arr = np.asarray(self.q, dtype=float)
        if arr.ndim != 2:
            raise InvalidSpec("q must be a 2-d coefficient table")

    @cached_property
    def _tables(self):
        q = np.atleast_2d(np.asarray(self.q, dtype=float))
        bump = np.array([[1.0, 0.0, -1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
        h = q
        for _ in range(self.k):
            h = _poly2_mul(h, bump)
        hx = _poly2_der(h, 0)
        hy = _poly2_der(h, 1)
        return {
            "hx": hx, "hy": hy,
            "hxx": _poly2_der(hx, 0),
            "hxy": _poly2_der(hx, 1),
            "hyy": _poly2_der(hy, 1),
        }

    @property
    def fixes_origin(self) -> bool:
        t = self._tables
        return t["hx"][0, 0] == 0.0 and t["hy"][0, 0] == 0.0

    @property
    def boundary_identity(self) -> bool:
        return self.k == 2

    def _n_steps(self) -> int:
        return max(32, int(math.ceil(self.steps_per_unit * abs(self.time))))

    def velocity(self, pts: np.ndarray) -> np.ndarray:
        t = self._tables
        x, y = pts[:, 0], pts[:, 1]
        out = np.empty_like(pts)
        out[:, 0] = _polyval2(t["hy"], x, y)
        out[:, 1] = -_polyval2(t["hx"], x, y)
        return out

    def dvelocity(self, pts: np.ndarray) -> np.ndarray:
        t = self._tables
        x, y = pts[:, 0], pts[:, 1]
        out = np.empty(pts.shape[:1] + (2, 2))
        hxy = _polyval2(t["hxy"], x, y)
        out[:, 0, 0] = hxy
        out[:, 0, 1] = _polyval2(t["hyy"], x, y)
        out[:, 1, 0] = -_polyval2(t["hxx"], x, y)
        out[:, 1, 1] = -hxy
        return out

    def apply_many(self, pts: np.ndarray, sign: int) -> np.ndarray:
        n = self._n_steps()
        h = sign * self.time / n
        t = self._tables
        z = ham_flow(np.ascontiguousarray(pts, dtype=float),
                     t["hx"], t["hy"], h, n)
        if not np.all(np.isfinite(z)):
            raise IntegrationFailure("flow produced non-finite state")
        return z

    def apply_jac_many(self, pts: np.ndarray, sign: int):
        n = self._n_steps()
        h = sign * self.time / n
        t = self._tables
        z, jac = ham_flow_jac(np.ascontiguousarray(pts, dtype=float),
                              t["hx"], t["hy"], t["hxx"], t["hxy"], t["hyy"],
                              h, n)
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(jac))):
            raise IntegrationFailure("variational flow produced non-finite state")
        return z, jac


@dataclass(frozen=True)
class MapWord:
    """A composition of signed primitives; factors apply right to left."""

    factors: tuple = field(default_factory=tuple)

    @property
    def fixes_origin(self) -> bool:
        return all(p.fixes_origin for p, _ in self.factors)

    @property
    def boundary_identity(self) -> bool:
        return all(p.boundary_identity for p, _ in self.factors)

    def apply_many(self, pts: np.ndarray) -> np.ndarray:
        z = np.asarray(pts, dtype=float)
        for prim, exp in reversed(self.factors):
            z = prim.apply_many(z, exp)
        return z

    def apply_jac_many(self, pts: np.ndarray):
        z = np.asarray(pts, dtype=float)
        jac = np.broadcast_to(np.eye(2), z.shape[:1] + (2, 2)).copy()
        for prim, exp in reversed(self.factors):
            z, j = prim.apply_jac_many(z, exp)
            acc = np.empty_like(jac)
            acc[:, 0, 0] = j[:, 0, 0] * jac[:, 0, 0] + j[:, 0, 1] * jac[:, 1, 0]
            acc[:, 0, 1] = j[:, 0, 0] * jac[:, 0, 1] + j[:, 0, 1] * jac[:, 1, 1]
            acc[:, 1, 0] = j[:, 1, 0] * jac[:, 0, 0] + j[:, 1, 1] * jac[:, 1, 0]
            acc[:, 1, 1] = j[:, 1, 0] * jac[:, 0, 1] + j[:, 1, 1] * jac[:, 1, 1]
            jac = acc
        return z, jac

    def apply(self, p: Point) -> Point:
        img = self.apply_many(p.as_array()[None, :])[0]
        r = math.hypot(img[0], img[1])
        if r > 1.0:
            img = img / r  # round-off overshoot
        return Point(float(img[0]), float(img[1]))


IDENTITY_WORD = MapWord(())


def compose_words(a: MapWord, b: MapWord) -> MapWord:
    """Word for a after b: (a . b)(p) = a(b(p))."""
    return MapWord(a.factors + b.factors)


def inverse_word(word: MapWord) -> MapWord:
    return MapWord(tuple((p, -e) for p, e in reversed(word.factors)))


@dataclass(frozen=True)
class Membership:
    in_H: bool
    in_H_rel: bool
    in_G: bool
    in_G_rel: bool


def classify_word(word: MapWord) -> Membership:
    fo = word.fixes_origin
    bi = word.boundary_identity
    return Membership(in_H=True, in_H_rel=bi, in_G=fo, in_G_rel=fo and bi)


def sample_disk_points(n: int, seed: int, r_max: float = 1.0) -> np.ndarray:
    """Uniform-in-area samples, deterministic in the seed."""
    rng = np.random.default_rng(seed)
    r = r_max * np.sqrt(rng.uniform(size=n))
    th = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return np.stack([r * np.cos(th), r * np.sin(th)], axis=1)


def symplectic_residual(word: MapWord, n_samples: int = 100,
                        seed: int = 0) -> float:
    """Max |det Dg - 1| over uniformly sampled points."""
    if n_samples < 1:
        raise InvalidSpec("n_samples must be >= 1")
    pts = sample_disk_points(n_samples, seed)
    _, jac = word.apply_jac_many(pts)
    det = jac[:, 0, 0] * jac[:, 1, 1] - jac[:, 0, 1] * jac[:, 1, 0]
    return float(np.max(np.abs(det - 1.0)))


def make_twist(m: int, poly_u, exp: int = 1) -> MapWord:
    return MapWord(((TwistPrimitive(m, tuple(float(c) for c in poly_u)), exp),))


def make_rotation(angle: float) -> MapWord:
    return make_twist(0, (angle,))


def make_ham_flow(k: int, q, time: float,
                  steps_per_unit: int = DEFAULT_STEPS_PER_UNIT,
                  exp: int = 1) -> MapWord:
    qt = tuple(tuple(float(c) for c in row) for row in q)
    return MapWord(((HamiltonianPrimitive(k, qt, float(time),
                                          int(steps_per_unit)), exp),))


def with_steps_scaled(word: MapWord, factor: int) -> MapWord:
    """Same word with every flow factor's step control multiplied."""
    out = []
    for prim, exp in word.factors:
        if isinstance(prim, HamiltonianPrimitive):
            prim = HamiltonianPrimitive(prim.k, prim.q, prim.time,
                                        prim.steps_per_unit * factor)
        out.append((prim, exp))
    return MapWord(tuple(out))
