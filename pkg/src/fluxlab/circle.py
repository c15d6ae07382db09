"""Boundary restrictions, lifts to the universal cover, and the Euler
cocycle on pairs of lifts.

A lift is stored as unwrapped samples of a monotone map phi on a uniform
grid of [0, 2*pi), extended equivariantly (phi(x + 2*pi) = phi(x) + 2*pi)
by monotone cubic interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import UnwrapAmbiguity

TWO_PI = 2.0 * math.pi

DEFAULT_GRID = 4096
MAX_GRID = 1 << 16


@dataclass(frozen=True, eq=False)
class CircleLift:
    """Monotone lift of an orientation-preserving circle diffeomorphism.

    ``values[0]`` (the representative of phi(0)) is normalized into
    (-pi, pi] at construction time.
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        steps = np.diff(self.values)
        if np.any(steps <= 0.0) or np.any(steps >= TWO_PI):
            raise UnwrapAmbiguity("sample steps must lie in (0, 2*pi)")

    @property
    def base_choice(self) -> float:
        return float(self.values[0])

    @cached_property
    def _interp(self):
        xs = np.append(self.grid, TWO_PI)
        ys = np.append(self.values, self.values[0] + TWO_PI)
        return PchipInterpolator(xs, ys)

    def __call__(self, x):
        return lift_eval(self, x)


def _normalize_base(values: np.ndarray) -> np.ndarray:
    shift = TWO_PI * math.floor((math.pi - values[0]) / TWO_PI)
    return values + shift


def identity_lift(n: int = DEFAULT_GRID) -> CircleLift:
    grid = TWO_PI * np.arange(n) / n
    return CircleLift(grid, grid.copy())


def rotation_lift(angle: float, n: int = DEFAULT_GRID) -> CircleLift:
    grid = TWO_PI * np.arange(n) / n
    return CircleLift(grid, _normalize_base(grid + angle))


def lift_from_samples(raw_angles: np.ndarray) -> CircleLift:
    """Build a lift from raw (wrapped) image angles on the uniform grid.

    Successive raw differences are reduced mod 2*pi; a step of pi or more
    means the sampling is too coarse to unwrap and raises.
    """
    n = len(raw_angles)
    grid = TWO_PI * np.arange(n) / n
    diffs = np.mod(np.diff(raw_angles), TWO_PI)
    if np.any(diffs <= 0.0) or np.any(diffs >= math.pi):
        raise UnwrapAmbiguity("boundary samples too coarse to unwrap")
    values = raw_angles[0] + np.concatenate([[0.0], np.cumsum(diffs)])
    base = math.atan2(math.sin(raw_angles[0]), math.cos(raw_angles[0]))
    values += base - values[0]
    return CircleLift(grid, values)


def boundary_restriction(word, n: int = DEFAULT_GRID,
                         max_doublings: int = 4) -> CircleLift:
    """Lift of the circle diffeomorphism induced by a disk word.

    On an unwrap failure the grid doubles, up to ``max_doublings`` times
    or the hard grid cap.
    """
    for _ in range(max_doublings + 1):
        grid = TWO_PI * np.arange(n) / n
        pts = np.stack([np.cos(grid), np.sin(grid)], axis=1)
        img = word.apply_many(pts)
        raw = np.arctan2(img[:, 1], img[:, 0])
        try:
            return lift_from_samples(raw)
        except UnwrapAmbiguity:
            if n >= MAX_GRID:
                raise
            n = min(2 * n, MAX_GRID)
    raise UnwrapAmbiguity("unwrap failed after maximum grid doublings")


def lift_eval(lift: CircleLift, x):
    """Evaluate the equivariant extension of the lift at real arguments."""
    x = np.asarray(x, dtype=float)
    k = np.floor(x / TWO_PI)
    vals = lift._interp(x - TWO_PI * k) + TWO_PI * k
    return float(vals) if vals.ndim == 0 else vals


def lift_compose(phi: CircleLift, psi: CircleLift) -> CircleLift:
    """Lift of the composition: phi(psi(.)) resampled on psi's grid."""
    values = lift_eval(phi, psi.values)
    return CircleLift(psi.grid, _normalize_base(np.asarray(values)))


def chi(mu: CircleLift, nu: CircleLift) -> float:
    """Euler cocycle (phi(psi(0)) - phi(0) - psi(0)) / 2*pi.

    Evaluated literally at the single point 0; independent of which lift
    representatives were chosen.
    """
    psi0 = lift_eval(nu, 0.0)
    return (lift_eval(mu, psi0) - lift_eval(mu, 0.0) - psi0) / TWO_PI
