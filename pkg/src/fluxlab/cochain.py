"""Group cochains, coboundaries, central extensions and connection
cochains, plus the cup-product densities used by the disk invariants.

The coboundary follows the bar-resolution formula for right modules.  For
real-valued 1-cochains with trivial action this reads

    delta c(g, h) = c(h) - c(g h) + c(g)

and for form-valued 0-cochains

    delta alpha(g) = alpha - alpha^g

(the pullback action).  These two specializations are the conventions the
whole suite is audited against; they travel with every report.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotACocycle, NotBasic, NotConnection
from .geometry import eval_eta_many, pullback_many, wedge_density_many

CONVENTIONS = {
    "coboundary": "delta c(g,h) = c(h) - c(gh) + c(g); delta a(g) = a - a^g",
    "hamiltonian_sign": "X_H = (dH/dy, -dH/dx)",
    "wedge_order": "eta^g wedge eta for the Calabi density",
}


@dataclass(frozen=True)
class GroupOps:
    """Abstract group operations used by the extension engine."""

    mul: object
    inverse: object
    identity: object


@dataclass(frozen=True)
class Coefficients:
    """Abelian coefficient structure with an optional right group action."""

    add: object
    neg: object
    zero: object
    act: object = None  # act(value, g); None means the trivial action

    def sub(self, a, b):
        return self.add(a, self.neg(b))


REAL_COEFFS = Coefficients(
    add=lambda a, b: a + b, neg=lambda a: -a, zero=0.0)


def cyclic_coeffs(n: int) -> Coefficients:
    return Coefficients(add=lambda a, b: (a + b) % n,
                        neg=lambda a: (-a) % n, zero=0)


@dataclass
class GroupCochain:
    """A p-cochain: an arbitrary map from p-tuples of group elements."""

    arity: int
    evaluator: object
    coeffs: Coefficients = field(default_factory=lambda: REAL_COEFFS)

    def __call__(self, *args):
        if len(args) != self.arity:
            raise TypeError(f"expected {self.arity} arguments, got {len(args)}")
        return self.evaluator(*args)


def coboundary(c: GroupCochain, group: GroupOps) -> GroupCochain:
    """Bar-resolution coboundary, right-action version."""
    co = c.coeffs
    p = c.arity

    if p == 0:
        # delta a(g) = a - a^g; with a trivial action this vanishes
        def ev0(g):
            base = c.evaluator()
            moved = co.act(base, g) if co.act is not None else base
            return co.sub(base, moved)
        return GroupCochain(1, ev0, co)

    def ev(*gs):
        total = c.evaluator(*gs[1:])
        for i in range(1, p + 1):
            merged = gs[:i - 1] + (group.mul(gs[i - 1], gs[i]),) + gs[i + 1:]
            term = c.evaluator(*merged)
            total = co.add(total, term) if i % 2 == 0 else co.sub(total, term)
        last = c.evaluator(*gs[:p])
        if co.act is not None:
            last = co.act(last, gs[p])
        total = co.sub(total, last) if p % 2 == 0 else co.add(total, last)
        return total

    return GroupCochain(p + 1, ev, co)


def delta1(c, g, h, mul):
    """Trivial-coefficient coboundary of a real 1-cochain at one pair."""
    return c(h) - c(mul(g, h)) + c(g)


def delta2(c, g, h, k, mul):
    """Trivial-coefficient coboundary of a real 2-cochain at one triple."""
    return c(h, k) - c(mul(g, h), k) + c(g, mul(h, k)) - c(g, h)


# ---------------------------------------------------------------------------
# Central extensions


@dataclass(frozen=True)
class CentralExtension:
    """Group of pairs (g, a) with (g,a)(h,b) = (gh, a + b + sigma(g,h))."""

    base: GroupOps
    fiber: Coefficients
    sigma: object

    def mul(self, x, y):
        (g, a), (h, b) = x, y
        return (self.base.mul(g, h),
                self.fiber.add(self.fiber.add(a, b), self.sigma(g, h)))

    def identity(self):
        e = self.base.identity
        return (e, self.fiber.neg(self.sigma(e, e)))

    def inverse(self, x):
        g, a = x
        ginv = self.base.inverse(g)
        e = self.base.identity
        # solve (g,a)(ginv,b) = identity for b
        b = self.fiber.sub(
            self.fiber.neg(self.fiber.add(a, self.sigma(g, ginv))),
            self.sigma(e, e))
        return (ginv, b)

    def embed_fiber(self, a):
        e = self.base.identity
        return (e, self.fiber.sub(a, self.sigma(e, e)))


def cocycle_residual(sigma, triples, mul) -> float:
    """Max deviation from the 2-cocycle identity over sampled triples."""
    worst = 0.0
    for g, h, k in triples:
        worst = max(worst, abs(delta2(sigma, g, h, k, mul)))
    return worst


def extension_from_cocycle(base: GroupOps, fiber: Coefficients, sigma,
                           triples=None, elements=None,
                           tol: float = 1e-10) -> CentralExtension:
    """Build the extension after checking the cocycle identity.

    For finite groups pass ``elements`` to check exhaustively; otherwise
    pass sampled ``triples``.
    """
    if elements is not None:
        triples = itertools.product(elements, repeat=3)
    if triples is None:
        raise NotACocycle("no triples supplied for the cocycle check")
    for g, h, k in triples:
        lhs = fiber.add(sigma(h, k), sigma(g, base.mul(h, k)))
        rhs = fiber.add(sigma(base.mul(g, h), k), sigma(g, h))
        dev = fiber.sub(lhs, rhs)
        bad = abs(dev) > tol if isinstance(dev, float) else dev != fiber.zero
        if bad:
            raise NotACocycle(f"cocycle identity fails at {(g, h, k)}: {dev}")
    return CentralExtension(base, fiber, sigma)


def canonical_connection(ext: CentralExtension):
    """The fiber-coordinate connection tau((g, a)) = a + sigma(e, e)."""
    e = ext.base.identity
    off = ext.sigma(e, e)
    return lambda x: ext.fiber.add(x[1], off)


def connection_curvature_basic(ext: CentralExtension, tau, sampler,
                               fiber_shifts, tol: float = 1e-9,
                               section=None):
    """Descend the curvature of a connection cochain to the base group.

    ``sampler`` yields base-group pairs; ``section`` lifts base elements
    (defaults to (g, 0)).  The connection property and the independence of
    the lift choice are verified on every sampled pair before the
    descended evaluator is returned.
    """
    if section is None:
        section = lambda g: (g, ext.fiber.zero)
    fib = ext.fiber

    def far(u, v):
        d = fib.sub(u, v)
        if isinstance(d, float):
            return abs(d) > tol
        return d != fib.zero

    def dtau(x, y):
        return fib.add(fib.sub(tau(y), tau(ext.mul(x, y))), tau(x))

    pairs = list(sampler)
    for g, h in pairs:
        x, y = section(g), section(h)
        for a in fiber_shifts:
            shifted = ext.mul(x, ext.embed_fiber(a))
            if far(tau(shifted), fib.add(tau(x), a)):
                raise NotConnection(
                    f"tau(g a) != tau(g) + a at {g!r}, shift {a!r}")
            base_val = dtau(x, y)
            for b in fiber_shifts:
                moved = dtau(ext.mul(x, ext.embed_fiber(a)),
                             ext.mul(y, ext.embed_fiber(b)))
                if far(moved, base_val):
                    raise NotBasic(
                        f"curvature depends on lifts at {(g, h)!r}")

    def basic(g, h):
        return dtau(section(g), section(h))

    return GroupCochain(2, basic)


def verify_basic(c2, pairs, perturbations, mul, tol: float = 1e-7):
    """Residual report for coset independence of a real 2-cochain.

    ``perturbations`` are elements of the designated relative subgroup;
    each sampled pair (g, h) is compared against (g k, h k') for all
    supplied k, k'.
    """
    samples = []
    worst = 0.0
    for g, h in pairs:
        ref = c2(g, h)
        for k in perturbations:
            for kp in perturbations:
                res = abs(c2(mul(g, k), mul(h, kp)) - ref)
                samples.append(res)
                worst = max(worst, res)
    return {"max_residual": worst, "n_samples": len(samples),
            "verdict": worst <= tol, "tolerance": tol}


# ---------------------------------------------------------------------------
# Cup-product densities on the disk


def cup_eta_deltaeta(word):
    """Density of eta^g wedge eta, ready for the disk integral."""

    def density(pts: np.ndarray) -> np.ndarray:
        return wedge_density_many(pullback_many(word, pts),
                                  eval_eta_many(pts))

    return density


def cup_K_omega(word, k_field_many):
    """Density of the potential field against the area form."""

    def density(pts: np.ndarray) -> np.ndarray:
        return k_field_many(word, pts)

    return density


def cup_K_eta(word, k_field_many):
    """Boundary density: the potential field against eta = (1/2) d theta."""

    def f_theta(th: np.ndarray) -> np.ndarray:
        pts = np.stack([np.cos(th), np.sin(th)], axis=1)
        return 0.5 * k_field_many(word, pts)

    return f_theta
