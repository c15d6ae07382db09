"""Acceptance gate: one test and one printed pass/fail line per criterion.

Each criterion is pinned to its stated tolerance; the printed lines go
straight to the real stdout so the per-criterion summary survives pytest's
capture.
"""

import math
import numpy as np
import pytest

from fluxlab.circle import boundary_restriction, chi
from fluxlab.cochain import CONVENTIONS
from fluxlab.identities import check_identity, convergence_table
from fluxlab.maps import make_ham_flow, symplectic_residual, with_steps_scaled
from fluxlab.wordgen import random_word, subseed
from fluxlab.invariants import ilm_C

SEED = 0
_cache = {}


def report(seed=SEED, **kw):
    def run(ident):
        key = (ident, seed)
        if key not in _cache:
            _cache[key] = check_identity(ident, seed=seed, **kw)
        return _cache[key]
    return run


@pytest.fixture
def emit(capfd):
    """Print one summary line per criterion past pytest's capture."""

    def _emit(number, name, passed, detail):
        state = "PASS" if passed else "FAIL"
        with capfd.disabled():
            print(f"ACCEPTANCE {number:>2} {state} {name}: {detail}",
                  flush=True)
        assert passed, f"criterion {number} ({name}): {detail}"

    return _emit


def _verdict_line(rep):
    return f"max_residual={rep.max_residual:.3e} tol={rep.tolerance:.1e} n={rep.n}"


def test_criterion_01_radial_quasimorphism_vs_lift_cocycle(emit):
    rep = report()("PROP_3_3")
    emit(1, "tau coboundary equals half-turn lift defect",
         rep.verdict and rep.n == 20 and rep.tolerance == 1e-7,
         _verdict_line(rep))


def test_criterion_02_connection_laws_and_conjugation(emit):
    r1 = report()("COR_3_5_i")
    r2 = report()("COR_3_5_ii")
    ok = (r1.verdict and r2.verdict and r1.n == 20 and r2.n == 20
          and r1.tolerance == 1e-8 and r2.tolerance == 1e-8)
    emit(2, "flux connection laws and conjugation invariance", ok,
         f"laws {_verdict_line(r1)}; conjugation {_verdict_line(r2)}")


def test_criterion_03_flux_witness_linearity(emit):
    rep = report()("FLUX_LINEAR")
    emit(3, "twist flux equals -s/4 and is linear in s",
         rep.verdict and rep.tolerance == 1e-10, _verdict_line(rep))


def test_criterion_04_two_point_cocycle_identity(emit):
    rep = report()("ILM_COCYCLE")
    agree = rep.components["chord_vs_arc"]
    ok = (rep.verdict and rep.n == 10 and rep.tolerance == 1e-7
          and agree["passed"] and agree["tolerance"] == 1e-7)
    emit(4, "two-point 2-cocycle identity and path-strategy agreement", ok,
         f"{_verdict_line(rep)}; strategies "
         f"max_residual={agree['max_residual']:.3e}")


def test_criterion_05_cocycle_equals_tau_coboundary_and_lift_cocycle(emit):
    rep = report()("ILM_EQ_TAU")
    rng = np.random.default_rng(subseed(SEED, "acceptance-5"))
    worst = 0.0
    for _ in range(20):
        g = random_word(rng, "H")
        h = random_word(rng, "H")
        val = ilm_C(g, h).value
        ref = math.pi * chi(boundary_restriction(g), boundary_restriction(h))
        worst = max(worst, abs(val - ref))
    ok = rep.verdict and rep.n == 20 and rep.tolerance == 1e-7 and worst <= 1e-7
    emit(5, "cocycle equals -delta tau on G and pi*chi on H", ok,
         f"on G {_verdict_line(rep)}; on H max_residual={worst:.3e} tol=1e-07")


def test_criterion_06_zigzag_potential_field(emit):
    rep = report()("ZIGZAG_DK")
    const = rep.components["coboundary_constant"]
    match = rep.components["coboundary_equals_minus_cocycle"]
    ok = (rep.verdict and rep.tolerance == 1e-5 and const["passed"]
          and const["tolerance"] == 1e-7 and match["passed"])
    emit(6, "potential-field gradient and coboundary constancy", ok,
         f"fd {_verdict_line(rep)}; constancy "
         f"max_residual={const['max_residual']:.3e}; "
         f"equals -C max_residual={match['max_residual']:.3e}")


def test_criterion_07_class_independence(emit):
    r1 = report()("X0_INDEP")
    r2 = report()("ETA_INDEP")
    ok = (r1.verdict and r2.verdict and r1.n == 10 and r2.n == 10
          and r1.tolerance == 1e-7 and r2.tolerance == 1e-7)
    emit(7, "basepoint and primitive-form independence", ok,
         f"basepoint {_verdict_line(r1)}; primitive {_verdict_line(r2)}")


def test_criterion_08_calabi_block(emit):
    run = report()
    parts = {
        "CAL_HOM": 1e-7, "STOKES_5_4": 1e-6, "LEMMA_5_6": 1e-7,
        "LEMMA_5_7": 1e-6, "PROP_5_4": 1e-6, "REMARK_5_5": 1e-6,
    }
    reps = {ident: run(ident) for ident in parts}
    twist = reps["CAL_HOM"].components["twist_value_minus_pi_s_over_6"]
    ok = all(r.verdict and r.tolerance == parts[i]
             for i, r in reps.items()) \
        and twist["passed"] and twist["tolerance"] == 1e-8
    emit(8, "Calabi block (homomorphism, twist oracle, Stokes, kappa laws)",
         ok, "; ".join(f"{i} max={r.max_residual:.1e}"
                       for i, r in sorted(reps.items()))
         + f"; twist oracle max={twist['max_residual']:.1e}")


def test_criterion_09_quasimorphism_bounds(emit):
    rep = report()("REMARK_3_4_BOUND")
    chi_c = rep.components["chi_strictly_below_one"]
    ok = rep.verdict and rep.max_residual <= 1e-6 and chi_c["passed"]
    emit(9, "coboundary of tau bounded by pi; lift cocycle below one", ok,
         f"excess over pi max={rep.max_residual:.3e}; "
         f"max|chi|-1={chi_c['max_residual']:.3e}")


def test_criterion_10_extension_engine(emit):
    # the exact finite-group round trip is covered in the cochain unit
    # tests; here the disk model must reproduce the same curvature law
    import itertools
    from fluxlab.cochain import (
        GroupOps, canonical_connection, connection_curvature_basic,
        cyclic_coeffs, extension_from_cocycle,
    )
    z2 = GroupOps(mul=lambda a, b: (a + b) % 2,
                  inverse=lambda a: (-a) % 2, identity=0)
    ext = extension_from_cocycle(z2, cyclic_coeffs(2),
                                 lambda g, h: (g * h) % 2, elements=(0, 1))
    pairs = list(itertools.product((0, 1), repeat=2))
    basic = connection_curvature_basic(ext, canonical_connection(ext),
                                       pairs, fiber_shifts=(0, 1))
    fib = cyclic_coeffs(2)
    finite_ok = all(basic(g, h) == fib.neg(ext.sigma(g, h))
                    for g, h in pairs)

    rep = report()("THM_A")
    engine = rep.components["engine_basic_equals_minus_pi_chi"]
    ok = (finite_ok and rep.verdict and rep.tolerance == 1e-8
          and engine["passed"] and engine["tolerance"] <= 1e-8)
    emit(10, "extension engine: finite round trip and disk model", ok,
         f"finite exact={finite_ok}; cochain equality {_verdict_line(rep)}; "
         f"engine max_residual={engine['max_residual']:.3e}")


def test_criterion_11_basicness_detection(emit):
    rep = report()("THM_B_BASIC")
    control = rep.extras["negative_control_residual"]
    ok = rep.verdict and rep.tolerance == 1e-7 and control >= 1e-2
    emit(11, "coset independence verified; non-basic control detected", ok,
         f"{_verdict_line(rep)}; control residual={control:.3e} (>= 1e-02)")


def test_criterion_12_sign_audit(emit):
    rep = report()("SIGN_AUDIT_MORI16")
    extras = rep.extras
    documented = {"fit_slope", "fit_offset", "slope_under_local_conventions",
                  "cited_slope", "cited_offset", "note"} <= set(extras)
    ledger = set(CONVENTIONS) == {"coboundary", "hamiltonian_sign",
                                  "wedge_order"}
    ok = rep.verdict and rep.tolerance == 1e-5 and documented and ledger
    emit(12, "sign audit: measured constants with convention ledger", ok,
         f"fit residual max={rep.max_residual:.3e}; "
         f"slope={extras['fit_slope']:.6f} offset={extras['fit_offset']:.1e} "
         f"(cited {extras['cited_slope']:.4f}, {extras['cited_offset']:.4f})")


def test_criterion_13_numerical_hygiene(emit):
    words = [
        make_ham_flow(1, ((0.3, 0.2, 0.4), (0.5, -0.3, 0.0),
                          (-0.4, 0.0, 0.0)), 0.8),
        make_ham_flow(2, ((0.8, 0.0, 0.5), (0.3, -0.6, 0.0),
                          (0.7, 0.0, 0.0)), 0.9),
    ]
    symp_ok = True
    detail = []
    for w in words:
        r1 = symplectic_residual(w)
        r2 = symplectic_residual(with_steps_scaled(w, 2))
        symp_ok &= r1 <= 1e-9 and r2 < r1
        detail.append(f"{r1:.1e}->{r2:.1e}")
    ladders = {
        "PROP_3_3": convergence_table("PROP_3_3", SEED, (4, 8, 16)),
        "STOKES_5_4": convergence_table("STOKES_5_4", SEED, (4, 8, 16)),
    }
    ladder_ok = all(t["monotone_nonincreasing"] for t in ladders.values())
    ok = symp_ok and ladder_ok
    emit(13, "symplectic residuals and quadrature ladders", ok,
         f"residual doubling {', '.join(detail)}; ladders "
         + "; ".join(f"{k} {['%.1e' % r for r in t['residuals']]}"
                     for k, t in ladders.items()))
