"""Numerical verification of flux- and Calabi-type invariants on the disk.

The package represents area-preserving maps of the unit disk as words in
closed-form twists and Runge-Kutta Hamiltonian flows, computes the classical
invariants (flux, the radial quasi-morphism tau, the Calabi integral, the
potential-field functionals kappa and tau'), and checks the cocycle and
extension identities relating them as machine-verifiable residuals.
"""

from .errors import (
    AccuracyNotReached, ConfigError, DomainError, FluxlabError,
    IntegrationFailure, InvalidSpec, NotACocycle, NotBasic, NotConnection,
    StrategyMismatch, UnwrapAmbiguity,
)
from .geometry import (
    DEFAULT_SPEC, ConvergenceRecord, Point, QuadratureSpec, QuadResult,
    convergence_study, disk_integral, line_integral,
)
from .maps import (
    IDENTITY_WORD, HamiltonianPrimitive, MapWord, TwistPrimitive,
    classify_word, compose_words, inverse_word, make_ham_flow, make_rotation,
    make_twist, symplectic_residual, with_steps_scaled,
)
from .circle import CircleLift, boundary_restriction, chi, lift_compose
from .cochain import (
    CONVENTIONS, CentralExtension, Coefficients, GroupCochain, GroupOps,
    REAL_COEFFS, canonical_connection, coboundary, connection_curvature_basic,
    cyclic_coeffs, extension_from_cocycle, verify_basic,
)
from .invariants import (
    InvariantValue, K_field, K_field_many, calabi, calabi_tau0, flux, ilm_C,
    kappa, stokes_gap, tau, tau_prime,
)
from .identities import (
    ALL_IDENTITIES, IdentityReport, check_identity, convergence_table,
)
from .wordgen import random_word, word_digest, word_from_spec, word_spec

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
