"""Exception hierarchy shared across the package."""


class FluxlabError(Exception):
    """Base class for all library errors."""


class DomainError(FluxlabError):
    """An operation was called on a word outside its required subgroup.

    The violated membership flag (e.g. ``"in_G"``) is stored in
    ``membership``.
    """

    def __init__(self, membership, message=None):
        self.membership = membership
        super().__init__(message or f"word does not satisfy {membership}")


class InvalidSpec(FluxlabError):
    """A primitive specification violates its type invariants."""


class IntegrationFailure(FluxlabError):
    """A Hamiltonian flow produced non-finite state."""


class AccuracyNotReached(FluxlabError):
    """A quadrature error estimate stayed above target after refinement."""

    def __init__(self, value, est_error, target):
        self.value = value
        self.est_error = est_error
        self.target = target
        super().__init__(
            f"estimated error {est_error:.3e} above target {target:.3e}"
        )


class UnwrapAmbiguity(FluxlabError):
    """Boundary samples too coarse to unwrap a circle lift reliably."""


class NotACocycle(FluxlabError):
    """A candidate 2-cocycle fails the cocycle identity."""


class NotBasic(FluxlabError):
    """A curvature depends on the choice of lift representatives."""


class NotConnection(FluxlabError):
    """A 1-cochain fails the connection property on fiber translates."""


class StrategyMismatch(FluxlabError):
    """Chord and boundary-arc evaluations of the 2-cocycle disagree."""


class ConfigError(FluxlabError):
    """Invalid suite or word-library configuration."""
