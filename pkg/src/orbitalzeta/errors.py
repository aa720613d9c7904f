"""Exception types shared across the package."""


class OrbitalZetaError(ValueError):
    """Base class for invalid input to any computation in this package."""


class SquareDeltaError(OrbitalZetaError):
    """The discriminant is a square in the base field (excluded throughout)."""


class NotSquareMod4Error(OrbitalZetaError):
    """The discriminant is not congruent to a square modulo 4."""


class GuardError(OrbitalZetaError):
    """A desk-scale size guard was exceeded."""


class InconclusiveError(RuntimeError):
    """A brute-force oracle failed to stabilise within its search bound."""
