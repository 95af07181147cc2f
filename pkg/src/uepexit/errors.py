"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class ConstructionError(ValueError):
    """A finite parity-check matrix cannot be built from the requested parameters."""


class InfeasibleError(RuntimeError):
    """No degree distribution (or channel pair) satisfies the convergence constraint."""


class LpNumericalError(RuntimeError):
    """The simplex solver hit repeated near-zero pivots."""
