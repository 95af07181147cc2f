"""EXIT-chart design of repeat-accumulate LDPC codes with unequal error protection."""
from .errors import ConstructionError, DomainError, InfeasibleError, LpNumericalError
from .numerics import binary_entropy, binomial, inverse_binary_entropy
from .curves import Channel, ExitCurve, GridSpec, default_grid
from .code_model import DegreeDistribution, code_rate, validate_distribution

__version__ = "0.1.0"
