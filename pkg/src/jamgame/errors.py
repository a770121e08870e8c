"""Exception types shared across the package."""


class JamGameError(Exception):
    """Base class for all errors raised by this package."""


class NonPositiveParameter(JamGameError):
    """A channel parameter that must be strictly positive is not."""


class BudgetOutOfRange(JamGameError):
    """Average jamming power outside [0, J_Max]."""


class ZeroGrid(JamGameError):
    """Strategy grid size below 1."""


class PowerOutOfRange(JamGameError):
    """A jamming power outside [0, J_Max]."""


class DimensionMismatch(JamGameError):
    """Vector or matrix dimensions do not agree."""


class InvalidStrategy(JamGameError):
    """Probability vector fails the mixed-strategy invariants."""


class UnsupportedGrid(JamGameError):
    """Dominance reduction requires uniform power grids."""


class InfeasibleSemiUniform(JamGameError):
    """Semi-uniform pmf would need a negative atom at zero power."""


class IndexOutOfRange(JamGameError):
    """Grid index m outside 0..N_T-1."""


class NotOnGrid(JamGameError):
    """Budget below threshold that matches no closed-form grid power."""


class NumericalBreakdown(JamGameError):
    """LP pivot fell below tolerance with no alternative."""


class Infeasible(JamGameError):
    """Constrained game has an empty strategy polytope."""


class QuadratureNonConvergence(JamGameError):
    """Adaptive quadrature did not reach tolerance within its budget."""


class DomainTooExtreme(JamGameError):
    """Parameters outside the guarded domain of the continuous-limit ops."""


class ZeroPackets(JamGameError):
    """Simulation requested with no packets."""
