"""Exception hierarchy shared by every simulator module."""
from typing import Optional


class SimulationError(Exception):
    """Base class for all simulator errors."""


class ConfigInvalid(SimulationError, ValueError):
    """A configuration is structurally valid but violates a domain rule."""


# Graph

class TopologyError(SimulationError, ValueError):
    pass


class AsymmetricAdjacency(TopologyError):
    pass


class NegativeWeight(TopologyError):
    pass


class NonzeroDiagonal(TopologyError):
    pass


class DimensionMismatch(TopologyError):
    pass


class NonPositiveGain(SimulationError, ValueError):
    pass


class EigenSolverFailure(SimulationError, RuntimeError):
    pass


# Signals

class TableOutOfRange(SimulationError, ValueError):
    pass


class NoAnalyticRate(SimulationError, ValueError):
    pass


# Observers

class MissingLeaderMeasurement(SimulationError, ValueError):
    pass


class InformationPatternViolation(SimulationError, ValueError):
    """A follower was handed data it is not entitled to read."""


# Simulation

class NonFiniteState(SimulationError, RuntimeError):
    def __init__(self, t: float, message: Optional[str] = None):
        self.t = t
        super().__init__(message or f"Non-finite state at t={t}")


# Verification

class NotSymmetric(SimulationError, ValueError):
    pass


class NotPositiveDefinite(SimulationError, ValueError):
    pass


# Scenario files and outputs

class ParseError(SimulationError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")


class SchemaError(SimulationError, ValueError):
    def __init__(self, message: str, errors: Optional[list] = None):
        self.errors = errors or []
        super().__init__(message)


class UnknownChannel(SimulationError, KeyError):
    def __str__(self) -> str:
        return self.args[0] if self.args else "unknown channel"


class IoError(SimulationError, OSError):
    pass
