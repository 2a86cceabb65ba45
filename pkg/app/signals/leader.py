"""
Leader input profiles u0(t).

Followers only ever see u0 through a NeighborView; the analytic rate is
read by the verification oracles alone.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Tuple
import logging
import math

import numpy as np

from app.errors import NoAnalyticRate, TableOutOfRange

logger = logging.getLogger(__name__)


def _check_time(t: float) -> None:
    if t < 0:
        raise ValueError(f"leader signal evaluated at negative time {t}")


class LeaderSignal(ABC):
    """Base class for leader input profiles."""

    kind: str = ""

    @abstractmethod
    def value(self, t: float) -> float:
        """u0(t)."""

    @abstractmethod
    def rate(self, t: float) -> float:
        """Symbolic derivative du0/dt."""

    @property
    def rate_bound(self) -> Optional[float]:
        """sup |du0/dt| when known. Test metadata only, never read by followers."""
        return None

    @property
    def is_analytic(self) -> bool:
        return True


@dataclass(frozen=True)
class Sinusoid(LeaderSignal):
    amplitude: float
    angular_frequency: float
    phase: float = 0.0
    kind = "sinusoid"

    def value(self, t: float) -> float:
        return self.amplitude * math.sin(self.angular_frequency * t + self.phase)

    def rate(self, t: float) -> float:
        return self.amplitude * self.angular_frequency * math.cos(self.angular_frequency * t + self.phase)

    @property
    def rate_bound(self) -> Optional[float]:
        return abs(self.amplitude * self.angular_frequency)

    @property
    def third_derivative_bound(self) -> float:
        return abs(self.amplitude) * abs(self.angular_frequency) ** 3


@dataclass(frozen=True)
class Constant(LeaderSignal):
    level: float
    kind = "constant"

    def value(self, t: float) -> float:
        return self.level

    def rate(self, t: float) -> float:
        return 0.0

    @property
    def rate_bound(self) -> Optional[float]:
        return 0.0

    @property
    def third_derivative_bound(self) -> float:
        return 0.0


@dataclass(frozen=True)
class DecayingToConstant(LeaderSignal):
    """u0(t) = constant + transient_amplitude * exp(-decay_rate * t)."""
    constant: float
    transient_amplitude: float
    decay_rate: float
    kind = "decaying"

    def __post_init__(self):
        if self.decay_rate < 0:
            raise ValueError("decay_rate must be non-negative")

    def value(self, t: float) -> float:
        return self.constant + self.transient_amplitude * math.exp(-self.decay_rate * t)

    def rate(self, t: float) -> float:
        return -self.transient_amplitude * self.decay_rate * math.exp(-self.decay_rate * t)

    @property
    def rate_bound(self) -> Optional[float]:
        return abs(self.transient_amplitude * self.decay_rate)

    @property
    def third_derivative_bound(self) -> float:
        return abs(self.transient_amplitude) * self.decay_rate ** 3


@dataclass(frozen=True)
class Polynomial(LeaderSignal):
    """u0(t) = c0 + c1 * t (degree at most one)."""
    coefficients: Tuple[float, ...]
    kind = "polynomial"

    def __post_init__(self):
        if not 1 <= len(self.coefficients) <= 2:
            raise ValueError("polynomial leader input supports degree 0 or 1")

    def value(self, t: float) -> float:
        c0 = self.coefficients[0]
        c1 = self.coefficients[1] if len(self.coefficients) > 1 else 0.0
        return c0 + c1 * t

    def rate(self, t: float) -> float:
        return self.coefficients[1] if len(self.coefficients) > 1 else 0.0

    @property
    def rate_bound(self) -> Optional[float]:
        return abs(self.rate(0.0))

    @property
    def third_derivative_bound(self) -> float:
        return 0.0


@dataclass(frozen=True)
class SampledTable(LeaderSignal):
    """
    Piecewise-linear profile through (times, values).

    Beyond the last knot the last value is held and the signal is flagged
    (`held_beyond_range`); with strict=True it raises TableOutOfRange.
    """
    times: Tuple[float, ...]
    values: Tuple[float, ...]
    strict: bool = False
    kind = "table"

    def __post_init__(self):
        if len(self.times) != len(self.values) or len(self.times) < 2:
            raise ValueError("table needs at least two knots and equal-length times/values")
        if self.times[0] != 0.0:
            raise ValueError("table must start at t=0")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("table times must be strictly increasing")
        object.__setattr__(self, "_flags", {"held_beyond_range": False})

    @property
    def held_beyond_range(self) -> bool:
        return self._flags["held_beyond_range"]

    @property
    def is_analytic(self) -> bool:
        return False

    def value(self, t: float) -> float:
        if t > self.times[-1]:
            if self.strict:
                raise TableOutOfRange(f"t={t} beyond last knot {self.times[-1]}")
            if not self._flags["held_beyond_range"]:
                logger.warning(f"Leader table evaluated beyond last knot {self.times[-1]}; holding last value")
                self._flags["held_beyond_range"] = True
        return float(np.interp(t, self.times, self.values))

    def rate(self, t: float) -> float:
        raise NoAnalyticRate("sampled leader table has no analytic rate")


def leader_input(s: LeaderSignal, t: float) -> float:
    _check_time(t)
    return s.value(t)


def leader_input_rate(s: LeaderSignal, t: float) -> float:
    _check_time(t)
    if not s.is_analytic:
        raise NoAnalyticRate(f"{s.kind} leader signal has no analytic rate")
    return s.rate(t)
