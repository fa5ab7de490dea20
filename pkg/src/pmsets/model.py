"""Value types shared across the package."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Absolute slack accepted on every membership margin.
MEMBERSHIP_TOL = 1e-12

SET_NAMES = (
    "quantum",
    "classical-avg",
    "classical-peak",
    "det-avg-1",
    "det-avg-2",
    "det-peak-1",
    "det-peak-2",
)


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class InfeasibleError(DomainError):
    """A correlation point cannot be realized under the given thresholds."""

    def __init__(self, message: str, deficit: float):
        super().__init__(message)
        self.deficit = deficit


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Correlations:
    """Output expectations ``(e1, e2)`` for the two preparations."""

    e1: float
    e2: float

    def __post_init__(self):
        for name in ("e1", "e2"):
            v = _finite(name, getattr(self, name))
            if abs(v) > 1.0:
                raise DomainError(f"{name} must lie in [-1, 1], got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def e_plus(self) -> float:
        return self.e1 + self.e2

    @property
    def e_minus(self) -> float:
        return self.e1 - self.e2

    def as_tuple(self) -> tuple[float, float]:
        return (self.e1, self.e2)

    def component(self, x: int) -> float:
        if x == 1:
            return self.e1
        if x == 2:
            return self.e2
        raise DomainError(f"input index must be 1 or 2, got {x!r}")


@dataclass(frozen=True)
class Thresholds:
    """Upper bounds on the mean of the trusted observable for each input.

    Also used for exact expectations when a construction saturates the
    bounds.
    """

    omega1: float
    omega2: float

    def __post_init__(self):
        for name in ("omega1", "omega2"):
            v = _finite(name, getattr(self, name))
            if v < 0.0:
                raise DomainError(f"{name} must be >= 0, got {v!r}")
            object.__setattr__(self, name, v)
        if self.omega1 + self.omega2 > 1.0 + MEMBERSHIP_TOL:
            raise DomainError(
                f"omega1 + omega2 must be <= 1, got {self.omega1 + self.omega2!r}")

    @property
    def total(self) -> float:
        return self.omega1 + self.omega2

    def swapped(self) -> "Thresholds":
        return Thresholds(self.omega2, self.omega1)


@dataclass(frozen=True)
class OverlapBound:
    """Lower bound ``gamma`` on the modulus of the overlap of the two states."""

    gamma: float

    def __post_init__(self):
        v = _finite("gamma", self.gamma)
        if not 0.0 <= v <= 1.0:
            raise DomainError(f"gamma must lie in [0, 1], got {v!r}")
        object.__setattr__(self, "gamma", v)


@dataclass(frozen=True)
class SetVerdict:
    set_name: str
    member: bool
    margin: float

    def __post_init__(self):
        if self.set_name not in SET_NAMES:
            raise DomainError(f"unknown set {self.set_name!r}")

    @classmethod
    def from_margin(cls, set_name: str, margin: float) -> "SetVerdict":
        margin = float(margin)
        return cls(set_name, margin >= -MEMBERSHIP_TOL, margin)

    def to_dict(self) -> dict:
        return {"set": self.set_name, "member": self.member, "margin": self.margin}


_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class QubitRealization:
    """Two qubit states and a two-outcome measurement.

    The states are ``cos(theta1)|0> + sin(theta1)|1>`` and
    ``cos(theta2)|0> - sin(theta2)|1>``.  The measurement observable is
    ``(p0 - p1) I + p2 m.sigma`` where the unit vector ``m`` makes angle
    ``theta_m`` with the bisector of the two Bloch vectors, measured towards
    their difference.
    """

    theta1: float
    theta2: float
    p0: float
    p1: float
    p2: float
    theta_m: float

    def __post_init__(self):
        for name in ("theta1", "theta2"):
            v = _finite(name, getattr(self, name))
            if not 0.0 <= v <= math.pi / 2:
                raise DomainError(f"{name} must lie in [0, pi/2], got {v!r}")
        weights = (self.p0, self.p1, self.p2)
        if min(weights) < 0.0:
            raise DomainError(f"measurement weights must be >= 0, got {weights}")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise DomainError(f"measurement weights must sum to 1, got {sum(weights)!r}")
        tm = _finite("theta_m", self.theta_m)
        if not 0.0 <= tm < 2 * math.pi:
            raise DomainError(f"theta_m must lie in [0, 2pi), got {tm!r}")

    @property
    def expectations(self) -> Thresholds:
        """Mean of ``diag(0, 1)`` in each state."""
        return Thresholds(math.sin(self.theta1) ** 2, math.sin(self.theta2) ** 2)

    def states(self) -> tuple[np.ndarray, np.ndarray]:
        phi1 = np.array([math.cos(self.theta1), math.sin(self.theta1)], dtype=complex)
        phi2 = np.array([math.cos(self.theta2), -math.sin(self.theta2)], dtype=complex)
        return phi1, phi2

    def direction(self) -> np.ndarray:
        # Bloch vectors sit in the xz-plane at polar angles 2*theta1 and
        # -2*theta2; b is the polar angle of their bisector.
        b = self.theta1 - self.theta2
        bisector = np.array([math.sin(b), 0.0, math.cos(b)])
        difference = np.array([math.cos(b), 0.0, -math.sin(b)])
        return math.cos(self.theta_m) * bisector + math.sin(self.theta_m) * difference

    def observable(self) -> np.ndarray:
        mx, my, mz = self.direction()
        return ((self.p0 - self.p1) * np.eye(2, dtype=complex)
                + self.p2 * (mx * _PAULI_X + my * _PAULI_Y + mz * _PAULI_Z))

    def correlations(self) -> Correlations:
        """Evaluate ``<phi_x|M|phi_x>`` by explicit operator algebra."""
        m = self.observable()
        e = [float(np.real(np.vdot(phi, m @ phi))) for phi in self.states()]
        return Correlations(*(min(1.0, max(-1.0, v)) for v in e))
