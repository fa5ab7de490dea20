"""Coherent-state encodings with homodyne or click detection.

Each scheme maps its physical parameters to the correlations it produces and
to the thresholds certified for its source.  Thresholds default to the
non-vacuum weight ``1 - exp(-|alpha|^2)`` of the emitted coherent states; the
mean photon number ``|alpha|^2`` is available for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from .model import SET_NAMES, Correlations, DomainError, SetVerdict, Thresholds
from .sets import all_memberships, membership

SCHEMES = ("BPSK", "2ASK", "OOK")
THRESHOLD_MODES = ("non-vacuum", "photon-number")

BPSK_XI_MAX = math.sqrt(math.log(2.0))

# Bisection tolerance on the scanned parameter.
FLIP_TOL = 1e-6


def erf(x: float) -> float:
    return math.erf(x)


def _weight(amplitude_sq: float, mode: str) -> float:
    if mode == "non-vacuum":
        return -math.expm1(-amplitude_sq)
    if mode == "photon-number":
        return amplitude_sq
    raise DomainError(f"threshold mode must be one of {THRESHOLD_MODES}, got {mode!r}")


def xi_from_omega(omega1: float) -> float:
    """Amplitude whose non-vacuum weight equals ``omega1``."""
    if not 0.0 <= omega1 < 1.0:
        raise DomainError(f"omega1 must lie in [0, 1), got {omega1!r}")
    return math.sqrt(-math.log1p(-omega1))


@dataclass(frozen=True)
class SchemeParams:
    scheme: str
    xi: float
    epsilon: float = 0.0
    eta: float = 1.0

    def __post_init__(self):
        name = self.scheme.upper()
        if name not in SCHEMES:
            raise DomainError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        object.__setattr__(self, "scheme", name)
        for field in ("xi", "epsilon"):
            v = float(getattr(self, field))
            if not (math.isfinite(v) and v >= 0.0):
                raise DomainError(f"{field} must be a finite value >= 0, got {v!r}")
        if not 0.0 < self.eta <= 1.0:
            raise DomainError(f"eta must lie in (0, 1], got {self.eta!r}")

    def to_dict(self) -> dict:
        return {"scheme": self.scheme, "xi": self.xi, "epsilon": self.epsilon,
                "eta": self.eta}


@dataclass(frozen=True)
class SchemePoint:
    e: Correlations
    w: Thresholds
    params: SchemeParams

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "e1": self.e.e1,
            "e2": self.e.e2,
            "omega1": self.w.omega1,
            "omega2": self.w.omega2,
        }


def bpsk_point(xi: float, thresholds: str = "non-vacuum") -> SchemePoint:
    """Phase-flipped coherent states ``|+xi>``, ``|-xi>`` read out by the sign
    of a homodyne quadrature."""
    params = SchemeParams("BPSK", xi)
    omega = _weight(xi * xi, thresholds)
    if omega > 0.5 + 1e-12:
        raise DomainError(
            f"BPSK thresholds exceed 0.5 for xi={xi!r} ({thresholds} mode); "
            f"non-vacuum mode allows xi <= sqrt(ln 2) = {BPSK_XI_MAX:.6f}")
    omega = min(omega, 0.5)
    e = erf(math.sqrt(2.0) * xi)
    return SchemePoint(Correlations(e, -e), Thresholds(omega, omega), params)


def ask2_point(xi: float, epsilon: float, thresholds: str = "non-vacuum") -> SchemePoint:
    """Amplitudes ``xi + epsilon`` and ``xi - epsilon`` with click detection.

    The trusted observable measures the distance to the reference state
    ``|xi>``, so both inputs share the threshold set by ``epsilon``.
    """
    params = SchemeParams("2ASK", xi, epsilon)
    omega = _weight(epsilon * epsilon, thresholds)
    if omega > 0.5 + 1e-12:
        raise DomainError(f"2ASK thresholds exceed 0.5 for epsilon={epsilon!r}")
    omega = min(omega, 0.5)
    e1 = 1.0 - 2.0 * math.exp(-(xi + epsilon) ** 2)
    e2 = 1.0 - 2.0 * math.exp(-(xi - epsilon) ** 2)
    return SchemePoint(Correlations(e1, e2), Thresholds(omega, omega), params)


def ook_point(xi: float, eta: float = 1.0, thresholds: str = "non-vacuum") -> SchemePoint:
    """Coherent state ``|xi>`` for input 1, vacuum for input 2, detected with
    efficiency ``eta``."""
    params = SchemeParams("OOK", xi, eta=eta)
    omega1 = _weight(xi * xi, thresholds)
    if omega1 > 1.0:
        raise DomainError(f"OOK threshold exceeds 1 for xi={xi!r} ({thresholds} mode)")
    e1 = 1.0 - 2.0 * math.exp(-xi * xi * eta)
    return SchemePoint(Correlations(e1, -1.0), Thresholds(omega1, 0.0), params)


def point(params: SchemeParams, thresholds: str = "non-vacuum") -> SchemePoint:
    if params.scheme == "BPSK":
        return bpsk_point(params.xi, thresholds)
    if params.scheme == "2ASK":
        return ask2_point(params.xi, params.epsilon, thresholds)
    return ook_point(params.xi, params.eta, thresholds)


def classify(p: SchemePoint) -> list[SetVerdict]:
    """Verdicts for all seven sets at the point's own thresholds."""
    return list(all_memberships(p.e, p.w))


# ---------------------------------------------------------------------------
# Parameter scans

SCAN_PARAMS = {
    "BPSK": ("xi",),
    "2ASK": ("xi", "epsilon"),
    "OOK": ("xi", "eta", "omega1"),
}


@dataclass(frozen=True)
class ScanRow:
    value: float
    point: SchemePoint
    verdicts: tuple[SetVerdict, ...]


@dataclass(frozen=True)
class Flip:
    set_name: str
    value: float
    member_below: bool

    def to_dict(self) -> dict:
        return {"set": self.set_name, "value": self.value,
                "member_below": self.member_below}


@dataclass(frozen=True)
class ScanResult:
    scheme: str
    param: str
    rows: tuple[ScanRow, ...]
    flips: tuple[Flip, ...]

    def flips_for(self, set_name: str) -> list[float]:
        return [f.value for f in self.flips if f.set_name == set_name]


def _builder(scheme: str, param: str, fixed: dict, thresholds: str):
    scheme = scheme.upper()
    if scheme not in SCAN_PARAMS:
        raise DomainError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    if param not in SCAN_PARAMS[scheme]:
        raise DomainError(
            f"{scheme} scans one of {SCAN_PARAMS[scheme]}, got {param!r}")

    def build(value: float) -> SchemePoint:
        kw = dict(fixed)
        if param == "omega1":
            kw["xi"] = xi_from_omega(value)
        else:
            kw[param] = value
        if scheme == "BPSK":
            return bpsk_point(kw["xi"], thresholds)
        if scheme == "2ASK":
            return ask2_point(kw.get("xi", 0.0), kw.get("epsilon", 0.0), thresholds)
        return ook_point(kw.get("xi", 0.0), kw.get("eta", 1.0), thresholds)
    return build


def _bisect_flip(build, name: str, lo: float, hi: float, member_lo: bool) -> float:
    while hi - lo > FLIP_TOL:
        mid = 0.5 * (lo + hi)
        p = build(mid)
        if membership(name, p.e, p.w).member == member_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scan(scheme: str, param: str, start: float, stop: float, steps: int,
         fixed: dict | None = None, thresholds: str = "non-vacuum") -> ScanResult:
    """Uniform sweep of one scheme parameter with verdict-flip locations.

    ``fixed`` supplies the remaining parameters (e.g. ``{"omega1": 0.51}`` or
    ``{"xi": 0.8}``).  Each flip between neighbouring rows is refined by
    bisection to ``FLIP_TOL``.
    """
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps!r}")
    if not stop > start:
        raise DomainError(f"scan range must have positive length, got [{start}, {stop}]")
    fixed = dict(fixed or {})
    if "omega1" in fixed:
        fixed["xi"] = xi_from_omega(fixed.pop("omega1"))
    build = _builder(scheme, param, fixed, thresholds)
    values = [start + (stop - start) * i / (steps - 1) for i in range(steps)]
    rows = []
    for v in values:
        p = build(v)
        rows.append(ScanRow(v, p, tuple(classify(p))))
    flips = []
    for a, b in zip(rows, rows[1:]):
        for va, vb in zip(a.verdicts, b.verdicts):
            if va.member != vb.member:
                at = _bisect_flip(build, va.set_name, a.value, b.value, va.member)
                flips.append(Flip(va.set_name, at, va.member))
    return ScanResult(scheme.upper(), param, tuple(rows), tuple(flips))

