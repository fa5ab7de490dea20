"""Analytic description of the correlation sets of the two-preparation,
one-binary-measurement scenario with bounded observable means.

All regions live in the square ``[-1, 1]^2`` of ``(E1, E2)`` values.  The
quantum set is ``g(E) >= h(omega)``; the classical and input-deterministic
sets are polytopes or convex regions bounded by closed-form curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .model import (
    MEMBERSHIP_TOL,
    SET_NAMES,
    Correlations,
    DomainError,
    InfeasibleError,
    OverlapBound,
    QubitRealization,
    SetVerdict,
    Thresholds,
)

__all__ = [
    "g_value",
    "h_value",
    "h_clamped",
    "overlap_lower_bound",
    "ellipse_point",
    "quantum_membership",
    "tsirelson_max_eminus",
    "guessing_probability",
    "classical_avg_membership",
    "classical_peak_membership",
    "det_avg_interval",
    "det_avg_membership",
    "det_peak_membership",
    "membership",
    "all_memberships",
    "BoundaryCurve",
    "boundary_curve",
    "realize_point",
]


def g_value(e: Correlations) -> float:
    """Largest state overlap compatible with observing ``e``."""
    e1, e2 = e.e1, e.e2
    return 0.5 * (math.sqrt(1 + e1) * math.sqrt(1 + e2)
                  + math.sqrt(1 - e1) * math.sqrt(1 - e2))


def h_value(h1: float, h2: float) -> float:
    """Smallest overlap of two pure states with observable means ``h1, h2``."""
    for name, v in (("h1", h1), ("h2", h2)):
        if not v >= 0.0:
            raise DomainError(f"{name} must be >= 0, got {v!r}")
    if h1 + h2 > 1.0 + MEMBERSHIP_TOL:
        raise DomainError(f"h1 + h2 must be <= 1, got h1={h1!r}, h2={h2!r}")
    h1, h2 = min(h1, 1.0), min(h2, 1.0)
    v = math.sqrt(1 - h1) * math.sqrt(1 - h2) - math.sqrt(h1) * math.sqrt(h2)
    return max(v, 0.0)


def h_clamped(h1: float, h2: float) -> float:
    """``h_value`` extended by 0 outside the simplex ``h1 + h2 <= 1``."""
    for name, v in (("h1", h1), ("h2", h2)):
        if not v >= 0.0:
            raise DomainError(f"{name} must be >= 0, got {v!r}")
    if h1 + h2 > 1.0 or h1 > 1.0 or h2 > 1.0:
        return 0.0
    return h_value(h1, h2)


def overlap_lower_bound(w: Thresholds) -> OverlapBound:
    return OverlapBound(h_value(w.omega1, w.omega2))


def _ellipse(gamma: float, theta: float) -> tuple[float, float]:
    # With gamma = cos(d) the ellipse point is (cos(theta - d), cos(theta + d)).
    s = math.sqrt(max(0.0, 1.0 - gamma * gamma))
    c, t = math.cos(theta), math.sin(theta)
    return (max(-1.0, min(1.0, gamma * c + s * t)),
            max(-1.0, min(1.0, gamma * c - s * t)))


def ellipse_point(gamma: OverlapBound, theta_m: float) -> Correlations:
    """Point of the projective-measurement ellipse at angle ``theta_m``.

    ``E+ = 2 gamma cos(theta_m)`` and ``E- = 2 sqrt(1 - gamma^2) sin(theta_m)``.
    """
    g = gamma.gamma
    if g <= 0.0 or g >= 1.0:
        raise DomainError(
            f"ellipse degenerates for gamma={g!r}; handle gamma in {{0, 1}} separately")
    return Correlations(*_ellipse(g, theta_m))


def quantum_membership(e: Correlations, w: Thresholds) -> SetVerdict:
    """Membership in the quantum set.

    The pure-state, mixed, max-average and max-peak quantum sets coincide,
    so one verdict covers all of them.
    """
    return SetVerdict.from_margin("quantum", g_value(e) - h_value(w.omega1, w.omega2))


def tsirelson_max_eminus(w: Thresholds) -> float:
    """Maximum of ``|E1 - E2|`` over the quantum set."""
    a, b = w.omega1, w.omega2
    return 2 * (math.sqrt(a) * math.sqrt(1 - b) + math.sqrt(1 - a) * math.sqrt(b))


def guessing_probability(e: Correlations) -> float:
    return 0.5 * (1 + 0.5 * abs(e.e1 - e.e2))


def classical_avg_membership(e: Correlations, w: Thresholds) -> SetVerdict:
    bound = 2 * (w.omega1 + w.omega2)
    return SetVerdict.from_margin("classical-avg", bound - abs(e.e_minus))


def _step(z: float) -> float:
    return 1.0 if z >= 1.0 - MEMBERSHIP_TOL else 0.0


def classical_peak_membership(e: Correlations, w: Thresholds) -> SetVerdict:
    bound = 2 * _step(w.omega1 + w.omega2)
    return SetVerdict.from_margin("classical-peak", bound - abs(e.e_minus))


def _check_input(x: int) -> int:
    if x not in (1, 2):
        raise DomainError(f"input index must be 1 or 2, got {x!r}")
    return x


def det_avg_interval(ex: float, w: Thresholds) -> tuple[float, float]:
    """Allowed range of the complementary output when input ``x`` has mean ``ex``.

    Splits the shared randomness into the branches where the deterministic
    output is +1 (weight ``(1 + ex)/2``) and -1, and spends the whole budget on
    the branch that moves the complementary output.  A branch of weight zero
    contributes nothing, which is the continuous limit of the formula.
    """
    a, b = w.omega1, w.omega2
    up, down = 1.0 + ex, 1.0 - ex
    # (1 + ex) h^2 - 1 written as ex h^2 - (1 - h^2): exact when h = 1.
    lo, hi = -1.0, 1.0
    if up > 0.0:
        q = h_clamped(2 * a / up, 2 * b / up) ** 2
        lo = ex * q - (1.0 - q)
    if down > 0.0:
        q = h_clamped(2 * a / down, 2 * b / down) ** 2
        hi = ex * q + (1.0 - q)
    return lo, hi


def det_avg_membership(e: Correlations, x: int, w: Thresholds) -> SetVerdict:
    x = _check_input(x)
    ex, ebar = e.component(x), e.component(3 - x)
    lo, hi = det_avg_interval(ex, w)
    return SetVerdict.from_margin(f"det-avg-{x}", min(ebar - lo, hi - ebar))


def det_peak_membership(e: Correlations, x: int, w: Thresholds) -> SetVerdict:
    x = _check_input(x)
    ex, ebar = e.component(x), e.component(3 - x)
    h2 = h_value(w.omega1, w.omega2) ** 2
    return SetVerdict.from_margin(f"det-peak-{x}", (1 - h2) - abs(ex * h2 - ebar))


def membership(set_name: str, e: Correlations, w: Thresholds) -> SetVerdict:
    """Dispatch on one of the seven set names."""
    if set_name == "quantum":
        return quantum_membership(e, w)
    if set_name == "classical-avg":
        return classical_avg_membership(e, w)
    if set_name == "classical-peak":
        return classical_peak_membership(e, w)
    if set_name.startswith("det-avg-"):
        return det_avg_membership(e, int(set_name[-1]), w)
    if set_name.startswith("det-peak-"):
        return det_peak_membership(e, int(set_name[-1]), w)
    raise DomainError(f"unknown set {set_name!r}; expected one of {SET_NAMES}")


def all_memberships(e: Correlations, w: Thresholds) -> tuple[SetVerdict, ...]:
    """Verdicts for every set in ``SET_NAMES`` order, sharing intermediate values."""
    h = h_value(w.omega1, w.omega2)
    h2 = h ** 2
    em = abs(e.e1 - e.e2)
    s = w.omega1 + w.omega2
    margins = [g_value(e) - h, 2 * s - em, 2 * _step(s) - em]
    for ex, ebar in ((e.e1, e.e2), (e.e2, e.e1)):
        lo, hi = det_avg_interval(ex, w)
        margins.append(min(ebar - lo, hi - ebar))
    for ex, ebar in ((e.e1, e.e2), (e.e2, e.e1)):
        margins.append((1 - h2) - abs(ex * h2 - ebar))
    return tuple(SetVerdict.from_margin(n, m) for n, m in zip(SET_NAMES, margins))


# ---------------------------------------------------------------------------
# Boundary curves

Point = tuple[float, float]
Piece = Callable[[np.ndarray], np.ndarray]  # t in [0, 1] -> (len(t), 2)


@dataclass(frozen=True)
class BoundaryCurve:
    set_name: str
    thresholds: Thresholds
    points: tuple[Correlations, ...]
    degenerate: bool = False

    def as_array(self) -> np.ndarray:
        return np.array([p.as_tuple() for p in self.points])


def _segment(p: Point, q: Point) -> Piece:
    p_, q_ = np.asarray(p, float), np.asarray(q, float)
    return lambda t: p_ + np.outer(t, q_ - p_)


def _arc(d: float, start: float, stop: float) -> Piece:
    """Ellipse ``(cos(th - d), cos(th + d))`` for ``th`` from ``start`` to ``stop``."""
    def piece(t):
        th = start + (stop - start) * np.asarray(t, float)
        return np.column_stack([np.cos(th - d), np.cos(th + d)])
    return piece


def _graph(fn: Callable[[float], float], start: float, stop: float) -> Piece:
    """Curve ``(u, fn(u))`` for ``u`` running from ``start`` to ``stop``."""
    def piece(t):
        u = start + (stop - start) * np.asarray(t, float)
        v = np.array([fn(float(ui)) for ui in u])
        return np.column_stack([u, v])
    return piece


def _length(piece: Piece) -> float:
    pts = piece(np.linspace(0.0, 1.0, 129))
    return float(np.sum(np.hypot(*np.diff(pts, axis=0).T)))


def _sample_chain(pieces: Sequence[Piece], n: int) -> list[Point]:
    """Sample a closed chain of pieces with exactly ``n`` points.

    Every piece contributes its start point; the remaining budget is spread
    over piece interiors in proportion to length.
    """
    lengths = [_length(p) for p in pieces]
    kept = [(p, L) for p, L in zip(pieces, lengths) if L > 1e-14]
    if n < len(kept):
        raise DomainError(f"need at least {len(kept)} samples for this boundary, got {n}")
    total = sum(L for _, L in kept)
    extra = n - len(kept)
    quota = [extra * L / total for _, L in kept]
    counts = [int(math.floor(q)) for q in quota]
    order = sorted(range(len(kept)), key=lambda i: (counts[i] - quota[i], i))
    for i in order[: extra - sum(counts)]:
        counts[i] += 1
    out: list[Point] = []
    for (piece, _), k in zip(kept, counts):
        t = np.arange(k + 1) / (k + 1)
        out.extend((float(a), float(b)) for a, b in piece(t))
    return out


def _vertices_chain(vertices: Sequence[Point]) -> list[Piece]:
    dedup: list[Point] = []
    for v in vertices:
        if not dedup or math.dist(v, dedup[-1]) > 1e-14:
            dedup.append(v)
    while len(dedup) > 1 and math.dist(dedup[0], dedup[-1]) <= 1e-14:
        dedup.pop()
    return [_segment(dedup[i], dedup[(i + 1) % len(dedup)]) for i in range(len(dedup))]


_BOX = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]
_DIAGONAL = [(1.0, 1.0), (-1.0, -1.0)]


def _quantum_pieces(w: Thresholds) -> list[Piece] | None:
    gamma = h_value(w.omega1, w.omega2)
    if gamma >= 1.0:
        return None
    if gamma <= 0.0:
        return _vertices_chain(_BOX)
    # Half the angle between the Bloch vectors; avoids acos near gamma = 1.
    d = math.asin(math.sqrt(w.omega1)) + math.asin(math.sqrt(w.omega2))
    c = math.cos(2 * d)
    tp = math.pi
    # Counterclockwise from (1, 1) means decreasing ellipse angle.
    return [
        _segment((1.0, 1.0), (c, 1.0)),
        _arc(d, 2 * tp - d, 1.5 * tp),
        _arc(d, 1.5 * tp, tp + d),
        _segment((-1.0, -c), (-1.0, -1.0)),
        _segment((-1.0, -1.0), (-c, -1.0)),
        _arc(d, tp - d, 0.5 * tp),
        _arc(d, 0.5 * tp, d),
        _segment((1.0, c), (1.0, 1.0)),
    ]


def _det_avg_pieces(w: Thresholds, x: int) -> list[Piece]:
    s = w.total
    h2 = h_value(w.omega1, w.omega2) ** 2
    upper = lambda u: det_avg_interval(u, w)[1]
    lower = lambda u: det_avg_interval(u, w)[0]
    k_hi, k_lo = 1.0 - 2 * s, 2 * s - 1.0
    pieces = [
        _segment((1.0, 1.0), (k_hi, 1.0)),
        _graph(upper, k_hi, -1.0),
        _segment((-1.0, 1.0 - 2 * h2), (-1.0, -1.0)),
        _segment((-1.0, -1.0), (k_lo, -1.0)),
        _graph(lower, k_lo, 1.0),
        _segment((1.0, 2 * h2 - 1.0), (1.0, 1.0)),
    ]
    if x == 1:
        return pieces
    # Swapping the axes reverses orientation, so walk the pieces backwards;
    # the last piece ends at (1, 1), which keeps the start point in place.
    return [lambda t, p=piece: p(1.0 - np.asarray(t, float))[:, ::-1]
            for piece in reversed(pieces)]


def _pieces(set_name: str, w: Thresholds) -> list[Piece] | None:
    """Counterclockwise pieces starting at (1, 1); ``None`` for the diagonal."""
    if set_name == "quantum":
        return _quantum_pieces(w)
    if set_name == "classical-avg":
        c = 1.0 - 2 * min(w.total, 1.0)
        if c >= 1.0:
            return None
        return _vertices_chain([(1.0, 1.0), (c, 1.0), (-1.0, -c), (-1.0, -1.0),
                                (-c, -1.0), (1.0, c)])
    if set_name == "classical-peak":
        return _vertices_chain(_BOX) if _step(w.total) else None
    if set_name in ("det-peak-1", "det-peak-2"):
        h2 = h_value(w.omega1, w.omega2) ** 2
        if h2 >= 1.0:
            return None
        lo = 2 * h2 - 1.0
        if set_name == "det-peak-1":
            verts = [(1.0, 1.0), (-1.0, -lo), (-1.0, -1.0), (1.0, lo)]
        else:
            verts = [(1.0, 1.0), (lo, 1.0), (-1.0, -1.0), (-lo, -1.0)]
        return _vertices_chain(verts)
    if set_name in ("det-avg-1", "det-avg-2"):
        if w.total <= 0.0:
            return None
        return _det_avg_pieces(w, int(set_name[-1]))
    raise DomainError(f"unknown set {set_name!r}; expected one of {SET_NAMES}")


def boundary_curve(set_name: str, w: Thresholds, n: int) -> BoundaryCurve:
    """Counterclockwise polygonal boundary of a set, starting at ``(1, 1)``.

    Curved sets need ``n >= 8``; polytopes accept any ``n`` no smaller than
    their vertex count and return the bare vertices at equality.  Sets that
    collapse to the diagonal are returned as the two segment endpoints with
    ``degenerate=True``.
    """
    pieces = _pieces(set_name, w)
    if pieces is None:
        pts = _DIAGONAL
        return BoundaryCurve(set_name, w, tuple(Correlations(*p) for p in pts), True)
    if set_name in ("quantum", "det-avg-1", "det-avg-2") and n < 8:
        raise DomainError(f"curved boundaries need n >= 8, got {n}")
    pts = _sample_chain(pieces, n)
    clip = lambda v: max(-1.0, min(1.0, v))
    return BoundaryCurve(set_name, w, tuple(Correlations(clip(a), clip(b)) for a, b in pts))


# ---------------------------------------------------------------------------
# Explicit realizations

_BISECT_TOL = 1e-10
_INVPHI = (math.sqrt(5) - 1) / 2


def _golden_max(fn: Callable[[float], float], lo: float, hi: float) -> float:
    a, b = lo, hi
    c, d = b - _INVPHI * (b - a), a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > _BISECT_TOL:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)


def realize_point(e: Correlations, w: Thresholds) -> QubitRealization:
    """Qubit states saturating ``w`` and a measurement reproducing ``e``.

    ``e`` is written as ``p0 (1, 1) + p1 (-1, -1) + p2 P`` with ``P`` on the
    measurement ellipse.  Among the valid decompositions the one with the
    smallest ``p2`` is returned.

    Points accepted only through the membership tolerance (``g - h`` within
    ``-1e-12`` of zero from below) are reproduced up to the distance that
    tolerance admits, which is about ``1e-6`` near the diagonal.
    """
    verdict = quantum_membership(e, w)
    if not verdict.member:
        raise InfeasibleError(
            f"{e} lies outside the quantum set for {w} (g - h = {verdict.margin:.3e})",
            verdict.margin)
    theta1 = math.asin(math.sqrt(w.omega1))
    theta2 = math.asin(math.sqrt(w.omega2))
    gamma = math.cos(theta1 + theta2)
    s_gamma = math.sin(theta1 + theta2)
    e_plus, e_minus = e.e_plus, e.e_minus

    if abs(e_minus) <= MEMBERSHIP_TOL or s_gamma <= 0.0:
        p0 = min(1.0, max(0.0, 0.5 * (1 + 0.5 * e_plus)))
        return QubitRealization(theta1, theta2, p0, 1.0 - p0, 0.0, math.pi / 2)

    delta = theta1 + theta2
    a = abs(e_minus) / (2 * s_gamma)
    sgn = 1.0 if e_plus >= 0 else -1.0

    def weights(theta):
        p2 = a / math.sin(theta)
        diff = 0.5 * (e_plus - 2 * p2 * gamma * math.cos(theta))
        return p2, diff

    def slack(theta):
        p2, diff = weights(theta)
        return 1.0 - p2 - abs(diff)

    # The slack is concave in theta, so the feasible angles form an interval.
    # Locate a feasible angle at the slack maximum, then keep the feasible
    # end closest to pi/2, where p2 is smallest.
    near = math.pi / 2
    far = delta if sgn > 0 else math.pi - delta
    if slack(near) >= 0.0:
        theta = near
    else:
        best = _golden_max(slack, min(near, far), max(near, far))
        if slack(best) < 0.0:
            theta = best
        else:
            good, bad = best, near
            while abs(bad - good) > _BISECT_TOL:
                mid = 0.5 * (good + bad)
                if slack(mid) >= 0.0:
                    good = mid
                else:
                    bad = mid
            theta = good

    p2, diff = weights(theta)
    p2 = min(1.0, p2)
    p0 = max(0.0, 0.5 * (1.0 - p2 + diff))
    p1 = max(0.0, 1.0 - p2 - p0)
    if e_minus < 0:
        theta = 2 * math.pi - theta
    return QubitRealization(theta1, theta2, p0, p1, 1.0 - p0 - p1, theta % (2 * math.pi))
