"""Brute-force numerical checks of the analytic set descriptions.

The samplers build states and operators explicitly; the analytic formulas
from :mod:`pmsets.sets` enter only in the final comparison step.  Every oracle draws from ``numpy.random.Philox`` seeded with the given
integer, so identical arguments reproduce identical reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from .model import Correlations, DomainError, Thresholds
from .sets import (
    boundary_curve,
    classical_avg_membership,
    det_avg_interval,
    h_value,
    quantum_membership,
)

RNG = "philox"

_SIGMA = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


@dataclass
class OracleReport:
    claim: str
    samples: int
    seed: int | None
    worst_violation: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        if not math.isfinite(d["worst_violation"]):
            d["worst_violation"] = None
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _report(claim, samples, seed, worst, tol, extra_ok=True, **details):
    worst = float(worst)
    return OracleReport(claim, int(samples), seed, worst, tol,
                        bool(worst >= -tol and extra_ok), details)


# ---------------------------------------------------------------------------
# Qubit realizations with H = diag(0, 1)

def _qubit_states(h1, h2, phase1, phase2):
    """Batched states ``sqrt(1 - H)|0> + exp(i phase) sqrt(H)|1>``."""
    def state(h, ph):
        h = np.clip(h, 0.0, 1.0)
        return np.stack([np.sqrt(1 - h) + 0j, np.exp(1j * ph) * np.sqrt(h)], axis=-1)
    return state(h1, phase1), state(h2, phase2)


def _observables(p0, p1, p2, m):
    """Batched ``(p0 - p1) I + p2 m.sigma`` for unit vectors ``m`` of shape (..., 3)."""
    eye = np.eye(2, dtype=complex)
    return ((p0 - p1)[..., None, None] * eye
            + p2[..., None, None] * np.einsum("...k,kij->...ij", m, _SIGMA))


def _expect(op, psi):
    return np.real(np.einsum("...i,...ij,...j->...", psi.conj(), op, psi))


def _unit_sphere(gen, size):
    v = gen.normal(size=(size, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def sample_quantum_points(w: Thresholds, n: int, seed: int,
                          tolerance: float = 1e-9) -> tuple[list[Correlations], OracleReport]:
    """Random qubit realizations obeying ``w``; every point must be quantum.

    Half of the draws saturate the thresholds and half of the measurements
    are projective, which keeps a good share of samples near the boundary.
    """
    if n < 0:
        raise DomainError(f"sample count must be >= 0, got {n}")
    if n == 0:
        return [], _report("quantum-soundness", 0, seed, math.inf, tolerance)
    g = rng(seed)
    sat = g.random(n) < 0.5
    h1 = np.where(sat, w.omega1, w.omega1 * g.random(n))
    h2 = np.where(sat, w.omega2, w.omega2 * g.random(n))
    psi1, psi2 = _qubit_states(h1, h2, *g.uniform(0, 2 * np.pi, size=(2, n)))
    p = g.dirichlet(np.ones(3), size=n)
    proj = g.random(n) < 0.5
    p[proj] = (0.0, 0.0, 1.0)
    ops = _observables(p[:, 0], p[:, 1], p[:, 2], _unit_sphere(g, n))
    e = np.clip(np.column_stack([_expect(ops, psi1), _expect(ops, psi2)]), -1.0, 1.0)

    points = [Correlations(a, b) for a, b in e]
    worst = min(quantum_membership(pt, w).margin for pt in points)
    return points, _report("quantum-soundness", n, seed, worst, tolerance,
                           omega=[w.omega1, w.omega2])


# ---------------------------------------------------------------------------
# Support-function comparison

_N_PARAMS = 8


def _param_correlations(x: np.ndarray, w: Thresholds) -> np.ndarray:
    """Correlations for parameter rows in ``[0, 1]^8``.

    Columns: threshold fractions for both states, two phases, two measurement
    weights and the polar/azimuthal angles of the Bloch direction.
    """
    psi1, psi2 = _qubit_states(w.omega1 * x[:, 0], w.omega2 * x[:, 1],
                               2 * np.pi * x[:, 2], 2 * np.pi * x[:, 3])
    p2 = x[:, 4]
    p0 = (1 - p2) * x[:, 5]
    p1 = (1 - p2) * (1 - x[:, 5])
    pol, az = np.pi * x[:, 6], 2 * np.pi * x[:, 7]
    m = np.column_stack([np.sin(pol) * np.cos(az), np.sin(pol) * np.sin(az), np.cos(pol)])
    ops = _observables(p0, p1, p2, m)
    return np.column_stack([_expect(ops, psi1), _expect(ops, psi2)])


_INVPHI = (math.sqrt(5) - 1) / 2


def _polish(x, u, w, sweeps, line_iters=24):
    """Coordinate-wise golden-section ascent of ``u . E`` for each row."""
    def score(rows):
        return np.einsum("ij,ij->i", _param_correlations(rows, w), u)

    best = score(x)
    radius = 0.25
    for _ in range(sweeps):
        for j in range(_N_PARAMS):
            lo = np.clip(x[:, j] - radius, 0.0, 1.0)
            hi = np.clip(x[:, j] + radius, 0.0, 1.0)

            def at(t):
                trial = x.copy()
                trial[:, j] = t
                return trial, score(trial)

            c = hi - _INVPHI * (hi - lo)
            d = lo + _INVPHI * (hi - lo)
            (_, fc), (_, fd) = at(c), at(d)
            for _ in range(line_iters):
                left = fc >= fd
                hi = np.where(left, d, hi)
                lo = np.where(left, lo, c)
                new_c = hi - _INVPHI * (hi - lo)
                new_d = lo + _INVPHI * (hi - lo)
                c_next = np.where(left, new_c, d)
                d_next = np.where(left, c, new_d)
                fc_keep, fd_keep = np.where(left, fc, fd), fc
                _, f_new = at(np.where(left, c_next, d_next))
                fc = np.where(left, f_new, fd_keep)
                fd = np.where(left, fc_keep, f_new)
                c, d = c_next, d_next
            cand, f = at(0.5 * (lo + hi))
            improved = f > best
            x[improved] = cand[improved]
            best = np.where(improved, f, best)
        radius = max(radius * 0.9, 1e-4)
    return x, best


def _propagate(x, best, u, w):
    """Hand optima to neighbouring directions until nothing improves; in place."""
    changed = False
    for _ in range(len(u)):
        improved_any = False
        for shift in (1, -1):
            cand = np.roll(x, shift, axis=0)
            f = np.einsum("ij,ij->i", _param_correlations(cand, w), u)
            better = f > best + 1e-15
            if better.any():
                x[better] = cand[better]
                best[better] = f[better]
                improved_any = changed = True
        if not improved_any:
            break
    return changed


def support_function(points: np.ndarray, directions: np.ndarray) -> np.ndarray:
    return np.max(points @ directions.T, axis=0)


def hull_vs_boundary(w: Thresholds, n: int, seed: int, directions: int = 360,
                     sweeps: int = 100, tolerance: float = 1e-2) -> OracleReport:
    """Two-sided support-function gap between sampled realizations and the
    analytic quantum boundary."""
    if n < 1000:
        raise DomainError(f"hull comparison needs n >= 1000 samples, got {n}")
    if directions < 360:
        raise DomainError(f"need at least 360 directions, got {directions}")
    g = rng(seed)
    ang = 2 * np.pi * np.arange(directions) / directions
    u = np.column_stack([np.cos(ang), np.sin(ang)])

    x = g.random((n, _N_PARAMS))
    e = _param_correlations(x, w)
    start = x[np.argmax(e @ u.T, axis=0)].copy()
    best_x, polished = _polish(start, u, w, sweeps)
    # Coordinate ascent can stall at a vertex that is only locally optimal;
    # seeding each direction with its neighbours' optima escapes those.
    if _propagate(best_x, polished, u, w):
        best_x, polished = _polish(best_x, u, w, max(sweeps // 5, 1))
    empirical = np.maximum(support_function(e, u), polished)

    curve = boundary_curve("quantum", w, 4096).as_array()
    analytic = support_function(curve, u)
    outside = float(np.max(empirical - analytic))
    unreached = float(np.max(analytic - empirical))
    worst = -max(abs(outside), abs(unreached))
    return _report("quantum-completeness", n, seed, worst, tolerance,
                   omega=[w.omega1, w.omega2], directions=directions,
                   max_outside=outside, max_unreached=unreached)


# ---------------------------------------------------------------------------
# Overlap bound in higher dimension

def overlap_bound_check(h1: float, h2: float, dim: int, trials: int, seed: int,
                        tolerance: float = 1e-9, tightness: float = 1e-6) -> OracleReport:
    """Sample states with exact means of a random gapped observable and
    compare their overlaps with the analytic lower bound."""
    if not (h1 >= 0 and h2 >= 0 and h1 + h2 <= 1):
        raise DomainError(f"need h1, h2 >= 0 and h1 + h2 <= 1, got {h1!r}, {h2!r}")
    if dim < 2:
        raise DomainError(f"dimension must be >= 2, got {dim}")
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    g = rng(seed)
    spectrum = np.concatenate([np.zeros((trials, 1)),
                               g.uniform(1.0, 5.0, size=(trials, dim - 1))], axis=1)

    def conditioned(h, v):
        # sqrt(1 - beta)|0> + sqrt(beta) v with beta fixing <H> = h exactly.
        v = v / np.linalg.norm(v, axis=1, keepdims=True)
        beta = h / np.einsum("ti,ti->t", spectrum[:, 1:], np.abs(v) ** 2)
        if np.any(beta > 1.0):
            raise DomainError(f"mean {h!r} exceeds the sampled spectrum")
        return np.concatenate([np.sqrt(1 - beta)[:, None] + 0j,
                               np.sqrt(beta)[:, None] * v], axis=1)

    def excited():
        return g.normal(size=(trials, dim - 1)) + 1j * g.normal(size=(trials, dim - 1))

    v1 = excited()
    v2 = np.where((g.random(trials) < 0.5)[:, None], -v1 + 0.1 * excited(), excited())
    phi1, phi2 = conditioned(h1, v1), conditioned(h2, v2)
    means = [np.einsum("ti,ti->t", spectrum, np.abs(phi) ** 2) for phi in (phi1, phi2)]
    mean_err = max(float(np.max(np.abs(means[0] - h1))), float(np.max(np.abs(means[1] - h2))))
    overlaps = np.abs(np.einsum("ti,ti->t", phi1.conj(), phi2))

    # Explicit saturating pair on the first excited level with eigenvalue 1.
    t1, t2 = math.asin(math.sqrt(h1)), math.asin(math.sqrt(h2))
    lam = np.zeros(dim)
    lam[1:] = np.linspace(1.0, 5.0, dim - 1)
    a = np.zeros(dim, complex)
    b = np.zeros(dim, complex)
    a[0], a[1] = math.cos(t1), math.sin(t1)
    b[0], b[1] = math.cos(t2), -math.sin(t2)
    explicit = float(abs(np.vdot(a, b)))
    explicit_means = (float(lam @ np.abs(a) ** 2), float(lam @ np.abs(b) ** 2))

    bound = h_value(h1, h2)
    min_overlap = float(min(overlaps.min(), explicit))
    worst = min_overlap - bound
    tight = abs(min_overlap - bound) <= tightness and mean_err <= 1e-12
    return _report("overlap-bound", trials, seed, worst, tolerance, tight,
                   h=[h1, h2], dim=dim, bound=bound, min_overlap=min_overlap,
                   min_sampled_overlap=float(overlaps.min()), explicit_overlap=explicit,
                   explicit_means=list(explicit_means), max_mean_error=mean_err)


# ---------------------------------------------------------------------------
# Classical polytope by linear programming

# Deterministic behaviours with the observable means they require: equal
# outputs need nothing, opposite outputs need orthogonal states, i.e. a total
# mean of 1 split between the inputs.
DETERMINISTIC = (
    ((1.0, 1.0), (0.0, 0.0)),
    ((-1.0, -1.0), (0.0, 0.0)),
    ((1.0, -1.0), (1.0, 0.0)),
    ((1.0, -1.0), (0.0, 1.0)),
    ((-1.0, 1.0), (1.0, 0.0)),
    ((-1.0, 1.0), (0.0, 1.0)),
)

_FEAS_TOL = 1e-8


@dataclass(frozen=True)
class ClassicalDecomposition:
    feasible: bool
    weights: tuple[float, ...] | None
    residual: float

    def to_dict(self) -> dict:
        return {"feasible": self.feasible,
                "weights": list(self.weights) if self.weights else None,
                "residual": self.residual,
                "behaviours": [list(e) for e, _ in DETERMINISTIC],
                "costs": [list(c) for _, c in DETERMINISTIC]}


def classical_decompositions(points: np.ndarray, w: Thresholds) -> list[ClassicalDecomposition]:
    """Solve one elastic feasibility LP per point, stacked block-diagonally.

    Each block has six behaviour weights and four slacks on the two
    correlation equations; blocks are independent, so the joint optimum
    minimises every block's slack separately.
    """
    points = np.atleast_2d(np.asarray(points, float))
    k = len(points)
    nb = len(DETERMINISTIC)
    nv = nb + 4
    E = np.array([e for e, _ in DETERMINISTIC]).T      # 2 x 6
    C = np.array([c for _, c in DETERMINISTIC]).T      # 2 x 6
    # Tiny cost on used budget picks the cheapest decomposition among ties.
    block_c = np.concatenate([1e-6 * C.sum(axis=0), np.ones(4)])
    eq = np.zeros((3, nv))
    eq[0, :nb] = 1.0
    eq[1:, :nb] = E
    eq[1:, nb:] = [[1, -1, 0, 0], [0, 0, 1, -1]]
    ub = np.zeros((2, nv))
    ub[:, :nb] = C

    eye = sp.identity(k, format="csr")
    res = linprog(
        np.tile(block_c, k),
        A_ub=sp.kron(eye, sp.csr_matrix(ub), format="csr"),
        b_ub=np.tile([w.omega1, w.omega2], k),
        A_eq=sp.kron(eye, sp.csr_matrix(eq), format="csr"),
        b_eq=np.column_stack([np.ones(k), points]).ravel(),
        bounds=(0, None),
        method="highs",
    )
    if res.status != 0:
        raise RuntimeError(f"classical LP failed: {res.message}")
    sol = res.x.reshape(k, nv)
    out = []
    for row in sol:
        resid = float(row[nb:].sum())
        ok = resid <= _FEAS_TOL
        out.append(ClassicalDecomposition(ok, tuple(max(float(v), 0.0) for v in row[:nb]) if ok else None,
                                          resid))
    return out


def classical_decomposition(e: Correlations, w: Thresholds) -> ClassicalDecomposition:
    """Mixture of deterministic behaviours reproducing ``e`` within budget ``w``."""
    return classical_decompositions(np.array([e.as_tuple()]), w)[0]


def classical_lp_check(w: Thresholds, grid: int = 101) -> OracleReport:
    """Agreement of the LP with the analytic classical inequality on a grid."""
    vals = np.linspace(-1.0, 1.0, grid)
    pts = np.array([(a, b) for a in vals for b in vals])
    lp = classical_decompositions(pts, w)
    disagree = [tuple(p) for p, d in zip(pts, lp)
                if d.feasible != classical_avg_membership(Correlations(*p), w).member]
    return _report("classical-lp", len(pts), None, -float(len(disagree)), 0.0,
                   omega=[w.omega1, w.omega2], disagreements=[list(p) for p in disagree[:20]])


# ---------------------------------------------------------------------------
# Input-deterministic set under the max-average assumption

def _h_grid(a, b):
    return np.sqrt(1 - a) * np.sqrt(1 - b) - np.sqrt(a) * np.sqrt(b)


def _project_budget(c, d):
    """Point of the simplex ``a + b <= 1`` inside the box ``[0, c] x [0, d]``
    minimising the overlap bound: the corner if feasible, else the diagonal."""
    over = c + d > 1.0
    a = np.where(over, np.minimum(c, 1.0), c)
    b = np.where(over, 1.0 - a, d)
    return a, b


def det_avg_brute(w: Thresholds, grid: int = 201) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Brute-force range of the complementary output for each deterministic mean.

    For each branch weight ``p`` the budget of the deterministic +1 branch
    runs over a grid; the -1 branch receives what is left.  Returns
    ``(ex, lo, hi)``.
    """
    ex = np.linspace(-1.0, 1.0, grid)
    lo = np.empty(grid)
    hi = np.empty(grid)
    for i, e in enumerate(ex):
        p = 0.5 * (1.0 + e)
        if p <= 0.0:
            a_plus = b_plus = np.zeros(1)
        else:
            amax = min(1.0, w.omega1 / p)
            a_plus = np.repeat(np.linspace(0.0, amax, grid), grid)
            bmax = np.minimum(min(1.0, w.omega2 / p), 1.0 - a_plus)
            b_plus = bmax * np.tile(np.linspace(0.0, 1.0, grid), grid)
        a_plus, b_plus = np.clip(a_plus, 0, 1), np.clip(b_plus, 0, 1)
        if p >= 1.0:
            a_minus = b_minus = np.zeros_like(a_plus)
        else:
            a_minus, b_minus = _project_budget(
                np.maximum(w.omega1 - p * a_plus, 0.0) / (1 - p),
                np.maximum(w.omega2 - p * b_plus, 0.0) / (1 - p))
        h_plus = np.maximum(_h_grid(a_plus, b_plus), 0.0)
        h_minus = np.maximum(_h_grid(a_minus, b_minus), 0.0)
        # Branch +1 reaches down to 2h^2 - 1, branch -1 up to 1 - 2h^2.
        low = p * (2 * h_plus ** 2 - 1) - (1 - p)
        high = p + (1 - p) * (1 - 2 * h_minus ** 2)
        lo[i], hi[i] = low.min(), high.max()
    return ex, lo, hi


def det_avg_oracle(x: int, w: Thresholds, grid: int = 201, tolerance: float = 2e-3,
                   containment: float = 1e-9) -> OracleReport:
    if x not in (1, 2):
        raise DomainError(f"input index must be 1 or 2, got {x!r}")
    if grid < 50:
        raise DomainError(f"grid must be >= 50, got {grid}")
    # Input 2 is input 1 with the budgets exchanged along with the axes.
    wx = w if x == 1 else w.swapped()
    ex, lo, hi = det_avg_brute(wx, grid)
    ana = np.array([det_avg_interval(e, w) for e in ex])
    gap = float(max(np.max(np.abs(lo - ana[:, 0])), np.max(np.abs(hi - ana[:, 1]))))
    # The brute-force region must sit inside the analytic one.
    escape = float(max(np.max(ana[:, 0] - lo), np.max(hi - ana[:, 1])))
    details = dict(x=x, omega=[w.omega1, w.omega2], grid=grid, max_gap=gap,
                   max_escape=escape)
    if w.omega1 == 0.0 or w.omega2 == 0.0:
        s = 2 * w.total
        cls_lo, cls_hi = np.maximum(-1.0, ex - s), np.minimum(1.0, ex + s)
        details["classical_coincidence_gap"] = float(
            max(np.max(np.abs(cls_lo - ana[:, 0])), np.max(np.abs(cls_hi - ana[:, 1]))))
    return _report(f"det-avg-{x}", grid, None, -gap, tolerance, escape <= containment,
                   **details)


# ---------------------------------------------------------------------------
# Concavity

def overlap_square(x, y):
    """``(sqrt(xy) + sqrt((1 - x)(1 - y)))^2``; works on numpy arrays of any float type."""
    return (np.sqrt(x * y) + np.sqrt((1 - x) * (1 - y))) ** 2


def _hessian(f, x, y, step):
    fxx = (f(x + step, y) - 2 * f(x, y) + f(x - step, y)) / step ** 2
    fyy = (f(x, y + step) - 2 * f(x, y) + f(x, y - step)) / step ** 2
    fxy = (f(x + step, y + step) - f(x + step, y - step)
           - f(x - step, y + step) + f(x - step, y - step)) / (4 * step ** 2)
    return fxx, fyy, fxy


def concavity_check(trials: int, seed: int, step: float = 1e-5,
                    tolerance: float = 1e-6) -> OracleReport:
    """Midpoint concavity and finite-difference Hessian signs of ``overlap_square``.

    The Hessian determinant vanishes on the diagonal, so the difference
    quotients are evaluated in extended precision to keep round-off well
    below the tolerance.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    g = rng(seed)
    p, q = g.random((2, trials, 2))
    mid = 0.5 * (p + q)
    f = overlap_square
    midpoint = f(mid[:, 0], mid[:, 1]) - 0.5 * (f(p[:, 0], p[:, 1]) + f(q[:, 0], q[:, 1]))

    ld = np.longdouble
    h = ld(step)
    pts = g.uniform(2 * step, 1 - 2 * step, size=(trials, 2)).astype(ld)
    fxx, fyy, fxy = _hessian(f, pts[:, 0], pts[:, 1], h)
    trace = (fxx + fyy).astype(float)
    det = (fxx * fyy - fxy ** 2).astype(float)

    # Consequences: g^2 concave on the square, h^2 convex on the simplex.
    e_a, e_b = g.uniform(-1, 1, size=(2, trials, 2))
    g2 = lambda e: f((1 + e[:, 0]) / 2, (1 + e[:, 1]) / 2)
    g_mid = g2(0.5 * (e_a + e_b)) - 0.5 * (g2(e_a) + g2(e_b))
    s_a, s_b = (_simplex(g, trials) for _ in range(2))
    h2 = lambda s: np.maximum(_h_grid(s[:, 0], s[:, 1]), 0.0) ** 2
    h_mid = 0.5 * (h2(s_a) + h2(s_b)) - h2(0.5 * (s_a + s_b))

    parts = {
        "midpoint": float(midpoint.min()),
        "neg_trace": float((-trace).min()),
        "det": float(det.min()),
        "g2_midpoint": float(g_mid.min()),
        "h2_midpoint": float(h_mid.min()),
    }
    return _report("concavity", trials, seed, min(parts.values()), tolerance,
                   step=step, **{f"min_{k}": v for k, v in parts.items()},
                   max_trace=float(trace.max()))


def _simplex(g, n):
    a, b = g.random((2, n))
    flip = a + b > 1
    return np.column_stack([np.where(flip, 1 - a, a), np.where(flip, 1 - b, b)])


# ---------------------------------------------------------------------------
# Shared-randomness closure

def mixing_closure_check(w: Thresholds, trials: int, seed: int, max_terms: int = 5,
                         tolerance: float = 1e-9) -> OracleReport:
    """Average boundary points of random budgets; the mixture must stay
    quantum at the averaged budget."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    g = rng(seed)
    k = g.integers(1, max_terms + 1, size=trials)
    active = np.arange(max_terms)[None, :] < k[:, None]
    weights = g.dirichlet(np.ones(max_terms), size=trials) * active
    weights /= weights.sum(axis=1, keepdims=True)

    hs = _simplex(g, trials * max_terms).reshape(trials, max_terms, 2)
    avg = np.einsum("tk,tkx->tx", weights, hs)
    scale = np.minimum(1.0, np.array([w.omega1, w.omega2]) / np.maximum(avg, 1e-300))
    hs = hs * scale[:, None, :]

    # Boundary point for each component: the two states at angles t1, t2 and
    # a projective measurement on the arc of directions between the tangents.
    t1, t2 = np.arcsin(np.sqrt(hs[..., 0])), np.arcsin(np.sqrt(hs[..., 1]))
    delta = t1 + t2
    th = delta + (np.pi - 2 * delta) * g.random(delta.shape)
    th = np.where(g.random(delta.shape) < 0.5, th, th + np.pi)
    b = t1 - t2
    m = (np.cos(th)[..., None] * np.stack([np.sin(b), np.zeros_like(b), np.cos(b)], -1)
         + np.sin(th)[..., None] * np.stack([np.cos(b), np.zeros_like(b), -np.sin(b)], -1))
    psi1 = np.stack([np.cos(t1), np.sin(t1)], -1).astype(complex)
    psi2 = np.stack([np.cos(t2), -np.sin(t2)], -1).astype(complex)
    zeros = np.zeros_like(t1)
    ops = _observables(zeros, zeros, np.ones_like(t1), m)
    e = np.stack([_expect(ops, psi1), _expect(ops, psi2)], -1)
    mix = np.clip(np.einsum("tk,tkx->tx", weights, e), -1.0, 1.0)

    worst = min(quantum_membership(Correlations(*pt), w).margin for pt in mix)
    return _report("mixing-closure", trials, seed, worst, tolerance,
                   omega=[w.omega1, w.omega2], max_terms=max_terms)
