"""Convex-hull membership and 1-convexity tests for finite point sets.

A set is 1-convex when every point is a vertex of the set's convex hull.
Membership of x in conv(Y_1..Y_m) is decided as a linear feasibility problem

    lambda >= 0,  sum lambda_j = 1,  sum lambda_j Y_j = x

solved by a dense phase-1 simplex with Bland's anti-cycling rule. Either
answer comes with a verifiable certificate: convex-combination weights when
inside, a Farkas separating direction when outside. Hull construction is
only ever done in the plane (the brute-force oracle and hull areas); in
higher dimension everything goes through the feasibility solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

TOL_MIN = 1e-12
TOL_MAX = 1e-6

# Pivot tolerances for the simplex; independent of the caller's feasibility tol.
_PIVOT_EPS = 1e-11
# Shewchuk's ccwerrboundA: float orientation signs larger than this times the
# term-magnitude sum are provably correct.
_EPS = np.finfo(float).eps / 2.0
_CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS

# When True, every verdict re-checks its own certificate (enabled by the test
# suite and the validation command).
CHECK_CERTIFICATES = False


class SimplexError(RuntimeError):
    """Phase-1 simplex failed to terminate; indicates a solver bug."""


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of a hull-membership test with its certificate.

    ``weights`` (inside): nonnegative weights summing to 1 that reproduce the
    query point within tolerance. ``direction``/``offset`` (outside): a Farkas
    pair with <direction, Y_j> + offset <= 0 for every set point while
    <direction, x> + offset > 0, so ``direction`` strictly separates x with
    ``margin`` = <w, x> - max_j <w, Y_j> > 0.
    """

    inside: bool
    weights: np.ndarray | None = None
    direction: np.ndarray | None = None
    offset: float = 0.0
    margin: float = float("inf")
    phase1_objective: float = 0.0

    def __bool__(self) -> bool:
        return self.inside


def _validate_tol(tol: float) -> None:
    if not TOL_MIN <= tol <= TOL_MAX:
        raise ValueError(f"tolerance must lie in [{TOL_MIN}, {TOL_MAX}], got {tol}")


def _as_point_set(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError(f"point set must be a 2-D array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("point set contains non-finite coordinates")
    return pts


def _phase1(A: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray, list[int]]:
    """Minimize the sum of artificials for A x = b, x >= 0 (b >= 0 required).

    Returns (objective, x, basis). Bland's rule on both the entering and the
    leaving choice guarantees termination.
    """
    k, m = A.shape
    ncols = m + k
    # tableau rows 0..k-1: [A | I | b]; row k: reduced costs and -objective
    T = np.zeros((k + 1, ncols + 1))
    T[:k, :m] = A
    T[:k, m:ncols] = np.eye(k)
    T[:k, -1] = b
    # reduced costs c_j - z_j with artificial basis: -column sums for the
    # structural columns, 0 under the artificials
    T[k, :m] = -A.sum(axis=0)
    T[k, -1] = -b.sum()
    basis = list(range(m, ncols))

    max_iters = 200 * (ncols + 1)
    for _ in range(max_iters):
        red = T[k, :ncols]
        entering_candidates = np.nonzero(red < -_PIVOT_EPS)[0]
        if entering_candidates.size == 0:
            break
        j = int(entering_candidates[0])  # Bland: lowest index
        col = T[:k, j]
        rows = np.nonzero(col > _PIVOT_EPS)[0]
        if rows.size == 0:
            # phase-1 objective is bounded below by 0; an unbounded ray
            # cannot occur unless arithmetic has broken down
            raise SimplexError("unbounded phase-1 column")
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best * (1.0 + 1e-12) + 1e-15]
        i = int(tied[np.argmin([basis[t] for t in tied])])  # Bland on ties
        # pivot on (i, j)
        T[i, :] /= T[i, j]
        factors = T[:, j].copy()
        factors[i] = 0.0
        T -= np.outer(factors, T[i, :])
        basis[i] = j
    else:
        raise SimplexError("phase-1 iteration cap exceeded")

    objective = -T[k, -1]
    x = np.zeros(ncols)
    x[basis] = T[:k, -1]
    return objective, x, basis


def in_convex_hull(x, points, tol: float = 1e-9, quick_certificate: bool = True) -> MembershipVerdict:
    """Decide whether x lies in the convex hull of ``points``.

    ``points`` is an (m, d) array; the empty set yields an outside verdict
    with an arbitrary direction. A phase-1 objective below ``tol`` declares
    inside. Points exactly on the hull boundary of the set count as inside
    (not vertices).

    ``quick_certificate`` short-circuits the solve when x's own direction
    already separates it from every set point by more than ``tol`` — a valid
    outside certificate that skips the LP for the vast majority of far-apart
    random points. Pass False to force the LP on every query.
    """
    _validate_tol(tol)
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"query point must be 1-D, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("query point contains non-finite coordinates")
    pts = _as_point_set(points) if len(points) else np.empty((0, x.shape[0]))
    m, d = pts.shape
    if d != x.shape[0]:
        raise ValueError(f"dimension mismatch: point has d={x.shape[0]}, set has d={d}")

    if m == 0:
        direction = x if float(np.linalg.norm(x)) > 0 else _unit_vector(d)
        return MembershipVerdict(inside=False, direction=direction, offset=0.0)

    if quick_certificate:
        scores = pts @ x
        top = float(scores.max())
        margin = float(x @ x) - top
        if margin > tol:
            verdict = MembershipVerdict(
                inside=False,
                direction=x.copy(),
                offset=-(top + 0.5 * margin),
                margin=margin,
                phase1_objective=float("nan"),  # LP skipped
            )
            if CHECK_CERTIFICATES:
                check_certificate(x, pts, verdict, tol)
            return verdict

    # constraints: [Y^T; 1^T] lambda = [x; 1], lambda >= 0
    A0 = np.vstack([pts.T, np.ones((1, m))])
    b0 = np.concatenate([x, [1.0]])
    flip = np.where(b0 < 0, -1.0, 1.0)
    objective, solution, basis = _phase1(A0 * flip[:, np.newaxis], b0 * flip)

    if objective < tol:
        weights = solution[:m]
        verdict = MembershipVerdict(
            inside=True, weights=weights, phase1_objective=float(objective)
        )
    else:
        # Farkas pair from the dual at the phase-1 optimum, mapped back
        # through the row flips.
        y = _farkas_multipliers(A0 * flip[:, np.newaxis], basis, m) * flip
        direction = y[:d]
        offset = float(y[d])
        margin = float(direction @ x - np.max(pts @ direction))
        verdict = MembershipVerdict(
            inside=False,
            direction=direction,
            offset=offset,
            margin=margin,
            phase1_objective=float(objective),
        )

    if CHECK_CERTIFICATES:
        check_certificate(x, pts, verdict, tol)
    return verdict


def _farkas_multipliers(A: np.ndarray, basis: list[int], m: int) -> np.ndarray:
    """Dual multipliers y = B^{-T} c_B at the phase-1 optimum.

    Solved from the original columns of the final basis (instead of read off
    the tableau) so the certificate does not inherit accumulated pivot error.
    At an optimum with positive objective, y satisfies y^T A_j <= 0 for every
    structural column j and y^T b = objective > 0: a Farkas certificate.
    """
    k = A.shape[0]
    full = np.hstack([A, np.eye(k)])
    cost = np.concatenate([np.zeros(m), np.ones(k)])
    B = full[:, basis]
    return np.linalg.solve(B.T, cost[basis])


def check_certificate(x: np.ndarray, pts: np.ndarray, verdict: MembershipVerdict, tol: float) -> None:
    """Raise AssertionError when a verdict's certificate does not hold."""
    if verdict.inside:
        w = verdict.weights
        assert w is not None
        assert np.all(w >= -tol), f"negative weight beyond tol: min={w.min()}"
        assert abs(w.sum() - 1.0) <= tol, f"weights sum to {w.sum()}"
        recon = w @ pts
        err = np.max(np.abs(recon - x)) if x.size else 0.0
        assert err <= 10 * tol, f"reconstruction error {err} > 10*tol"
    else:
        assert verdict.direction is not None
        if len(pts):
            assert verdict.margin > tol, f"separation margin {verdict.margin} <= tol"


def is_one_convex(points, tol: float = 1e-9, quick_certificate: bool = True) -> bool:
    """True when every point lies outside the hull of the others.

    Sets with n <= 1 are 1-convex by convention; exact duplicate points make
    the set non-1-convex (the duplicate sits in the hull of the rest).
    """
    _validate_tol(tol)
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return True
    pts = _as_point_set(pts)
    n = pts.shape[0]
    if n <= 1:
        return True
    # exact duplicates can never be vertices of the joint hull
    order = np.lexsort(pts.T[::-1])
    if np.any(np.all(pts[order[1:]] == pts[order[:-1]], axis=1)):
        return False
    mask = np.ones(n, dtype=bool)
    for i in range(n):
        mask[i] = False
        if in_convex_hull(pts[i], pts[mask], tol, quick_certificate).inside:
            return False
        mask[i] = True
    return True


def _unit_vector(d: int) -> np.ndarray:
    e = np.zeros(d)
    e[0] = 1.0
    return e


# ---------------------------------------------------------------------------
# Planar brute-force oracle: hull construction with exact orientation signs
# ---------------------------------------------------------------------------

def _orientation(a, b, c) -> int:
    """Exact sign of the cross product (b - a) x (c - a).

    Float evaluation with a forward-error filter; falls back to exact
    rational arithmetic only when the float result is not provably signed.
    """
    p = (b[0] - a[0]) * (c[1] - a[1])
    q = (b[1] - a[1]) * (c[0] - a[0])
    det = p - q
    bound = _CCW_ERRBOUND * (abs(p) + abs(q))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    det_exact = (Fraction(b[0]) - Fraction(a[0])) * (Fraction(c[1]) - Fraction(a[1])) - (
        Fraction(b[1]) - Fraction(a[1])
    ) * (Fraction(c[0]) - Fraction(a[0]))
    return (det_exact > 0) - (det_exact < 0)


def _hull_vertices_2d(points) -> list[tuple[float, float]]:
    """Strict convex hull (counterclockwise, no collinear vertices) via
    monotone-chain scan over the lexicographically sorted points."""
    unique = sorted({(float(p[0]), float(p[1])) for p in points})
    if len(unique) <= 2:
        return unique
    lower: list[tuple[float, float]] = []
    for p in unique:
        while len(lower) > 1 and _orientation(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(unique):
        while len(upper) > 1 and _orientation(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # all points collinear: keep the two extremes
        return [lower[0], lower[-1]]
    return hull


def _require_planar(points) -> np.ndarray:
    pts = _as_point_set(points)
    if pts.shape[1] != 2:
        raise ValueError(f"planar operation requires d=2, got d={pts.shape[1]}")
    return pts


def oracle_one_convex_2d(points) -> bool:
    """Brute-force planar 1-convexity: every input point is a strict hull vertex.

    Independent of the LP path: sorts, scans, and signs orientations exactly,
    so it serves as ground truth for in_convex_hull in the plane. Collinear
    mid-points are not vertices; duplicates are never 1-convex.
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return True
    pts = _require_planar(pts)
    n = pts.shape[0]
    if n <= 1:
        return True
    coords = [(float(p[0]), float(p[1])) for p in pts]
    if len(set(coords)) < n:
        return False
    return len(_hull_vertices_2d(pts)) == n


def hull_area_2d(points) -> float:
    """Area of the planar convex hull (shoelace over the hull polygon).

    Zero for n <= 2 and for collinear sets.
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return 0.0
    pts = _require_planar(pts)
    hull = _hull_vertices_2d(pts)
    if len(hull) < 3:
        return 0.0
    xs = np.array([v[0] for v in hull])
    ys = np.array([v[1] for v in hull])
    return 0.5 * abs(float(np.dot(xs, np.roll(ys, -1)) - np.dot(ys, np.roll(xs, -1))))
