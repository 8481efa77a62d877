"""How far admissible balls must be inflated before they share a point.

For a non-collinear triple with Gromov radii ``r_i``, ``rho`` is
``inf_x max_i d(x, x_i) / r_i``; it equals 1 on trees, ``2/sqrt(3)`` on
Euclidean equilateral triangles and 2 on equidistant circle triples.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb, pi, sqrt
from typing import Any

import numpy as np

from ._euclid import weighted_center
from .errors import (
    DegenerateTriple,
    DegenerateTuple,
    EmptyFamily,
    NotEquilateral,
    SampleTooSmall,
    UnrealizableAngles,
)
from .extremal import RadiusFunction, extremal_minorant
from .spaces import Kind, WitnessMode, minimax_scaled_distance
from .triples import DEGENERACY_RTOL, TriangleSides, gromov_products

EUCLIDEAN_MAX = 2 / sqrt(3)
AUTO_EXTRA_ORDERS = 4


@dataclass(frozen=True)
class RhoResult:
    rho: float
    witness: Any
    radii: Any
    attained: bool

    def to_json(self):
        radii = self.radii
        if hasattr(radii, "as_tuple"):
            radii = [float(v) for v in radii.as_tuple()]
        elif isinstance(radii, RadiusFunction):
            radii = radii.to_json()
        return {"rho": self.rho, "witness": witness_json(self.witness), "radii": radii, "attained": self.attained}


def witness_json(w):
    if hasattr(w, "to_json"):
        return w.to_json()
    if isinstance(w, np.ndarray):
        return w.tolist()
    if isinstance(w, (np.integer, np.floating)):
        return w.item()
    return w


def rho_triple(space, x1, x2, x3, mode=None):
    """Minimax inflation factor of the triple with its Gromov radii."""
    pts = [space.check_index(p) for p in (x1, x2, x3)]
    if len(set(pts)) < 3:
        raise DegenerateTriple("triple has repeated points")
    radii = gromov_products(TriangleSides.of(space, *pts))
    if radii.is_degenerate():
        raise DegenerateTriple(f"triple {tuple(pts)} is collinear (Gromov radii {radii.as_tuple()})")
    res = minimax_scaled_distance(space, pts, radii.as_tuple(), mode)
    return RhoResult(res.value, res.witness, radii, res.exact)


def rho_circle_closed_form(angles):
    """Closed form on a circle from the central angles ``(a12, a13, a23)``.

    The angles split into ``theta_i + theta_j = a_ij``; with the two largest
    thetas summing to ``a``, ``rho = 2*pi / a - 1``.
    """
    a12, a13, a23 = (float(a) for a in angles)
    theta = np.array([a12 + a13 - a23, a12 + a23 - a13, a13 + a23 - a12]) / 2
    total = a12 + a13 + a23
    if theta.min() < -1e-12 * max(total, 1.0):
        raise UnrealizableAngles(f"angles {angles} give a negative split {theta}")
    if theta.min() <= DEGENERACY_RTOL * total:
        raise DegenerateTriple("a zero split means the three points are collinear")
    # three distinct points not on a half circle cut it into arcs summing to 2*pi
    if abs(total - 2 * pi) > 1e-9:
        raise UnrealizableAngles(f"central angles sum to {total}, expected 2*pi")
    top_two = np.sort(theta)[::-1][:2].sum()
    return 2 * pi / top_two - 1


@dataclass(frozen=True)
class CircumcenterResult:
    center: np.ndarray
    rho: float
    residuals: tuple


def weighted_circumcenter_euclidean(x1, x2, x3):
    """Weighted circumcenter of a plane triangle and its inflation factor.

    ``residuals`` are the three law-of-cosines relations at the center
    (``d_ij^2 - rho^2 (r_i^2 + r_j^2 - 2 r_i r_j cos angle_ij)``), with the
    angle between ``x1`` and ``x3`` written as ``2*pi - alpha - beta``.
    """
    P = np.array([x1, x2, x3], dtype=float)
    if P.shape != (3, 2):
        raise ValueError("expected three points in the plane")
    d = lambda a, b: float(np.linalg.norm(P[a] - P[b]))
    radii = gromov_products(TriangleSides(d(0, 1), d(0, 2), d(1, 2)))
    if radii.is_degenerate():
        raise DegenerateTriple("collinear triangle has no weighted circumcenter")
    r = np.array(radii.as_tuple())
    value, center = weighted_center(P, r)
    arms = P - center

    def angle(u, v):
        return float(np.arctan2(abs(u[0] * v[1] - u[1] * v[0]), u @ v))

    alpha = angle(arms[0], arms[1])
    beta = angle(arms[1], arms[2])
    r1, r2, r3 = r
    rho2 = value**2
    residuals = (
        d(0, 1) ** 2 - rho2 * (r1**2 + r2**2 - 2 * r1 * r2 * np.cos(alpha)),
        d(1, 2) ** 2 - rho2 * (r2**2 + r3**2 - 2 * r2 * r3 * np.cos(beta)),
        d(0, 2) ** 2 - rho2 * (r1**2 + r3**2 - 2 * r1 * r3 * np.cos(alpha + beta)),
    )
    return CircumcenterResult(center, value, tuple(float(x) for x in residuals))


def _random_orders(n, count, seed):
    rng = np.random.default_rng(seed)
    return [rng.permutation(n) for _ in range(count)]


def rho_tuple(space, pts, radii="auto", mode=None, seed=0, tol=1e-12):
    """Inflation factor of a ``k``-tuple under extremal radii.

    ``radii="auto"`` uses the Gromov radii for ``k = 3``.  For ``k >= 4`` it
    runs the extremal minorant of the half-max start in index order and in
    :data:`AUTO_EXTRA_ORDERS` seeded random orders and keeps the largest rho.
    """
    pts = [space.check_index(p) for p in pts]
    if not pts:
        raise EmptyFamily("rho of an empty tuple")
    if len(set(pts)) != len(pts):
        raise DegenerateTuple("tuple points must be distinct")
    if isinstance(radii, RadiusFunction):
        candidates = [radii]
    elif len(pts) == 3:
        g = gromov_products(TriangleSides.of(space, *pts))
        candidates = [RadiusFunction(pts, g.as_tuple())]
    else:
        start = RadiusFunction.half_max(space, pts)
        orders = [None] + _random_orders(len(pts), AUTO_EXTRA_ORDERS, seed)
        candidates = [extremal_minorant(space, start, order) for order in orders]
    best = None
    scale = space.diameter(pts)
    for cand in candidates:
        if cand.values.min() <= tol * scale:
            raise DegenerateTuple(f"radius {cand.values.min()} vanishes on tuple {tuple(pts)}")
        res = minimax_scaled_distance(space, list(cand.points), cand.values, mode)
        if best is None or res.value > best.rho:
            best = RhoResult(res.value, res.witness, cand, res.exact)
    return best


@dataclass(frozen=True)
class ExpansionEstimate:
    mu_hat: float
    arity_max: int
    argmax_tuple: tuple
    n_evaluated: int
    n_degenerate: int

    def to_json(self):
        return {
            "mu_hat": self.mu_hat,
            "arity_max": self.arity_max,
            "argmax_tuple": list(self.argmax_tuple),
            "n_evaluated": self.n_evaluated,
            "n_degenerate": self.n_degenerate,
        }


def expansion_constant_estimate(space, sample=None, arity_max=3, n_tuples=200, seed=0, mode=None):
    """Sampled lower bound for the expansion constant.

    Draws ``n_tuples`` tuples with arity uniform in ``3..arity_max`` from a
    seeded stream and returns the largest :func:`rho_tuple`.  Tuples whose
    extremal radii vanish are counted and skipped.  When every tuple of the
    sample fits in the budget the enumeration is exhaustive instead.
    """
    sample = list(range(space.point_count) if sample is None else sample)
    if len(sample) < 3:
        raise SampleTooSmall("need at least three sample points")
    if arity_max < 3:
        raise ValueError("arity_max must be at least 3")
    arity_max = min(arity_max, len(sample))
    rng = np.random.default_rng(seed)
    total = sum(comb(len(sample), k) for k in range(3, arity_max + 1))
    if total <= n_tuples:
        tuples = [c for k in range(3, arity_max + 1) for c in combinations(sample, k)]
    else:
        tuples = []
        for _ in range(n_tuples):
            k = int(rng.integers(3, arity_max + 1))
            tuples.append(tuple(sorted(int(v) for v in rng.choice(sample, size=k, replace=False))))
    best, argmax, evaluated, degenerate = -np.inf, (), 0, 0
    for n, tup in enumerate(tuples):
        try:
            res = rho_tuple(space, tup, mode=mode, seed=seed + n)
        except (DegenerateTuple, DegenerateTriple):
            degenerate += 1
            continue
        evaluated += 1
        if res.rho > best:
            best, argmax = res.rho, tup
    if not evaluated:
        raise SampleTooSmall("every sampled tuple was degenerate")
    return ExpansionEstimate(float(best), arity_max, tuple(argmax), evaluated, degenerate)


def rho_equilateral_from_perimeter(space, x1, x2, x3, mode=None, rtol=1e-9):
    """``3 / r * min_x max_i d(x, x_i)`` with ``r`` the half perimeter.

    Only valid for equilateral triples, where it coincides with
    :func:`rho_triple`.
    """
    pts = [space.check_index(p) for p in (x1, x2, x3)]
    sides = TriangleSides.of(space, *pts)
    if max(sides) - min(sides) > rtol * max(sides) or max(sides) == 0:
        raise NotEquilateral(f"sides {tuple(sides)} are not equal")
    half = sides.perimeter / 2
    res = minimax_scaled_distance(space, pts, [1.0, 1.0, 1.0], mode)
    return 3 / half * res.value
