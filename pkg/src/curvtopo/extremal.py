"""Radius functions on finite point lists and their extremal minorants."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainMismatch, NoConvergence, NotAdmissible

ADMISSIBLE_TOL = 1e-12
EXTREMAL_TOL = 1e-10


@dataclass(frozen=True)
class RadiusFunction:
    """Non-negative radii aligned with ``points`` (indices into a space)."""

    points: tuple
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        object.__setattr__(self, "points", tuple(int(p) for p in self.points))
        object.__setattr__(self, "values", values)
        if len(values) != len(self.points):
            raise DomainMismatch("one radius per point is required")
        if np.any(values < 0) or np.any(np.isnan(values)):
            raise ValueError("radii must be non-negative")

    @classmethod
    def on(cls, space, values, points=None):
        points = range(space.point_count) if points is None else points
        return cls(tuple(points), values)

    @classmethod
    def constant(cls, space, c, points=None):
        points = tuple(range(space.point_count) if points is None else points)
        return cls(points, np.full(len(points), float(c)))

    @classmethod
    def half_max(cls, space, points=None):
        """``r(x) = max_y d(x, y) / 2``, always admissible."""
        points = tuple(range(space.point_count) if points is None else points)
        D = _submatrix(space, points)
        return cls(points, D.max(axis=1) / 2)

    def __len__(self):
        return len(self.points)

    def to_json(self):
        return [float(v) for v in self.values]


def _submatrix(space, points):
    idx = [space.check_index(p) for p in points]
    return space.matrix[np.ix_(idx, idx)]


def is_admissible(space, r, tol=ADMISSIBLE_TOL):
    """``(ok, first_violating_pair)`` for ``r(x) + r(y) >= d(x, y) - tol``."""
    D = _submatrix(space, r.points)
    bad = np.argwhere(np.triu(r.values[:, None] + r.values[None, :] < D - tol, 1))
    if len(bad):
        i, j = bad[0]
        return False, (r.points[i], r.points[j])
    return True, None


def _lower_envelope(D, values):
    """``max(0, max_{y != x} d(x, y) - r(y))`` for every ``x``."""
    slack = D - values[None, :]
    np.fill_diagonal(slack, 0.0)
    return np.maximum(slack.max(axis=1), 0.0)


def is_extremal(space, r, tol=EXTREMAL_TOL):
    """Admissible and no coordinate can be lowered."""
    ok, pair = is_admissible(space, r)
    if not ok:
        raise NotAdmissible(f"radius function violates r(x)+r(y) >= d(x,y) at {pair}")
    D = _submatrix(space, r.points)
    return bool(np.all(np.abs(r.values - _lower_envelope(D, r.values)) <= tol))


def extremal_minorant(space, r0, sweep_order=None, tol=EXTREMAL_TOL, max_sweeps=None):
    """Extremal ``r <= r0`` by cyclic coordinate descent.

    Each coordinate is lowered to the least value keeping every pair
    admissible; ``sweep_order`` (positions into ``r0.points``) decides which
    extremal function comes out when there are several.
    """
    ok, pair = is_admissible(space, r0)
    if not ok:
        raise NotAdmissible(f"starting radii violate r(x)+r(y) >= d(x,y) at {pair}")
    n = len(r0)
    order = list(range(n)) if sweep_order is None else [int(i) for i in sweep_order]
    if sorted(order) != list(range(n)):
        raise DomainMismatch("sweep_order must be a permutation of the point positions")
    D = _submatrix(space, r0.points)
    r = r0.values.copy()
    budget = 10 * n if max_sweeps is None else max_sweeps
    for _ in range(max(budget, 1)):
        change = 0.0
        for x in order:
            slack = D[x] - r
            slack[x] = 0.0
            new = min(r[x], max(slack.max(), 0.0))
            change = max(change, r[x] - new)
            r[x] = new
        if change <= tol:
            return RadiusFunction(r0.points, r)
    raise NoConvergence("coordinate descent exceeded its sweep budget", best=RadiusFunction(r0.points, r))


def distance_radius_function(space, x, points=None):
    """``r(y) = d(x, y)``; extremal for every ``x``."""
    x = space.check_index(x)
    points = tuple(range(space.point_count) if points is None else points)
    return RadiusFunction(points, space.matrix[x, list(points)])
