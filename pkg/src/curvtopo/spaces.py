"""Metric spaces, ball-family intersection tests and minimax witness search.

A :class:`SpaceHandle` pairs a kind tag with a payload.  Every handle exposes
the finite list of marked points it was built from together with their
pairwise distance matrix; model spaces additionally expose the continuous
ambient geometry used when ``mode`` is :attr:`WitnessMode.AMBIENT`.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from math import ceil, inf
from typing import Any, NamedTuple

import numpy as np

from . import _curved, _euclid
from ._tree import TreeGeometry, TreeLocation
from .errors import (
    EmptyFamily,
    IndexOutOfRange,
    InvalidSpace,
    NonPositiveWeight,
    NonSquareInput,
    UnsupportedMode,
)

METRIC_TOL = 1e-9


class Kind(str, Enum):
    FINITE = "finite-explicit"
    EUCLIDEAN = "euclidean"
    LINF = "linf"
    CIRCLE = "circle"
    SPHERE = "sphere"
    HYPERBOLIC = "hyperbolic-disk"
    TREE = "tree"


class WitnessMode(str, Enum):
    INTRINSIC = "intrinsic-sample"
    AMBIENT = "ambient"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        if value in ("intrinsic", "intrinsic-sample"):
            return cls.INTRINSIC
        if value == "ambient":
            return cls.AMBIENT
        raise ValueError(f"unknown witness mode {value!r}")


# exact backends certify their minimizer; the SQP ones do not
EXACT_AMBIENT = {Kind.EUCLIDEAN, Kind.LINF, Kind.CIRCLE, Kind.TREE}


@dataclass(frozen=True)
class FiniteExplicitPayload:
    matrix: np.ndarray


@dataclass(frozen=True)
class PointCloudPayload:
    dim: int
    points: np.ndarray


@dataclass(frozen=True)
class CirclePayload:
    circumference: float
    points: np.ndarray


@dataclass(frozen=True)
class SpherePayload:
    radius: float
    points: np.ndarray


@dataclass(frozen=True)
class HyperbolicDiskPayload:
    points: np.ndarray


@dataclass(frozen=True)
class TreePayload:
    nodes: list
    edges: list
    marked_points: list
    geometry: TreeGeometry = field(repr=False, compare=False)


class ValidationReport(NamedTuple):
    ok: bool
    violations: list

    def to_json(self):
        return {"ok": self.ok, "violations": self.violations}


def validate_metric(matrix, tol=METRIC_TOL):
    """Check the metric axioms on a square matrix.

    Violations are reported as dicts with a ``kind`` key (``asymmetry``,
    ``diagonal``, ``negative``, ``triangle``) and the offending indices.
    """
    D = np.asarray(matrix, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise NonSquareInput(f"expected a square matrix, got shape {D.shape}")
    n = D.shape[0]
    violations = []
    for i in range(n):
        if abs(D[i, i]) > tol:
            violations.append({"kind": "diagonal", "i": i, "value": float(D[i, i])})
    for i in range(n):
        for j in range(i + 1, n):
            if abs(D[i, j] - D[j, i]) > tol:
                violations.append({"kind": "asymmetry", "pair": [i, j]})
            if D[i, j] < -tol or D[j, i] < -tol:
                violations.append({"kind": "negative", "pair": [i, j]})
    # d(i,j) <= d(i,k) + d(k,j); vectorised over k
    for i in range(n):
        for j in range(i + 1, n):
            slack = D[i, :] + D[:, j] - D[i, j]
            for k in np.nonzero(slack < -tol)[0]:
                violations.append({"kind": "triangle", "pair": [i, j], "via": int(k)})
    return ValidationReport(not violations, violations)


def _as_points(points, dim=None, kind="points"):
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or len(P) == 0:
        raise InvalidSpace(f"{kind} must be a non-empty list of coordinate vectors")
    if dim is not None and P.shape[1] != dim:
        raise InvalidSpace(f"expected {dim} coordinates per point, got {P.shape[1]}")
    return P


class SpaceHandle:
    """Immutable description of a metric space with marked points.

    Build instances through the classmethod constructors or :func:`load_space`.
    """

    def __init__(self, kind, payload):
        self.kind = Kind(kind)
        self.payload = payload
        self._matrix = self._pairwise()
        self._matrix.flags.writeable = False

    # -- constructors --------------------------------------------------------

    @classmethod
    def finite(cls, matrix, tol=METRIC_TOL):
        report = validate_metric(matrix, tol)
        if not report.ok:
            raise InvalidSpace(f"matrix is not a metric: {report.violations[:3]}")
        D = np.asarray(matrix, dtype=float)
        D = (D + D.T) / 2
        np.fill_diagonal(D, 0.0)
        return cls(Kind.FINITE, FiniteExplicitPayload(D))

    @classmethod
    def euclidean(cls, points):
        P = _as_points(points)
        return cls(Kind.EUCLIDEAN, PointCloudPayload(P.shape[1], P))

    @classmethod
    def linf(cls, points):
        P = _as_points(points)
        return cls(Kind.LINF, PointCloudPayload(P.shape[1], P))

    @classmethod
    def circle(cls, points, circumference=1.0):
        c = float(circumference)
        if not c > 0:
            raise InvalidSpace("circumference must be positive")
        t = np.asarray(points, dtype=float).reshape(-1)
        if len(t) == 0:
            raise InvalidSpace("circle needs at least one point")
        if np.any(t < 0) or np.any(t >= c):
            raise InvalidSpace("arc positions must lie in [0, circumference)")
        return cls(Kind.CIRCLE, CirclePayload(c, t))

    @classmethod
    def sphere(cls, points, radius=1.0):
        s = float(radius)
        if not s > 0:
            raise InvalidSpace("sphere radius must be positive")
        U = _as_points(points, 3)
        norms = np.linalg.norm(U, axis=1)
        if np.any(norms == 0):
            raise InvalidSpace("direction vectors must be non-zero")
        return cls(Kind.SPHERE, SpherePayload(s, U / norms[:, None]))

    @classmethod
    def hyperbolic_disk(cls, points):
        P = _as_points(points, 2)
        if np.any((P * P).sum(axis=1) >= 1):
            raise InvalidSpace("hyperbolic-disk points must satisfy |p| < 1")
        return cls(Kind.HYPERBOLIC, HyperbolicDiskPayload(P))

    @classmethod
    def tree(cls, nodes, edges, points):
        geom = TreeGeometry(nodes, edges)
        marked = [geom.locate(p) for p in points]
        if not marked:
            raise InvalidSpace("tree needs at least one marked point")
        return cls(Kind.TREE, TreePayload(list(nodes), [tuple(e) for e in edges], marked, geom))

    # -- basic accessors -----------------------------------------------------

    @property
    def point_count(self):
        return self._matrix.shape[0]

    @property
    def matrix(self):
        """Pairwise distances between the marked points (read-only)."""
        return self._matrix

    def diameter(self, points=None):
        if points is None:
            return float(self._matrix.max())
        idx = list(points)
        return float(self._matrix[np.ix_(idx, idx)].max())

    @property
    def default_mode(self):
        return WitnessMode.INTRINSIC if self.kind is Kind.FINITE else WitnessMode.AMBIENT

    def resolve_mode(self, mode):
        mode = self.default_mode if mode is None else WitnessMode.parse(mode)
        if mode is WitnessMode.AMBIENT and self.kind is Kind.FINITE:
            raise UnsupportedMode("finite-explicit spaces only support intrinsic-sample witnesses")
        return mode

    def check_index(self, i):
        if not (isinstance(i, (int, np.integer)) and 0 <= i < self.point_count):
            raise IndexOutOfRange(f"point index {i!r} outside 0..{self.point_count - 1}")
        return int(i)

    def location(self, i):
        """Ambient location of marked point ``i``."""
        i = self.check_index(i)
        p = self.payload
        if self.kind is Kind.FINITE:
            return i
        if self.kind is Kind.TREE:
            return p.marked_points[i]
        return p.points[i]

    # -- distances -------------------------------------------------------------

    def _pairwise(self):
        p = self.payload
        k = self.kind
        if k is Kind.FINITE:
            return p.matrix.copy()
        if k is Kind.EUCLIDEAN:
            diff = p.points[:, None, :] - p.points[None, :, :]
            D = np.sqrt((diff**2).sum(axis=2))
        elif k is Kind.LINF:
            D = np.abs(p.points[:, None, :] - p.points[None, :, :]).max(axis=2)
        elif k is Kind.CIRCLE:
            D = circle_dist(p.points[:, None], p.points[None, :], p.circumference)
        elif k is Kind.SPHERE:
            D = _curved.sphere_dist(p.points[:, None, :], p.points[None, :, :], p.radius)
        elif k is Kind.HYPERBOLIC:
            D = _curved.hyperbolic_dist(p.points[:, None, :], p.points[None, :, :])
        else:
            pts = p.marked_points
            D = np.array([[p.geometry.dist(a, b) for b in pts] for a in pts])
        D = (D + D.T) / 2
        np.fill_diagonal(D, 0.0)
        if k in (Kind.EUCLIDEAN, Kind.LINF):
            off = D[~np.eye(len(D), dtype=bool)]
            if off.size and off.min() <= 1e-12:
                raise InvalidSpace("point cloud contains duplicate points")
        return D

    def ambient_dist(self, x, i):
        """Distance from an ambient location ``x`` to marked point ``i``."""
        p = self.payload
        k = self.kind
        i = self.check_index(i)
        if k is Kind.FINITE:
            return float(self._matrix[self.check_index(x), i])
        if k is Kind.EUCLIDEAN:
            return float(np.linalg.norm(np.asarray(x) - p.points[i]))
        if k is Kind.LINF:
            return float(np.abs(np.asarray(x) - p.points[i]).max())
        if k is Kind.CIRCLE:
            return float(circle_dist(x, p.points[i], p.circumference))
        if k is Kind.SPHERE:
            return float(_curved.sphere_dist(np.asarray(x), p.points[i], p.radius))
        if k is Kind.HYPERBOLIC:
            return float(_curved.hyperbolic_dist(np.asarray(x), p.points[i]))
        return p.geometry.dist(p.geometry.locate(x), p.marked_points[i])

    # -- serialisation ---------------------------------------------------------

    def to_json(self):
        p = self.payload
        k = self.kind
        if k is Kind.FINITE:
            return {"type": "finite", "matrix": p.matrix.tolist()}
        if k in (Kind.EUCLIDEAN, Kind.LINF):
            return {"type": k.value, "dim": p.dim, "points": p.points.tolist()}
        if k is Kind.CIRCLE:
            return {"type": "circle", "circumference": p.circumference, "points": p.points.tolist()}
        if k is Kind.SPHERE:
            return {"type": "sphere", "radius": p.radius, "points": p.points.tolist()}
        if k is Kind.HYPERBOLIC:
            return {"type": "hyperbolic-disk", "points": p.points.tolist()}
        return {
            "type": "tree",
            "nodes": p.nodes,
            "edges": [list(e) for e in p.edges],
            "points": [loc.to_json() for loc in p.marked_points],
        }

    def __repr__(self):
        return f"SpaceHandle(kind={self.kind.value!r}, point_count={self.point_count})"


def space_from_json(obj):
    """Build a :class:`SpaceHandle` from a parsed space descriptor."""
    try:
        kind = obj["type"]
        if kind == "finite":
            return SpaceHandle.finite(obj["matrix"])
        if kind in ("euclidean", "linf"):
            P = _as_points(obj["points"], obj.get("dim"))
            return SpaceHandle.euclidean(P) if kind == "euclidean" else SpaceHandle.linf(P)
        if kind == "circle":
            return SpaceHandle.circle(obj["points"], obj.get("circumference", 1.0))
        if kind == "sphere":
            return SpaceHandle.sphere(obj["points"], obj.get("radius", 1.0))
        if kind == "hyperbolic-disk":
            return SpaceHandle.hyperbolic_disk(obj["points"])
        if kind == "tree":
            return SpaceHandle.tree(obj["nodes"], obj["edges"], obj["points"])
    except (KeyError, TypeError) as exc:
        raise InvalidSpace(f"malformed space descriptor: {exc!r}") from exc
    raise InvalidSpace(f"unknown space type {obj.get('type')!r}")


def load_space(path):
    with open(path) as fh:
        return space_from_json(json.load(fh))


def circle_dist(s, t, circumference):
    gap = np.abs(np.asarray(s, dtype=float) - np.asarray(t, dtype=float)) % circumference
    return np.minimum(gap, circumference - gap)


def distance(space, p, q):
    """Distance between marked points ``p`` and ``q``."""
    return float(space.matrix[space.check_index(p), space.check_index(q)])


# -- families of balls ---------------------------------------------------------


def _merge_family(space, centers, values):
    """Drop repeated centers, keeping the smallest associated value."""
    merged = {}
    for c, v in zip(centers, values):
        c = space.check_index(c)
        merged[c] = min(v, merged.get(c, inf))
    idx = list(merged)
    return idx, np.array([merged[c] for c in idx], dtype=float)


class Minimax(NamedTuple):
    value: float
    witness: Any
    exact: bool


def minimax_scaled_distance(space, centers, weights, mode=None):
    """``inf_x max_i d(x, c_i) / w_i`` and a minimizing witness.

    Exact backends (intrinsic scan, circle arcs, l-infinity boxes, trees and
    the Euclidean support enumeration) return ``exact=True``.  Sphere and
    hyperbolic-disk use seeded SQP refinement and return ``exact=False``.
    """
    mode = space.resolve_mode(mode)
    centers = list(centers)
    if not centers:
        raise EmptyFamily("minimax over an empty family")
    weights = np.asarray(weights, dtype=float).reshape(-1)
    if len(weights) != len(centers):
        raise ValueError("centers and weights differ in length")
    if np.any(~(weights > 0)):
        raise NonPositiveWeight("weights must be strictly positive")
    # duplicate centers: the smallest weight is the binding one
    idx, w = _merge_family(space, centers, weights)
    if len(idx) == 1:
        return Minimax(0.0, space.location(idx[0]), True)
    if mode is WitnessMode.INTRINSIC:
        ratios = space.matrix[:, idx] / w
        worst = ratios.max(axis=1)
        best = int(np.argmin(worst))
        return Minimax(float(worst[best]), best, True)
    if len(idx) == 2:
        return _two_center(space, idx, w)
    return _AMBIENT_MINIMAX[space.kind](space, idx, w)


def _two_center(space, idx, w):
    """Closed form in a geodesic space: the point splitting the segment."""
    i, j = idx
    d = space.matrix[i, j]
    value = d / (w[0] + w[1])
    s = value * w[0]
    p = space.payload
    k = space.kind
    if k is Kind.EUCLIDEAN:
        a, b = p.points[i], p.points[j]
        x = a + (b - a) * (s / d)
    elif k in (Kind.LINF, Kind.CIRCLE):
        return _AMBIENT_MINIMAX[k](space, idx, w)
    elif k is Kind.SPHERE:
        x = _curved.sphere_geodesic_point(p.points[i], p.points[j], s, p.radius)
    elif k is Kind.HYPERBOLIC:
        x = _curved.hyperbolic_geodesic_point(p.points[i], p.points[j], s)
    else:
        x = p.geometry.point_along(p.marked_points[i], p.marked_points[j], s)
    return Minimax(float(value), x, k in EXACT_AMBIENT)


def _euclidean_minimax(space, idx, w):
    value, x = _euclid.weighted_center(space.payload.points[idx], w)
    return Minimax(float(value), x, True)


def _linf_witness(P, w, value):
    return (P - value * w[:, None]).max(axis=0)


def _linf_minimax(space, idx, w):
    # separable per coordinate, and 1-d intervals meet iff they meet pairwise
    P = space.payload.points[idx]
    gaps = np.abs(P[:, None, :] - P[None, :, :]).max(axis=2)
    value = float((gaps / (w[:, None] + w[None, :])).max())
    return Minimax(value, _linf_witness(P, w, value), True)


def _circle_minimax(space, idx, w):
    """Exact arc intersection.

    As the scale grows, the first common point of the arcs is where the right
    end of one arc meets the left end of another (possibly its own, once the
    arc wraps the whole circle).  Those scales form a finite candidate list.
    """
    C = space.payload.circumference
    c = space.payload.points[idx]
    bound = C / (2 * w.min())
    cands = []
    for a in range(len(idx)):
        cands.append((C / (2 * w[a]), a))
        for b in range(len(idx)):
            if a == b:
                continue
            gap = (c[b] - c[a]) % C
            for k in range(int(ceil((w[a] + w[b]) / (2 * w.min()))) + 1):
                r = (gap + k * C) / (w[a] + w[b])
                if r > bound * (1 + 1e-12):
                    break
                cands.append((r, a))
    cands.sort()
    for r, a in cands:
        x = (c[a] + r * w[a]) % C
        if np.all(circle_dist(x, c, C) <= r * w * (1 + 1e-12) + 1e-15 * C):
            return Minimax(float(r), float(x), True)
    raise AssertionError("circle minimax: no feasible candidate")  # unreachable


def _tree_minimax(space, idx, w):
    # balls in a tree are subtrees, which intersect iff they meet pairwise
    D = space.matrix[np.ix_(idx, idx)]
    ratios = D / (w[:, None] + w[None, :])
    a, b = np.unravel_index(np.argmax(ratios), ratios.shape)
    value = float(ratios[a, b])
    p = space.payload
    x = p.geometry.point_along(p.marked_points[idx[a]], p.marked_points[idx[b]], value * w[a])
    return Minimax(value, x, True)


# the SQP backends see weights scaled to max 1 so that equal weights give
# bit-identical runs whatever their common value

def _sphere_minimax(space, idx, w):
    p = space.payload
    value, x = _curved.sphere_minimax(p.points[idx], w / w.max(), p.radius)
    return Minimax(value / w.max(), x, False)


def _hyperbolic_minimax(space, idx, w):
    value, x = _curved.hyperbolic_minimax(space.payload.points[idx], w / w.max())
    return Minimax(value / w.max(), x, False)


_AMBIENT_MINIMAX = {
    Kind.EUCLIDEAN: _euclidean_minimax,
    Kind.LINF: _linf_minimax,
    Kind.CIRCLE: _circle_minimax,
    Kind.TREE: _tree_minimax,
    Kind.SPHERE: _sphere_minimax,
    Kind.HYPERBOLIC: _hyperbolic_minimax,
}


def balls_intersect(space, centers, radii, mode=None, tol=1e-9):
    """Whether the closed balls ``B(c_i, r_i)`` share a point.

    Returns ``(found, witness)``; ``witness`` is ``None`` when ``found`` is
    false.  ``tol`` is relative to the radii.  The l-infinity backend ignores
    it and compares coordinate gaps with radius sums exactly.
    """
    mode = space.resolve_mode(mode)
    centers = list(centers)
    radii = np.asarray(radii, dtype=float).reshape(-1)
    if not centers or len(radii) != len(centers):
        raise EmptyFamily("need one radius per center and at least one center")
    if np.any(radii < 0):
        raise ValueError("radii must be non-negative")
    idx, r = _merge_family(space, centers, radii)
    if mode is WitnessMode.INTRINSIC:
        slack = space.matrix[:, idx] - r * (1 + tol)
        ok = np.nonzero(np.all(slack <= 0, axis=1))[0]
        return (True, int(ok[0])) if len(ok) else (False, None)
    if space.kind is Kind.LINF:
        P = space.payload.points[idx]
        gaps = np.abs(P[:, None, :] - P[None, :, :]).max(axis=2)
        if np.all(gaps <= r[:, None] + r[None, :]):
            return True, _linf_witness(P, r, 1.0)
        return False, None
    zero = np.nonzero(r == 0)[0]
    if len(zero):
        # a zero ball is its center: test that point against the rest
        x = space.location(idx[zero[0]])
        if all(space.ambient_dist(x, c) <= rc * (1 + tol) + 1e-15 for c, rc in zip(idx, r)):
            return True, x
        return False, None
    res = minimax_scaled_distance(space, idx, r, WitnessMode.AMBIENT)
    if res.value <= 1 + tol:
        return True, res.witness
    return False, None
