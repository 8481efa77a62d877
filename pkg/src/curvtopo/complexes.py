"""Cech and Vietoris-Rips slices and filtrations over a finite base point list.

Simplices are ascending tuples of point indices of the underlying space.
A *slice* fixes one radius per point; a *filtration* scales a schedule of
weights (``uniform`` means all ones) by a parameter ``t`` and records the
first ``t`` at which each simplex appears.
"""

import csv
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from . import kernels
from .errors import DomainMismatch, MismatchedBases, NonPositiveWeight
from .extremal import RadiusFunction
from .spaces import balls_intersect, minimax_scaled_distance

DEFAULT_DIM_CAP = 2
MAX_DIM_CAP = 5


def facets(simplex):
    if len(simplex) == 1:
        return []
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


def _radii(base_points, r):
    if isinstance(r, RadiusFunction):
        if tuple(r.points) != tuple(base_points):
            raise DomainMismatch("radius function is defined on different points")
        return r.values
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.size == 1:
        return np.full(len(base_points), float(r[0]))
    if len(r) != len(base_points):
        raise DomainMismatch("one radius per base point is required")
    return r


def _check_dim_cap(dim_cap):
    if not 1 <= dim_cap <= MAX_DIM_CAP:
        raise ValueError(f"dim_cap must lie in 1..{MAX_DIM_CAP}")


@dataclass(frozen=True)
class SliceComplex:
    base_points: tuple
    radii: np.ndarray
    simplices: frozenset
    flavor: str
    dim_cap: int

    def by_dim(self, dim):
        return sorted(s for s in self.simplices if len(s) == dim + 1)

    def is_downward_closed(self):
        return all(f in self.simplices for s in self.simplices for f in facets(s))

    def __len__(self):
        return len(self.simplices)


def _grow(base_points, dim_cap, accept):
    """Level-wise construction; a simplex is tested only when all facets exist."""
    present = {(p,) for p in base_points}
    level = sorted(present)
    for _ in range(dim_cap):
        nxt = []
        for s in level:
            for v in base_points:
                if v <= s[-1]:
                    continue
                cand = s + (v,)
                if all(f in present for f in facets(cand)) and accept(cand):
                    nxt.append(cand)
        present.update(nxt)
        level = nxt
        if not level:
            break
    return present


def cech_slice(space, base_points, r, mode=None, dim_cap=DEFAULT_DIM_CAP):
    """Nerve of the balls ``B(x, r(x))``: a simplex iff the balls share a point."""
    _check_dim_cap(dim_cap)
    base_points = tuple(sorted(space.check_index(p) for p in base_points))
    radii = _radii(base_points, r)
    if np.any(radii < 0):
        raise ValueError("radii must be non-negative")
    mode = space.resolve_mode(mode)
    lookup = dict(zip(base_points, radii))

    def accept(s):
        return balls_intersect(space, s, [lookup[v] for v in s], mode)[0]

    simplices = frozenset(_grow(base_points, dim_cap, accept))
    out = SliceComplex(base_points, radii, simplices, "cech", dim_cap)
    assert out.is_downward_closed()
    return out


def vr_slice(base_points, distances, r, dim_cap=DEFAULT_DIM_CAP):
    """Flag complex of the graph ``r_i + r_j >= d_ij``.

    ``distances`` is the matrix between ``base_points`` (same order).
    """
    _check_dim_cap(dim_cap)
    base_points = tuple(base_points)
    D = np.asarray(distances, dtype=float)
    if D.shape != (len(base_points), len(base_points)):
        raise DomainMismatch("distance matrix does not match the base points")
    radii = _radii(base_points, r)
    ok = radii[:, None] + radii[None, :] >= D
    E = np.where(ok, 0.0, np.inf)
    cliques = kernels.get().flag_filtration(E, dim_cap, 0.0)
    simplices = frozenset(_relabel(s, base_points) for s, _ in cliques)
    out = SliceComplex(tuple(sorted(base_points)), radii, simplices, "vr", dim_cap)
    assert out.is_downward_closed()
    return out


def _relabel(simplex, base_points):
    return tuple(sorted(base_points[i] for i in simplex))


def filtration_key(entry):
    simplex, birth = entry
    return (birth, len(simplex), simplex)


@dataclass(frozen=True)
class FilteredComplex:
    """Simplices with birth scales, sorted by (birth, dimension, vertices)."""

    entries: tuple
    base_points: tuple
    dim_cap: int
    schedule: str = "uniform"
    weights: Optional[np.ndarray] = field(default=None, compare=False)
    flavor: str = "cech"

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries, key=filtration_key)))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def births(self):
        return {s: b for s, b in self.entries}

    def simplices(self, dim=None):
        return [s for s, _ in self.entries if dim is None or len(s) == dim + 1]

    def slice_at(self, t):
        """The slice of all simplices born at or before ``t``."""
        simplices = frozenset(s for s, b in self.entries if b <= t)
        radii = (np.ones(len(self.base_points)) if self.weights is None else self.weights) * t
        return SliceComplex(self.base_points, radii, simplices, self.flavor, self.dim_cap)

    def is_monotone(self):
        births = self.births()
        return all(f in births and births[f] <= b for s, b in self.entries for f in facets(s))

    def to_csv(self, path):
        """Rows ``dim,birth,v0,v1,...`` in filtration order."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            for s, b in self.entries:
                writer.writerow([len(s) - 1, repr(float(b)), *s])

    @classmethod
    def from_csv(cls, path, dim_cap=None, flavor="cech"):
        entries = []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row:
                    continue
                dim = int(row[0])
                simplex = tuple(int(v) for v in row[2:])
                if len(simplex) != dim + 1:
                    raise ValueError(f"row {row} lists {len(simplex)} vertices for dimension {dim}")
                entries.append((simplex, float(row[1])))
        base = tuple(sorted({s[0] for s, _ in entries if len(s) == 1}))
        top = max(len(s) for s, _ in entries) - 1 if entries else 0
        return cls(tuple(entries), base, dim_cap if dim_cap is not None else top, "file", None, flavor)


def _weights(base_points, schedule):
    if schedule is None or (isinstance(schedule, str) and schedule == "uniform"):
        return "uniform", np.ones(len(base_points))
    w = _radii(base_points, schedule)
    if np.any(~(w > 0)):
        raise NonPositiveWeight("weighted schedules need strictly positive weights")
    return "weighted", w


def cech_filtration(space, base_points, schedule="uniform", mode=None, dim_cap=DEFAULT_DIM_CAP, t_max=None):
    """Birth of a simplex = least ``t`` with ``B(x_i, t * w_i)`` meeting."""
    _check_dim_cap(dim_cap)
    base_points = tuple(sorted(space.check_index(p) for p in base_points))
    kind, w = _weights(base_points, schedule)
    mode = space.resolve_mode(mode)
    if t_max is None:
        t_max = space.diameter(base_points) / w.min()
    lookup = dict(zip(base_points, w))
    births = {(p,): 0.0 for p in base_points}

    def accept(s):
        b = minimax_scaled_distance(space, s, [lookup[v] for v in s], mode).value
        # guard against rounding below a facet
        b = max([b] + [births[f] for f in facets(s)])
        if b <= t_max:
            births[s] = b
            return True
        return False

    _grow(base_points, dim_cap, accept)
    return FilteredComplex(tuple(births.items()), base_points, dim_cap, kind, w, "cech")


def vr_filtration(base_points, distances, schedule="uniform", dim_cap=DEFAULT_DIM_CAP, t_max=None, backend=None):
    """Edges born at ``d_ij / (w_i + w_j)``, higher simplices at their last edge."""
    _check_dim_cap(dim_cap)
    base_points = tuple(base_points)
    D = np.asarray(distances, dtype=float)
    if D.shape != (len(base_points), len(base_points)):
        raise DomainMismatch("distance matrix does not match the base points")
    order = np.argsort(base_points, kind="stable")
    base_points = tuple(base_points[i] for i in order)
    D = D[np.ix_(order, order)]
    kind, w = _weights(base_points, schedule)
    if t_max is None:
        t_max = D.max() / w.min() if len(D) else 0.0
    E = D / (w[:, None] + w[None, :])
    cliques = kernels.get(backend).flag_filtration(E, dim_cap, float(t_max))
    entries = tuple((tuple(base_points[i] for i in s), float(b)) for s, b in cliques)
    return FilteredComplex(entries, base_points, dim_cap, kind, w, "vr")


def vr_filtration_of(space, base_points, schedule="uniform", dim_cap=DEFAULT_DIM_CAP, t_max=None, backend=None):
    """:func:`vr_filtration` with the distances read from ``space``."""
    base_points = tuple(sorted(space.check_index(p) for p in base_points))
    D = space.matrix[np.ix_(base_points, base_points)]
    if t_max is None:
        _, w = _weights(base_points, schedule)
        t_max = space.diameter(base_points) / w.min()
    return vr_filtration(base_points, D, schedule, dim_cap, t_max, backend)


@dataclass(frozen=True)
class InclusionReport:
    ok: bool
    checked: int
    violations: list

    def to_json(self):
        return {"ok": self.ok, "checked": self.checked, "violations": self.violations}


def check_inclusions(cech, vr, mu, tol=1e-9, dims=None):
    """Check ``birth_vr <= birth_cech <= mu * birth_vr + tol`` per simplex.

    ``dims`` restricts the check to the listed simplex dimensions.  A Cech
    simplex missing from the VR side is itself a violation.
    """
    if tuple(cech.base_points) != tuple(vr.base_points):
        raise MismatchedBases("filtrations are built on different base points")
    vr_births = vr.births()
    violations = []
    checked = 0
    for s, b_cech in cech.entries:
        if dims is not None and len(s) - 1 not in dims:
            continue
        checked += 1
        b_vr = vr_births.get(s)
        if b_vr is None:
            violations.append({"simplex": list(s), "reason": "missing from VR"})
        elif b_vr > b_cech + tol:
            violations.append({"simplex": list(s), "reason": "vr after cech", "vr": b_vr, "cech": b_cech})
        elif b_cech > mu * b_vr + tol:
            violations.append({"simplex": list(s), "reason": "cech after mu*vr", "vr": b_vr, "cech": b_cech})
    return InclusionReport(not violations, checked, violations)


def all_simplices(base_points, dim_cap):
    for k in range(1, dim_cap + 2):
        yield from combinations(sorted(base_points), k)
