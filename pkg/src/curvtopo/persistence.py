"""Persistent homology over GF(2) and brute-force Betti numbers."""

import csv
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .complexes import facets
from .errors import InvalidFiltration, TooLarge

BRUTEFORCE_LIMIT = 5000


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth: float
    death: float
    creator: tuple
    destroyer: Optional[tuple] = None

    @property
    def zero_length(self):
        return self.death == self.birth

    @property
    def essential(self):
        return self.destroyer is None

    def alive_at(self, t):
        return self.birth <= t < self.death


@dataclass(frozen=True)
class Barcode:
    pairs: tuple
    dim_cap: int

    def bars(self, dim=None, positive_only=False):
        return [
            p
            for p in self.pairs
            if (dim is None or p.dim == dim) and not (positive_only and p.zero_length)
        ]

    def bars_at(self, t, dim):
        """Bars of dimension ``dim`` alive at scale ``t``."""
        return [p for p in self.pairs if p.dim == dim and p.alive_at(t)]

    def betti_at(self, t, dim):
        return len(self.bars_at(t, dim))

    def rows(self):
        return sorted((p.dim, p.birth, p.death) for p in self.pairs)

    def to_json(self):
        return [{"dim": d, "birth": b, "death": None if np.isinf(e) else e} for d, b, e in self.rows()]

    def to_csv(self, path):
        """Rows ``dim,birth,death`` sorted; infinite deaths written as ``inf``."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["dim", "birth", "death"])
            for d, b, e in self.rows():
                writer.writerow([d, repr(float(b)), "inf" if np.isinf(e) else repr(float(e))])

    @staticmethod
    def read_csv(path):
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            return [(int(r["dim"]), float(r["birth"]), float(r["death"])) for r in reader]


def boundary_matrix(filtration):
    """Sparse boundary columns of a filtration in its own order.

    Returns ``(indptr, indices, dims)`` and raises :class:`InvalidFiltration`
    when a facet is missing or enters after its coface.
    """
    position = {}
    births = []
    indptr = [0]
    indices = []
    dims = []
    for j, (s, b) in enumerate(filtration.entries):
        if s in position:
            raise InvalidFiltration(f"simplex {s} listed twice")
        rows = []
        for f in facets(s):
            i = position.get(f)
            if i is None:
                raise InvalidFiltration(f"facet {f} of {s} missing or listed later")
            if births[i] > b:
                raise InvalidFiltration(f"facet {f} born at {births[i]} after {s} at {b}")
            rows.append(i)
        position[s] = j
        births.append(b)
        rows.sort()
        indices.extend(rows)
        indptr.append(len(indices))
        dims.append(len(s) - 1)
    return (
        np.asarray(indptr, dtype=np.int64),
        np.asarray(indices, dtype=np.int64),
        np.asarray(dims, dtype=np.int64),
    )


def compute_persistence(filtration, max_dim=None, backend=None):
    """Barcode of a filtered complex, dimensions ``0..max_dim``.

    ``max_dim`` defaults to ``dim_cap - 1``: the top dimension has no
    cofaces in a truncated complex, so its classes would never die.
    Zero-length pairs are kept (flagged by :attr:`PersistencePair.zero_length`).
    """
    entries = filtration.entries
    if any(b != b for _, b in entries):
        raise InvalidFiltration("NaN birth")
    if max_dim is None:
        max_dim = max(filtration.dim_cap - 1, 0)
    indptr, indices, dims = boundary_matrix(filtration)
    low = kernels.get(backend).reduce_boundary(indptr, indices, dims)
    pairs = []
    paired = set()
    for j, i in enumerate(low.tolist()):
        if i < 0:
            continue
        paired.add(i)
        s, death = entries[j]
        c, birth = entries[i]
        if len(c) - 1 <= max_dim:
            pairs.append(PersistencePair(len(c) - 1, birth, death, c, s))
    for i, (s, b) in enumerate(entries):
        if low[i] < 0 and i not in paired and len(s) - 1 <= max_dim:
            pairs.append(PersistencePair(len(s) - 1, b, np.inf, s))
    pairs.sort(key=lambda p: (p.dim, p.birth, p.death, p.creator))
    return Barcode(tuple(pairs), max_dim)


def _rank_gf2(M):
    """Rank of a dense 0/1 matrix over GF(2) by Gaussian elimination."""
    M = (np.asarray(M, dtype=np.uint8) & 1).copy()
    rows, cols = M.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        hits = np.nonzero(M[rank:, c])[0]
        if not len(hits):
            continue
        p = rank + hits[0]
        if p != rank:
            M[[rank, p]] = M[[p, rank]]
        others = np.nonzero(M[:, c])[0]
        others = others[others != rank]
        M[others] ^= M[rank]
        rank += 1
    return rank


def _boundary_dense(lower, upper):
    index = {s: i for i, s in enumerate(lower)}
    M = np.zeros((len(lower), len(upper)), dtype=np.uint8)
    for j, s in enumerate(upper):
        for f in facets(s):
            M[index[f], j] = 1
    return M


def betti_bruteforce(complex_, dim):
    """``dim(ker d_dim) - rank d_{dim+1}`` from dense GF(2) matrices."""
    if len(complex_) > BRUTEFORCE_LIMIT:
        raise TooLarge(f"{len(complex_)} simplices exceed the dense limit {BRUTEFORCE_LIMIT}")
    cells = [complex_.by_dim(d) for d in range(dim + 2)]
    n = len(cells[dim])
    rank_down = _rank_gf2(_boundary_dense(cells[dim - 1], cells[dim])) if dim > 0 and n else 0
    rank_up = _rank_gf2(_boundary_dense(cells[dim], cells[dim + 1])) if cells[dim + 1] else 0
    return n - rank_down - rank_up


def homology_trivial_above_dim0(complex_, max_dim=None):
    """True when every Betti number in ``1..max_dim`` vanishes."""
    if max_dim is None:
        max_dim = complex_.dim_cap - 1
    return all(betti_bruteforce(complex_, d) == 0 for d in range(1, max_dim + 1))
