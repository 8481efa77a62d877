"""Curvature profiles: ``rho`` against half perimeter ``r`` for sampled triples."""

import csv
from dataclasses import dataclass
from math import comb, sqrt
from typing import Any, Optional

import numpy as np

from .errors import DegenerateLeak, DegenerateTriple, SampleTooSmall
from .rho import rho_triple, witness_json
from .triples import TriangleSides, lambda_measure

DEFAULT_BIN_CENTERS = (5 / 4, 6 / 4, 7 / 4, 2.0)
DEFAULT_HALF_WIDTH = 0.02
DEFAULT_BINS = tuple((c, DEFAULT_HALF_WIDTH) for c in DEFAULT_BIN_CENTERS)
CSV_HEADER = ["i", "j", "k", "d12", "d13", "d23", "r", "lambda", "rho", "attained"]

REFERENCE_LINES = ((1.0, "ρ = 1"), (2 / sqrt(3), "ρ = 2/√3"), (2.0, "ρ = 2"))
BIN_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")
UNBINNED_COLOR = "#999999"


@dataclass(frozen=True)
class ProfileRecord:
    indices: tuple
    sides: TriangleSides
    r: float
    lambda_: float
    rho: float
    witness: Any = None
    attained: bool = True
    bin: Optional[int] = None

    def row(self):
        i, j, k = self.indices
        values = [*self.sides, self.r, self.lambda_, self.rho]
        return [i, j, k, *(format(float(v), ".17g") for v in values), "true" if self.attained else "false"]

    def to_json(self):
        return {
            "indices": list(self.indices),
            "sides": [float(s) for s in self.sides],
            "r": self.r,
            "lambda": self.lambda_,
            "rho": self.rho,
            "witness": witness_json(self.witness),
            "attained": self.attained,
            "bin": self.bin,
        }


class Profile(list):
    """Records plus the triples skipped as degenerate (``(i, j, k, lambda)``)."""

    def __init__(self, records=(), degenerate=()):
        super().__init__(records)
        self.degenerate = list(degenerate)

    def in_bin(self, index):
        return [rec for rec in self if rec.bin == index]


def _normalize_bins(bins):
    out = []
    for b in bins:
        center, hw = b if isinstance(b, (tuple, list)) else (b, DEFAULT_HALF_WIDTH)
        out.append((float(center), float(hw)))
    return tuple(out)


def _bin_of(lam, bins):
    for index, (center, hw) in enumerate(bins):
        if center - hw <= lam <= center + hw:
            return index
    return None


def _unrank_triple(rank, n):
    """The ``rank``-th 3-subset of ``range(n)`` in colexicographic order."""
    out = []
    for k in (3, 2, 1):
        c = k - 1
        while comb(c + 1, k) <= rank:
            c += 1
        out.append(c)
        rank -= comb(c, k)
    return tuple(sorted(out))


def sample_triples(n, n_triples, seed=0):
    """Position triples: all of them if they fit, else distinct seeded draws."""
    total = comb(n, 3)
    if total <= n_triples:
        ranks = range(total)
    else:
        rng = np.random.default_rng(seed)
        ranks = sorted(int(v) for v in rng.choice(total, size=n_triples, replace=False))
    return sorted(_unrank_triple(r, n) for r in ranks)


def curvature_profile(space, sample=None, lambda_bins=DEFAULT_BINS, n_triples=1000, mode=None, seed=0):
    """One record per non-degenerate sampled triple.

    Collinear triples (``lambda = 1``, a vanishing Gromov radius) are listed
    in ``Profile.degenerate`` rather than dropped silently; on a circle these
    are the triples whose perimeter falls short of the circumference.
    """
    sample = [space.check_index(p) for p in (range(space.point_count) if sample is None else sample)]
    if len(set(sample)) < 3:
        raise SampleTooSmall("need at least three distinct sample points")
    sample = sorted(set(sample))
    bins = _normalize_bins(lambda_bins)
    records, degenerate = [], []
    for a, b, c in sample_triples(len(sample), n_triples, seed):
        idx = (sample[a], sample[b], sample[c])
        sides = TriangleSides.of(space, *idx)
        if max(sides) == 0:
            degenerate.append((*idx, float("nan")))
            continue
        lam = float(lambda_measure(sides).value)
        try:
            res = rho_triple(space, *idx, mode=mode)
        except DegenerateTriple:
            degenerate.append((*idx, lam))
            continue
        r = sides.perimeter / 2
        records.append(ProfileRecord(idx, sides, r, lam, float(res.rho), res.witness, res.attained, _bin_of(lam, bins)))
    return Profile(records, degenerate)


def _sorted_records(records):
    return sorted(records, key=lambda rec: (rec.r, rec.indices))


def emit_profile_csv(records, path):
    """Write records sorted by ``r`` then indices, floats at 17 digits."""
    if not records:
        raise ValueError("no records to write")
    for rec in records:
        if not all(np.isfinite([rec.r, rec.lambda_, rec.rho])):
            raise DegenerateLeak(f"non-finite value in record {rec.indices}")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in _sorted_records(records):
            writer.writerow(rec.row())


def read_profile_csv(path, lambda_bins=DEFAULT_BINS):
    bins = _normalize_bins(lambda_bins)
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(f"unexpected header {reader.fieldnames}")
        for row in reader:
            lam = float(row["lambda"])
            out.append(
                ProfileRecord(
                    (int(row["i"]), int(row["j"]), int(row["k"])),
                    TriangleSides(float(row["d12"]), float(row["d13"]), float(row["d23"])),
                    float(row["r"]),
                    lam,
                    float(row["rho"]),
                    None,
                    row["attained"] == "true",
                    _bin_of(lam, bins),
                )
            )
    return out


def _fmt(x):
    return f"{x:.2f}"


def emit_profile_svg(records, path, lambda_bins=DEFAULT_BINS, title=None):
    """Scatter of ``(r, rho)`` with the three model reference lines.

    Fixed 800x500 canvas; axes span ``[0, max r]`` and a ``rho`` range that
    always contains the reference lines.  Only non-empty bins get a legend
    entry; points outside every bin are drawn grey.
    """
    if not records:
        raise ValueError("no records to plot")
    bins = _normalize_bins(lambda_bins)
    width, height = 800, 500
    left, right, top, bottom = 70, 160, 30, 50
    pw, ph = width - left - right, height - top - bottom
    x_hi = max(rec.r for rec in records) or 1.0
    y_lo = min(0.9, min(rec.rho for rec in records) - 0.05)
    y_hi = max(2.1, max(rec.rho for rec in records) + 0.05)

    def sx(r):
        return left + pw * r / x_hi

    def sy(rho):
        return top + ph * (y_hi - rho) / (y_hi - y_lo)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{width / 2}" y="18" text-anchor="middle" font-size="14">{title}</text>')
    # axes
    parts.append(f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>')
    parts.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>')
    for t in np.linspace(0, x_hi, 5):
        x = sx(t)
        parts.append(f'<line x1="{_fmt(x)}" y1="{top + ph}" x2="{_fmt(x)}" y2="{top + ph + 5}" stroke="black"/>')
        parts.append(f'<text x="{_fmt(x)}" y="{top + ph + 18}" text-anchor="middle" font-size="11">{t:.3g}</text>')
    parts.append(f'<text x="{left + pw / 2}" y="{height - 10}" text-anchor="middle" font-size="13">r</text>')
    parts.append(f'<text x="20" y="{top + ph / 2}" text-anchor="middle" font-size="13">ρ</text>')
    for value, label in REFERENCE_LINES:
        y = _fmt(sy(value))
        parts.append(
            f'<line x1="{left}" y1="{y}" x2="{left + pw}" y2="{y}" stroke="#444" stroke-dasharray="6,4"/>'
        )
        parts.append(f'<text x="{left - 6}" y="{y}" text-anchor="end" font-size="11">{label}</text>')
    used = set()
    for rec in _sorted_records(records):
        color = UNBINNED_COLOR if rec.bin is None else BIN_COLORS[rec.bin % len(BIN_COLORS)]
        used.add(rec.bin)
        parts.append(f'<circle cx="{_fmt(sx(rec.r))}" cy="{_fmt(sy(rec.rho))}" r="3" fill="{color}"/>')
    legend_y = top + 10
    for index, (center, hw) in enumerate(bins):
        if index not in used:
            continue
        color = BIN_COLORS[index % len(BIN_COLORS)]
        x = left + pw + 20
        parts.append(f'<circle cx="{x}" cy="{legend_y}" r="4" fill="{color}"/>')
        parts.append(f'<text x="{x + 10}" y="{legend_y + 4}" font-size="12">λ = {center:g} ± {hw:g}</text>')
        legend_y += 20
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
