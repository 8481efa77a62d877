"""Per-triangle invariants: Gromov products, the lambda measure, lambda classes.

Everything here is plain arithmetic on the three side lengths, so the
functions accept ``fractions.Fraction`` as well as floats and stay exact on
rational input.
"""

from dataclasses import dataclass
from typing import Any, NamedTuple, Optional, Sequence

from .errors import DegenerateAllZero, TriangleInequalityViolated

DEGENERACY_RTOL = 1e-12

# pair labels in reporting order; ties for the longest side go to the first
PAIRS = ((0, 1), (0, 2), (1, 2))


class TriangleSides(NamedTuple):
    d12: Any
    d13: Any
    d23: Any

    @classmethod
    def of(cls, space, i, j, k):
        D = space.matrix
        return cls(float(D[i, j]), float(D[i, k]), float(D[j, k]))

    @property
    def perimeter(self):
        return self.d12 + self.d13 + self.d23

    def by_pair(self):
        return {(0, 1): self.d12, (0, 2): self.d13, (1, 2): self.d23}


@dataclass(frozen=True)
class GromovRadii:
    r1: Any
    r2: Any
    r3: Any
    sides: TriangleSides

    def as_tuple(self):
        return (self.r1, self.r2, self.r3)

    def is_degenerate(self, rtol=DEGENERACY_RTOL):
        """True when some radius vanishes relative to the perimeter (collinear)."""
        return min(self.as_tuple()) <= rtol * self.sides.perimeter


@dataclass(frozen=True)
class LambdaMeasure:
    value: Any
    argmax_edge: tuple


def check_sides(sides, rtol=1e-9):
    sides = TriangleSides(*sides)
    if min(sides) < 0:
        raise TriangleInequalityViolated(f"negative side length in {tuple(sides)}")
    slack = rtol * sides.perimeter
    a, b, c = sides
    if a > b + c + slack or b > a + c + slack or c > a + b + slack:
        raise TriangleInequalityViolated(f"sides {tuple(sides)} violate the triangle inequality")
    return sides


def gromov_products(sides):
    """Radii ``(r1, r2, r3)`` with ``r_i + r_j = d_ij``.

    >>> gromov_products((3, 4, 5)).as_tuple()
    (1.0, 2.0, 3.0)
    """
    d12, d13, d23 = sides = check_sides(sides)
    radii = [(d12 + d13 - d23) / 2, (d12 + d23 - d13) / 2, (d13 + d23 - d12) / 2]
    # within-tolerance triangle violations would leave tiny negatives
    radii = [r if r > 0 else r * 0 for r in radii]
    return GromovRadii(*radii, sides=sides)


def lambda_measure(sides):
    """Sum of the two shorter sides over the longest one, in ``[1, 2]``."""
    sides = check_sides(sides)
    lengths = sides.by_pair()
    longest = max(PAIRS, key=lambda p: (lengths[p], -PAIRS.index(p)))
    top = lengths[longest]
    if top == 0:
        raise DegenerateAllZero("all three sides are zero")
    rest = [lengths[p] for p in PAIRS if p != longest]
    value = (rest[0] + rest[1]) / top
    return LambdaMeasure(value, longest)


def classify_triple(sides, bins: Sequence, half_width: Optional[float] = None):
    """Index of the lambda bin containing the triangle, or ``None``.

    ``bins`` holds either bare centers (with a shared ``half_width``) or
    ``(center, half_width)`` pairs.
    """
    lam = lambda_measure(sides).value
    for index, b in enumerate(bins):
        center, hw = (b, half_width) if half_width is not None else b
        if center - hw <= lam <= center + hw:
            return index
    return None
