"""Shared generators for the test suite."""

from math import acosh, cosh, pi, sqrt, tanh

import numpy as np
from scipy.sparse.csgraph import shortest_path


def random_metric(rng, n, density=0.6):
    """Shortest-path metric of a random connected weighted graph."""
    W = np.zeros((n, n))
    for i in range(1, n):
        j = int(rng.integers(i))
        W[i, j] = W[j, i] = rng.uniform(0.5, 3.0)
    extra = np.triu(rng.random((n, n)) < density, 1)
    weights = rng.uniform(0.5, 3.0, (n, n))
    W = np.where(extra & (W == 0), weights, W)
    W = np.triu(W, 1)
    W = W + W.T
    return shortest_path(W, directed=False)


def hyperbolic_equilateral(a):
    """Disk coordinates of an equilateral triangle with side ``a`` centred at 0."""
    R = acosh(sqrt((2 * cosh(a) + 1) / 3))
    rad = tanh(R / 2)
    angles = np.array([0, 2 * pi / 3, 4 * pi / 3])
    return np.column_stack([rad * np.cos(angles), rad * np.sin(angles)])


def circle_triple_not_in_half(rng):
    """Three positions on a circle of circumference 2*pi not in a half circle."""
    while True:
        t = np.sort(rng.uniform(0, 2 * pi, 3))
        gaps = np.diff(np.append(t, t[0] + 2 * pi))
        if gaps.max() < pi - 1e-6 and gaps.min() > 1e-3:
            return t
