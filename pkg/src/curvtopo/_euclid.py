"""Weighted Euclidean 1-center: ``min_x max_i |x - c_i| / w_i``.

The optimum is supported on an affinely independent subset ``A`` of at most
``dim + 1`` centers, lies in their affine hull and satisfies
``|x - c_i| = t * w_i`` for ``i`` in ``A``.  Subtracting those equations pairwise
is linear in ``x`` once ``T = t**2`` is fixed, which leaves one quadratic in
``T``.  Enumerating supports therefore gives the optimum in closed form; the
candidate with the smallest achieved objective wins.
"""

from itertools import combinations
from math import comb, sqrt

import numpy as np

# beyond this many supports switch to the cutting-plane loop
MAX_SUPPORTS = 20000

FEAS_RTOL = 1e-10


def _quadratic_roots(a, b, c):
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0:
        return []
    a, b, c = a / scale, b / scale, c / scale
    if abs(a) < 1e-14:
        if abs(b) < 1e-14:
            return []
        return [-c / b]
    disc = b * b - 4 * a * c
    if disc < 0:
        if disc > -1e-12:
            disc = 0.0
        else:
            return []
    root = sqrt(disc)
    q = -0.5 * (b + np.copysign(root, b))
    roots = [q / a]
    if q != 0:
        roots.append(c / q)
    return roots


def _polish(P, w, T, y, c0, V, steps=4):
    """Newton steps on ``|c0 + V y - c_i|^2 = T w_i^2`` over the support."""
    w2 = w**2
    for _ in range(steps):
        x = c0 + V @ y
        diff = x - P
        F = (diff**2).sum(axis=1) - T * w2
        if not np.all(np.isfinite(F)):
            break
        J = np.column_stack([2.0 * diff @ V, -w2])
        try:
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            break
        y = y - step[:-1]
        T = T - step[-1]
    return T, y


def _support_candidates(P, w):
    """Candidate (T, x) pairs for the support ``P`` (rows) with weights ``w``."""
    m = len(P)
    if m == 1:
        return [(0.0, P[0].copy())]
    c0 = P[0]
    V = (P[1:] - c0).T
    G = V.T @ V
    if np.linalg.matrix_rank(G, tol=1e-12 * max(1.0, np.abs(G).max())) < m - 1:
        return []
    Ginv = np.linalg.inv(G)
    g = np.diag(G)
    h = w[1:] ** 2 - w[0] ** 2
    a = Ginv @ g / 2.0
    b = Ginv @ h / 2.0
    qa = b @ G @ b
    qb = -(2.0 * (a @ G @ b) + w[0] ** 2)
    qc = a @ G @ a
    out = []
    for T in _quadratic_roots(qa, qb, qc):
        if T < -1e-14:
            continue
        T = max(T, 0.0)
        y = a - T * b
        # the closed-form root loses digits on thin simplices
        T2, y2 = _polish(P, w, T, y, c0, V)
        if T2 >= 0 and np.all(np.isfinite(y2)):
            T, y = T2, y2
        out.append((T, c0 + V @ y))
    return out


def _enumerate(P, w):
    """Best achieved objective over all support candidates.

    Every candidate is scored by its true objective over the whole family,
    so a rounding error in a root can only cost accuracy, never validity.
    """
    dim = P.shape[1]
    best_t, best_x = np.inf, None
    for m in range(1, min(len(P), dim + 1) + 1):
        for support in combinations(range(len(P)), m):
            idx = list(support)
            for T, x in _support_candidates(P[idx], w[idx]):
                if sqrt(T) > best_t * (1 + FEAS_RTOL):
                    continue
                t = float((np.sqrt(((P - x) ** 2).sum(axis=1)) / w).max())
                if t < best_t:
                    best_t, best_x = t, x
    return best_t, best_x


def _cutting_plane(P, w):
    ratios = np.sqrt(((P[:, None, :] - P[None, :, :]) ** 2).sum(axis=2)) / (w[:, None] + w[None, :])
    i, j = np.unravel_index(np.argmax(ratios), ratios.shape)
    active = sorted({int(i), int(j)})
    while True:
        t, x = _enumerate(P[active], w[active])
        r = np.sqrt(((P - x) ** 2).sum(axis=1)) / w
        worst = int(np.argmax(r))
        if r[worst] <= t * (1 + FEAS_RTOL) + 1e-13 or worst in active:
            return t, x
        active.append(worst)


def weighted_center(points, weights):
    """Exact weighted minimax value and minimizer of a finite family."""
    points = np.asarray(points, dtype=float)
    weights = np.asarray(weights, dtype=float)
    k, dim = points.shape
    if k == 1:
        return 0.0, points[0].copy()
    offset = points.mean(axis=0)
    scale = np.abs(points - offset).max()
    if scale == 0:
        return 0.0, points[0].copy()
    P = (points - offset) / scale
    wmax = weights.max()
    w = weights / wmax
    n_supports = sum(comb(k, m) for m in range(1, min(k, dim + 1) + 1))
    if n_supports > MAX_SUPPORTS:
        _, x = _cutting_plane(P, w)
    else:
        _, x = _enumerate(P, w)
    # report the achieved objective, not the algebraic root
    value = float((np.sqrt(((P - x) ** 2).sum(axis=1)) / w).max())
    return value * scale / wmax, x * scale + offset
