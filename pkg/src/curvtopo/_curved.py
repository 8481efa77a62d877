"""Weighted minimax on the round sphere and the hyperbolic plane.

Both solvers seed from a coarse grid, then refine the best few seeds with SQP
on the epigraph form ``min t  s.t.  d(x, c_i) <= t * w_i`` written in a local
chart centred on the seed, and finally polish: Newton on three tight
constraints and the exact split point of two, for the few largest ratios.
Every candidate is scored by its achieved objective.  Constraints are expressed through ``cos`` (sphere)
and ``cosh`` (hyperbolic) so they stay smooth at the centers themselves.
"""

from itertools import combinations
from math import pi

import numpy as np
from scipy.optimize import minimize

N_STARTS = 4
SEED_SEPARATION = 1e-3


# -- sphere -----------------------------------------------------------------

def sphere_dist(U, V, radius=1.0):
    """Geodesic distance between rows of unit-vector arrays (broadcasting)."""
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    cross = np.linalg.norm(np.cross(U, V), axis=-1)
    dot = (U * V).sum(axis=-1)
    return radius * np.arctan2(cross, dot)


def sphere_geodesic_point(u, v, s, radius=1.0):
    """Point at distance ``s`` from ``u`` towards ``v``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    theta = sphere_dist(u, v)
    if theta == 0:
        return u.copy()
    tangent = v - np.dot(u, v) * u
    norm = np.linalg.norm(tangent)
    if norm < 1e-15:  # antipodal: any great circle will do
        tangent = _orthonormal_frame(u)[0]
    else:
        tangent = tangent / norm
    angle = s / radius
    return np.cos(angle) * u + np.sin(angle) * tangent


def _orthonormal_frame(n):
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = helper - np.dot(helper, n) * n
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    return e1, e2


def fibonacci_sphere(n):
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    phi = pi * (1 + 5**0.5) * k
    r = np.sqrt(1 - z * z)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


# 642 = vertex count of a level-3 icosphere
SPHERE_SEEDS = fibonacci_sphere(642)


def _pick_seeds(candidates, values, n):
    order = np.argsort(values, kind="stable")
    picked = []
    for i in order:
        if all(np.linalg.norm(candidates[i] - candidates[j]) > SEED_SEPARATION for j in picked):
            picked.append(i)
        if len(picked) == n:
            break
    return picked


POLISH_TOP = 4


def _newton_tight(z, dist_grad, w, subset, steps=8):
    """Newton on ``d(x, c_i) = t * w_i`` for ``i`` in ``subset``.

    ``dist_grad(y)`` returns distances and their chart gradients; ``z`` is
    ``(y1, y2, t)``.  Distance form keeps the system well scaled even when
    a weight is tiny.
    """
    subset = list(subset)
    for _ in range(steps):
        d, g = dist_grad(z[:2])
        F = d[subset] - z[2] * w[subset]
        J = np.column_stack([g[subset], -w[subset]])
        try:
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(step)):
            return None
        z = z - step
    return z


def _polish_candidates(z, ratios, w, dist_grad, split_point):
    """Points from the active-set polish around a refined chart point ``z``."""
    top = [int(i) for i in np.argsort(-ratios, kind="stable")[:POLISH_TOP]]
    out = []
    for subset in combinations(sorted(top), 3):
        zz = _newton_tight(z, dist_grad, w, subset)
        if zz is not None:
            out.append(("chart", zz))
    for i, j in combinations(sorted(top[:3]), 2):
        out.append(("point", split_point(i, j)))
    return out


def sphere_minimax(centers, weights, radius=1.0):
    """Minimize ``max_i d(x, c_i) / w_i`` over the sphere of the given radius."""
    U = np.asarray(centers, dtype=float)
    w = np.asarray(weights, dtype=float)
    cands = np.vstack([SPHERE_SEEDS, U])
    values = (sphere_dist(cands[:, None, :], U[None, :, :], radius) / w).max(axis=1)
    best_val, best_x = np.inf, None
    for i in _pick_seeds(cands, values, N_STARTS):
        for x in _sphere_refine(U, w, radius, cands[i]):
            val = float((sphere_dist(x[None, :], U, radius) / w).max())
            if val < best_val:
                best_val, best_x = val, x
        if values[i] < best_val:
            best_val, best_x = float(values[i]), cands[i].copy()
    return best_val, best_x


def _sphere_refine(U, w, radius, seed):
    U = U / np.linalg.norm(U, axis=1)[:, None]
    e1, e2 = _orthonormal_frame(seed)
    E = np.stack([e1, e2], axis=1)
    t0 = float((sphere_dist(seed[None, :], U, radius) / w).max())
    a = w / radius

    def embed(y):
        p = seed + E @ y
        n = np.linalg.norm(p)
        return p / n, n

    def cons(z):
        x, _ = embed(z[:2])
        return U @ x - np.cos(np.minimum(z[2] * a, pi))

    def cons_jac(z):
        x, n = embed(z[:2])
        proj = (np.eye(3) - np.outer(x, x)) @ E / n
        dt = np.where(z[2] * a < pi, np.sin(z[2] * a) * a, 0.0)
        return np.hstack([U @ proj, dt[:, None]])

    res = minimize(
        lambda z: z[2],
        np.array([0.0, 0.0, t0]),
        jac=lambda z: np.array([0.0, 0.0, 1.0]),
        constraints=[{"type": "ineq", "fun": cons, "jac": cons_jac}],
        method="SLSQP",
        options={"ftol": 1e-15, "maxiter": 500},
    )
    x = embed(res.x[:2])[0]

    def dist_grad(y):
        p, n = embed(y)
        d = sphere_dist(p[None, :], U, radius)
        # unit tangent at p pointing away from each center
        tang = (U @ p)[:, None] * p[None, :] - U
        norms = np.linalg.norm(tang, axis=1)
        tang = tang / np.where(norms > 0, norms, 1.0)[:, None]
        proj = (np.eye(3) - np.outer(p, p)) @ E / n
        return d, radius * tang @ proj

    def split_point(i, j):
        d = sphere_dist(U[i], U[j], radius)
        return sphere_geodesic_point(U[i], U[j], d * w[i] / (w[i] + w[j]), radius)

    out = [x]
    if np.all(np.isfinite(x)):
        ratios = sphere_dist(x[None, :], U, radius) / w
        for kind, c in _polish_candidates(res.x, ratios, w, dist_grad, split_point):
            out.append(embed(c[:2])[0] if kind == "chart" else c)
    return [p for p in out if np.all(np.isfinite(p))]


# -- hyperbolic plane (Poincare disk) ----------------------------------------

def hyperbolic_dist(u, v):
    """Poincare-disk distance, ``cosh d = 1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2))``.

    Evaluated as ``2 asinh(|u-v| / sqrt((1-|u|^2)(1-|v|^2)))`` for accuracy at
    short range; the two expressions agree identically.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    num = np.linalg.norm(u - v, axis=-1)
    den = np.sqrt((1 - (u * u).sum(axis=-1)) * (1 - (v * v).sum(axis=-1)))
    return 2 * np.arcsinh(num / den)


def _to_complex(p):
    return complex(p[0], p[1])


def _mobius(z, m):
    """Disk isometry sending ``m`` to the origin."""
    return (z - m) / (1 - np.conj(m) * z)


def _mobius_inv(z, m):
    return (z + m) / (1 + np.conj(m) * z)


def _disk_to_hyperboloid(P):
    sq = (P * P).sum(axis=-1)
    x0 = (1 + sq) / (1 - sq)
    xs = 2 * P / (1 - sq)[..., None]
    return x0, xs


def _hyperboloid_to_disk(y):
    return y / (1 + np.sqrt(1 + y @ y))


def hyperbolic_geodesic_point(u, v, s):
    """Point at distance ``s`` from ``u`` towards ``v`` in the disk."""
    m = _to_complex(u)
    zv = _mobius(_to_complex(v), m)
    if zv == 0:
        return np.asarray(u, dtype=float).copy()
    # from the origin, geodesics are diameters; |z| = tanh(s/2)
    z = np.tanh(s / 2) * zv / abs(zv)
    out = _mobius_inv(z, m)
    return np.array([out.real, out.imag])


def _polar_seeds(reach, n_r=64, n_theta=64):
    radii = np.tanh(np.linspace(0.0, reach, n_r)[1:] / 2)
    theta = np.linspace(0.0, 2 * pi, n_theta, endpoint=False)
    rr, tt = np.meshgrid(radii, theta, indexing="ij")
    pts = np.stack([rr * np.cos(tt), rr * np.sin(tt)], axis=-1).reshape(-1, 2)
    return np.vstack([[0.0, 0.0], pts])


def hyperbolic_minimax(centers, weights):
    """Minimize ``max_i d(x, c_i) / w_i`` over the Poincare disk."""
    P = np.asarray(centers, dtype=float)
    w = np.asarray(weights, dtype=float)
    reach = float(hyperbolic_dist(np.zeros(2), P).max())
    cands = np.vstack([_polar_seeds(max(reach, 1e-6)), P])
    values = (hyperbolic_dist(cands[:, None, :], P[None, :, :]) / w).max(axis=1)
    best_val, best_x = np.inf, None
    for i in _pick_seeds(cands, values, N_STARTS):
        for x in _hyperbolic_refine(P, w, cands[i]):
            val = float((hyperbolic_dist(x[None, :], P) / w).max())
            if val < best_val:
                best_val, best_x = val, x
        if values[i] < best_val:
            best_val, best_x = float(values[i]), cands[i].copy()
    return best_val, best_x


def _hyperbolic_refine(P, w, seed):
    m = _to_complex(seed)
    Z = _mobius(P[:, 0] + 1j * P[:, 1], m)
    moved = np.stack([Z.real, Z.imag], axis=1)
    c0, cs = _disk_to_hyperboloid(moved)
    t0 = float((hyperbolic_dist(np.zeros(2), moved) / w).max())

    def cons(z):
        y, t = z[:2], z[2]
        y0 = np.sqrt(1 + y @ y)
        B = c0 * y0 - cs @ y
        return 1 - B / np.cosh(t * w)

    def cons_jac(z):
        y, t = z[:2], z[2]
        y0 = np.sqrt(1 + y @ y)
        B = c0 * y0 - cs @ y
        ch = np.cosh(t * w)
        dB = c0[:, None] * (y / y0)[None, :] - cs
        # sinh / cosh^2 written so that large trial steps cannot overflow
        dt = B * w * np.tanh(t * w) / ch
        return np.hstack([-dB / ch[:, None], dt[:, None]])

    def to_disk(z):
        q = _hyperboloid_to_disk(z[:2])
        out = _mobius_inv(complex(q[0], q[1]), m)
        return np.array([out.real, out.imag])

    with np.errstate(all="ignore"):
        res = minimize(
            lambda z: z[2],
            np.array([0.0, 0.0, t0]),
            jac=lambda z: np.array([0.0, 0.0, 1.0]),
            constraints=[{"type": "ineq", "fun": cons, "jac": cons_jac}],
            method="SLSQP",
            options={"ftol": 1e-15, "maxiter": 500},
        )
        x = to_disk(res.x)

        def dist_grad(y):
            y0 = np.sqrt(1 + y @ y)
            B = np.maximum(c0 * y0 - cs @ y, 1.0)
            dB = c0[:, None] * (y / y0)[None, :] - cs
            root = np.sqrt(B * B - 1)
            return np.arccosh(B), dB / np.where(root > 0, root, np.inf)[:, None]

        def split_point(i, j):
            d = hyperbolic_dist(P[i], P[j])
            return hyperbolic_geodesic_point(P[i], P[j], d * w[i] / (w[i] + w[j]))

        out = [x]
        ratios = hyperbolic_dist(x[None, :], P) / w
        if np.all(np.isfinite(ratios)):
            for kind, c in _polish_candidates(res.x, ratios, w, dist_grad, split_point):
                out.append(to_disk(c) if kind == "chart" else c)
        return [p for p in out if np.all(np.isfinite(hyperbolic_dist(p[None, :], P)))]
