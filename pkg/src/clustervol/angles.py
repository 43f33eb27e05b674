"""Angle structures and the volume functional.

An angle structure assigns to every tetrahedron three positive angles
summing to ``pi`` (the arguments of ``z``, ``z'`` and ``z''``) such that
the angles around every edge sum to ``2 pi``.  The volume functional is
strictly concave on this polytope, and an interior maximum is the angle
data of the complete hyperbolic structure.  Its shapes make an excellent
Newton start for the cluster-pattern equations.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import NoGeometricSolution

__all__ = ["lobachevsky", "max_volume_angles", "shapes_from_angles"]


def lobachevsky(theta: np.ndarray) -> np.ndarray:
    """Lobachevsky function, ``-int_0^theta log|2 sin t| dt``, for angles in ``[0, pi]``."""
    from .dilog import li2

    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    return np.array([0.5 * li2(cmath.exp(2j * t)).imag if 0 < t < math.pi else 0.0 for t in theta])


def _constraints(edge_matrix: np.ndarray, ntet: int) -> tuple[np.ndarray, np.ndarray]:
    tet = np.zeros((ntet, 3 * ntet))
    for k in range(ntet):
        tet[k, 3 * k : 3 * k + 3] = 1
    a = np.vstack([edge_matrix, tet])
    b = np.concatenate([np.full(edge_matrix.shape[0], 2 * math.pi), np.full(ntet, math.pi)])
    return a, b


def max_volume_angles(
    edge_matrix: np.ndarray, ntet: int, tol: float = 1e-13, max_iter: int = 200
) -> np.ndarray:
    """Angles maximizing the volume over the angle structures of a triangulation.

    Parameters
    ----------
    edge_matrix : ndarray, shape (n_edges, 3 * ntet)
        Row ``e`` counts how often each tetrahedron angle occurs around edge ``e``;
        columns are ordered ``(z, z', z'')`` per tetrahedron.
    ntet : int
        Number of tetrahedra.

    Returns
    -------
    ndarray, shape (ntet, 3)

    Raises
    ------
    NoGeometricSolution
        No strictly positive angle structure exists, or the maximum sits on
        the boundary of the polytope.
    """
    # scipy is slow to import and only the torus pipeline needs it
    from scipy.linalg import null_space
    from scipy.optimize import linprog

    a, b = _constraints(np.asarray(edge_matrix, dtype=float), ntet)
    n = 3 * ntet
    # strictly interior start: maximize the smallest angle
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    a_ub = np.hstack([-np.eye(n), np.ones((n, 1))])
    lp = linprog(
        cost,
        A_ub=a_ub,
        b_ub=np.zeros(n),
        A_eq=np.hstack([a, np.zeros((a.shape[0], 1))]),
        b_eq=b,
        bounds=[(0, math.pi)] * n + [(None, math.pi)],
        method="highs",
    )
    if lp.status != 0 or lp.x[-1] <= 1e-9:
        raise NoGeometricSolution("the triangulation admits no positive angle structure")
    theta = lp.x[:n]
    basis = null_space(a)

    def volume(t):
        return float(np.sum(lobachevsky(t)))

    vol = volume(theta)
    for _ in range(max_iter):
        grad = -np.log(2 * np.sin(theta))
        hess = -1 / np.tan(theta)
        g = basis.T @ grad
        if np.max(np.abs(g)) < tol:
            break
        h = basis.T @ (hess[:, None] * basis)
        step = basis @ np.linalg.solve(h, -g)
        t = 1.0
        while t > 1e-12:
            cand = theta + t * step
            if np.all(cand > 0) and np.all(cand < math.pi):
                cv = volume(cand)
                if cv >= vol - 1e-15:
                    break
            t *= 0.5
        else:
            break
        theta, vol = cand, cv
    if np.min(theta) < 1e-7:
        raise NoGeometricSolution("the volume maximum lies on a degenerate angle structure")
    return theta.reshape(ntet, 3)


def shapes_from_angles(theta: np.ndarray) -> list[complex]:
    """Moduli ``z = sin(c)/sin(b) exp(i a)`` of tetrahedra with angles ``(a, b, c)``."""
    return [math.sin(c) / math.sin(b) * cmath.exp(1j * a) for a, b, c in np.asarray(theta)]
