"""Root finding for the boundary conditions of the cluster patterns.

Two engines are provided: a damped Newton iteration with finite-difference
Jacobians, run from many starting points with deflation of roots already
found, and the Aberth-Ehrlich simultaneous iteration for polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DegenerateError, NoGeometricSolution

__all__ = [
    "RootSearchConfig",
    "RootSet",
    "newton_multistart",
    "poly_roots",
    "start_points",
    "select_geometric",
    "geometric_candidates",
    "polish",
]

_RADII = (0.3, 1.0, 3.0)
_FAILURES = (ZeroDivisionError, OverflowError, FloatingPointError, DegenerateError, ValueError)


@dataclass(frozen=True)
class RootSearchConfig:
    """Tunable parameters of the root search.

    Attributes
    ----------
    max_iter : int
        Iteration cap for a single Newton run or for the Aberth iteration.
    tol : float
        Residual tolerance (maximum norm) a root must meet.
    starts : int
        Number of multistart points.
    dedupe_eps : float
        Roots closer than this in the maximum norm are merged.
    seed : int
        Seed of the generator that picks start points for systems.
    """

    max_iter: int = 200
    tol: float = 1e-12
    starts: int = 64
    dedupe_eps: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.starts < 1:
            raise ValueError("starts must be at least 1")
        if not self.dedupe_eps > 0:
            raise ValueError("dedupe_eps must be positive")


@dataclass
class RootSet:
    """Distinct roots with their residuals, in deterministic order."""

    roots: list[tuple[complex, ...]] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)
    starts: int = 0
    iterations: int = 0

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def _sort_key(root: Sequence[complex]) -> tuple:
    # rounding keeps the order stable under last-bit noise
    return tuple(v for z in root for v in (round(z.real, 9), round(z.imag, 9)))


def _finalize(cands: list[tuple[np.ndarray, float]], cfg: RootSearchConfig) -> tuple[list, list]:
    cands = sorted(cands, key=lambda c: (c[1], _sort_key(c[0])))
    kept: list[tuple[np.ndarray, float]] = []
    for x, r in cands:
        if all(np.max(np.abs(x - y)) > cfg.dedupe_eps for y, _ in kept):
            kept.append((x, r))
    kept.sort(key=lambda c: _sort_key(c[0]))
    return [tuple(complex(v) for v in x) for x, _ in kept], [r for _, r in kept]


def start_points(dim: int, cfg: RootSearchConfig) -> list[np.ndarray]:
    """Start points on the grid of radii 0.3, 1, 3 and evenly spaced angles.

    A single unknown walks the grid directly; for systems each coordinate
    picks a grid radius and a uniform angle from a generator seeded by
    ``cfg.seed``.
    """
    if dim == 1:
        per_radius = max(1, math.ceil(cfg.starts / len(_RADII)))
        pts = []
        for j in range(per_radius):
            for r in _RADII:
                theta = 2 * math.pi * (j + 0.5) / per_radius
                pts.append(np.array([r * complex(math.cos(theta), math.sin(theta))]))
        return pts[: cfg.starts]
    rng = np.random.default_rng(cfg.seed)
    radii = rng.choice(_RADII, size=(cfg.starts, dim))
    theta = rng.uniform(0, 2 * math.pi, size=(cfg.starts, dim))
    return [radii[i] * np.exp(1j * theta[i]) for i in range(cfg.starts)]


def _evaluate(f, x: np.ndarray) -> np.ndarray | None:
    try:
        with np.errstate(all="raise"):
            r = np.asarray(f(x), dtype=complex).reshape(-1)
    except _FAILURES:
        return None
    if not np.all(np.isfinite(r)):
        return None
    return r


def _jacobian(g, x: np.ndarray) -> np.ndarray | None:
    n = x.size
    cols = []
    for j in range(n):
        h = 1e-7 * (1 + abs(x[j]))
        e = np.zeros(n, dtype=complex)
        e[j] = h
        fp, fm = _evaluate(g, x + e), _evaluate(g, x - e)
        if fp is None or fm is None:
            return None
        cols.append((fp - fm) / (2 * h))
    return np.column_stack(cols)


def _newton(g, x0: np.ndarray, tol: float, max_iter: int) -> tuple[np.ndarray, float, int, bool]:
    x = np.array(x0, dtype=complex)
    r = _evaluate(g, x)
    if r is None:
        return x, math.inf, 0, False
    norm = float(np.max(np.abs(r)))
    for it in range(1, max_iter + 1):
        if norm < tol:
            return x, norm, it - 1, True
        jac = _jacobian(g, x)
        if jac is None:
            return x, norm, it, False
        try:
            dx = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            return x, norm, it, False
        if not np.all(np.isfinite(dx)):
            return x, norm, it, False
        t = 1.0
        while t > 1e-4:
            xn = x + t * dx
            rn = _evaluate(g, xn)
            if rn is not None:
                nn = float(np.max(np.abs(rn)))
                if nn < norm:
                    break
            t *= 0.5
        else:
            return x, norm, it, norm < tol
        step = float(np.max(np.abs(xn - x)))
        x, r, norm = xn, rn, nn
        if step <= 1e-15 * (1 + float(np.max(np.abs(x)))):
            return x, norm, it, norm < tol
    return x, norm, max_iter, norm < tol


def newton_multistart(
    f: Callable[[np.ndarray], Sequence[complex]],
    dim: int,
    cfg: RootSearchConfig | None = None,
    initial: Iterable[Sequence[complex]] = (),
) -> RootSet:
    """All distinct roots of ``f`` reachable from the start grid.

    Parameters
    ----------
    f : callable
        Maps a complex array of length ``dim`` to ``dim`` complex residuals.
        Exceptions such as division by zero mark a start as failed.
    dim : int
        Number of complex unknowns.
    cfg : RootSearchConfig, optional
    initial : iterable of sequences, optional
        Extra starts tried before the grid.

    Returns
    -------
    RootSet
        Converged roots with residual below ``cfg.tol``, sorted
        lexicographically by real and imaginary parts.  Empty if no start
        converged.
    """
    cfg = cfg or RootSearchConfig()
    starts = [np.asarray(s, dtype=complex).reshape(dim) for s in initial]
    starts += start_points(dim, cfg)
    found: list[tuple[np.ndarray, float]] = []
    iterations = 0

    def deflated(x):
        r = np.asarray(f(x), dtype=complex).reshape(-1)
        factor = 1.0
        for y, _ in found:
            factor *= 1.0 + 1.0 / float(np.sum(np.abs(x - y) ** 2))
        return r * factor

    for x0 in starts:
        x, _, its, _ = _newton(deflated if found else f, x0, cfg.tol, cfg.max_iter)
        iterations += its
        # polish against the undeflated map
        x, res, its, ok = _newton(f, x, cfg.tol, 20)
        iterations += its
        if not ok:
            continue
        again = _evaluate(f, x)
        if again is None or float(np.max(np.abs(again))) >= cfg.tol:
            continue
        if all(np.max(np.abs(x - y)) > cfg.dedupe_eps for y, _ in found):
            found.append((x, res))
    roots, residuals = _finalize(found, cfg)
    return RootSet(roots, residuals, len(starts), iterations)


def _horner(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z)
    for a in c:
        out = out * z + a
    return out


def _refine_integer_roots(coeffs: list[int], z: np.ndarray, dps: int = 40, max_iter: int = 100) -> np.ndarray:
    """Continue the Aberth iteration in extended precision when needed.

    Double precision cannot separate tightly clustered roots; the
    simultaneous update keeps approximations from collapsing onto one root.
    Roots whose exact Newton correction is already negligible compared to
    their distance from the others are left alone.
    """
    import mpmath

    n = len(coeffs) - 1
    dcoeffs = [a * (n - i) for i, a in enumerate(coeffs[:-1])]
    with mpmath.workdps(dps):
        r = [mpmath.mpc(complex(v)) for v in z]
        tiny = mpmath.mpf(10) ** (-(dps // 2 + 5))

        def horner(c, x):
            acc = mpmath.mpc(0)
            for a in c:
                acc = acc * x + a
            return acc

        def newton_step(x):
            dp = horner(dcoeffs, x)
            return horner(coeffs, x) / dp if dp != 0 else mpmath.mpc(mpmath.inf)

        steps = [abs(newton_step(x)) for x in r]
        gaps = [min((abs(x - y) for j, y in enumerate(r) if j != i), default=mpmath.inf) for i, x in enumerate(r)]
        if all(st <= 1e-13 * (1 + abs(x)) and st * 1e4 < g for st, x, g in zip(steps, r, gaps)):
            return z
        active = set(range(n))
        for _ in range(max_iter):
            new = list(r)
            for i in sorted(active):
                x = r[i]
                w = newton_step(x)
                if w == 0:
                    active.discard(i)
                    continue
                s = mpmath.fsum(1 / (x - y) for j, y in enumerate(r) if j != i)
                step = w / (1 - w * s)
                new[i] = x - step
                if abs(step) <= tiny * (1 + abs(x)):
                    active.discard(i)
            r = new
            if not active:
                break
        return np.array([complex(v) for v in r])


def poly_roots(coeffs: Sequence[complex], cfg: RootSearchConfig | None = None) -> RootSet:
    """All complex roots of a polynomial by the Aberth-Ehrlich iteration.

    Parameters
    ----------
    coeffs : sequence of complex
        Coefficients from the highest degree down, as in :func:`numpy.roots`.
    cfg : RootSearchConfig, optional

    Returns
    -------
    RootSet
        All ``deg`` roots counted with multiplicity, sorted.  Integer
        coefficients are refined by Newton steps in extended precision, which
        separates tightly clustered roots.  The residual of
        a root ``r`` is ``|P(r)| / (1 + |r|**deg)`` for ``P`` scaled to unit
        largest coefficient.

    Raises
    ------
    ValueError
        Zero leading coefficient or degree below one.
    RuntimeError
        The iteration did not reach the residual tolerance.
    """
    cfg = cfg or RootSearchConfig()
    c = np.asarray(coeffs, dtype=complex).reshape(-1)
    if c.size < 2:
        raise ValueError("polynomial degree must be at least 1")
    if c[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    c = c / np.max(np.abs(c))
    n = c.size - 1
    dc = c[:-1] * np.arange(n, 0, -1)
    # initial guesses on a circle of the Cauchy-bound radius
    ratios = np.abs(c[1:] / c[0]) ** (1.0 / np.arange(1, n + 1))
    radius = max(float(np.max(ratios)), 1e-3)
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    iterations = 0
    for iterations in range(1, cfg.max_iter + 1):
        p = _horner(c, z)
        dp = _horner(dc, z)
        with np.errstate(all="ignore"):
            w = np.where(dp != 0, p / dp, 0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            s = np.sum(1 / diff, axis=1) - 1
            delta = w / (1 - w * s)
        delta = np.where(np.isfinite(delta), delta, 0)
        z = z - delta
        if np.all(np.abs(delta) <= 1e-15 * (1 + np.abs(z))):
            break
    # a few plain Newton steps to polish
    for _ in range(3):
        p, dp = _horner(c, z), _horner(dc, z)
        with np.errstate(all="ignore"):
            step = np.where(dp != 0, p / dp, 0)
        better = np.abs(_horner(c, z - step)) < np.abs(p)
        z = np.where(better, z - step, z)
    if all(isinstance(v, (int, np.integer)) for v in coeffs):
        z = _refine_integer_roots([int(v) for v in coeffs], z)
    res = np.abs(_horner(c, z)) / (1 + np.abs(z) ** n)
    if not np.all(res < cfg.tol):
        raise RuntimeError(
            f"Aberth iteration did not converge: worst residual {float(np.max(res)):.3g}"
        )
    order = sorted(range(n), key=lambda i: _sort_key((z[i],)))
    return RootSet([(complex(z[i]),) for i in order], [float(res[i]) for i in order], n, iterations)


def geometric_candidates(
    roots: Iterable[Sequence[complex]],
    moduli_of: Callable[[Sequence[complex]], Sequence[complex]],
    predicate: Callable[[complex], bool] | None = None,
    margin: float = 1e-10,
) -> list[tuple[tuple[complex, ...], list[complex], float]]:
    """Roots whose moduli all satisfy the half-plane rule.

    Returns a list of ``(root, moduli, score)`` in input order, where the
    score is the smallest ``|Im z|`` over the moduli.
    """
    rule = predicate or (lambda z: z.imag > margin)
    out = []
    for root in roots:
        root = tuple(root)
        try:
            zs = [complex(z) for z in moduli_of(root)]
        except _FAILURES:
            continue
        if zs and all(rule(z) and abs(z.imag) > margin for z in zs):
            out.append((root, zs, min(abs(z.imag) for z in zs)))
    return out


def select_geometric(
    roots: Iterable[Sequence[complex]],
    moduli_of: Callable[[Sequence[complex]], Sequence[complex]],
    predicate: Callable[[complex], bool] | None = None,
    margin: float = 1e-10,
) -> tuple[complex, ...]:
    """The geometric root: every modulus in the upper half plane.

    If several roots qualify, the one maximizing the smallest imaginary part
    wins; exact ties keep the earlier root.

    Raises
    ------
    NoGeometricSolution
        If no root qualifies.
    """
    cands = geometric_candidates(roots, moduli_of, predicate, margin)
    if not cands:
        raise NoGeometricSolution("no root puts every tetrahedron in the upper half plane")
    best = cands[0]
    for c in cands[1:]:
        if c[2] > best[2] * (1 + 1e-12) + 1e-15:
            best = c
    return best[0]


def polish(
    f: Callable[[np.ndarray], Sequence[complex]],
    x0: Sequence[complex],
    cfg: RootSearchConfig | None = None,
) -> tuple[tuple[complex, ...], float, int, bool]:
    """Newton iteration from a single start.

    Returns ``(root, residual, iterations, converged)``.
    """
    cfg = cfg or RootSearchConfig()
    x, res, its, ok = _newton(f, np.asarray(x0, dtype=complex).reshape(-1), cfg.tol, cfg.max_iter)
    return tuple(complex(v) for v in x), res, its, ok
