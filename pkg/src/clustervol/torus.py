"""Once-punctured torus bundles: monodromy word to complex volume.

A monodromy word over ``{R, L}`` is read as a sequence of flips of the
ideal triangulation of the once-punctured torus.  Each flip attaches one
ideal tetrahedron, whose modulus comes from the y-variables of a periodic
cluster pattern.  The cluster variables of the same pattern supply the
edge parameters that fix the flattenings.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .cluster import B_TORUS, Seed, YTuple
from .dilog import ComplexVolume, Flattening, bloch_wigner, complex_volume, flattening_from_values
from .errors import (
    BadSymbol,
    DegenerateError,
    InconsistentPattern,
    InvalidInput,
    NoGeometricSolution,
    NonHyperbolic,
)
from .angles import max_volume_angles, shapes_from_angles
from .gluing import EdgeTracker, Layer
from .semifield import ONE, TropEl, psi, ratio_part, unit_part
from .solver import RootSearchConfig, RootSet, geometric_candidates, newton_multistart, polish

__all__ = [
    "TorusWord",
    "TorusPattern",
    "parse_torus_word",
    "flip_torus_y",
    "flip_torus_seed",
    "torus_y_pattern",
    "torus_x_level",
    "solve_torus",
    "torus_volume",
    "torus_complex_volume",
    "MUTATED_SLOT",
    "SIGN",
]

MUTATED_SLOT = {"R": 0, "L": 1}
SWAP = {"R": (0, 2), "L": (1, 2)}
SIGN = {"R": 1, "L": -1}


@dataclass(frozen=True)
class TorusWord:
    """A validated monodromy word containing both letters."""

    letters: str

    @property
    def c(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.letters


def parse_torus_word(text: str) -> TorusWord:
    """Validate a monodromy word.

    Letters are case-insensitive and surrounding whitespace is ignored.

    Raises
    ------
    InvalidInput
        Empty word.
    BadSymbol
        A character other than R or L.
    NonHyperbolic
        Only one of the two letters occurs.
    """
    word = text.strip().upper()
    if not word:
        raise InvalidInput("monodromy word is empty")
    for i, ch in enumerate(word):
        if ch not in "RL":
            raise BadSymbol(f"invalid symbol {ch!r} at position {i + 1}; only R and L are allowed")
    if "R" not in word or "L" not in word:
        raise NonHyperbolic("monodromy must contain both R and L")
    return TorusWord(word)


def _letter(letter: str) -> str:
    if letter not in ("R", "L"):
        raise BadSymbol(f"invalid flip {letter!r}")
    return letter


def _flip_y_values(y: Sequence, letter: str) -> tuple:
    y1, y2, y3 = y
    if letter == "R":
        return (y3 * (1 + 1 / y1) ** -2, y2 * (1 + y1) ** 2, 1 / y1)
    return (y1 * (1 + 1 / y2) ** -2, y3 * (1 + y2) ** 2, 1 / y2)


def flip_torus_y(yt: YTuple | Sequence[complex], letter: str) -> YTuple:
    """Apply the flip ``R`` or ``L`` to torus y-variables.

    Raises
    ------
    DegenerateError
        If an entry becomes zero or infinite.
    """
    _letter(letter)
    y = yt.y if isinstance(yt, YTuple) else tuple(complex(v) for v in yt)
    try:
        out = _flip_y_values(y, letter)
    except ZeroDivisionError as exc:
        raise DegenerateError(f"flip {letter} hit a pole") from exc
    if any(v == 0 or not cmath.isfinite(v) for v in out):
        raise DegenerateError(f"flip {letter} produced a degenerate y-tuple")
    return YTuple(out)


def flip_torus_seed(seed: Seed, letter: str) -> Seed:
    """Apply the flip ``R`` or ``L`` to a torus seed with tropical coefficients."""
    _letter(letter)
    if seed.b != B_TORUS:
        raise ValueError("torus flips act on seeds with the torus exchange matrix")
    x1, x2, x3 = seed.x
    e1, e2, e3 = seed.eps
    try:
        if letter == "R":
            new = (psi(ratio_part(e1)) * x2**2 + psi(unit_part(e1)) * x3**2) / x1
            x = (x3, x2, new)
            eps = (e3 * (e1 + ONE) ** 2, e2 * ratio_part(e1) ** 2, e1.inverse())
        else:
            new = (psi(unit_part(e2)) * x1**2 + psi(ratio_part(e2)) * x3**2) / x2
            x = (x1, x3, new)
            eps = (e1 * ratio_part(e2) ** 2, e3 * (e2 + ONE) ** 2, e2.inverse())
    except ZeroDivisionError as exc:
        raise DegenerateError(f"flip {letter} divided by zero") from exc
    if new == 0 or not cmath.isfinite(new):
        raise DegenerateError(f"flip {letter} produced a degenerate cluster variable")
    return Seed(x, eps, B_TORUS)


def torus_y_pattern(word: TorusWord | str, y1: complex, y2: complex) -> list[YTuple]:
    """The y-pattern ``y[1], ..., y[c+1]`` from the initial tuple ``(y1, y2, 1/(y1 y2))``."""
    ys = [YTuple((y1, y2, 1 / (y1 * y2)))]
    for ch in str(word):
        ys.append(flip_torus_y(ys[-1], ch))
    return ys


def _z_from_y(word: str, ys: Sequence[YTuple]) -> list[complex]:
    return [-1 / ys[k][MUTATED_SLOT[ch]] for k, ch in enumerate(word)]


def _y_from_x(x: Sequence[complex]) -> tuple[complex, complex, complex]:
    x1, x2, x3 = x
    return ((x2 / x3) ** 2, (x3 / x1) ** 2, (x1 / x2) ** 2)


@dataclass
class XLevel:
    """Cluster-variable data of a torus pattern."""

    x: list[tuple[complex, ...]]
    eps: list[tuple[TropEl, ...]]
    z_x: list[complex]
    flats: list[Flattening]
    alt_flats: list[Flattening]


def torus_x_level(word: TorusWord | str, x0: Sequence[complex]) -> XLevel:
    """Propagate cluster variables from ``x0`` and read off moduli and flattenings.

    Raises
    ------
    InconsistentPattern
        If a flattening parameter is not integral.
    """
    word = str(word)
    seeds = [Seed(tuple(x0), (ONE, ONE, ONE), B_TORUS)]
    for ch in word:
        seeds.append(flip_torus_seed(seeds[-1], ch))
    z_x, flats, alt = [], [], []
    for k, ch in enumerate(word):
        a, nxt = seeds[k].x, seeds[k + 1].x
        x1, x2, x3 = a
        n3 = nxt[2]
        if ch == "R":
            z = x1 * n3 / x3**2
            f = flattening_from_values(z, [x1, n3], [x3, x3], [x3, x3], [x2, x2], k + 1)
            za = -((x3 / x2) ** 2)
            g = flattening_from_values(za, [x3, x3], [x2, x2], [x2, x2], [x1, n3], k + 1)
        else:
            z = x2 * n3 / x3**2
            f = flattening_from_values(z, [x2, n3], [x3, x3], [x3, x3], [x1, x1], k + 1)
            za = -((x1 / x3) ** 2)
            g = flattening_from_values(za, [x1, x1], [x3, x3], [x3, x3], [x2, n3], k + 1)
        z_x.append(z)
        flats.append(f)
        alt.append(g)
    return XLevel([s.x for s in seeds], [s.eps for s in seeds], z_x, flats, alt)


@dataclass
class TorusPattern:
    """Solved periodic cluster pattern of a torus bundle.

    Lists are indexed from 0, so ``y[k]`` is the tuple written ``y[k+1]``
    in one-based notation.
    """

    word: TorusWord
    y: list[YTuple]
    x: list[tuple[complex, ...]]
    eps: list[tuple[TropEl, ...]]
    z_y: list[complex]
    z_x: list[complex]
    flats: list[Flattening]
    alt_flats: list[Flattening]
    signs: list[int]
    residuals: dict[str, float] = field(default_factory=dict)
    stats: dict[str, int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    x_solutions: list[tuple[complex, ...]] = field(default_factory=list)

    @property
    def c(self) -> int:
        return self.word.c


def _periodicity_residual(y1: complex, y2: complex, word: str) -> list[complex]:
    last = torus_y_pattern(word, y1, y2)[-1]
    return [last[0] / y1 - 1, last[1] / y2 - 1]


def torus_edge_matrix(word: str) -> np.ndarray:
    """Angle incidence matrix (edges by tetrahedron angles) of the layered triangulation."""
    c = len(word)
    dummy = [0.5 + 0.5j] * c
    for periods in range(4, 16):
        layers = [
            Layer(((MUTATED_SLOT[ch], dummy[k], k),), (SWAP[ch],))
            for _ in range(periods)
            for k, ch in enumerate(word)
        ]
        tr = EdgeTracker(B_TORUS).run(layers)
        born = [e for e in tr.edges if e.born is not None and c <= e.born < 2 * c]
        if all(e.killed is not None for e in born):
            break
    else:
        raise InconsistentPattern("an edge of the torus layering never closes")
    a = np.zeros((len(born), 3 * c))
    for row, e in enumerate(born):
        for (k, kind), count in e.angles.items():
            a[row, 3 * k + kind] += count
    return a


def _angle_start(word: str) -> tuple[complex, complex]:
    # shapes of the volume-maximizing angle structure, turned into y[1]
    zs = shapes_from_angles(max_volume_angles(torus_edge_matrix(word), len(word)))
    alive = _unrolled_tracker(word, zs, 2).alive()
    return -alive[0].product, -alive[1].product


def _solve_y(word: str, cfg: RootSearchConfig):
    def f(v):
        return _periodicity_residual(v[0], v[1], word)

    def moduli(root):
        return _z_from_y(word, torus_y_pattern(word, *root))

    try:
        start = _angle_start(word)
    except NoGeometricSolution:
        start = None
    if start is not None:
        root, res, its, ok = polish(f, start, cfg)
        if ok:
            roots = RootSet([root], [res], 1, its)
            if geometric_candidates(roots, moduli):
                return root, roots
    roots = newton_multistart(f, 2, cfg)
    cands = geometric_candidates(roots, moduli)
    if not cands:
        raise NoGeometricSolution(
            f"no periodic y-solution of {word} puts every tetrahedron in the upper half plane"
        )
    return max(cands, key=lambda c: c[2])[0], roots


def _x_candidates(y1: complex, y2: complex) -> list[tuple[complex, complex, complex]]:
    r1, r2 = cmath.sqrt(y1), cmath.sqrt(y2)
    return [(s1 / r2, s2 * r1, 1 + 0j) for s2 in (1, -1) for s1 in (1, -1)]


def _solve_x(word: str, y_geo: tuple[complex, complex, complex], cfg: RootSearchConfig):
    def f(v):
        seed = Seed((v[0], v[1], 1), (ONE, ONE, ONE), B_TORUS)
        for ch in word:
            seed = flip_torus_seed(seed, ch)
        return [seed.x[0] / v[0] - 1, seed.x[1] / v[1] - 1]

    sols, iters = [], 0
    for cand in _x_candidates(y_geo[0], y_geo[1]):
        # some sign choices are periodic only up to a sign flip; skip those
        try:
            if max(abs(v) for v in f(cand[:2])) > 1e-4:
                continue
        except (ZeroDivisionError, DegenerateError):
            continue
        root, _, its, ok = polish(f, cand[:2], cfg)
        iters += its
        if not ok:
            continue
        x0 = (root[0], root[1], 1 + 0j)
        seed = Seed(x0, (ONE, ONE, ONE), B_TORUS)
        for ch in word:
            seed = flip_torus_seed(seed, ch)
        if abs(seed.x[2] - 1) > 1e-8:
            continue
        ind = _y_from_x(x0)
        if max(abs(a / b - 1) for a, b in zip(ind, y_geo)) > 1e-6:
            continue
        if all(max(abs(a - b) for a, b in zip(x0, s)) > 1e-8 for s in sols):
            sols.append(x0)
    return sols, iters


def _unrolled_tracker(word: str, zs: Sequence[complex], periods: int) -> EdgeTracker:
    layers = [
        Layer(((MUTATED_SLOT[ch], zs[k]),), (SWAP[ch],)) for _ in range(periods) for k, ch in enumerate(word)
    ]
    return EdgeTracker(B_TORUS).run(layers)


def torus_gluing_products(word: str, zs: Sequence[complex]) -> list[complex]:
    """Gluing products of the edges born during one period of the unrolled layering."""
    c = len(word)
    for periods in range(4, 16):
        tr = _unrolled_tracker(word, zs, periods)
        born = [e for e in tr.edges if e.born is not None and c <= e.born < 2 * c]
        if all(e.killed is not None for e in born):
            return [e.product for e in born]
    raise InconsistentPattern("an edge of the torus layering never closes")


def torus_completeness_products(word: str, zs: Sequence[complex]) -> list[complex]:
    """Cusp holonomies that must equal 1.

    The first is the product of ``-w`` over the three edges of a fully
    layered surface; the second is the squared curve through the first
    run of at least two ``R`` flips, after rotating the word to start there.
    """
    c = len(word)
    tr = _unrolled_tracker(word, zs, 3)
    alive = tr.alive()
    out = []
    if all(e.born is not None for e in alive):
        prod = 1 + 0j
        for e in alive:
            prod *= -e.product
        out.append(prod)
    for r in range(c):
        rot = word[r:] + word[:r]
        if rot[0] != "R" or word[r - 1] == "R":
            continue
        s1 = len(rot) - len(rot.lstrip("R"))
        if s1 < 2:
            continue
        z = list(zs[r:]) + list(zs[:r])
        val = (1 / z[0]) * (1 - 1 / z[1]) * (1 - z[1])
        for k in range(2, s1):
            val *= (1 - 1 / z[k]) ** 2
        val *= z[s1]
        out.append(val**2)
        break
    return out


def solve_torus(word: TorusWord | str, cfg: RootSearchConfig | None = None) -> TorusPattern:
    """Solve the periodic cluster pattern of a monodromy word.

    Parameters
    ----------
    word : TorusWord or str
    cfg : RootSearchConfig, optional

    Returns
    -------
    TorusPattern

    Raises
    ------
    NoGeometricSolution
        No periodic y-solution has all moduli in the upper half plane.
    InconsistentPattern
        The cluster variables cannot be made periodic for the geometric
        y-solution, or a flattening parameter is not integral.
    """
    cfg = cfg or RootSearchConfig()
    if not isinstance(word, TorusWord):
        word = parse_torus_word(word)
    w = word.letters
    # round-off in the residual grows with the number of flips composed
    cfg = replace(cfg, tol=cfg.tol * max(1, word.c))
    (y1, y2), roots = _solve_y(w, cfg)
    ys = torus_y_pattern(w, y1, y2)
    z_y = _z_from_y(w, ys)
    warnings = []

    sols, x_iters = _solve_x(w, ys[0].y, cfg)
    if not sols:
        raise InconsistentPattern(f"no periodic cluster pattern matches the geometric y-solution of {w}")
    xl = torus_x_level(w, sols[0])
    for k, (ch, z) in enumerate(zip(w, xl.z_x)):
        want = 1 if ch == "R" else -1
        if np.sign(z.imag) != want:
            warnings.append(f"oriented modulus at k={k + 1} lies in the unexpected half plane")
    if any(e != (ONE, ONE, ONE) for e in xl.eps):
        raise InconsistentPattern("tropical coefficients left the trivial tuple")

    last = ys[-1]
    periodicity = max(abs(last[i] / ys[0][i] - 1) for i in range(3))
    x_last = xl.x[-1]
    x_periodicity = max(abs(x_last[i] / xl.x[0][i] - 1) for i in range(3))
    z_from_x = [1 / (1 - z) if ch == "R" else 1 - z for ch, z in zip(w, xl.z_x)]
    gluing = [g for zs in (z_y, z_from_x) for g in torus_gluing_products(w, zs)]
    complete = torus_completeness_products(w, z_y)
    pat = TorusPattern(
        word=word,
        y=ys,
        x=xl.x,
        eps=xl.eps,
        z_y=z_y,
        z_x=xl.z_x,
        flats=xl.flats,
        alt_flats=xl.alt_flats,
        signs=[SIGN[ch] for ch in w],
        residuals={
            "periodicity": float(max(periodicity, x_periodicity)),
            "gluing_max": float(max(abs(g - 1) for g in gluing)),
            "completeness_max": float(max(abs(v - 1) for v in complete)),
        },
        stats={"starts": roots.starts, "iterations": roots.iterations + x_iters, "root_count": len(roots)},
        warnings=warnings,
        x_solutions=sols,
    )
    return pat


def torus_volume(pat: TorusPattern) -> float:
    """Hyperbolic volume as the sum of Bloch-Wigner values of the moduli."""
    return float(sum(bloch_wigner(z) for z in pat.z_y))


def torus_complex_volume(pat: TorusPattern, mode: str = "oriented") -> ComplexVolume:
    """Complex volume from the flattenings.

    ``mode="oriented"`` uses the oriented moduli with signs ``+1`` for R and
    ``-1`` for L, defined modulo ``pi^2``.  ``mode="unoriented"`` uses the
    squared-ratio moduli, all with sign ``+1``, defined modulo ``pi^2/6``.
    """
    if mode == "oriented":
        return complex_volume(pat.flats, pat.signs, "pi^2")
    if mode == "unoriented":
        return complex_volume(pat.alt_flats, [1] * pat.c, "pi^2/6")
    raise ValueError(f"unknown mode {mode!r}")
