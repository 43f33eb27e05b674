"""Two-bridge links: fraction ``q/p`` to complex volume.

The complement of the two-bridge link ``K_{q/p}`` is layered by pairs of
ideal tetrahedra, one pair for each flip of the four-punctured sphere read
off the continued fraction of ``q/p``.  The first and last layers fold, so
the cluster pattern has boundary conditions at both ends instead of a
periodicity condition.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .cluster import B_SPHERE, Seed, YTuple, y_from_seed
from .dilog import ComplexVolume, Flattening, bloch_wigner, complex_volume, flattening_from_values
from .errors import (
    DegenerateError,
    EpsCaseConflict,
    InconsistentPattern,
    InvalidInput,
    NoGeometricSolution,
    NonHyperbolic,
    WrongFamily,
)
from .exact import RationalFunction, TooLarge
from .gluing import EdgeTracker, Layer
from .semifield import TropEl, psi
from .solver import (
    RootSearchConfig,
    RootSet,
    geometric_candidates,
    newton_multistart,
    poly_roots,
    polish,
)

__all__ = [
    "TwoBridgeSpec",
    "BridgePattern",
    "continued_fraction",
    "spec_from_cf",
    "flip_sphere_y",
    "flip_sphere_seed",
    "sphere_y_pattern",
    "sphere_x_level",
    "solve_two_bridge",
    "bridge_volume",
    "bridge_complex_volume",
    "double_twist_oriented",
    "is_double_twist",
    "double_twist_tetrahedra",
    "triple_products",
    "bridge_gluing_products",
    "bridge_completeness_products",
    "EPS_CASES",
]

# initial coefficient exponents for the two sign cases of the bottom layer
EPS_CASES = ((1, 1, 0, 0, 1, 1), (0, 0, 1, 1, 1, 1))

MUTATED_SLOTS = {"R": (0, 1), "L": (2, 3)}
# transpositions in the order they act after the two mutations
SWAPS = {"R": ((1, 5), (0, 4), (4, 5)), "L": ((3, 5), (2, 4), (4, 5))}


@dataclass(frozen=True)
class TwoBridgeSpec:
    """A fraction ``q/p`` with its continued fraction and flip word."""

    p: int
    q: int
    cf: tuple[int, ...]
    word: str

    @property
    def n(self) -> int:
        return len(self.cf)

    @property
    def c(self) -> int:
        return sum(self.cf)

    @property
    def case(self) -> str:
        """Boundary case I-IV by the parity of ``n`` and whether the last entry exceeds 2."""
        even = self.n % 2 == 0
        big = self.cf[-1] > 2
        return {(True, True): "I", (True, False): "II", (False, True): "III", (False, False): "IV"}[
            (even, big)
        ]

    @property
    def top_index(self) -> int:
        """Zero-based slot that must equal ``-1`` in the last y-tuple."""
        return 2 if self.n % 2 == 0 else 0


def _word_from_cf(cf: Sequence[int]) -> str:
    n = len(cf)
    parts = []
    for i, a in enumerate(cf):
        count = a
        if i == 0:
            count -= 1
        if i == n - 1:
            count -= 2
        parts.append(("R" if i % 2 == 0 else "L") * count)
    return "".join(parts)


def continued_fraction(p: int, q: int) -> TwoBridgeSpec:
    """Continued fraction ``q/p = [a1, ..., an]`` and the flip word.

    Raises
    ------
    InvalidInput
        Unless ``gcd(p, q) = 1`` and ``2 <= q < p/2``.
    NonHyperbolic
        For ``q = 1`` (torus links).
    """
    p, q = int(p), int(q)
    if q == 1:
        raise NonHyperbolic("q = 1 gives a torus link, which is not hyperbolic")
    if not (2 <= q and 2 * q < p):
        raise InvalidInput(f"need 2 <= q < p/2, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise InvalidInput(f"p={p} and q={q} are not coprime")
    cf = []
    a, b = p, q
    while b:
        cf.append(a // b)
        a, b = b, a % b
    if cf[-1] == 1 and len(cf) > 1:
        cf = cf[:-2] + [cf[-2] + 1]
    return TwoBridgeSpec(p, q, tuple(cf), _word_from_cf(cf))


def spec_from_cf(cf: Sequence[int]) -> TwoBridgeSpec:
    """Build the link data from continued-fraction entries ``[a1, ..., an]``."""
    cf = [int(a) for a in cf]
    if not cf or any(a <= 0 for a in cf):
        raise InvalidInput("continued fraction entries must be positive integers")
    # q/p = 1/(a1 + 1/(a2 + ...))
    num, den = 0, 1
    for a in reversed(cf):
        num, den = den, a * den + num
    return continued_fraction(den, num)


def _flip_y_values(y: Sequence, letter: str) -> tuple:
    y1, y2, y3, y4, y5, y6 = y
    if letter == "R":
        a = 1 / ((1 + 1 / y1) * (1 + 1 / y2))
        b = (1 + y1) * (1 + y2)
        return (y5 * a, y6 * a, y3 * b, y4 * b, 1 / y2, 1 / y1)
    a = 1 / ((1 + 1 / y3) * (1 + 1 / y4))
    b = (1 + y3) * (1 + y4)
    return (y1 * a, y2 * a, y5 * b, y6 * b, 1 / y4, 1 / y3)


def flip_sphere_y(yt: YTuple | Sequence, letter: str):
    """Apply the flip ``R`` or ``L`` to the y-variables of the four-punctured sphere.

    Complex input returns a :class:`YTuple`; any other entries (for example
    exact rational functions) are transformed with the same formulas and
    returned as a plain tuple.
    """
    if letter not in ("R", "L"):
        raise InvalidInput(f"invalid flip {letter!r}")
    if isinstance(yt, YTuple):
        y = yt.y
    else:
        y = tuple(yt)
    numeric = all(isinstance(v, (int, float, complex)) for v in y)
    try:
        out = _flip_y_values(y, letter)
    except ZeroDivisionError as exc:
        raise DegenerateError(f"flip {letter} hit a pole") from exc
    if not numeric:
        return out
    out = tuple(complex(v) for v in out)
    if any(v == 0 or not cmath.isfinite(v) for v in out):
        raise DegenerateError(f"flip {letter} produced a degenerate y-tuple")
    return YTuple(out)


def _flip_eps(eps: Sequence[TropEl], letter: str) -> tuple[TropEl, ...]:
    e = [v.exponent for v in eps]
    if letter == "R":
        i, j = 0, 1
    else:
        i, j = 2, 3
    ai, aj = e[i] - min(0, e[i]), e[j] - min(0, e[j])
    bi, bj = -min(0, e[i]), -min(0, e[j])
    if letter == "R":
        out = (e[4] + ai + aj, e[5] + ai + aj, e[2] - bi - bj, e[3] - bi - bj, -e[1], -e[0])
    else:
        out = (e[0] + ai + aj, e[1] + ai + aj, e[4] - bi - bj, e[5] - bi - bj, -e[3], -e[2])
    return tuple(TropEl(v) for v in out)


def flip_sphere_seed(seed: Seed, letter: str) -> Seed:
    """Apply the flip ``R`` or ``L`` to a seed of the four-punctured sphere."""
    if letter not in ("R", "L"):
        raise InvalidInput(f"invalid flip {letter!r}")
    if seed.b != B_SPHERE:
        raise ValueError("sphere flips act on seeds with the sphere exchange matrix")
    x1, x2, x3, x4, x5, x6 = seed.x
    e = [v.exponent for v in seed.eps]

    def ratio(v):
        return psi(TropEl(v - min(0, v)))

    def unit(v):
        return psi(TropEl(-min(0, v)))

    if letter == "R":
        n5 = (ratio(e[1]) * x3 * x4 + unit(e[1]) * x5 * x6) / x2
        n6 = (ratio(e[0]) * x3 * x4 + unit(e[0]) * x5 * x6) / x1
        x = (x5, x6, x3, x4, n5, n6)
    else:
        n5 = (unit(e[3]) * x1 * x2 + ratio(e[3]) * x5 * x6) / x4
        n6 = (unit(e[2]) * x1 * x2 + ratio(e[2]) * x5 * x6) / x3
        x = (x1, x2, x5, x6, n5, n6)
    if any(v == 0 or not cmath.isfinite(v) for v in (n5, n6)):
        raise DegenerateError(f"flip {letter} produced a degenerate cluster variable")
    return Seed(x, _flip_eps(seed.eps, letter), B_SPHERE)


def _initial_y(y):
    return (y, y, -1 / y, -1 / y, -1, -1)


def sphere_y_pattern(word: str, y) -> list:
    """y-pattern ``y[1], ..., y[c-2]`` from the folded bottom ``(y, y, -1/y, -1/y, -1, -1)``."""
    if isinstance(y, RationalFunction):
        ys = [_initial_y(y)]
    else:
        y = complex(y)
        ys = [YTuple(_initial_y(y))]
    for ch in word:
        ys.append(flip_sphere_y(ys[-1], ch))
    return ys


def _moduli_from_y(word: str, ys: Sequence) -> list[tuple[complex, complex]]:
    out = []
    for k, ch in enumerate(word):
        i, j = MUTATED_SLOTS[ch]
        out.append((-1 / ys[k][i], -1 / ys[k][j]))
    return out


@dataclass
class XLevel:
    """Cluster-variable data of a two-bridge pattern."""

    x: list[tuple[complex, ...]]
    eps: list[tuple[TropEl, ...]]
    z_x: list[tuple[complex, complex]]
    flats: list[tuple[Flattening, Flattening]]


def sphere_x_level(word: str, x0: Sequence[complex], eps0: Sequence[int]) -> XLevel:
    """Propagate cluster variables and coefficients; read off moduli and flattenings.

    Raises
    ------
    InconsistentPattern
        If a flattening parameter is not integral.
    """
    seeds = [Seed(tuple(x0), tuple(TropEl(int(v)) for v in eps0), B_SPHERE)]
    for ch in word:
        seeds.append(flip_sphere_seed(seeds[-1], ch))
    z_x, flats = [], []
    for k, ch in enumerate(word):
        x, nxt, e = seeds[k].x, seeds[k + 1].x, seeds[k].eps
        row_z, row_f = [], []
        for i in (1, 2):
            if ch == "R":
                z = -psi(e[i - 1]) * x[4] * x[5] / (x[2] * x[3])
                f = flattening_from_values(
                    z, [x[4], x[5]], [x[2], x[3]], [x[2], x[3]], [x[i - 1], nxt[6 - i]], k + 1
                )
            else:
                z = -psi(e[i + 1]) * x[0] * x[1] / (x[4] * x[5])
                f = flattening_from_values(
                    z, [x[0], x[1]], [x[4], x[5]], [x[4], x[5]], [x[i + 1], nxt[6 - i]], k + 1
                )
            row_z.append(z)
            row_f.append(f)
        z_x.append(tuple(row_z))
        flats.append(tuple(row_f))
    return XLevel([s.x for s in seeds], [s.eps for s in seeds], z_x, flats)


@dataclass
class BridgePattern:
    """Solved cluster pattern of a two-bridge link complement.

    ``z[k]`` and ``flats[k]`` hold the pair of tetrahedra attached by the
    ``k``-th flip (zero-based).
    """

    spec: TwoBridgeSpec
    y_value: complex
    y: list[YTuple]
    x: list[tuple[complex, ...]]
    eps: list[tuple[TropEl, ...]]
    z: list[tuple[complex, complex]]
    z_x: list[tuple[complex, complex]]
    flats: list[tuple[Flattening, Flattening]]
    eps_case: int
    eps_initial: tuple[int, ...]
    x_value: complex
    residuals: dict[str, float] = field(default_factory=dict)
    stats: dict[str, int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def case(self) -> str:
        return self.spec.case

    @property
    def word(self) -> str:
        return self.spec.word


def _top_residual(spec: TwoBridgeSpec, y: complex) -> complex:
    return sphere_y_pattern(spec.word, y)[-1][spec.top_index] + 1


def _y_roots(spec: TwoBridgeSpec, cfg: RootSearchConfig) -> tuple[RootSet, str]:
    """Candidate values of ``y``: all roots of the exact numerator when feasible."""
    try:
        top = sphere_y_pattern(spec.word, RationalFunction.variable())[-1][spec.top_index] + 1
        coeffs = top.numerator_coeffs()
    except TooLarge:
        coeffs = None
    if coeffs is not None and len(coeffs) >= 2:
        raw = poly_roots(coeffs, cfg)
        roots, residuals, iters = [], [], raw.iterations

        def f(v):
            return [_top_residual(spec, v[0])]

        for (r,) in raw.roots:
            # sharpen against the propagated map, keeping the better of the two
            try:
                before = abs(_top_residual(spec, r))
            except (ZeroDivisionError, DegenerateError):
                continue
            x, res, its, ok = polish(f, [r], cfg)
            iters += its
            if ok and res <= before and abs(x[0] - r) < 1e-6 * (1 + abs(r)):
                r, before = x[0], res
            roots.append((r,))
            residuals.append(before)
        return RootSet(roots, residuals, raw.starts, iters), "polynomial"

    def g(v):
        return [_top_residual(spec, v[0])]

    return newton_multistart(g, 1, cfg), "newton"


def _x_top_residual(spec: TwoBridgeSpec, xs: Sequence[complex]) -> list[float]:
    if spec.n % 2 == 0:
        pairs = ((0, 1), (0, 4), (0, 5))
    else:
        pairs = ((2, 3), (2, 4), (2, 5))
    return [abs(xs[a] / xs[b] - 1) for a, b in pairs]


def _eps_top_ok(spec: TwoBridgeSpec, eps0: Sequence[int]) -> bool:
    eps = tuple(TropEl(v) for v in eps0)
    for ch in spec.word:
        eps = _flip_eps(eps, ch)
    i = spec.top_index
    return psi(eps[i]) == -1 and psi(eps[i + 1]) == -1


def _eps_representatives(spec: TwoBridgeSpec, bound: int = 3) -> list[tuple[int, tuple[int, ...]]]:
    """Initial exponents passing the top coefficient condition, minimal ones first.

    Only parities enter the signs at the bottom, but the tropical sum does
    not respect parity, so larger representatives can propagate to other
    signs.  They are listed after the minimal ones, which are tried first.
    """
    out = [(i, e) for i, e in enumerate(EPS_CASES) if _eps_top_ok(spec, e)]
    wide = []
    for m in itertools.product(range(-bound, bound + 1), repeat=3):
        parity = tuple(v % 2 for v in m)
        for i, base in enumerate(EPS_CASES):
            if parity == (base[0], base[2], base[4]):
                e = (m[0], m[0], m[1], m[1], m[2], m[2])
                if e != base and _eps_top_ok(spec, e):
                    wide.append((sum(abs(v) for v in m), m, i, e))
    return out + [(i, e) for _, _, i, e in sorted(wide)]


def _x_candidates(spec, y, eps0, cfg):
    """Solve the one-unknown top x-condition near both square roots of ``psi(eps1)/y``."""
    a = 0 if spec.n % 2 == 0 else 2

    def h(v):
        seed = Seed((1, 1, 1, 1, v[0], v[0]), tuple(TropEl(e) for e in eps0), B_SPHERE)
        for ch in spec.word:
            seed = flip_sphere_seed(seed, ch)
        return [seed.x[a] / seed.x[4] - 1]

    base = cmath.sqrt(psi(TropEl(eps0[0])) / y)
    out, iters = [], 0
    for s in (1, -1):
        cand = s * base
        try:
            if abs(h([cand])[0]) > 1e-4:
                continue
        except (ZeroDivisionError, DegenerateError):
            continue
        root, _, its, ok = polish(h, [cand], cfg)
        iters += its
        if ok and abs(root[0] - cand) <= 1e-6 * abs(cand):
            out.append((1, 1, 1, 1, root[0], root[0]))
    return out, iters


def _x_candidates_wide(spec, y, eps0, cfg):
    """Two-unknown fallback with ``x[1] = (1, 1, 1, 1, x5, x6)``."""
    a = 0 if spec.n % 2 == 0 else 2

    def h(v):
        seed = Seed((1, 1, 1, 1, v[0], v[1]), tuple(TropEl(e) for e in eps0), B_SPHERE)
        for ch in spec.word:
            seed = flip_sphere_seed(seed, ch)
        return [seed.x[a] / seed.x[4] - 1, seed.x[a + 1] / seed.x[5] - 1]

    base = cmath.sqrt(psi(TropEl(eps0[0])) / y)
    out, iters = [], 0
    for s in (1, -1):
        root, _, its, ok = polish(h, [s * base, s * base], cfg)
        iters += its
        if ok:
            out.append((1, 1, 1, 1, root[0], root[1]))
    return out, iters


def solve_two_bridge(spec: TwoBridgeSpec, cfg: RootSearchConfig | None = None) -> BridgePattern:
    """Solve the folded cluster pattern of ``K_{q/p}``.

    Parameters
    ----------
    spec : TwoBridgeSpec
    cfg : RootSearchConfig, optional

    Returns
    -------
    BridgePattern

    Raises
    ------
    NoGeometricSolution
        No root of the top folding equation is geometric.
    EpsCaseConflict
        Neither coefficient case satisfies the top coefficient condition.
    InconsistentPattern
        No cluster-variable solution reproduces the geometric y-pattern
        with integral flattenings and the Bloch-Wigner volume.
    """
    cfg = cfg or RootSearchConfig()
    cfg = RootSearchConfig(cfg.max_iter, cfg.tol * max(1, spec.c), cfg.starts, cfg.dedupe_eps, cfg.seed)
    word = spec.word
    roots, engine = _y_roots(spec, cfg)

    def moduli(root):
        ys = sphere_y_pattern(word, root[0])
        return [z for pair in _moduli_from_y(word, ys) for z in pair]

    cands = geometric_candidates(roots, moduli)
    if not cands:
        raise NoGeometricSolution(f"no root of the folding equation for {spec.q}/{spec.p} is geometric")
    warnings = []
    if len(cands) > 1:
        warnings.append(f"{len(cands)} roots of the folding equation pass the half-plane test")
    y = max(cands, key=lambda c: c[2])[0][0]
    ys = sphere_y_pattern(word, y)
    z = _moduli_from_y(word, ys)
    vol = sum(bloch_wigner(v) for pair in z for v in pair)

    ok_cases = [i for i, e in enumerate(EPS_CASES) if _eps_top_ok(spec, e)]
    if len(ok_cases) > 1:
        warnings.append("both coefficient cases satisfy the top condition")

    chosen, x_iters, rejected = None, 0, []
    reps = _eps_representatives(spec)
    minimal = [r for r in reps if r[1] in EPS_CASES]
    attempts = [(r, _x_candidates) for r in minimal]
    attempts += [(r, _x_candidates_wide) for r in minimal]
    attempts += [(r, _x_candidates) for r in reps if r[1] not in EPS_CASES]
    for (case, eps0), finder in attempts:
        cands_x, its = finder(spec, y, eps0, cfg)
        x_iters += its
        for x0 in cands_x:
            try:
                xl = sphere_x_level(word, x0, eps0)
            except (InconsistentPattern, DegenerateError) as exc:
                rejected.append(f"case {case + 1}: {exc}")
                continue
            induced = y_from_seed(Seed(xl.x[0], xl.eps[0], B_SPHERE)).y
            if max(abs(a / b - 1) for a, b in zip(induced, ys[0].y)) > 1e-6:
                continue
            if max(_x_top_residual(spec, xl.x[-1])) > 1e-8:
                continue
            flat_list = [f for pair in xl.flats for f in pair]
            s = complex_volume(flat_list, [1] * len(flat_list), "pi^2/6")
            if abs(s.volume - vol) > 1e-9 * max(1.0, vol):
                rejected.append(f"case {case + 1}: imaginary part {s.volume:.9f} differs from volume")
                continue
            chosen = (case, eps0, x0, xl)
            break
        if chosen:
            break
    if chosen is None:
        if not ok_cases:
            raise EpsCaseConflict("neither coefficient case satisfies the top condition", len(word))
        detail = "; ".join(rejected) if rejected else "no candidate satisfied the top x-condition"
        raise InconsistentPattern(f"no consistent cluster pattern for {spec.q}/{spec.p}: {detail}")
    case, eps0, x0, xl = chosen
    if tuple(eps0) not in EPS_CASES:
        warnings.append(f"minimal coefficient exponents failed; used {tuple(eps0)}")
    elif ok_cases and case != ok_cases[0]:
        warnings.append(
            f"coefficient case {ok_cases[0] + 1} was rejected; case {case + 1} is consistent"
        )

    pat = BridgePattern(
        spec=spec,
        y_value=y,
        y=ys,
        x=xl.x,
        eps=xl.eps,
        z=z,
        z_x=xl.z_x,
        flats=xl.flats,
        eps_case=case + 1,
        eps_initial=tuple(eps0),
        x_value=x0[4],
        warnings=warnings,
    )
    folding = abs(ys[-1][spec.top_index] + 1)
    folding = max(folding, abs(ys[-1][spec.top_index + 1] + 1))
    sym = max(abs(t[0] - t[1]) + abs(t[2] - t[3]) + abs(t[4] - t[5]) for t in ys)
    gl = bridge_gluing_products(pat)
    cp = bridge_completeness_products(pat)
    pat.residuals = {
        "folding": float(folding),
        "symmetry": float(sym),
        "triple_product": float(max(abs(v - 1) for v in triple_products(pat))),
        "gluing_max": float(max(abs(v - 1) for v in gl)),
        "completeness_max": float(max((abs(v - 1) for v in cp), default=0.0)),
    }
    pat.stats = {
        "starts": roots.starts,
        "iterations": roots.iterations + x_iters,
        "root_count": len(roots),
        "engine": engine,
    }
    return pat


def triple_products(pat: BridgePattern) -> list[complex]:
    """``y_i y_j y_k`` for ``i`` in {1,2}, ``j`` in {3,4}, ``k`` in {5,6} at every step."""
    out = []
    for t in pat.y:
        for i in (0, 1):
            for j in (2, 3):
                for k in (4, 5):
                    out.append(t[i] * t[j] * t[k])
    return out


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def bridge_gluing_products(pat: BridgePattern) -> list[complex]:
    """Gluing products of every edge class, including those folded at the ends."""
    word = pat.spec.word
    layers = []
    for k, ch in enumerate(word):
        i, j = MUTATED_SLOTS[ch]
        layers.append(Layer(((i, pat.z[k][0], (k, 0)), (j, pat.z[k][1], (k, 1))), SWAPS[ch]))
    tr = EdgeTracker(B_SPHERE).run(layers)
    edges = tr.edges
    index = {id(e): n for n, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def union(a, b):
        ra, rb = _find(parent, index[id(a)]), _find(parent, index[id(b)])
        if ra != rb:
            parent[rb] = ra

    bottom = edges[:6]
    for s in (1, 2, 3):
        union(bottom[0], bottom[s])
    top = tr.alive()
    merged = (0, 1, 4, 5) if pat.spec.n % 2 == 0 else (2, 3, 4, 5)
    for s in merged[1:]:
        union(top[merged[0]], top[s])
    groups: dict[int, list] = {}
    for n, e in enumerate(edges):
        groups.setdefault(_find(parent, n), []).append(e)
    out = []
    for g in groups.values():
        prod = 1 + 0j
        for e in g:
            prod *= e.product
        out.append(prod)
    return out


def bridge_completeness_products(pat: BridgePattern) -> list[complex]:
    """Cusp curves read off the layering that must evaluate to 1.

    Each curve is included when the word is long enough for its indices to
    exist: the lower curve through the first run of ``R`` flips and the
    upper curve of the applicable boundary case.
    """
    spec = pat.spec
    a1, an = spec.cf[0], spec.cf[-1]
    c = spec.c
    m = len(spec.word)

    def z(i, k):
        return pat.z[k - 1][i - 1]

    def zp(i, k):
        return 1 - 1 / z(i, k)

    def zpp(i, k):
        return 1 / (1 - z(i, k))

    def valid(*ks):
        return all(1 <= k <= m for k in ks)

    out = []
    if valid(a1, 1):
        v = z(1, a1) * zp(2, 1) / zpp(1, 1)
        for k in range(2, a1):
            v *= zp(1, k) * zp(2, k)
        out.append(v)
    case = spec.case
    if case == "I" and valid(c - 3, c - an - 2):
        v = zpp(1, c - 3) / zp(2, c - 3) * z(2, c - an - 2)
        for k in range(c - an - 1, c - 3):
            v *= zpp(1, k) * zpp(2, k)
        out.append(v)
    elif case == "II" and valid(c - 3, c - 4):
        out.append(zpp(1, c - 3) / zp(2, c - 3) * z(1, c - 4))
    elif case == "III" and valid(c - 3, c - an - 2):
        v = zp(1, c - 3) / zpp(2, c - 3) * z(1, c - an - 2)
        for k in range(c - an - 1, c - 3):
            v *= zp(1, k) * zp(2, k)
        out.append(v)
    elif case == "IV" and valid(c - 3, c - 4):
        out.append(zp(1, c - 3) / zpp(2, c - 3) * z(2, c - 4))
    return out


def bridge_volume(pat: BridgePattern) -> float:
    """Hyperbolic volume as the double sum of Bloch-Wigner values."""
    return float(sum(bloch_wigner(v) for pair in pat.z for v in pair))


def bridge_complex_volume(pat: BridgePattern) -> ComplexVolume:
    """Complex volume modulo ``pi^2/6`` from the unsigned sum over all tetrahedra."""
    flats = [f for pair in pat.flats for f in pair]
    return complex_volume(flats, [1] * len(flats), "pi^2/6")


def is_double_twist(spec: TwoBridgeSpec) -> bool:
    """True for continued fractions ``[a+1, 2]`` with ``a >= 2``."""
    return spec.n == 2 and spec.cf[1] == 2 and spec.cf[0] >= 3


@dataclass(frozen=True)
class OrientedTetrahedron:
    """A tetrahedron of the oriented double-twist computation."""

    k: int
    slot: int
    flat: Flattening
    sign: int


def double_twist_tetrahedra(pat: BridgePattern) -> list[OrientedTetrahedron]:
    """Oriented moduli, flattenings and signs for the family ``[a+1, 2]``.

    Raises
    ------
    WrongFamily
        If the continued fraction is not of the form ``[a+1, 2]``.
    InconsistentPattern
        If a displayed ``1/(1-z)`` does not match its modulus.
    """
    spec = pat.spec
    if not is_double_twist(spec):
        raise WrongFamily(f"continued fraction {list(spec.cf)} is not of the form [a+1, 2]")
    a = len(spec.word)
    out = []
    for k in range(1, a + 1):
        x, nxt, eps = pat.x[k - 1], pat.x[k], pat.eps[k - 1]
        for i in (1, 2):
            e = eps[i - 1].exponent
            inv = -min(0, e)  # exponent of 1/(1 ⊕ eps)
            xi, xo = x[i - 1], nxt[6 - i]
            if k % 2 == 1 and k not in (a, a - 1):
                kind = "A"
            elif k % 2 == 0 and k != a:
                kind = "B"
            elif k % 2 == 1:
                kind = "C" if i == 1 else "A"
            else:
                kind = "D"
            if kind == "A":
                sign = -1
                zc, zs, zn, zd = -inv - e, 1, (xi, xo), (x[2], x[3])
                wc, ws, wn, wd = e, -1, (x[2], x[3]), (x[4], x[5])
            elif kind == "B":
                sign = 1
                zc, zs, zn, zd = -e, -1, (x[4], x[5]), (x[2], x[3])
                wc, ws, wn, wd = e + inv, 1, (x[2], x[3]), (xi, xo)
            elif kind == "C":
                sign = 1
                zc, zs, zn, zd = -inv, 1, (xi, xo), (x[4], x[5])
                wc, ws, wn, wd = -e, -1, (x[4], x[5]), (x[2], x[3])
            else:
                sign = -1
                zc, zs, zn, zd = inv, 1, (x[4], x[5]), (xi, xo)
                wc, ws, wn, wd = -inv - e, 1, (xi, xo), (x[2], x[3])
            if kind == "A" and k in (a, a - 1):
                sign = -1
            zv = zs * psi(TropEl(zc)) * zn[0] * zn[1] / (zd[0] * zd[1])
            wv = ws * psi(TropEl(wc)) * wn[0] * wn[1] / (wd[0] * wd[1])
            if abs(wv * (1 - zv) - 1) > 1e-8:
                raise InconsistentPattern("oriented modulus does not match its 1/(1-z) display", k)
            flat = flattening_from_values(zv, zn, zd, wn, wd, k)
            out.append(OrientedTetrahedron(k, i, flat, sign))
    return out


def double_twist_oriented(
    spec: TwoBridgeSpec, cfg: RootSearchConfig | None = None, pat: BridgePattern | None = None
) -> ComplexVolume:
    """Complex volume modulo ``pi^2`` for the family ``[a+1, 2]``.

    Raises
    ------
    WrongFamily
        If the continued fraction is not of the form ``[a+1, 2]``.
    """
    if not is_double_twist(spec):
        raise WrongFamily(f"continued fraction {list(spec.cf)} is not of the form [a+1, 2]")
    pat = pat or solve_two_bridge(spec, cfg)
    tets = double_twist_tetrahedra(pat)
    return complex_volume([t.flat for t in tets], [t.sign for t in tets], "pi^2")
