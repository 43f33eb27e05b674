"""Seeds with tropical coefficients, their mutations and index permutations.

Indices are zero-based throughout: the flip written ``mu_1`` acts on index 0.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DegenerateError
from .semifield import TropEl, psi, ratio_part, unit_part

__all__ = [
    "ExchangeMatrix",
    "Seed",
    "YTuple",
    "B_TORUS",
    "B_SPHERE",
    "mutate",
    "mutate_matrix",
    "mutate_y",
    "y_from_seed",
    "permute",
]


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric integer exchange matrix stored as a tuple of rows."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("exchange matrix must be square and nonempty")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"exchange matrix is not skew-symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_array(cls, a) -> ExchangeMatrix:
        return cls(tuple(tuple(int(v) for v in row) for row in np.asarray(a)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)


@dataclass(frozen=True)
class Seed:
    """Cluster variables ``x``, tropical coefficients ``eps`` and exchange matrix ``b``."""

    x: tuple[complex, ...]
    eps: tuple[TropEl, ...]
    b: ExchangeMatrix

    def __post_init__(self):
        x = tuple(complex(v) for v in self.x)
        eps = tuple(e if isinstance(e, TropEl) else TropEl(int(e)) for e in self.eps)
        if not (len(x) == len(eps) == self.b.n):
            raise ValueError("x, eps and b must share the same size")
        if any(v == 0 for v in x):
            raise ValueError("cluster variables must be nonzero")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "eps", eps)

    @property
    def n(self) -> int:
        return self.b.n


@dataclass(frozen=True)
class YTuple:
    """Coefficient-free y-variables."""

    y: tuple[complex, ...]

    def __post_init__(self):
        y = tuple(complex(v) for v in self.y)
        if any(v == 0 for v in y):
            raise ValueError("y-variables must be nonzero")
        object.__setattr__(self, "y", y)

    def __len__(self) -> int:
        return len(self.y)

    def __getitem__(self, i):
        return self.y[i]


B_TORUS = ExchangeMatrix(((0, -2, 2), (2, 0, -2), (-2, 2, 0)))

B_SPHERE = ExchangeMatrix(
    (
        (0, 0, -1, -1, 1, 1),
        (0, 0, -1, -1, 1, 1),
        (1, 1, 0, 0, -1, -1),
        (1, 1, 0, 0, -1, -1),
        (-1, -1, 1, 1, 0, 0),
        (-1, -1, 1, 1, 0, 0),
    )
)


def _check_index(k: int, n: int) -> None:
    if not (0 <= k < n):
        raise IndexError(f"index {k} out of range for size {n}")


def _check_finite(values: Sequence[complex], what: str) -> None:
    for i, v in enumerate(values):
        if v == 0 or not cmath.isfinite(v):
            raise DegenerateError(f"{what}: entry {i} is {v}")


def mutate_matrix(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation at index ``k``."""
    n = b.n
    _check_index(k, n)
    e = b.entries
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-e[i][j])
            else:
                bik, bkj = e[i][k], e[k][j]
                row.append(e[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        rows.append(tuple(row))
    return ExchangeMatrix(tuple(rows))


def mutate(seed: Seed, k: int) -> Seed:
    """Mutate a seed at index ``k``.

    The two tropical prefactors of the exchange relation are computed exactly
    and mapped through ``psi`` to signs before the complex evaluation.
    """
    n = seed.n
    _check_index(k, n)
    x, eps, e = seed.x, seed.eps, seed.b.entries
    ek = eps[k]
    pos = 1 + 0j
    neg = 1 + 0j
    for j in range(n):
        bjk = e[j][k]
        if bjk > 0:
            pos *= x[j] ** bjk
        elif bjk < 0:
            neg *= x[j] ** (-bjk)
    xk = (psi(ratio_part(ek)) * pos + psi(unit_part(ek)) * neg) / x[k]
    new_x = list(x)
    new_x[k] = xk
    _check_finite(new_x, f"mutation at index {k}")

    new_eps = []
    for i in range(n):
        if i == k:
            new_eps.append(ek.inverse())
            continue
        bki = e[k][i]
        if bki >= 0:
            new_eps.append(eps[i] * ratio_part(ek) ** bki)
        else:
            new_eps.append(eps[i] * (ek + TropEl(0)) ** (-bki))
    return Seed(tuple(new_x), tuple(new_eps), mutate_matrix(seed.b, k))


def mutate_y(yt: YTuple, b: ExchangeMatrix, k: int) -> tuple[YTuple, ExchangeMatrix]:
    """Coefficient-free mutation of y-variables at index ``k``."""
    n = b.n
    if len(yt) != n:
        raise ValueError("y-tuple and exchange matrix sizes differ")
    _check_index(k, n)
    y = yt.y
    yk = y[k]
    if yk == 0:
        raise DegenerateError(f"y_{k} = 0 has no inverse")
    out = []
    try:
        for i in range(n):
            if i == k:
                out.append(1 / yk)
                continue
            bki = b[k, i]
            if bki >= 0:
                out.append(y[i] * (yk / (1 + yk)) ** bki)
            else:
                out.append(y[i] * (1 + yk) ** (-bki))
    except ZeroDivisionError as exc:
        raise DegenerateError(f"y-mutation at index {k}: 1 + y_k = 0") from exc
    _check_finite(out, f"y-mutation at index {k}")
    return YTuple(tuple(out)), mutate_matrix(b, k)


def y_from_seed(seed: Seed) -> YTuple:
    """y-variables ``y_j = psi(eps_j) * prod_k x_k ** b_kj`` of a seed."""
    n = seed.n
    e = seed.b.entries
    out = []
    for j in range(n):
        v = complex(psi(seed.eps[j]))
        for k in range(n):
            if e[k][j]:
                v *= seed.x[k] ** e[k][j]
        out.append(v)
    return YTuple(tuple(out))


def _swap(seq: Sequence, i: int, j: int) -> tuple:
    out = list(seq)
    out[i], out[j] = out[j], out[i]
    return tuple(out)


Permutable = Union[Seed, YTuple, ExchangeMatrix]


def permute(obj: Permutable, i: int, j: int) -> Permutable:
    """Swap indices ``i`` and ``j`` of a seed, y-tuple or exchange matrix."""
    n = obj.n if not isinstance(obj, YTuple) else len(obj)
    _check_index(i, n)
    _check_index(j, n)
    if i == j:
        raise ValueError("permutation indices must differ")
    if isinstance(obj, YTuple):
        return YTuple(_swap(obj.y, i, j))
    if isinstance(obj, ExchangeMatrix):
        rows = _swap(obj.entries, i, j)
        return ExchangeMatrix(tuple(_swap(r, i, j) for r in rows))
    if isinstance(obj, Seed):
        return Seed(_swap(obj.x, i, j), _swap(obj.eps, i, j), permute(obj.b, i, j))
    raise TypeError(f"cannot permute {type(obj).__name__}")
