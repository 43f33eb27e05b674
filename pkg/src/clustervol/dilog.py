"""Dilogarithm, Bloch-Wigner function, extended Rogers dilogarithm and flattenings.

All logarithms use the principal branch with argument in ``(-pi, pi]``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InconsistentPattern

__all__ = [
    "PI",
    "PI2",
    "PI2_6",
    "plog",
    "parg",
    "li2",
    "bloch_wigner",
    "Flattening",
    "rogers_hat",
    "flattening_from_logs",
    "flattening_from_values",
    "ComplexVolume",
    "reduce_cs",
    "complex_volume",
    "CS_MODULI",
]

PI = math.pi
PI2 = PI * PI
PI2_6 = PI2 / 6
CS_MODULI = {"pi^2": PI2, "pi^2/6": PI2_6}

INTEGRALITY_TOL = 1e-6


def parg(z: complex) -> float:
    """Principal argument in ``(-pi, pi]``; negative reals map to ``+pi`` whatever the sign of zero."""
    z = complex(z)
    if z.imag == 0 and z.real < 0:
        return PI
    return math.atan2(z.imag, z.real)


def plog(z: complex) -> complex:
    """Principal logarithm consistent with :func:`parg`."""
    z = complex(z)
    if z == 0:
        raise ValueError("log of zero")
    return complex(math.log(abs(z)), parg(z))


def _bernoulli_coefficients(count: int) -> list[float]:
    # B_n / (n+1)! with B_1 = -1/2
    b = [Fraction(1)]
    for m in range(1, count):
        s = sum(Fraction(math.comb(m + 1, j)) * b[j] for j in range(m))
        b.append(-s / (m + 1))
    return [float(b[n] / math.factorial(n + 1)) for n in range(count)]


_BERN = _bernoulli_coefficients(64)


def _li2_series(z: complex) -> complex:
    # valid for |z| <= 1 and Re z <= 1/2, where |log(1 - z)| < 1.8
    u = -plog(1 - z)
    u2 = u * u
    total = u + _BERN[1] * u2
    power = u
    for n in range(2, len(_BERN), 2):
        power *= u2
        term = _BERN[n] * power
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


def _li2_disk(z: complex) -> complex:
    if z == 1:
        return complex(PI2_6)
    if z.real > 0.5:
        return PI2_6 - plog(z) * plog(1 - z) - _li2_series(1 - z)
    return _li2_series(z)


def li2(z: complex) -> complex:
    """Principal branch of the dilogarithm.

    Raises
    ------
    ValueError
        If ``z`` lies on the branch cut ``(1, inf)`` or is not finite.
    """
    z = complex(z)
    if not cmath.isfinite(z):
        raise ValueError(f"li2 argument is not finite: {z}")
    if z == 0:
        return 0j
    if z.imag == 0 and z.real > 1:
        raise ValueError(f"li2 argument {z} lies on the branch cut [1, inf)")
    if abs(z) > 1:
        return -PI2_6 - 0.5 * plog(-z) ** 2 - _li2_disk(1 / z)
    return _li2_disk(z)


def bloch_wigner(z: complex) -> float:
    """Bloch-Wigner function ``D(z) = Im Li2(z) + arg(1 - z) log|z|``."""
    z = complex(z)
    if z == 0 or z == 1:
        raise ValueError(f"Bloch-Wigner function undefined at {z}")
    if z.imag == 0:
        return 0.0
    return li2(z).imag + parg(1 - z) * math.log(abs(z))


@dataclass(frozen=True)
class Flattening:
    """A tetrahedron modulus ``z`` with integer branch parameters ``p`` and ``q``."""

    z: complex
    p: int
    q: int

    def __post_init__(self):
        z = complex(self.z)
        if z == 0 or z == 1 or not cmath.isfinite(z):
            raise ValueError(f"invalid tetrahedron modulus {z}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "q", int(self.q))
        total = self.w0 + self.w1 + self.w2
        assert abs(total) <= 1e-12 * (1 + abs(self.w0) + abs(self.w1)), total

    @property
    def w0(self) -> complex:
        return plog(self.z) + self.p * PI * 1j

    @property
    def w1(self) -> complex:
        return -plog(1 - self.z) + self.q * PI * 1j

    @property
    def w2(self) -> complex:
        return plog(1 - self.z) - plog(self.z) - (self.p + self.q) * PI * 1j

    @property
    def z_prime(self) -> complex:
        return 1 - 1 / self.z

    @property
    def z_dprime(self) -> complex:
        return 1 / (1 - self.z)


def rogers_hat(f: Flattening) -> complex:
    """Extended Rogers dilogarithm of a flattening."""
    lz = plog(f.z)
    l1 = plog(1 - f.z)
    return li2(f.z) + 0.5 * lz * l1 + 0.5j * PI * (f.q * lz + f.p * l1) - PI2_6


def _integer_part(value: complex, what: str, k: int | None) -> int:
    n = round(value.real)
    if abs(value - n) > INTEGRALITY_TOL:
        raise InconsistentPattern(f"non-integral flattening parameter {what} = {value:.8g}", k)
    return int(n)


def flattening_from_logs(
    log_num: Sequence[complex],
    log_den: Sequence[complex],
    z: complex,
    q_num: Sequence[complex],
    q_den: Sequence[complex],
    k: int | None = None,
) -> Flattening:
    """Flattening from logarithms of edge parameters.

    ``p`` solves ``Log z + p*pi*i = sum(log_num) - sum(log_den)`` and ``q``
    solves ``-Log(1 - z) + q*pi*i = sum(q_num) - sum(q_den)``.

    Raises
    ------
    InconsistentPattern
        If either parameter is not an integer to within ``1e-6``.
    """
    z = complex(z)
    p_line = sum(log_num, 0j) - sum(log_den, 0j)
    q_line = sum(q_num, 0j) - sum(q_den, 0j)
    p = _integer_part((p_line - plog(z)) / (PI * 1j), "p", k)
    q = _integer_part((q_line + plog(1 - z)) / (PI * 1j), "q", k)
    return Flattening(z, p, q)


def flattening_from_values(
    z: complex,
    p_num: Iterable[complex],
    p_den: Iterable[complex],
    q_num: Iterable[complex],
    q_den: Iterable[complex],
    k: int | None = None,
) -> Flattening:
    """Same as :func:`flattening_from_logs` but takes the edge parameters themselves."""
    return flattening_from_logs(
        [plog(v) for v in p_num],
        [plog(v) for v in p_den],
        z,
        [plog(v) for v in q_num],
        [plog(v) for v in q_den],
        k,
    )


def reduce_cs(value: float, modulus: float) -> float:
    """Representative of ``value`` modulo ``modulus`` in ``(-modulus/2, modulus/2]``."""
    r = value - modulus * round(value / modulus)
    if r <= -modulus / 2:
        r += modulus
    elif r > modulus / 2:
        r -= modulus
    return r


@dataclass(frozen=True)
class ComplexVolume:
    """``Vol + i CS`` together with the modulus in which ``CS`` is defined.

    Attributes
    ----------
    volume : float
        Imaginary part of the signed sum ``S`` of extended dilogarithms.
    cs : float
        ``-Re S`` reduced into ``(-modulus/2, modulus/2]``.
    modulus : str
        ``"pi^2"`` or ``"pi^2/6"``.
    raw : complex
        The unreduced sum ``S``.
    """

    volume: float
    cs: float
    modulus: str
    raw: complex

    @property
    def modulus_value(self) -> float:
        return CS_MODULI[self.modulus]


def complex_volume(
    flats: Sequence[Flattening], signs: Sequence[int], modulus: str
) -> ComplexVolume:
    """Signed sum of extended dilogarithms, reported as ``Vol`` and reduced ``CS``."""
    if modulus not in CS_MODULI:
        raise ValueError(f"unknown modulus {modulus!r}")
    if len(flats) != len(signs):
        raise ValueError("one sign per flattening is required")
    s = sum((sg * rogers_hat(f) for f, sg in zip(flats, signs)), 0j)
    return ComplexVolume(s.imag, reduce_cs(-s.real, CS_MODULI[modulus]), modulus, s)
