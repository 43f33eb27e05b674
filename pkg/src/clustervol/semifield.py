"""The one-generator tropical semifield and its evaluation map.

An element ``delta**k`` is stored by its integer exponent ``k``.  The
semifield product adds exponents and the semifield sum takes the minimum,
so every coefficient computation stays exact.  The map ``psi`` substitutes
``delta = -1`` and therefore only looks at the parity of the exponent.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "TropEl",
    "ONE",
    "DELTA",
    "trop_mul",
    "trop_add",
    "trop_div",
    "psi",
    "ratio_part",
    "unit_part",
]


@dataclass(frozen=True, order=True)
class TropEl:
    """The tropical element ``delta**exponent``.

    ``a * b`` is the semifield product, ``a + b`` the semifield sum ``a ⊕ b``
    and ``a / b``, ``a ** n`` the induced quotient and integer power.
    """

    exponent: int = 0

    def __post_init__(self):
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int):
            raise TypeError(f"tropical exponent must be an int, got {self.exponent!r}")

    def __mul__(self, other: TropEl) -> TropEl:
        if not isinstance(other, TropEl):
            return NotImplemented
        return TropEl(self.exponent + other.exponent)

    def __truediv__(self, other: TropEl) -> TropEl:
        if not isinstance(other, TropEl):
            return NotImplemented
        return TropEl(self.exponent - other.exponent)

    def __add__(self, other: TropEl) -> TropEl:
        if not isinstance(other, TropEl):
            return NotImplemented
        return TropEl(min(self.exponent, other.exponent))

    def __pow__(self, n: int) -> TropEl:
        return TropEl(self.exponent * int(n))

    def inverse(self) -> TropEl:
        return TropEl(-self.exponent)

    def psi(self) -> int:
        return psi(self)

    def __repr__(self) -> str:
        return f"δ^{self.exponent}"


ONE = TropEl(0)
DELTA = TropEl(1)


def trop_mul(a: TropEl, b: TropEl) -> TropEl:
    """Semifield product, ``delta**(a + b)``."""
    return TropEl(a.exponent + b.exponent)


def trop_add(a: TropEl, b: TropEl) -> TropEl:
    """Semifield sum, ``delta**min(a, b)``."""
    return TropEl(min(a.exponent, b.exponent))


def trop_div(a: TropEl, b: TropEl) -> TropEl:
    return TropEl(a.exponent - b.exponent)


def psi(a: TropEl) -> int:
    """Evaluate at ``delta = -1``."""
    return -1 if a.exponent % 2 else 1


def ratio_part(eps: TropEl) -> TropEl:
    """The element ``eps / (1 ⊕ eps)``."""
    return TropEl(eps.exponent - min(0, eps.exponent))


def unit_part(eps: TropEl) -> TropEl:
    """The element ``1 / (1 ⊕ eps)``."""
    return TropEl(-min(0, eps.exponent))
