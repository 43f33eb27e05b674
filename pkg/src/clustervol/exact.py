"""Exact univariate rational functions with integer coefficients.

Used to propagate a one-parameter boundary condition through a flip word
symbolically, so that its numerator polynomial can be handed to the
polynomial root finder and every root is enumerated.
"""

from __future__ import annotations

from functools import lru_cache

__all__ = ["RationalFunction", "TooLarge"]


class TooLarge(ArithmeticError):
    """Exact propagation exceeded the degree budget."""


@lru_cache(maxsize=1)
def _sympy():
    import sympy

    return sympy


class RationalFunction:
    """Reduced quotient ``num / den`` of integer polynomials in one variable.

    Supports ``+ - * /`` with other instances and with integers, which is all
    the explicit flip formulas need.

    Parameters
    ----------
    num, den : sympy.Poly
        Polynomials over the integers in the same generator.
    max_degree : int
        Raise :class:`TooLarge` when either side exceeds this degree.
    """

    __slots__ = ("num", "den", "max_degree")

    def __init__(self, num, den=None, max_degree: int = 200):
        sp = _sympy()
        if den is None:
            den = sp.Poly(1, *num.gens, domain="ZZ")
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        num, den = num.cancel(den, include=True)
        if den.LC() < 0:
            num, den = -num, -den
        if max(num.degree(), den.degree()) > max_degree:
            raise TooLarge(f"degree exceeds {max_degree}")
        self.num, self.den, self.max_degree = num, den, max_degree

    @classmethod
    def variable(cls, name: str = "y", max_degree: int = 200) -> RationalFunction:
        sp = _sympy()
        s = sp.Symbol(name)
        return cls(sp.Poly(s, s, domain="ZZ"), max_degree=max_degree)

    def _lift(self, other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, int):
            sp = _sympy()
            return RationalFunction(sp.Poly(other, *self.num.gens, domain="ZZ"), max_degree=self.max_degree)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den, self.max_degree)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, self.max_degree)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den, self.max_degree)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num, self.max_degree)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n), self.max_degree)
        return RationalFunction(self.num**n, self.den**n, self.max_degree)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    @property
    def degree(self) -> int:
        return max(self.num.degree(), self.den.degree())

    def numerator_coeffs(self, squarefree: bool = True) -> list[int]:
        """Integer coefficients of the numerator, highest degree first."""
        p = self.num.sqf_part() if squarefree and self.num.degree() > 0 else self.num
        return [int(c) for c in p.all_coeffs()]

    def __call__(self, value: complex) -> complex:
        num = complex(0)
        for c in self.num.all_coeffs():
            num = num * value + int(c)
        den = complex(0)
        for c in self.den.all_coeffs():
            den = den * value + int(c)
        return num / den

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num.as_expr()}) / ({self.den.as_expr()}))"
