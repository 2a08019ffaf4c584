"""Exact rational building blocks: polynomials over Q, Bernoulli numbers,
and power-sum (Faulhaber) polynomials.

Everything here is exact. Coefficients are `fractions.Fraction` values
(arbitrary precision, lowest terms by construction) and no floating point
enters any computation. The numeric layer converts to big floats only at
evaluation time.

Bernoulli numbers use the B1 = +1/2 convention, which is the one under
which sum_{i=1}^{n} i^m = (1/(m+1)) sum_j C(m+1, j) B_j n^{m+1-j}.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb
from typing import Iterable, Union

Rational = Fraction

Scalar = Union[int, Fraction]


class Polynomial:
    """Dense univariate polynomial with Fraction coefficients.

    Coefficients are stored in ascending degree order with trailing zeros
    trimmed, so the leading coefficient of a nonzero polynomial is nonzero.
    The zero polynomial stores no coefficients and has degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Scalar] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(coeffs)

    # ---- constructors ----

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, coefficient: Scalar = 1) -> "Polynomial":
        if degree < 0:
            raise ValueError("monomial degree must be nonnegative")
        return cls((0,) * degree + (coefficient,))

    # ---- basic structure ----

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, i: int) -> Fraction:
        """Coefficient of x**i (zero beyond the degree)."""
        if i < 0:
            raise ValueError("coefficient index must be nonnegative")
        if i >= len(self._coeffs):
            return Fraction(0)
        return self._coeffs[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    # ---- ring operations ----

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial()
            out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a:
                    for j, b in enumerate(other._coeffs):
                        out[i + j] += a * b
            return Polynomial(out)
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self._coeffs)
        return NotImplemented

    def __rmul__(self, other: Scalar) -> "Polynomial":
        return self.__mul__(other)

    def __truediv__(self, other: Scalar) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(c / other for c in self._coeffs)
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Exact long division: self = q*other + r with deg r < deg other."""
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        d = other.degree
        lead = other._coeffs[-1]
        rem = list(self._coeffs)
        if len(rem) <= d and d > 0:
            return Polynomial(), self
        quot = [Fraction(0)] * max(0, len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - d] = c
                for j, oc in enumerate(other._coeffs):
                    rem[i - d + j] -= c * oc
            rem[i] = Fraction(0)
        return Polynomial(quot), Polynomial(rem[:d])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    # ---- calculus and composition ----

    def __call__(self, x):
        """Evaluate by Horner's rule.

        Exact for int/Fraction arguments; also works for any ring element
        that mixes with Fraction (e.g. mpmath mpf/mpc), rounding at the
        caller's working precision.
        """
        if not self._coeffs:
            return Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        acc = self._coeffs[-1]
        for c in reversed(self._coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self._coeffs) if i > 0)

    def antiderivative(self) -> "Polynomial":
        """The antiderivative whose value at 0 is 0."""
        out = [Fraction(0)]
        out.extend(c / (i + 1) for i, c in enumerate(self._coeffs))
        return Polynomial(out)

    def shift(self, offset: Scalar) -> "Polynomial":
        """The composition P(x + offset), expanded exactly."""
        offset = Fraction(offset)
        if offset == 0 or self.is_zero:
            return self
        linear = Polynomial((offset, 1))
        acc = Polynomial.constant(self._coeffs[-1])
        for c in reversed(self._coeffs[:-1]):
            acc = acc * linear + Polynomial.constant(c)
        return acc

    # ---- display ----

    def to_str(self, var: str = "x") -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = -c if c < 0 else c
            if i == 0:
                body = str(mag)
            else:
                power = var if i == 1 else f"{var}^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({list(self._coeffs)!r})"


class BernoulliCache:
    """Grow-on-demand table of Bernoulli numbers, B1 = +1/2 convention.

    Uses the defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = m + 1.
    Growth happens under a lock; reads of already-computed entries are
    lock-free (entries are immutable once written).
    """

    def __init__(self) -> None:
        self._table: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def get(self, m: int) -> Fraction:
        if m < 0:
            raise ValueError("Bernoulli index must be nonnegative")
        if m >= len(self._table):
            with self._lock:
                while len(self._table) <= m:
                    n = len(self._table)
                    acc = Fraction(0)
                    for j, bj in enumerate(self._table):
                        acc += comb(n + 1, j) * bj
                    self._table.append((n + 1 - acc) / (n + 1))
        return self._table[m]


_BERNOULLI = BernoulliCache()


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m (convention B_1 = +1/2)."""
    return _BERNOULLI.get(m)


def faulhaber(m: int) -> Polynomial:
    """Power-sum polynomial P_m with P_m(n) = sum_{i=1}^{n} i^m.

    Degree m+1, zero constant term.
    """
    if m < 0:
        raise ValueError("power-sum exponent must be nonnegative")
    coeffs = [Fraction(0)] * (m + 2)
    for j in range(m + 1):
        # degree m+1-j term
        coeffs[m + 1 - j] = Fraction(comb(m + 1, j), m + 1) * bernoulli(j)
    return Polynomial(coeffs)
