"""Exact arithmetic in cyclotomic fields Q(ζ_n).

Elements are stored in the power basis 1, ζ, ..., ζ^{φ(n)-1} reduced modulo
the n-th cyclotomic polynomial, so equality is coefficient equality.  Mixing
two orders lifts both to their lcm.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

Number = "int | Fraction | Cyclotomic"


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, coefficient lists low degree first, den monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c:
            q[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Φ_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _reduce(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            shift = i - deg
            for j, pj in enumerate(phi):
                c[shift + j] -= lead * pj
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(c)


class Cyclotomic:
    """An element of Q(ζ_n), ζ_n = exp(2πi/n)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs) -> None:
        self.n = int(n)
        self.coeffs = _reduce([Fraction(c) for c in coeffs], self.n)

    @classmethod
    def root(cls, n: int, k: int) -> Cyclotomic:
        """ζ_n^k."""
        k %= n
        coeffs = [Fraction(0)] * (k + 1)
        coeffs[k] = Fraction(1)
        return cls(n, coeffs)

    @classmethod
    def rational(cls, value) -> Cyclotomic:
        return cls(1, [Fraction(value)])

    def lift(self, m: int) -> Cyclotomic:
        """Same number viewed in Q(ζ_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot lift from order {self.n} to {m}")
        step = m // self.n
        coeffs = [Fraction(0)] * (step * len(self.coeffs) + 1)
        for i, c in enumerate(self.coeffs):
            coeffs[i * step] = c
        return Cyclotomic(m, coeffs)

    # --- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(other)
        return None

    def _common(self, other: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
        m = self.n * other.n // math.gcd(self.n, other.n)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) + other
        a, b = self._common(o)
        return Cyclotomic(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) - other
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [c * other for c in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return complex(self) * other
        a, b = self._common(o)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(a.n, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [c / other for c in self.coeffs])
        return complex(self) / other

    def conjugate(self) -> Cyclotomic:
        coeffs = [Fraction(0)] * self.n
        for i, c in enumerate(self.coeffs):
            coeffs[(-i) % self.n] += c
        return Cyclotomic(self.n, coeffs)

    # --- comparisons and conversion -------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def rational_value(self) -> Fraction | None:
        """The value as a Fraction when it is rational, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        r = self.rational_value()
        if r is not None:
            return hash(r)
        return hash((self.n, self.coeffs))

    def __complex__(self) -> complex:
        return complex(sum(float(c) * cmath.exp(2j * math.pi * i / self.n) for i, c in enumerate(self.coeffs) if c))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"Cyclotomic({self.n}: {' + '.join(terms) or '0'})"

    def to_dict(self) -> dict:
        return {"order": self.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, d: dict) -> Cyclotomic:
        return cls(int(d["order"]), [Fraction(c) for c in d["coeffs"]])


def exact_equal(a, b) -> bool:
    """Exact equality for ints, Fractions and Cyclotomic numbers."""
    return Cyclotomic._coerce(a) == Cyclotomic._coerce(b)


def to_complex(x) -> complex:
    return complex(x) if not isinstance(x, Fraction) else complex(float(x))
