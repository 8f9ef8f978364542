"""Rational numbers viewed inside Q_p: valuations, unit parts, residues."""

from __future__ import annotations

from fractions import Fraction

INF_VALUATION = 10**9  # stands in for v(0) = +∞


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_base(q: int) -> int | None:
    """p if q = p^r with r >= 1, else None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return p if q == 1 else None


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"p-adic elements are encoded as rationals, got {type(x).__name__}")


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, p: int) -> int:
    """v_p(x); INF_VALUATION for x = 0."""
    x = as_fraction(x)
    if x == 0:
        return INF_VALUATION
    return _int_valuation(abs(x.numerator), p) - _int_valuation(x.denominator, p)


def padic_abs(x, p: int) -> Fraction:
    v = valuation(x, p)
    if v == INF_VALUATION:
        return Fraction(0)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def unit_part(x, p: int) -> Fraction:
    """x·p^{-v(x)}, a p-adic unit."""
    x = as_fraction(x)
    v = valuation(x, p)
    return x / Fraction(p) ** v


def unit_residue(u, p: int, k: int) -> int:
    """The residue of the p-adic unit u modulo p^k, in [0, p^k)."""
    u = as_fraction(u)
    m = p**k
    if u.denominator % p == 0 or u.numerator % p == 0:
        raise ValueError(f"{u} is not a {p}-adic unit")
    return (u.numerator * pow(u.denominator, -1, m)) % m


def residue(x, p: int, k: int) -> Fraction:
    """Canonical representative of the class x + p^k Z_p.

    Returns the truncated p-adic expansion Σ_{v(x) <= j < k} d_j p^j, which is
    0 when v(x) >= k.  Two rationals lie in the same ball of radius p^{-k} iff
    their representatives coincide.
    """
    x = as_fraction(x)
    v = valuation(x, p)
    if v >= k:
        return Fraction(0)
    u = unit_part(x, p)
    digits = unit_residue(u, p, k - v)
    return Fraction(digits) * Fraction(p) ** v
