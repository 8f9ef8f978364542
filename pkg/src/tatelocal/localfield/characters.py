"""Unitary characters of local multiplicative groups.

A finite-place character is χ(p^v u) = χ₀(u)·|p^v u|^{iτ} with χ₀ a
Dirichlet character of (Z/p^f)^× (so χ(p) = 1 before twisting).  χ₀ is
stored as an exponent index against a fixed generator: the smallest
primitive root mod p^f, or for p = 2, f >= 3, the pair (-1, 5).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import InconsistentConductorError, ZeroArgumentError
from .cyclotomic import Cyclotomic
from .padic import as_fraction, is_prime, padic_abs, unit_part, unit_residue
from .place import Place

PARITIES = ("plus", "minus")


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def primitive_root(p: int, f: int) -> int:
    """Smallest generator of the cyclic group (Z/p^f)^× (p odd, or p^f = 4)."""
    m = p**f
    order = (p - 1) * p ** (f - 1)
    factors = _prime_factors(order)
    for g in range(2, m):
        if g % p and all(pow(g, order // r, m) != 1 for r in factors):
            return g
    raise ValueError(f"(Z/{m})^× is not cyclic")


@lru_cache(maxsize=64)
def _discrete_log_table(p: int, f: int) -> dict[int, tuple[int, ...]]:
    # unit residue -> exponent vector against the canonical generators
    m = p**f
    table: dict[int, tuple[int, ...]] = {}
    if p == 2 and f >= 3:
        order5 = 2 ** (f - 2)
        x = 1
        for j in range(order5):
            table[x] = (0, j)
            table[(-x) % m] = (1, j)
            x = x * 5 % m
        return table
    if p == 2 and f == 1:
        return {1: (0,)}
    g = primitive_root(p, f)
    x = 1
    for j in range((p - 1) * p ** (f - 1)):
        table[x] = (j,)
        x = x * g % m
    return table


def unit_group_shape(p: int, f: int) -> tuple[int, ...]:
    """Orders of the canonical generators of (Z/p^f)^×."""
    if f == 0 or (p == 2 and f == 1):
        return (1,)
    if p == 2 and f >= 3:
        return (2, 2 ** (f - 2))
    return ((p - 1) * p ** (f - 1),)


@dataclass(frozen=True)
class UnitaryCharacter:
    """A unitary character at one place, with a principal twist |t|^{iτ}."""

    place: Place
    f: int = 0
    char_index: tuple[int, ...] = (0,)
    parity: str = "plus"
    N: int = 0
    tau: float = 0.0

    def __post_init__(self) -> None:
        idx = self.char_index
        if isinstance(idx, int):
            idx = (idx,)
        object.__setattr__(self, "char_index", tuple(int(i) for i in idx))
        object.__setattr__(self, "tau", float(self.tau))
        if not math.isfinite(self.tau):
            raise ValueError("tau must be finite")
        if self.place.is_finite:
            if self.f < 0:
                raise ValueError("conductor exponent must be >= 0")
            if self.f > 0 and self.has_unit_data:
                shape = unit_group_shape(self.place.q, self.f)
                if len(self.char_index) != len(shape):
                    raise ValueError(f"character mod {self.place.q}^{self.f} needs {len(shape)} index(es)")
                object.__setattr__(self, "char_index", tuple(i % n for i, n in zip(self.char_index, shape)))
            elif self.f == 0:
                object.__setattr__(self, "char_index", (0,))
        elif self.place.kind == "real":
            if self.parity not in PARITIES:
                raise ValueError(f"parity must be plus or minus, got {self.parity!r}")

    # --- constructors -----------------------------------------------------

    @classmethod
    def unramified(cls, place: Place, tau: float = 0.0) -> UnitaryCharacter:
        return cls(place, 0, (0,), tau=tau)

    @classmethod
    def dirichlet(cls, p: int, f: int, index, tau: float = 0.0, delta: int = 0) -> UnitaryCharacter:
        """The character of (Z/p^f)^× with the given exponent index, extended by χ(p) = 1."""
        return cls(Place.finite(p, delta), int(f), index, tau=tau)

    @classmethod
    def ramified_conductor_only(cls, place: Place, f: int, tau: float = 0.0) -> UnitaryCharacter:
        """A ramified character known only through its conductor (general q)."""
        return cls(place, int(f), (), tau=tau)

    @classmethod
    def real(cls, parity: str = "plus", tau: float = 0.0) -> UnitaryCharacter:
        return cls(Place.real(), parity=parity, tau=tau)

    @classmethod
    def complex(cls, N: int = 0, tau: float = 0.0) -> UnitaryCharacter:
        return cls(Place.complex(), N=int(N), tau=tau)

    # --- structure ----------------------------------------------------------

    @property
    def is_ramified(self) -> bool:
        return self.place.is_finite and self.f > 0

    @property
    def has_unit_data(self) -> bool:
        return self.place.is_finite and is_prime(self.place.q) and self.char_index != ()

    @property
    def p(self) -> int:
        return self.place.p

    @property
    def value_order(self) -> int:
        """n such that every unit value of χ₀ is an n-th root of unity."""
        if not self.is_ramified:
            return 1
        shape = unit_group_shape(self.place.q, self.f)
        return math.lcm(*shape)

    def untwisted(self) -> UnitaryCharacter:
        return UnitaryCharacter(self.place, self.f, self.char_index, self.parity, self.N, 0.0)

    def twisted(self, tau: float) -> UnitaryCharacter:
        """χ·|t|^{iτ'} with τ' added to the current twist."""
        return UnitaryCharacter(self.place, self.f, self.char_index, self.parity, self.N, self.tau + tau)

    def inverse(self) -> UnitaryCharacter:
        """χ^{-1} = conj(χ)."""
        idx = tuple(-i for i in self.char_index)
        return UnitaryCharacter(self.place, self.f, idx, self.parity, -self.N, -self.tau)

    conjugate = inverse

    def sign(self) -> int:
        """χ(-1) ∈ {±1}."""
        if self.place.kind == "real":
            return -1 if self.parity == "minus" else 1
        if self.place.kind == "complex":
            return -1 if self.N % 2 else 1
        if not self.is_ramified:
            return 1
        if not self.has_unit_data:
            raise ValueError("χ(-1) is unknown for a conductor-only character")
        v = self.unit_value_exact(-1).rational_value()
        return int(v)

    # --- evaluation ---------------------------------------------------------

    def unit_exponent(self, u) -> Fraction:
        """χ₀(u) = exp(2πi·e) with the returned e ∈ [0, 1)."""
        if not self.is_ramified:
            return Fraction(0)
        if not self.has_unit_data:
            raise ValueError("conductor-only characters cannot be evaluated")
        p, f = self.place.q, self.f
        r = unit_residue(as_fraction(u), p, f)
        logs = _discrete_log_table(p, f)[r]
        shape = unit_group_shape(p, f)
        e = sum(Fraction(i * j, n) for i, j, n in zip(self.char_index, logs, shape))
        return e - math.floor(e)

    def unit_value_exact(self, u) -> Cyclotomic:
        e = self.unit_exponent(u)
        n = self.value_order
        return Cyclotomic.root(n, int(e * n))

    def __call__(self, t) -> complex:
        return char_eval(self, t)

    def to_dict(self) -> dict:
        d = {"place": self.place.to_dict(), "tau": self.tau}
        if self.place.is_finite:
            d["f"] = self.f
            d["char_index"] = list(self.char_index)
        elif self.place.kind == "real":
            d["parity"] = self.parity
        else:
            d["N"] = self.N
        return d

    @classmethod
    def from_dict(cls, d: dict) -> UnitaryCharacter:
        place = Place.from_dict(d["place"])
        return cls(place, int(d.get("f", 0)), tuple(d.get("char_index", (0,))),
                   d.get("parity", "plus"), int(d.get("N", 0)), float(d.get("tau", 0.0)))


def char_eval(chi: UnitaryCharacter, t) -> complex:
    """χ(t)·|t|^{iτ} for t ≠ 0 (rational at finite places)."""
    place = chi.place
    if place.is_finite:
        t = as_fraction(t)
        if t == 0:
            raise ZeroArgumentError("characters are not defined at 0")
        p = place.q
        e = chi.unit_exponent(unit_part(t, p))
        mod = float(padic_abs(t, p))
        return cmath.exp(2j * math.pi * float(e)) * cmath.exp(1j * chi.tau * math.log(mod))
    if place.kind == "real":
        t = float(t)
        if t == 0:
            raise ZeroArgumentError("characters are not defined at 0")
        sign = -1.0 if (chi.parity == "minus" and t < 0) else 1.0
        return sign * cmath.exp(1j * chi.tau * math.log(abs(t)))
    z = complex(t)
    if z == 0:
        raise ZeroArgumentError("characters are not defined at 0")
    r2 = z.real * z.real + z.imag * z.imag
    return cmath.exp(1j * chi.N * cmath.phase(z)) * cmath.exp(1j * chi.tau * math.log(r2))


def conductor_exponent(chi: UnitaryCharacter) -> int:
    """Smallest f with χ trivial on 1 + p^f Z_p (0 when trivial on all units).

    Checked by direct evaluation on the unit cosets and compared with the
    stored modulus.
    """
    if not chi.place.is_finite:
        raise ValueError("conductor exponents are defined at finite places only")
    if chi.f == 0:
        return 0
    if not chi.has_unit_data:
        return chi.f
    p, f = chi.place.q, chi.f
    m = p**f
    units = [u for u in range(1, m) if u % p]
    if all(chi.unit_exponent(u) == 0 for u in units):
        computed = 0
    else:
        computed = f
        for j in range(f - 1, 0, -1):
            if all(chi.unit_exponent(u) == 0 for u in units if (u - 1) % p**j == 0):
                computed = j
            else:
                break
    if computed != f:
        raise InconsistentConductorError(
            f"character index {chi.char_index} mod {p}^{f} has conductor exponent {computed}, not {f}")
    return computed


def characters_mod(p: int, f: int, primitive_only: bool = True) -> list[UnitaryCharacter]:
    """All characters of (Z/p^f)^× (optionally only those of exact conductor f)."""
    import itertools

    shape = unit_group_shape(p, f)
    out = []
    for idx in itertools.product(*(range(n) for n in shape)):
        chi = UnitaryCharacter.dirichlet(p, f, idx)
        if not primitive_only:
            out.append(chi)
            continue
        try:
            conductor_exponent(chi)
        except InconsistentConductorError:
            continue
        out.append(chi)
    return out


