"""Places of Q (and the local data of a general finite place)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .padic import as_fraction, is_prime, padic_abs, prime_power_base

KINDS = ("finite", "real", "complex")


@dataclass(frozen=True)
class Place:
    """A completion: finite (residue cardinality q, differental exponent δ), real or complex."""

    kind: str
    q: int | None = None
    delta: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown place kind {self.kind!r}")
        if self.kind == "finite":
            if self.q is None or prime_power_base(int(self.q)) is None:
                raise ValueError(f"q must be a prime power, got {self.q}")
            if self.delta < 0:
                raise ValueError("delta must be >= 0")
        elif self.q is not None or self.delta:
            raise ValueError("archimedean places carry no q or delta")

    @classmethod
    def finite(cls, q: int, delta: int = 0) -> Place:
        return cls("finite", int(q), int(delta))

    @classmethod
    def real(cls) -> Place:
        return cls("real")

    @classmethod
    def complex(cls) -> Place:
        return cls("complex")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def p(self) -> int:
        if not self.is_finite:
            raise ValueError("archimedean places have no residue characteristic")
        return prime_power_base(self.q)

    @property
    def is_exact(self) -> bool:
        """True for Q_p itself (q prime, δ = 0), where exact paths apply."""
        return self.is_finite and is_prime(self.q) and self.delta == 0

    def label(self) -> str:
        if not self.is_finite:
            return self.kind
        return f"p={self.q}" if self.delta == 0 else f"q={self.q},delta={self.delta}"

    def to_dict(self) -> dict:
        if self.is_finite:
            return {"kind": "finite", "q": self.q, "delta": self.delta}
        return {"kind": self.kind}

    @classmethod
    def from_dict(cls, d: dict) -> Place:
        if d["kind"] == "finite":
            return cls.finite(int(d["q"]), int(d.get("delta", 0)))
        return cls(d["kind"])


def norm(place: Place, x):
    """The normalized module |x|_ν.

    Finite places take rationals (exact, needs q prime so that Q ⊂ K_ν is
    Q_p); the real place takes floats and the complex place complex numbers,
    where |z| = z z̄.
    """
    if place.is_finite:
        if not is_prime(place.q):
            raise ValueError("rational elements are only modelled inside Q_p (q prime)")
        return padic_abs(as_fraction(x), place.q)
    if place.kind == "real":
        return abs(float(x))
    z = complex(x)
    return z.real * z.real + z.imag * z.imag


def haar_constants(place: Place) -> tuple[float, float]:
    """(R, γ): the residue of Δ_s at s = 0 and γ = 1/R."""
    if place.kind == "real":
        return 2.0, 0.5
    if place.kind == "complex":
        return 2 * math.pi, 1 / (2 * math.pi)
    q = place.q
    R = q ** (-place.delta / 2) * (1 - 1 / q) / math.log(q)
    return R, 1 / R


def gamma_exact(p: int) -> Fraction:
    """γ / log p = 1/(1 - 1/p) on Q_p, so that γ = gamma_exact(p)·log p."""
    return Fraction(p, p - 1)
