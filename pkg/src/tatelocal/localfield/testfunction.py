"""Smooth test functions g on (0, ∞) for the multiplicative side."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial

from ..errors import NonCompactError

FAMILIES = ("smooth-bump", "log-gaussian")


@lru_cache(maxsize=None)
def _bump_derivative_poly(n: int) -> Polynomial:
    # d^n/dx^n exp(-1/(1-x^2)) = P_n(x) (1-x^2)^(-2n) exp(-1/(1-x^2))
    if n == 0:
        return Polynomial([1.0])
    prev = _bump_derivative_poly(n - 1)
    one_minus = Polynomial([1.0, 0.0, -1.0])
    x = Polynomial([0.0, 1.0])
    k = n - 1
    return prev.deriv() * one_minus**2 + 4 * k * x * prev * one_minus - 2 * x * prev


@dataclass(frozen=True)
class MultiplicativeTestFunction:
    """g(u) = amplitude · b((log u - log center) / log_half_width).

    For the smooth bump b(x) = exp(-1/(1-x²)) on |x| < 1, so g vanishes
    outside (center·e^-L, center·e^L).  The log-gaussian family uses
    b(x) = exp(-x²) and is not compactly supported.
    """

    family: str = "smooth-bump"
    center: float = 1.0
    log_half_width: float = 0.5
    amplitude: float = 1.0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown test-function family {self.family!r}")
        if not (self.center > 0 and math.isfinite(self.center)):
            raise ValueError(f"center must be positive, got {self.center}")
        if not (self.log_half_width > 0 and math.isfinite(self.log_half_width)):
            raise ValueError(f"log_half_width must be positive, got {self.log_half_width}")

    @classmethod
    def bump(cls, center: float, log_half_width: float, amplitude: float = 1.0) -> MultiplicativeTestFunction:
        return cls("smooth-bump", float(center), float(log_half_width), float(amplitude))

    @property
    def is_compact(self) -> bool:
        return self.family == "smooth-bump"

    @property
    def log_center(self) -> float:
        return math.log(self.center)

    def support(self) -> tuple[float, float]:
        """Open interval outside which g vanishes."""
        if not self.is_compact:
            raise NonCompactError("log-gaussian test functions have no compact support")
        return (self.center * math.exp(-self.log_half_width), self.center * math.exp(self.log_half_width))

    def pieces(self) -> list[MultiplicativeTestFunction]:
        return [self]

    def profile(self, x):
        x = np.asarray(x, dtype=float)
        if self.family == "log-gaussian":
            return np.exp(-x * x)
        out = np.zeros_like(x)
        inside = np.abs(x) < 1
        xi = x[inside]
        out[inside] = np.exp(-1.0 / (1.0 - xi * xi))
        return out

    def profile_derivative(self, x, n: int):
        x = np.asarray(x, dtype=float)
        if self.family == "log-gaussian":
            # Hermite: d^n exp(-x^2) = (-1)^n H_n(x) exp(-x^2)
            coeffs = np.zeros(n + 1)
            coeffs[n] = 1.0
            return (-1) ** n * np.polynomial.hermite.hermval(x, coeffs) * np.exp(-x * x)
        out = np.zeros_like(x)
        inside = np.abs(x) < 1
        xi = x[inside]
        d = 1.0 - xi * xi
        out[inside] = _bump_derivative_poly(n)(xi) * d ** (-2.0 * n) * np.exp(-1.0 / d)
        return out

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        out = np.zeros_like(u)
        pos = u > 0
        x = (np.log(u[pos]) - self.log_center) / self.log_half_width
        out[pos] = self.amplitude * self.profile(x)
        return out if out.ndim else float(out)

    def log_derivative(self, a, n: int):
        """d^n/da^n of g(e^a)."""
        a = np.asarray(a, dtype=float)
        x = (a - self.log_center) / self.log_half_width
        return self.amplitude * self.log_half_width ** (-n) * self.profile_derivative(x, n)

    def dilate(self, t: float) -> MultiplicativeTestFunction:
        """u ↦ g(u/t)."""
        return MultiplicativeTestFunction(self.family, self.center * t, self.log_half_width, self.amplitude)

    def scaled(self, c: float) -> MultiplicativeTestFunction:
        return MultiplicativeTestFunction(self.family, self.center, self.log_half_width, self.amplitude * c)

    def __add__(self, other):
        return TestFunctionSum.of(self, other)

    def to_dict(self) -> dict:
        return {"family": self.family, "center": self.center,
                "log_half_width": self.log_half_width, "amplitude": self.amplitude}

    @classmethod
    def from_dict(cls, d: dict) -> MultiplicativeTestFunction:
        return cls(d.get("family", "smooth-bump"), float(d["center"]),
                   float(d["log_half_width"]), float(d.get("amplitude", 1.0)))


@dataclass(frozen=True)
class TestFunctionSum:
    """Finite linear combination of test functions (for linearity checks)."""

    terms: tuple[MultiplicativeTestFunction, ...]

    __test__ = False  # keep pytest from collecting this class

    @classmethod
    def of(cls, *items) -> TestFunctionSum:
        flat: list[MultiplicativeTestFunction] = []
        for item in items:
            flat.extend(item.pieces())
        return cls(tuple(flat))

    @property
    def is_compact(self) -> bool:
        return all(t.is_compact for t in self.terms)

    @property
    def family(self) -> str:
        return "sum"

    def pieces(self) -> list[MultiplicativeTestFunction]:
        return list(self.terms)

    def support(self) -> tuple[float, float]:
        if not self.terms:
            return (1.0, 1.0)
        sup = [t.support() for t in self.terms]
        return (min(a for a, _ in sup), max(b for _, b in sup))

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        out = np.zeros_like(u)
        for t in self.terms:
            out = out + t(u)
        return out if np.ndim(out) else float(out)

    def __add__(self, other):
        return TestFunctionSum.of(self, other)


ZERO_FUNCTION = TestFunctionSum(())
