"""Reference functions ω used to split G = ℱ(-log|y|) into a finite part.

For any ω with ω(0) = 1 and known G(ω),

    G(φ) = φ(0)·G(ω) + γ·∫ (φ(x) - φ(0)ω(x)) dx/|x|,

and the integral converges absolutely.  Each tag carries its place and the
constant G(ω).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import exp1, sici

from ..errors import InvalidOmegaError
from ..localfield.place import Place
from ..numerics import EULER_GAMMA

LOG_2PI = math.log(2 * math.pi)


@dataclass(frozen=True)
class OmegaChoice:
    tag: str
    kind: str  # place kind the tag is valid for
    description: str

    def check(self, place: Place) -> None:
        if place.kind != self.kind:
            raise InvalidOmegaError(f"omega {self.tag!r} is for {self.kind} places, not {place.kind}")

    def g_constant(self, p: int | None = None) -> float:
        """G(ω) as a float (the p-adic tags also have exact versions)."""
        if self.kind == "finite":
            if p is None:
                raise ValueError("p-adic omega constants need p")
            return 0.0 if self.tag == "padic-unit-indicator-minus-psi" else math.log(p) / (p - 1)
        return _ARCH_CONSTANTS[self.tag]

    # archimedean profiles as functions of the usual absolute value r = |x|
    # (r = ρ at the complex place)

    def profile(self, r):
        r = np.asarray(r, dtype=float)
        tag = self.tag
        if tag in ("real-unit-ball", "complex-unit-disc"):
            return (r <= 1.0).astype(float)
        if tag == "real-sinc":
            return np.sinc(r)
        if tag == "real-sinc2":
            return np.sinc(r) ** 2
        if tag == "real-gaussian":
            return np.exp(-math.pi * r * r)
        if tag == "complex-gaussian":
            return np.exp(-2 * math.pi * r * r)
        raise InvalidOmegaError(f"{tag!r} has no archimedean profile")

    def breakpoints(self) -> tuple[float, ...]:
        return (1.0,) if self.tag in ("real-unit-ball", "complex-unit-disc") else ()

    def tail(self, Y: float) -> float:
        """∫_Y^∞ ω(r) dr/r for Y >= 1."""
        if Y < 1:
            raise ValueError("tails are taken beyond the unit ball")
        tag = self.tag
        if tag in ("real-unit-ball", "complex-unit-disc"):
            return 0.0
        if tag == "real-sinc":
            a = math.pi * Y
            return math.sin(a) / a - float(sici(a)[1])
        if tag == "real-sinc2":
            # (1/π²)∫_Y^∞ sin²(πr)/r³ dr with sin² = (1 - cos 2πr)/2
            b = 2 * math.pi
            si_term = math.sin(b * Y) / Y - b * float(sici(b * Y)[1])
            cos_tail = math.cos(b * Y) / (2 * Y * Y) - 0.5 * b * si_term
            return (1 / (2 * Y * Y) - cos_tail) / (2 * math.pi**2)
        if tag == "real-gaussian":
            return 0.5 * float(exp1(math.pi * Y * Y))
        if tag == "complex-gaussian":
            return 0.5 * float(exp1(2 * math.pi * Y * Y))
        raise InvalidOmegaError(f"{tag!r} has no archimedean tail")


_ARCH_CONSTANTS = {
    "real-unit-ball": LOG_2PI + EULER_GAMMA,
    "real-sinc": 1 + math.log(2),
    "real-sinc2": 1.5,
    "real-gaussian": 0.5 * (math.log(4 * math.pi) + EULER_GAMMA),
    "complex-unit-disc": 2 * (LOG_2PI + EULER_GAMMA),
    "complex-gaussian": LOG_2PI + EULER_GAMMA,
}

OMEGAS = {
    o.tag: o
    for o in (
        OmegaChoice("padic-unit-indicator-minus-psi", "finite", "1 on Z_p minus 1 on 1 + pZ_p; G = 0"),
        OmegaChoice("padic-unit-indicator", "finite", "1 on Z_p; G = log p/(p - 1)"),
        OmegaChoice("real-unit-ball", "real", "1 on |x| <= 1"),
        OmegaChoice("real-sinc", "real", "sin(πx)/(πx), transform 1 on |y| <= 1/2"),
        OmegaChoice("real-sinc2", "real", "(sin(πx)/(πx))², transform the triangle (1 - |y|)_+"),
        OmegaChoice("real-gaussian", "real", "exp(-πx²), self-dual"),
        OmegaChoice("complex-unit-disc", "complex", "1 on |z| <= 1"),
        OmegaChoice("complex-gaussian", "complex", "exp(-2π z z̄), self-dual for the measure 2 dx dy"),
    )
}

DEFAULT_OMEGA = {"finite": "padic-unit-indicator-minus-psi", "real": "real-unit-ball", "complex": "complex-unit-disc"}


def get_omega(tag: str | OmegaChoice | None, place: Place) -> OmegaChoice:
    if isinstance(tag, OmegaChoice):
        omega = tag
    else:
        tag = DEFAULT_OMEGA[place.kind] if tag is None else tag
        if tag not in OMEGAS:
            raise InvalidOmegaError(f"unknown omega tag {tag!r}; choose from {sorted(OMEGAS)}")
        omega = OMEGAS[tag]
    omega.check(place)
    return omega


def omegas_for(place: Place) -> list[OmegaChoice]:
    return [o for o in OMEGAS.values() if o.kind == place.kind]
