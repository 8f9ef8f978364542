"""G(φ) at the real and complex places by quadrature of an ω-form."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import DecayAssumptionError
from ..localfield.place import Place
from ..numerics import QuadratureSpec, quad_line
from .omega import get_omega

ARCH_SPEC = QuadratureSpec(method="gauss-legendre-adaptive", abs_tol=1e-13, rel_tol=1e-13, max_depth=40)


@dataclass(frozen=True)
class ArchimedeanFunction:
    """A test function on R or C for G-application.

    ``func`` is vectorised (real arguments at the real place, complex at the
    complex place).  ``radius`` bounds the support in the usual absolute
    value; without it the function must decay like |x|^{-1-ε} with the
    declared ``decay`` exponent ε > 0.  ``breakpoints`` lists points (real
    place) or radii (complex place) where φ is not smooth or has steep
    edges, so the quadrature can split there.
    """

    place: Place
    func: Callable = field(compare=False)
    radius: float | None = None
    breakpoints: tuple[float, ...] = ()
    decay: float | None = None

    def __post_init__(self) -> None:
        if self.place.is_finite:
            raise ValueError("archimedean functions live on R or C")
        if self.radius is None and (self.decay is None or self.decay <= 0):
            raise DecayAssumptionError("a function without compact support needs a decay exponent ε > 0")

    def __call__(self, x):
        return np.asarray(self.func(x), dtype=complex)

    def value_at_zero(self) -> complex:
        zero = np.zeros(1, dtype=complex if self.place.kind == "complex" else float)
        return complex(self(zero)[0])

    @classmethod
    def gaussian(cls, place: Place) -> ArchimedeanFunction:
        """The self-dual gaussian of the place (decays faster than any power)."""
        if place.kind == "real":
            return cls(place, lambda x: np.exp(-math.pi * np.asarray(x) ** 2), None, (), decay=10.0)
        return cls(place, lambda z: np.exp(-2 * math.pi * np.abs(z) ** 2), None, (), decay=10.0)

    @classmethod
    def unit_ball(cls, place: Place) -> ArchimedeanFunction:
        return cls(place, lambda x: (np.abs(x) <= 1).astype(float), 1.0, (1.0,))


def _segments(points, Y: float) -> list[float]:
    pts = sorted({float(p) for p in points if 0 < p < Y} | {0.0, Y})
    return pts


def _integrate_segments(f, pts: list[float], spec: QuadratureSpec) -> complex:
    parts = [quad_line(f, a, b, spec) for a, b in zip(pts[:-1], pts[1:])]
    return complex(math.fsum(z.real for z in parts), math.fsum(z.imag for z in parts))


def g_apply_real(phi: ArchimedeanFunction, omega=None, spec: QuadratureSpec = ARCH_SPEC) -> complex:
    """G(φ) = φ(0)G(ω) + (1/2)∫(φ(y) - φ(0)ω(y)) dy/|y| on R, folded onto y > 0."""
    om = get_omega(omega, phi.place)
    phi0 = phi.value_at_zero()
    edges = [abs(b) for b in phi.breakpoints] + list(om.breakpoints())
    Y = max([1.0, phi.radius or 0.0] + edges)

    def folded(y):
        y = np.asarray(y, dtype=float)
        return (phi(y) + phi(-y) - 2 * phi0 * om.profile(y)) / y

    inner = _integrate_segments(folded, _segments(edges, Y), spec)
    outer = -2 * phi0 * om.tail(Y)
    if phi.radius is None:
        outer += quad_line(lambda y: (phi(y) + phi(-y)) / y, Y, math.inf, spec)
    return phi0 * om.g_constant() + 0.5 * (inner + outer)


def _angular_mean(phi: ArchimedeanFunction, rho: np.ndarray, M: int) -> np.ndarray:
    # Φ(ρ) = ∫_0^{2π} φ(ρe^{iθ}) dθ by the trapezoid rule (spectral for periodic smooth φ)
    theta = (np.arange(M) + 0.5) * (2 * math.pi / M)
    z = np.outer(rho, np.exp(1j * theta))
    return phi(z).sum(axis=1) * (2 * math.pi / M)


def g_apply_complex(phi: ArchimedeanFunction, omega=None, spec: QuadratureSpec = ARCH_SPEC,
                    angular_points: int = 1024, tol: float = 1e-11) -> complex:
    """G(φ) = φ(0)G(ω) + (1/π)∫∫(φ(ρe^{iθ}) - φ(0)ω(ρ)) dρ dθ/ρ on C.

    The angular rule is doubled until two successive results agree to tol.
    """
    om = get_omega(omega, phi.place)
    phi0 = phi.value_at_zero()
    edges = [abs(b) for b in phi.breakpoints] + list(om.breakpoints())
    Y = max([1.0, phi.radius or 0.0] + edges)
    pts = _segments(edges, Y)

    def evaluate(M: int) -> complex:
        def radial(rho):
            rho = np.asarray(rho, dtype=float)
            return (_angular_mean(phi, rho, M) - 2 * math.pi * phi0 * om.profile(rho)) / rho

        inner = _integrate_segments(radial, pts, spec)
        outer = -2 * math.pi * phi0 * om.tail(Y)
        if phi.radius is None:
            outer += quad_line(lambda r: _angular_mean(phi, np.asarray(r, dtype=float), M) / r, Y, math.inf, spec)
        return phi0 * om.g_constant() + (inner + outer) / math.pi

    M = angular_points
    prev = evaluate(M)
    while True:
        M *= 2
        cur = evaluate(M)
        if abs(cur - prev) <= tol or M > 2**16:
            return cur
        prev = cur


def g_apply_archimedean(phi: ArchimedeanFunction, omega=None, spec: QuadratureSpec = ARCH_SPEC) -> complex:
    if phi.place.kind == "real":
        return g_apply_real(phi, omega, spec)
    return g_apply_complex(phi, omega, spec)
