"""Local terms W_ν(χ, g) of the explicit formula by three routes.

spectral     (1/2π)∫ ĝ(1/2+iτ) Λ(χ, 1/2+iτ) dτ on the critical line.
convolution  (G*F)(1) with F(x) = g(|x|)χ^{-1}(x): exact shell blocks on Q_p,
             the unit-ball split in the t variable on R, the unit-disc
             ω-form on C.
closed       the prime-power sum on Q_p, and on R and C the sinc² and
             gaussian ω-forms of G applied to y ↦ F(1 - y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..localfield.bruhat import BruhatFunction
from ..localfield.characters import UnitaryCharacter
from ..localfield.logexact import LogExact
from ..localfield.place import Place
from ..numerics import EULER_GAMMA, _require_compact, mellin_decay_cutoff, mellin_envelope, mellin_line_grid
from ..spectral import lambda_values
from .archimedean import ARCH_SPEC, ArchimedeanFunction, g_apply_complex, g_apply_real
from .padic import conductor_integral, g_convolve_at

ROUTES = ("spectral", "convolution", "closed")
LINE_STEP = 0.05
LINE_TARGET = 1e-12
LOG_2PI = math.log(2 * math.pi)


@dataclass(frozen=True)
class WeilTermResult:
    value: complex
    route: str
    place: Place
    chi: UnitaryCharacter
    g: object
    tolerance: float
    exact_terms: tuple[tuple[int, LogExact], ...] = ()

    def to_dict(self) -> dict:
        out = {
            "value": {"re": self.value.real, "im": self.value.imag},
            "route": self.route,
            "place": self.place.to_dict(),
            "chi": self.chi.to_dict(),
            "g": self.g.to_dict() if hasattr(self.g, "to_dict") else repr(self.g),
            "tolerance": self.tolerance,
        }
        if self.exact_terms:
            out["exact_terms"] = [{"shell": j, "coefficient": c.to_dict()} for j, c in self.exact_terms]
        return out


# ---------------------------------------------------------------------------
# spectral route


@lru_cache(maxsize=64)
def _line_grid(g, T: float, dtau: float):
    taus, vals = mellin_line_grid(g, 0.5, T, dtau)
    taus.setflags(write=False)
    vals.setflags(write=False)
    return taus, vals


def _lambda_growth(chi: UnitaryCharacter, tau: float) -> float:
    # crude upper bound for |Λ(χ, 1/2+iτ)|
    place = chi.place
    if place.is_finite:
        lq = math.log(place.q)
        return (chi.f + place.delta) * lq + 2 * lq / (math.sqrt(place.q) - 1)
    scale = 1 if place.kind == "real" else 2
    return scale * (math.log(abs(tau) + abs(chi.tau) + abs(chi.N) + 10) + 4)


def _line_cutoff(g, chi: UnitaryCharacter, target: float) -> tuple[float, float]:
    """T and a bound for the neglected part of the line integral beyond |τ| = T."""
    L = min(p.log_half_width for p in g.pieces())

    def tail(T: float) -> float:
        # ∫_T^∞ ω^{-3/4}e^{-√ω}dτ <= (TL)^{-3/4}(2/L)(√(TL)+1)e^{-√(TL)}, ω = τL, on both sides
        env = float(mellin_envelope(g, 0.5, T))
        return 2 * env * (2 / L) * (math.sqrt(T * L) + 1) * _lambda_growth(chi, T) / (2 * math.pi)

    T = max(mellin_decay_cutoff(g, 0.5, target), 1.0)
    while tail(T) > target:
        T *= 1.25
    return T, tail(T)


def _spectral(chi: UnitaryCharacter, g) -> tuple[complex, float]:
    T, trunc = _line_cutoff(g, chi, LINE_TARGET)
    taus, vals = _line_grid(g, round(T, 6), LINE_STEP)
    lam = lambda_values(chi, 0.5 + 1j * taus)
    terms = vals * lam
    value = complex(math.fsum(terms.real), math.fsum(terms.imag)) * LINE_STEP / (2 * math.pi)
    return value, trunc + 1e-12


# ---------------------------------------------------------------------------
# finite places


def _shell_range(place: Place, g) -> range:
    # shells |x| = q^{-j} meeting the support of g
    lo, hi = g.support()
    lq = math.log(place.q)
    return range(math.floor(-math.log(hi) / lq), math.ceil(-math.log(lo) / lq) + 1)


def _twist(chi: UnitaryCharacter, j: int) -> complex:
    # χ^{-1} on |x| = q^{-j} carries |x|^{-iτ} = q^{ijτ}
    return complex(np.exp(1j * chi.tau * j * math.log(chi.place.q)))


def _finite_closed(chi: UnitaryCharacter, g) -> tuple[complex, float]:
    place = chi.place
    q, lq = place.q, math.log(place.q)
    g1 = float(g(1.0))
    if chi.is_ramified:
        return -(chi.f + place.delta) * lq * g1 + 0j, 1e-15 * abs(lq * g1)
    lo, hi = g.support()
    total = -place.delta * lq * g1 + 0j
    k = 1
    while q**k < hi or q ** (-k) > lo:
        total += lq * (_twist(chi, -k) * float(g(float(q) ** k)) + _twist(chi, k) * q ** (-k) * float(g(float(q) ** -k)))
        k += 1
    return total, 1e-14 * (abs(total) + 1)


def _shell_coefficient(chi: UnitaryCharacter, j: int) -> LogExact:
    """(G*block_j)(1) for the block χ^{-1} on the shell |x| = p^{-j} (untwisted)."""
    if j == 0 and chi.is_ramified:
        return -conductor_integral(chi)
    block = BruhatFunction.character_block(chi, j)
    return g_convolve_at(block, 1)


def _finite_convolution(chi: UnitaryCharacter, g) -> tuple[complex, float, tuple]:
    place = chi.place
    if not place.is_exact or (chi.is_ramified and not chi.has_unit_data):
        # general (q, δ): shell values from the same ball formulas in closed form
        lq = math.log(place.q)
        total = -(chi.f + place.delta) * lq * float(g(1.0)) + 0j
        if not chi.is_ramified:
            for j in _shell_range(place, g):
                if j != 0:
                    c = lq * (place.q ** (-j) if j > 0 else 1.0)
                    total += c * _twist(chi, j) * float(g(float(place.q) ** (-j)))
        return total, 1e-14 * (abs(total) + 1), ()
    p = place.q
    exact = []
    total = 0j
    for j in _shell_range(place, g):
        coeff = _shell_coefficient(chi, j)
        exact.append((j, coeff))
        total += complex(coeff) * _twist(chi, j) * float(g(float(Fraction(1, p**j) if j >= 0 else p ** (-j))))
    return total, 1e-14 * (abs(total) + 1), tuple(exact)


# ---------------------------------------------------------------------------
# archimedean places


def _F_real(chi: UnitaryCharacter, g):
    def F(t):
        t = np.asarray(t, dtype=float)
        a = np.abs(t)
        out = np.asarray(g(a), dtype=complex)
        nz = a > 0
        out[nz] *= np.exp(-1j * chi.tau * np.log(a[nz]))
        if chi.parity == "minus":
            out *= np.sign(t)
        return out

    return F


def _F_complex(chi: UnitaryCharacter, g):
    def F(z):
        z = np.asarray(z, dtype=complex)
        r2 = (z * z.conj()).real
        out = np.asarray(g(r2), dtype=complex)
        nz = r2 > 0
        out[nz] *= np.exp(-1j * chi.N * np.angle(z[nz]) - 1j * chi.tau * np.log(r2[nz]))
        return out

    return F


def _real_convolution(chi: UnitaryCharacter, g) -> tuple[complex, float]:
    """(log 2π + γ_e)F(1) + (1/2)∫(F(t) - F(1)·1_{|1-t|<=1}) dt/|1 - t|."""
    from ..numerics import quad_line

    F = _F_real(chi, g)
    F1 = complex(F(np.array([1.0]))[0])
    lo, hi = g.support()
    parts = []
    # t < 0: |1 - t| > 1, no subtraction
    parts.append(quad_line(lambda t: F(t) / (1 - t), -hi, -lo, ARCH_SPEC))
    # 0 <= t <= 2 with the subtraction, split at 1 and at the support edges
    cuts = sorted({0.0, 1.0, 2.0} | {x for x in (lo, hi) if 0 < x < 2})
    for a, b in zip(cuts[:-1], cuts[1:]):
        parts.append(quad_line(lambda t: (F(t) - F1) / np.abs(1 - t), a, b, ARCH_SPEC))
    if hi > 2:
        cuts = sorted({2.0, hi} | ({lo} if lo > 2 else set()))
        for a, b in zip(cuts[:-1], cuts[1:]):
            parts.append(quad_line(lambda t: F(t) / (t - 1), a, b, ARCH_SPEC))
    integral = complex(math.fsum(z.real for z in parts), math.fsum(z.imag for z in parts))
    return (LOG_2PI + EULER_GAMMA) * F1 + 0.5 * integral, 1e-10


def _shifted(chi: UnitaryCharacter, g) -> ArchimedeanFunction:
    # y ↦ F(1 - y), with the support edges as breakpoints
    lo, hi = g.support()
    if chi.place.kind == "real":
        F = _F_real(chi, g)
        edges = tuple(abs(1 + s * r) for s in (1, -1) for r in (lo, hi))
        return ArchimedeanFunction(chi.place, lambda y: F(1 - np.asarray(y)), 1 + hi, edges)
    F = _F_complex(chi, g)
    edges = tuple(abs(1 + s * math.sqrt(r)) for s in (1, -1) for r in (lo, hi))
    return ArchimedeanFunction(chi.place, lambda y: F(1 - np.asarray(y)), 1 + math.sqrt(hi), edges)


# ---------------------------------------------------------------------------


def weil_term(place: Place, chi: UnitaryCharacter, g, route: str = "spectral") -> WeilTermResult:
    """W_ν(χ, g) by the chosen route."""
    if route not in ROUTES:
        raise ValueError(f"route must be one of {ROUTES}")
    if chi.place != place:
        raise ValueError("the character lives on a different place")
    _require_compact(g)
    exact: tuple = ()
    if route == "spectral":
        value, tol = _spectral(chi, g)
    elif place.is_finite:
        if route == "closed":
            value, tol = _finite_closed(chi, g)
        else:
            value, tol, exact = _finite_convolution(chi, g)
    elif place.kind == "real":
        if route == "convolution":
            value, tol = _real_convolution(chi, g)
        else:
            value, tol = g_apply_real(_shifted(chi, g), "real-sinc2"), 1e-10
    else:
        omega = "complex-unit-disc" if route == "convolution" else "complex-gaussian"
        value, tol = g_apply_complex(_shifted(chi, g), omega), 1e-9
    return WeilTermResult(complex(value), route, place, chi, g, tol, exact)
