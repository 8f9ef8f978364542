"""The local Gamma factor Γ(χ, s) at every kind of place.

Γ(χ, s) is the multiplier in ℱ(χ(x)|x|^{s-1}) = Γ(χ, s)·χ^{-1}(y)|y|^{-s}.
A twist |t|^{iτ} of χ is absorbed by evaluating the untwisted character at
s + iτ.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotRepresentableError, OutOfStripError, UnramifiedInputError
from .localfield.characters import UnitaryCharacter, conductor_exponent
from .localfield.place import Place
from .numerics import log_gamma

LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2 * math.pi)


@dataclass(frozen=True)
class GammaValue:
    value: complex
    place: Place
    chi: UnitaryCharacter
    s: complex

    def __complex__(self) -> complex:
        return self.value

    def __abs__(self) -> float:
        return abs(self.value)


def check_strip(s) -> None:
    re = np.real(np.asarray(s, dtype=complex))
    if np.any(~np.isfinite(re)) or np.any(re <= 0) or np.any(re >= 1):
        raise OutOfStripError(f"s must satisfy 0 < Re(s) < 1, got Re(s) = {re if np.ndim(re) == 0 else 'array'}")


def gauss_sum(chi: UnitaryCharacter) -> complex:
    """Σ_{u mod p^f} χ₀(u)·exp(-2πi u/p^f)."""
    p, f = chi.place.q, chi.f
    m = p**f
    total = 0j
    for u in range(1, m):
        if u % p:
            total += cmath.exp(2j * math.pi * float(chi.unit_exponent(u))) * cmath.exp(-2j * math.pi * u / m)
    return total


def root_number(chi: UnitaryCharacter) -> complex:
    """w(χ) = Γ(χ, 1/2) for ramified χ on Q_p: the normalized Gauss sum p^{-f/2}·G(χ).

    Only the shell |x| = p^f contributes to ∫ λ(-x)χ(x)|x|^{s-1}dx, and on it
    the integral is the finite sum above times p^{f(s-1)}.
    """
    if not chi.place.is_finite:
        raise ValueError("root numbers are computed at finite places")
    if not chi.is_ramified:
        raise UnramifiedInputError("root_number needs a ramified character")
    if not chi.has_unit_data:
        raise NotRepresentableError("root number needs the unit character, not only its conductor")
    conductor_exponent(chi)
    return gauss_sum(chi) / chi.place.q ** (chi.f / 2)


def _gamma_array(chi: UnitaryCharacter, s: np.ndarray) -> np.ndarray:
    s = s + 1j * chi.tau
    place = chi.place
    if place.is_finite:
        q, d = place.q, place.delta
        if chi.is_ramified:
            w = root_number(chi)
            return w * np.exp((chi.f + d) * (s - 0.5) * math.log(q))
        return np.exp(d * (s - 0.5) * math.log(q)) * (1 - q ** (s - 1)) / (1 - q ** (-s))
    if place.kind == "real":
        if chi.parity == "plus":
            lg = (0.5 - s) * LOG_PI + log_gamma(s / 2) - log_gamma((1 - s) / 2)
            return np.exp(lg)
        lg = (0.5 - s) * LOG_PI + log_gamma((s + 1) / 2) - log_gamma((2 - s) / 2)
        return 1j * np.exp(lg)
    n = abs(chi.N)
    lg = (1 - 2 * s) * LOG_2PI + log_gamma(n / 2 + s) - log_gamma(n / 2 + 1 - s)
    return (1j) ** n * np.exp(lg)


def gamma_values(chi: UnitaryCharacter, s) -> np.ndarray:
    """Vectorised Γ(χ, s) on an array of strip points."""
    s = np.asarray(s, dtype=complex)
    check_strip(s)
    return _gamma_array(chi, s)


def gamma_eval(chi: UnitaryCharacter, s) -> GammaValue:
    s = complex(s)
    check_strip(s)
    value = complex(_gamma_array(chi, np.array([s]))[0])
    return GammaValue(value, chi.place, chi, s)
