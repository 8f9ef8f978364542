"""G = ℱ(-log|y|), the conductor operator on Q_p and Weil local terms."""

from __future__ import annotations

from ..localfield.bruhat import BruhatFunction
from ..localfield.place import Place
from .archimedean import ArchimedeanFunction, g_apply_archimedean
from .omega import OMEGAS, OmegaChoice, get_omega, omegas_for
from .padic import (ConductorImage, MultiplierCheck, conductor_apply, conductor_integral, g_apply_balls,
                    g_apply_padic, g_convolve_at, ih_pairing, multiplicative_transform, tate_multiplier_check)
from .terms import ROUTES, WeilTermResult, weil_term


def g_apply(place: Place, phi, omega=None):
    """G(φ) = ∫(-log|y|)ℱφ(y)dy: LogExact on Q_p, complex at R and C."""
    if place.is_finite:
        if not isinstance(phi, BruhatFunction):
            raise TypeError("finite places take a BruhatFunction")
        if not place.is_exact or place.q != phi.p:
            raise ValueError("exact G-application needs Q_p with the function's p")
        return g_apply_padic(phi, omega)
    if not isinstance(phi, ArchimedeanFunction) or phi.place != place:
        raise TypeError("archimedean places take an ArchimedeanFunction on the same place")
    return g_apply_archimedean(phi, omega)


__all__ = [
    "ArchimedeanFunction", "ConductorImage", "MultiplierCheck", "OMEGAS", "OmegaChoice", "ROUTES",
    "WeilTermResult", "conductor_apply", "conductor_integral", "g_apply", "g_apply_balls", "g_apply_padic",
    "g_convolve_at", "get_omega", "ih_pairing", "multiplicative_transform", "omegas_for",
    "tate_multiplier_check", "weil_term",
]
