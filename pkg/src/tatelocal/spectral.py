"""Spectral functions of the conductor operator and its commutators.

For a unitary character χ the conductor operator H acts on χ^{-1}(x)|x|^{-s}
by the scalar ∂_s log Γ(χ, s); the commutator K by -i·∂²_s log Γ(χ, s); the
higher commutators by further derivatives.  On Q_p the invariant part is a
Toeplitz operator whose symbol lives on the unit circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .errors import NonUnitModulusError, SizeLimitError, UnsupportedOrderError
from .gamma import check_strip
from .localfield.characters import UnitaryCharacter, conductor_exponent
from .localfield.logexact import LogExact
from .numerics import EULER_GAMMA, MAX_POLYGAMMA_ORDER, digamma, polygamma

LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2 * math.pi)
MAX_ORDER = MAX_POLYGAMMA_ORDER
MAX_TOEPLITZ = 2000
DEFAULT_LINE_TARGET = 1e-10


@dataclass(frozen=True)
class SpectralValue:
    order: int
    chi: UnitaryCharacter
    s: complex
    value: complex
    exact: LogExact | None = None


@lru_cache(maxsize=None)
def _eulerian_row(n: int) -> tuple[int, ...]:
    # A(n, k), k = 0..n-1
    row = [1]
    for m in range(2, n + 1):
        new = [0] * m
        for k in range(m):
            a = (k + 1) * row[k] if k < len(row) else 0
            b = (m - k) * row[k - 1] if k >= 1 else 0
            new[k] = a + b
        row = new
    return tuple(row)


def polylog_neg(n: int, x):
    """Li_{-n}(x) = Σ_{k>=1} k^n x^k for |x| < 1 as a rational function."""
    x = np.asarray(x, dtype=complex)
    if n == 0:
        return x / (1 - x)
    row = _eulerian_row(n)
    num = sum(a * x ** (k + 1) for k, a in enumerate(row))
    return num / (1 - x) ** (n + 1)


def _check_order(m: int) -> None:
    if not (1 <= m <= MAX_ORDER):
        raise UnsupportedOrderError(f"derivative order must be in 1..{MAX_ORDER}, got {m}")


def _finite_ramified_exact(chi: UnitaryCharacter, m: int) -> LogExact:
    if chi.has_unit_data:
        conductor_exponent(chi)
    q = chi.place.q
    return LogExact.log(q, chi.f + chi.place.delta) if m == 1 else LogExact(0, 0, q)


def dlog_gamma_values(chi: UnitaryCharacter, s, m: int = 1) -> np.ndarray:
    """∂_s^m log Γ(χ, s) on an array of strip points (closed forms)."""
    _check_order(m)
    s = np.asarray(s, dtype=complex)
    check_strip(s)
    s = s + 1j * chi.tau
    place = chi.place
    if place.is_finite:
        q = place.q
        lq = math.log(q)
        if chi.is_ramified:
            return np.full(s.shape, complex(_finite_ramified_exact(chi, m)))
        out = -(lq**m) * polylog_neg(m - 1, q ** (s - 1)) + (-lq) ** m * polylog_neg(m - 1, q ** (-s))
        if m == 1:
            out = out + place.delta * lq
        return out
    k = m - 1
    if place.kind == "real":
        if chi.parity == "plus":
            lo, hi = s / 2, (1 - s) / 2
        else:
            lo, hi = (s + 1) / 2, (2 - s) / 2
        out = 0.5**m * polygamma(k, lo) - (-0.5) ** m * polygamma(k, hi)
        return out - LOG_PI if m == 1 else out
    n = abs(chi.N)
    out = polygamma(k, n / 2 + s) - (-1) ** m * polygamma(k, n / 2 + 1 - s)
    return out - 2 * LOG_2PI if m == 1 else out


def dlog_gamma(chi: UnitaryCharacter, s, m: int = 1) -> SpectralValue:
    """m-th s-derivative of log Γ(χ, s); m = 1 is H(χ, s) = -Λ(χ, s)."""
    s = complex(s)
    value = complex(dlog_gamma_values(chi, np.array([s]), m)[0])
    exact = _finite_ramified_exact(chi, m) if chi.is_ramified else None
    return SpectralValue(m, chi, s, value, exact)


def lambda_values(chi: UnitaryCharacter, s) -> np.ndarray:
    """Λ(χ, s) = -∂_s log Γ(χ, s)."""
    return -dlog_gamma_values(chi, s, 1)


# ---------------------------------------------------------------------------
# partial-fraction series on the critical line (archimedean places)


@dataclass(frozen=True)
class LineValue:
    """Series value with a rigorous bound on |value - exact|."""

    value: float | np.ndarray
    tail_bound: float
    terms: int


def _series_params(chi: UnitaryCharacter):
    # (kind, shift) with shift a/2 for real (w = 2x + a/2) and c for complex
    if chi.place.kind == "real":
        a = 1.0 if chi.parity == "plus" else 3.0
        return "real", a
    if chi.place.kind == "complex":
        return "complex", (abs(chi.N) + 1) / 2
    raise ValueError("partial-fraction series exist for archimedean places only")


def _terms_needed(kind: str, m: int, target: float) -> int:
    # J with midpoint-rule remainder bound below target (bounds derived from |t''|)
    if m == 1:
        c = 1 / 12 if kind == "real" else 1 / 6
        return int(math.ceil(0.5 + math.sqrt(c / target))) + 1
    c = 1 / 24 if kind == "real" else 1 / 6
    return int(math.ceil(0.5 + (c / target) ** (1 / 3))) + 1


def _line_bound(kind: str, m: int, J: int) -> float:
    x = J - 0.5
    if m == 1:
        return (1 / 12 if kind == "real" else 1 / 6) / x**2
    return (1 / 24 if kind == "real" else 1 / 6) / x**3


def h_line(chi: UnitaryCharacter, tau, m: int = 1, target: float = DEFAULT_LINE_TARGET,
           terms: int | None = None) -> LineValue:
    """h(τ) = H(χ, 1/2+iτ) (m = 1) or k(τ) = K(χ, 1/2+iτ) (m = 2) by partial fractions.

    The series is summed to J terms, its remainder replaced by the integral
    over [J+1/2, ∞) (midpoint rule), and the midpoint error is bounded via
    a τ-uniform bound on the second derivative of the summand.
    """
    if m not in (1, 2):
        raise UnsupportedOrderError("the partial-fraction series cover m = 1 (h) and m = 2 (k)")
    kind, a = _series_params(chi)
    tau_arr = np.atleast_1d(np.asarray(tau, dtype=float)) + chi.tau
    J = _terms_needed(kind, m, target) if terms is None else int(terms)
    if J < 1:
        raise ValueError("truncation count must be >= 1")
    t2 = tau_arr * tau_arr
    total = np.zeros_like(tau_arr)
    # j runs 1..J for h and 0..J for k
    start = 1 if m == 1 else 0
    chunk = max(1, 2_000_000 // max(tau_arr.size, 1))
    for lo in range(start, J + 1, chunk):
        j = np.arange(lo, min(J, lo + chunk - 1) + 1, dtype=float)[:, None]
        if kind == "real":
            w = 2 * j + a / 2
            if m == 1:
                terms = (a * j + a * a / 4 + t2) / (j * (w * w + t2))
            else:
                terms = (4 * j + a) * 2 * tau_arr / (w * w + t2) ** 2
        else:
            w = j + a
            if m == 1:
                terms = 2 * (a * w + t2) / (j * (w * w + t2))
            else:
                terms = 2 * w * 2 * tau_arr / (w * w + t2) ** 2
        total += terms.sum(axis=0)
    A = J + 0.5
    if kind == "real":
        if m == 1:
            tail = 0.5 * np.log1p((2 * a * A + a * a / 4 + t2) / (4 * A * A))
            value = -LOG_PI - EULER_GAMMA - a / (a * a / 4 + t2) + total + tail
        else:
            tail = tau_arr / ((2 * A + a / 2) ** 2 + t2)
            value = -(total + tail)
    else:
        if m == 1:
            tail = np.log1p((2 * a * A + a * a + t2) / (A * A))
            value = -2 * LOG_2PI - 2 * EULER_GAMMA - 2 * a / (a * a + t2) + total + tail
        else:
            tail = 2 * tau_arr / ((A + a) ** 2 + t2)
            value = -(total + tail)
    if np.ndim(tau) == 0:
        value = float(value[0])
    return LineValue(value, _line_bound(kind, m, J), J)


def spectral_minimum(chi: UnitaryCharacter) -> float:
    """min over τ of H(χ, 1/2+iτ), attained at τ = 0 (untwisted component)."""
    if chi.place.kind == "real":
        arg = 0.25 if chi.parity == "plus" else 0.75
        return float(np.real(-LOG_PI + digamma(arg)))
    if chi.place.kind == "complex":
        return float(np.real(-2 * LOG_2PI + 2 * digamma((abs(chi.N) + 1) / 2)))
    raise ValueError("spectral minima are defined for archimedean components")


# ---------------------------------------------------------------------------
# Q_p: symbols and Toeplitz truncations


def _check_kind(kind: str) -> str:
    kind = kind.upper()
    if kind not in ("H", "K"):
        raise ValueError(f"kind must be H or K, got {kind!r}")
    return kind


def symbol(p: int, z, kind: str = "H"):
    """Multiplier of H (resp. K) on the invariant part of L²(Q_p), on |z| = 1.

    h(z) = -log p·(z/(√p - z) + z̄/(√p - z̄)) and k = -log p·∂h/∂θ, which is
    -2 log²p·Im(a/(1-a)²) with a = z/√p.  Both are Σ c_n z^n with c_n the
    matrix entry n places below the diagonal, and both are real.
    """
    kind = _check_kind(kind)
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1) > 1e-12):
        raise NonUnitModulusError("symbols are evaluated on the unit circle")
    lp, rp = math.log(p), math.sqrt(p)
    if kind == "H":
        out = -2 * lp * np.real(z / (rp - z))
    else:
        a = z / rp
        out = -2 * lp * lp * np.imag(a / (1 - a) ** 2)
    return float(out) if out.ndim == 0 else out


def spectrum_support(p: int, kind: str = "H") -> tuple[float, float]:
    """Closed-form range of the symbol on the circle.

    H: the range is [h(1), h(-1)] = [-2 log p/(√p-1), 2 log p/(√p+1)].
    K: with r = 1/√p the symbol is -2 log²p·r(1-r²) sinθ/(1+r²-2r cosθ)²,
    extremal where 2r·c² + (1+r²)c - 4r = 0 (c = cosθ).
    """
    kind = _check_kind(kind)
    lp, rp = math.log(p), math.sqrt(p)
    if kind == "H":
        return (-2 * lp / (rp - 1), 2 * lp / (rp + 1))
    r = 1 / rp
    A, B = 1 + r * r, 2 * r
    c = (-A + math.sqrt(A * A + 8 * B * B)) / (2 * B)
    s = math.sqrt(1 - c * c)
    peak = 2 * lp * lp * r * (1 - r * r) * s / (A - B * c) ** 2
    return (-peak, peak)


@dataclass(frozen=True)
class ToeplitzTruncation:
    p: int
    kind: str
    size: int
    entries: np.ndarray
    eigenvalues: np.ndarray


def toeplitz_entries(p: int, kind: str, N: int) -> np.ndarray:
    kind = _check_kind(kind)
    idx = np.arange(N)
    d = idx[None, :] - idx[:, None]  # k - j
    cutoff = 60 * math.log(10) / math.log(p)
    decay = np.where(np.abs(d) > cutoff, 0.0, float(p) ** (-np.abs(d) / 2))
    lp = math.log(p)
    if kind == "H":
        mat = -lp * decay.astype(complex)
        np.fill_diagonal(mat, 0)
        return mat
    return -1j * lp * lp * d * decay


def toeplitz_spectrum(p: int, kind: str, N: int) -> ToeplitzTruncation:
    """N×N section of the H or K matrix and its sorted eigenvalues."""
    kind = _check_kind(kind)
    if not (1 <= N <= MAX_TOEPLITZ):
        raise SizeLimitError(f"size must be in 1..{MAX_TOEPLITZ}, got {N}")
    mat = toeplitz_entries(p, kind, N)
    herm = 0.5 * (mat + mat.conj().T)
    eig = scipy.linalg.eigh(herm, eigvals_only=True, driver="ev")
    return ToeplitzTruncation(p, kind, N, mat, np.sort(eig))
