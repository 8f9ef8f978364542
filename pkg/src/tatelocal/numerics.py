"""Complex special functions and quadrature primitives.

Everything here works on complex doubles.  ``log_gamma`` and ``polygamma``
accept scalars or numpy arrays; the quadrature routines expect vectorised
integrands (a callable taking a float array and returning an array).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ConvergenceError, PoleError, UnsupportedOrderError

EULER_GAMMA = 0.57721566490153286061
MAX_POLYGAMMA_ORDER = 8

# shift target for the asymptotic expansions; with 13 Bernoulli terms the
# truncation error at |w| >= 20 is below 1e-17 relative for m <= 8
_ASYMPTOTIC_RE = 20.0
_N_BERNOULLI = 13


@lru_cache(maxsize=None)
def _bernoulli_even() -> tuple[float, ...]:
    """B_2, B_4, ..., B_{2K} as floats (computed exactly first)."""
    n_max = 2 * _N_BERNOULLI
    b = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * b[k]
        b.append(-acc / (m + 1))
    return tuple(float(b[2 * k]) for k in range(1, _N_BERNOULLI + 1))


def _as_complex_array(s):
    arr = np.asarray(s, dtype=complex)
    return arr, arr.ndim == 0


def _check_poles(z: np.ndarray) -> None:
    bad = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if np.any(bad):
        raise PoleError(f"Gamma has a pole at {z[bad].ravel()[0].real:g}")


def _shift_counts(z: np.ndarray) -> np.ndarray:
    return np.where(z.real < _ASYMPTOTIC_RE, np.ceil(_ASYMPTOTIC_RE - z.real), 0).astype(int)


def log_gamma(s):
    """Log of Euler's Gamma function.

    Uses the recurrence to move to Re >= 20 and Stirling's series there.  The
    branch is the standard analytic continuation from the positive axis with
    the cut on the negative real axis (the same one scipy/mpmath use).
    """
    z, scalar = _as_complex_array(s)
    z = np.atleast_1d(z)
    _check_poles(z)
    n = _shift_counts(z)
    w = z + n
    correction = np.zeros_like(z)
    for k in range(int(n.max(initial=0))):
        active = k < n
        correction[active] += np.log(z[active] + k)
    coeffs = _bernoulli_even()
    inv = 1.0 / w
    inv2 = inv * inv
    series = np.zeros_like(w)
    power = inv
    for k, b2k in enumerate(coeffs, start=1):
        series += b2k / (2 * k * (2 * k - 1)) * power
        power = power * inv2
    out = (w - 0.5) * np.log(w) - w + 0.5 * math.log(2 * math.pi) + series - correction
    return complex(out[0]) if scalar else out


def polygamma(m: int, s):
    """m-th derivative of the digamma function (m = 0 gives digamma)."""
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise UnsupportedOrderError(f"polygamma order must be a non-negative integer, got {m!r}")
    if m > MAX_POLYGAMMA_ORDER:
        raise UnsupportedOrderError(f"polygamma order {m} > {MAX_POLYGAMMA_ORDER} is not supported")
    z, scalar = _as_complex_array(s)
    z = np.atleast_1d(z)
    _check_poles(z)
    n = _shift_counts(z)
    w = z + n
    sign = -1.0 if m % 2 else 1.0
    fact_m = math.factorial(m)
    shift = np.zeros_like(z)
    for k in range(int(n.max(initial=0))):
        active = k < n
        shift[active] += 1.0 / (z[active] + k) ** (m + 1)
    coeffs = _bernoulli_even()
    inv = 1.0 / w
    inv2 = inv * inv
    if m == 0:
        acc = np.log(w) - 0.5 * inv
        power = inv2
        for k, b2k in enumerate(coeffs, start=1):
            acc -= b2k / (2 * k) * power
            power = power * inv2
    else:
        acc = math.factorial(m - 1) * inv**m + 0.5 * fact_m * inv ** (m + 1)
        power = inv ** (m + 2)
        for k, b2k in enumerate(coeffs, start=1):
            acc += b2k * (math.factorial(2 * k + m - 1) / math.factorial(2 * k)) * power
            power = power * inv2
        acc = -sign * acc
    out = acc - sign * fact_m * shift
    return complex(out[0]) if scalar else out


def digamma(s):
    return polygamma(0, s)


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class QuadratureSpec:
    method: str = "tanh-sinh"
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_depth: int = 30

    def __post_init__(self) -> None:
        if self.method not in ("tanh-sinh", "gauss-legendre-adaptive"):
            raise ValueError(f"unknown quadrature method {self.method!r}")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


DEFAULT_SPEC = QuadratureSpec()

_TS_TMAX = 3.2
_TS_MAX_LEVEL = 14


def _map_interval(f, a: float, b: float):
    """Return (g, lo, hi) with ∫_a^b f = ∫_lo^hi g over a finite range."""
    a_inf, b_inf = math.isinf(a), math.isinf(b)
    if not a_inf and not b_inf:
        return f, a, b
    if a_inf and b_inf:
        if a > 0 or b < 0:
            raise ValueError("invalid infinite interval")

        def g(t):
            d = 1.0 - t * t
            return f(t / d) * (1.0 + t * t) / (d * d)

        return g, -1.0, 1.0
    if b_inf:

        def g(t):
            d = 1.0 - t
            return f(a + t / d) / (d * d)

        return g, 0.0, 1.0

    def g(t):
        d = 1.0 - t
        return f(b - t / d) / (d * d)

    return g, 0.0, 1.0


def _tanh_sinh_level(g, c: float, d: float, h: float, offset: bool) -> complex:
    # offset=True: only the odd multiples of h (new nodes at this level)
    if offset:
        k = np.arange(1, int(_TS_TMAX / h) + 1, 2)
        t = np.concatenate([-k[::-1] * h, k * h])
    else:
        k = np.arange(-int(_TS_TMAX / h), int(_TS_TMAX / h) + 1)
        t = k * h
    u = 0.5 * math.pi * np.sinh(t)
    # distance to the nearer endpoint, computed without cancellation
    dist = 2.0 / (np.exp(2.0 * np.abs(u)) + 1.0)
    x = np.where(t < 0, c - d + d * dist, c + d - d * dist)
    w = 0.5 * math.pi * np.cosh(t) / np.cosh(u) ** 2
    keep = (dist > 0) & (w > 0)
    if not np.any(keep):
        return 0j
    vals = np.asarray(g(x[keep]), dtype=complex)
    return complex(np.sum(vals * w[keep]) * d)


def _tanh_sinh(g, a: float, b: float, spec: QuadratureSpec) -> complex:
    c, d = 0.5 * (a + b), 0.5 * (b - a)
    h = 1.0
    total = _tanh_sinh_level(g, c, d, h, offset=False)
    estimate = total * h
    levels = min(spec.max_depth, _TS_MAX_LEVEL)
    for level in range(1, levels + 1):
        h /= 2
        total += _tanh_sinh_level(g, c, d, h, offset=True)
        new = total * h
        err = abs(new - estimate)
        estimate = new
        if level >= 3 and err <= max(spec.abs_tol, spec.rel_tol * abs(new)):
            return new
    raise ConvergenceError(f"tanh-sinh did not converge on [{a}, {b}] within {levels} levels")


_GL_X, _GL_W = np.polynomial.legendre.leggauss(15)


def _gl_panel(g, lo: float, hi: float) -> complex:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return complex(np.sum(np.asarray(g(mid + half * _GL_X), dtype=complex) * _GL_W) * half)


def _gauss_legendre_adaptive(g, a: float, b: float, spec: QuadratureSpec) -> complex:
    width = b - a
    whole = _gl_panel(g, a, b)
    # depth-first, left to right, so the summation order is fixed
    stack = [(a, b, whole, 0)]
    accepted: list[complex] = []
    scale = abs(whole)
    while stack:
        lo, hi, est, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = _gl_panel(g, lo, mid), _gl_panel(g, mid, hi)
        refined = left + right
        scale = max(scale, abs(refined))
        tol = max(spec.abs_tol, spec.rel_tol * scale) * (hi - lo) / width
        if abs(refined - est) <= tol:
            accepted.append(refined)
            continue
        if depth + 1 >= spec.max_depth:
            raise ConvergenceError(f"adaptive Gauss-Legendre hit max_depth on [{lo}, {hi}]")
        stack.append((mid, hi, right, depth + 1))
        stack.append((lo, mid, left, depth + 1))
    return complex(math.fsum(z.real for z in accepted), math.fsum(z.imag for z in accepted))


def quad_line(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """Integrate a vectorised f over [a, b]; either end may be infinite."""
    if a == b:
        return 0j
    if a > b:
        return -quad_line(f, b, a, spec)
    g, lo, hi = _map_interval(f, a, b)
    if spec.method == "tanh-sinh":
        return _tanh_sinh(g, lo, hi, spec)
    return _gauss_legendre_adaptive(g, lo, hi, spec)


# ---------------------------------------------------------------------------
# Mellin transforms of bump-type test functions


def _require_compact(g) -> None:
    from .errors import NonCompactError

    if not getattr(g, "is_compact", False):
        raise NonCompactError(f"test function family {getattr(g, 'family', '?')!r} is not compactly supported")


def mellin_hat(g, s, spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """ĝ(s) = ∫ g(u) u^s du/u, integrated in the log variable over the support."""
    _require_compact(g)
    s = complex(s)
    total = 0j
    for piece in g.pieces():
        a0, L, amp = piece.log_center, piece.log_half_width, piece.amplitude
        if amp == 0:
            continue

        def integrand(x, a0=a0, L=L):
            return piece.profile(x) * np.exp(s * L * x)

        total += amp * L * np.exp(s * a0) * quad_line(integrand, -1.0, 1.0, spec)
    return complex(total)


_DE_TMAX = 1.7  # the bump profile is below 1e-300 beyond this DE abscissa


def mellin_hat_many(g, s: np.ndarray) -> np.ndarray:
    """Vectorised ĝ on an array of s with a fixed double-exponential rule.

    The step is chosen from the largest |Im s|·L so that every oscillation
    is resolved; accuracy is ~1e-15 relative to ∫|g| du/u.
    """
    _require_compact(g)
    s = np.asarray(s, dtype=complex)
    out = np.zeros(s.shape, dtype=complex)
    flat = s.ravel()
    acc = np.zeros(flat.shape, dtype=complex)
    for piece in g.pieces():
        a0, L, amp = piece.log_center, piece.log_half_width, piece.amplitude
        if amp == 0:
            continue
        omega = float(np.max(np.abs(flat.imag), initial=0.0)) * L + abs(float(np.max(np.abs(flat.real), initial=0.0))) * L
        h = min(1.0 / 32.0, 0.5 / (omega + 1.0))
        n = int(_DE_TMAX / h)
        t = np.arange(-n, n + 1) * h
        u = 0.5 * math.pi * np.sinh(t)
        x = np.tanh(u)
        w = h * 0.5 * math.pi * np.cosh(t) / np.cosh(u) ** 2
        prof = piece.profile(x) * w
        keep = prof != 0
        x, prof = x[keep], prof[keep]
        chunk = max(1, 4_000_000 // max(len(x), 1))
        for i in range(0, len(flat), chunk):
            ss = flat[i:i + chunk]
            kernel = np.exp(np.outer(ss * L, x))
            acc[i:i + chunk] += amp * L * np.exp(ss * a0) * (kernel @ prof)
    out[...] = acc.reshape(s.shape)
    return out


_ENVELOPE_CONST = 3.0  # measured sup of |b̂(ω)|·ω^{3/4}·e^{√ω} is about 2.35


def mellin_envelope(g, sigma: float, tau) -> np.ndarray:
    """Upper bound for |ĝ(σ + iτ)| valid for the smooth-bump family.

    The profile exp(-1/(1-x²)) has Fourier transform bounded by
    C·ω^{-3/4}·e^{-√ω} (ω ≥ 1), the saddle-point rate of its essential
    singularities at x = ±1; the weight e^{σLx} costs at most e^{|σ|L}.
    """
    _require_compact(g)
    tau = np.abs(np.asarray(tau, dtype=float))
    out = np.zeros_like(tau)
    for piece in g.pieces():
        L = piece.log_half_width
        omega = np.maximum(tau * L, 1.0)
        scale = abs(piece.amplitude) * L * math.exp(sigma * piece.log_center + abs(sigma) * L)
        out = out + scale * _ENVELOPE_CONST * omega ** -0.75 * np.exp(-np.sqrt(omega))
    return out


def mellin_decay_cutoff(g, sigma: float = 0.5, tol: float = 1e-16) -> float:
    """Smallest T (to within 1%) with mellin_envelope(g, σ, τ) <= tol for all τ >= T."""
    _require_compact(g)
    if not g.pieces() or all(p.amplitude == 0 for p in g.pieces()):
        return 0.0
    lo, hi = 0.0, 1.0
    while mellin_envelope(g, sigma, hi) > tol:
        lo, hi = hi, 2 * hi
        if hi > 1e9:
            raise ConvergenceError("Mellin envelope does not fall below the tolerance")
    while hi - lo > 0.01 * hi:
        mid = 0.5 * (lo + hi)
        if mellin_envelope(g, sigma, mid) > tol:
            lo = mid
        else:
            hi = mid
    return hi


def mellin_line_grid(g, sigma: float, tau_max: float, dtau: float = 0.05):
    """ĝ(σ + iτ) on the uniform grid τ = j·dtau, |τ| <= tau_max.

    Uses the trapezoid rule in a = log u, evaluated for all τ at once by FFT.
    For a C^∞ bump the trapezoid rule is exact up to aliasing from
    |τ| ≈ 2π/Δa, and Δa is chosen so that aliased values are negligible.
    Returns (taus, values).
    """
    _require_compact(g)
    n_tau = int(math.ceil(tau_max / dtau))
    taus = np.arange(-n_tau, n_tau + 1) * dtau
    vals = np.zeros(taus.shape, dtype=complex)
    for piece in g.pieces():
        if piece.amplitude == 0:
            continue
        a0, L = piece.log_center, piece.log_half_width
        # band limit π/Δa at least 4·tau_max keeps aliasing below the decay floor
        da_target = math.pi / (4.0 * max(tau_max, 1.0))
        n_inside = max(256, int(math.ceil(2 * L / da_target)))
        da = 2 * L / n_inside
        M = int(math.ceil(2 * math.pi / (dtau * da)))
        if M < n_inside + 1:
            raise ValueError("dtau too coarse for the support width")
        da = 2 * math.pi / (dtau * M)  # exact reciprocity between the two grids
        a_lo = a0 - L
        k = np.arange(M)
        a = a_lo + k * da
        x = (a - a0) / L
        samples = piece.amplitude * piece.profile(x) * np.exp(sigma * a)
        spectrum = np.fft.ifft(samples) * M * da
        idx = np.mod(np.arange(-n_tau, n_tau + 1), M)
        vals += np.exp(1j * taus * a_lo) * spectrum[idx]
    return taus, vals
