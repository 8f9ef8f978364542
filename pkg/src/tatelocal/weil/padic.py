"""Exact conductor-operator computations on Q_p.

Everything here stays in LogExact: G of a ball indicator is
log p·(1/(p-1) - k) for a ball B(0, k) and γ·p^{-k}/|a| for a ball B(a, k)
not containing 0, with γ = log p·p/(p - 1).  Convolutions, the conductor
operator and the conductor integral are finite sums of these.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import (NotRepresentableError, SupportAtZeroError, UnramifiedInputError, ZeroArgumentError)
from ..gamma import gamma_eval
from ..localfield.bruhat import Ball, BruhatFunction, ball_character_integral, shell_mellin
from ..localfield.characters import UnitaryCharacter, conductor_exponent
from ..localfield.cyclotomic import Cyclotomic, to_complex
from ..localfield.logexact import LogExact
from ..localfield.padic import as_fraction, padic_abs, residue, unit_part, valuation
from ..localfield.place import Place
from .omega import get_omega

Exact = (int, Fraction, Cyclotomic)


def _require_exact(phi: BruhatFunction) -> None:
    for t in phi.terms:
        if not isinstance(t.coeff, Exact):
            raise NotRepresentableError("exact p-adic paths need rational or cyclotomic coefficients")


def _gamma_coeff(p: int) -> Fraction:
    return Fraction(p, p - 1)


def g_ball(p: int, a: Fraction, k: int) -> LogExact:
    """G(1_{B(a, k)}), exact."""
    a = as_fraction(a)
    if valuation(a, p) >= k:
        return LogExact.log(p, Fraction(1, p - 1) - k)
    # γ·vol/|a| = log p·p/(p-1)·p^{-k}·p^{v(a)}
    return LogExact.log(p, _gamma_coeff(p) * Fraction(p) ** (valuation(a, p) - k))


def g_apply_padic(phi: BruhatFunction, omega=None) -> LogExact:
    """G(φ) through the chosen ω-form (exact)."""
    p = phi.p
    _require_exact(phi)
    om = get_omega(omega, Place.finite(p))
    phi0 = phi.value_at_zero()
    if om.tag == "padic-unit-indicator-minus-psi":
        ref = BruhatFunction.from_terms(p, [(0, 0, 1), (1, 1, -1)])
        g_ref = LogExact(0, 0, p)
    else:
        ref = BruhatFunction.indicator(p)
        g_ref = LogExact.log(p, Fraction(1, p - 1))
    rest = (phi - ref.scaled(phi0)).canonicalize()
    total = g_ref * phi0
    for t in rest.terms:
        if t.ball.center == 0:
            # the remainder vanishes near 0, so a central leaf carries coefficient 0 only
            raise AssertionError("non-zero central leaf after subtracting φ(0)ω")
        v = valuation(t.ball.center, p)
        total = total + LogExact.log(p, _gamma_coeff(p) * Fraction(p) ** (v - t.ball.k) * t.coeff)
    return total


def g_apply_balls(phi: BruhatFunction) -> LogExact:
    """G(φ) summed term by term with the ball formula (no ω involved)."""
    _require_exact(phi)
    total = LogExact(0, 0, phi.p)
    for t in phi.terms:
        total = total + g_ball(phi.p, t.ball.center, t.ball.k) * t.coeff
    return total


def g_convolve_at(phi: BruhatFunction, x) -> LogExact:
    """(G*φ)(x) = G(y ↦ φ(x - y)), exact."""
    _require_exact(phi)
    x = as_fraction(x)
    total = LogExact(0, 0, phi.p)
    for t in phi.terms:
        total = total + g_ball(phi.p, x - t.ball.center, t.ball.k) * t.coeff
    return total


# ---------------------------------------------------------------------------
# the conductor operator H(φ) = log|x|·φ - G*φ


@dataclass(frozen=True)
class ConductorImage:
    """H(φ) as exact piecewise data.

    regions: balls (not containing 0) on which H(φ) is constant;
    central: (K, φ(0), c) meaning H(φ)(x) = φ(0)·log|x| + c on B(0, K);
    tail: (top, C) meaning H(φ)(x) = C/|x| for |x| > p^{-top}.
    """

    p: int
    regions: tuple[tuple[Ball, LogExact], ...]
    central: tuple[int, object, LogExact] | None
    tail: tuple[int, LogExact]

    def value_at(self, x) -> LogExact:
        p = self.p
        x = as_fraction(x)
        top, C = self.tail
        if x != 0 and valuation(x, p) < top:
            return C * padic_abs(1 / x, p)
        for ball, value in self.regions:
            if ball.contains(x, p):
                return value
        if self.central is not None:
            K, phi0, c = self.central
            if valuation(x, p) >= K:
                if x == 0:
                    if phi0 != 0:
                        raise ZeroArgumentError("H(φ) has a logarithmic singularity at 0")
                    return c
                return c + LogExact.log(p, -valuation(x, p)) * phi0
        return LogExact(0, 0, p)

    def to_dict(self) -> dict:
        out = {
            "p": self.p,
            "regions": [{"center": str(b.center), "k": b.k, "value": v.to_dict()} for b, v in self.regions],
            "tail": {"top": self.tail[0], "coefficient_over_abs_x": self.tail[1].to_dict()},
        }
        if self.central is not None:
            K, phi0, c = self.central
            out["central"] = {"k": K, "log_abs_x_coefficient": str(phi0) if isinstance(phi0, Fraction)
                              else phi0.to_dict(), "constant": c.to_dict()}
        return out


def _term_bounds(phi: BruhatFunction) -> tuple[int, int]:
    p = phi.p
    top = min(min(t.ball.k for t in phi.terms),
              min((valuation(t.ball.center, p) for t in phi.terms if t.ball.center != 0), default=10**9))
    K = max(max(t.ball.k for t in phi.terms),
            max((valuation(t.ball.center, p) + 1 for t in phi.terms if t.ball.center != 0), default=-10**9))
    return top, K


def conductor_apply(phi: BruhatFunction) -> ConductorImage:
    """H(φ) = log|x|·φ(x) - (G*φ)(x) for canonical exact φ."""
    phi.require_canonical()
    _require_exact(phi)
    p = phi.p
    if not phi.terms:
        return ConductorImage(p, (), None, (0, LogExact(0, 0, p)))
    top, K = _term_bounds(phi)
    mass = sum((t.coeff * t.ball.volume(p) for t in phi.terms), Fraction(0))
    tail = (top, -LogExact.log(p, _gamma_coeff(p) * mass))
    regions: list[tuple[Ball, LogExact]] = []
    central = None
    stack = [(Fraction(0), top)]
    while stack:
        b, m = stack.pop()
        node = Ball(b, m)
        strictly_inside = any(t.ball.k > m and residue(t.ball.center, p, m) == b for t in phi.terms)
        if b == 0:
            if m >= K and not strictly_inside:
                phi0 = phi.value_at_zero()
                central = (m, phi0, -g_convolve_at(phi, 0))
                continue
        elif not strictly_inside:
            value = phi(b)
            h = LogExact.log(p, -valuation(b, p)) * value - g_convolve_at(phi, b)
            regions.append((node, h))
            continue
        step = Fraction(p) ** m
        for j in range(p - 1, -1, -1):
            stack.append((b + j * step, m + 1))
    regions.sort(key=lambda r: (r[0].k, r[0].center))
    return ConductorImage(p, tuple(regions), central, tail)


# ---------------------------------------------------------------------------
# pairing with χ^{-1}(x)|x|^{-s}


def _shell_geometric(p: int, X: complex, K: int) -> complex:
    # ∫_{|x| <= p^{-K}} |x|^{-s} dx = Σ_{j>=K} (1-1/p) p^{-j} X^{-j}
    r = 1 / (p * X)
    return (1 - 1 / p) * r**K / (1 - r)


def _outer_geometric(p: int, X: complex, top: int) -> complex:
    # ∫_{|x| > p^{-top}} |x|^{-1} |x|^{-s} dx = Σ_{j<top} (1-1/p) X^{-j}
    return (1 - 1 / p) * X ** (1 - top) / (1 - X)


def ih_pairing(phi: BruhatFunction, chi: UnitaryCharacter, s) -> tuple[complex, complex]:
    """(∫ H(φ)(x)χ^{-1}(x)|x|^{-s} dx, H(χ, s)·∫ φ(x)χ^{-1}(x)|x|^{-s} dx).

    φ must vanish near 0.  The left side is summed region by region, with
    the central ball and the C/|x| tail in closed geometric form.
    """
    from ..spectral import dlog_gamma

    p = phi.p
    s = complex(s)
    if chi.place != Place.finite(p):
        raise ValueError("character must live on the same Q_p")
    image = conductor_apply(phi)
    if phi.terms and phi.central_term() is not None:
        raise SupportAtZeroError("the pairing needs φ vanishing near 0")
    X = p ** (-(s + 1j * chi.tau))
    lhs = 0j
    for ball, value in image.regions:
        v = valuation(ball.center, p)
        lhs += complex(value) * to_complex(ball_character_integral(ball, chi, p)) * X ** (-v)
    if not chi.is_ramified:
        if image.central is not None:
            lhs += complex(image.central[2]) * _shell_geometric(p, X, image.central[0])
        top, C = image.tail
        lhs += complex(C) * _outer_geometric(p, X, top)
    rhs = dlog_gamma(chi, s, 1).value * shell_mellin(phi, chi)(X)
    return lhs, rhs


# ---------------------------------------------------------------------------
# the conductor integral ∫_{|t|=1} (1 - χ(t)) d^×t/|1 - t|


def _coset_conductor_sum(p: int, f: int, value) -> Fraction | Cyclotomic:
    # Σ over units u mod p^f of p^{v(1-u)}(1 - value(u)), times the d^×-mass
    # of one coset relative to log p: p^{-f}·p/(p-1)
    total = Fraction(0)
    m = p**f
    for u in range(2, m):
        if u % p == 0:
            continue
        total = total + (1 - value(u)) * Fraction(p) ** valuation(1 - u, p)
    return total * Fraction(p, p - 1) / m


def conductor_integral(chi: UnitaryCharacter) -> LogExact:
    """∫_{|t|=1}(1 - χ(t)) d^×t/|1 - t| on Q_p, exact.

    d^×t gives the units mass log p.  On 1 + p^f Z_p the integrand is 0, and
    the rest of the unit group is a union of cosets u + p^f Z_p on each of
    which both χ and |1 - t| are constant.
    """
    if not chi.place.is_finite or not chi.is_ramified:
        raise UnramifiedInputError("the conductor integral needs a ramified character")
    if not chi.place.is_exact or not chi.has_unit_data:
        raise NotRepresentableError("exact conductor integrals need Q_p and explicit unit-character data")
    f = conductor_exponent(chi)
    p = chi.place.q
    coeff = _coset_conductor_sum(p, f, chi.unit_value_exact)
    return LogExact.log(p, coeff)


# ---------------------------------------------------------------------------
# multiplicative transforms and the Γ(χ, 1/2) multiplier


def _twisted_unit_value(chi: UnitaryCharacter, u) -> complex:
    return cmath.exp(2j * math.pi * float(chi.unit_exponent(u)))


def multiplicative_transform(phi: BruhatFunction, chi: UnitaryCharacter, tau: float = 0.0,
                             conjugate: bool = False) -> complex:
    """∫ φ(t)·ψ(t)|t|^{1/2} d^×t with ψ = χω_τ (or its conjugate), d^× of unit volume 1."""
    phi = phi if phi.canonical else phi.canonicalize()
    p = phi.p
    twist = chi.tau + tau
    sign = -1 if conjugate else 1
    Y = p ** (-(0.5 + 1j * sign * twist))  # value of |t|^{1/2}·|t|^{±iτ} at |t| = 1/p
    total = 0j
    for t in phi.terms:
        c = to_complex(t.coeff)
        if t.ball.center == 0:
            if not chi.is_ramified:
                total += c * Y ** t.ball.k / (1 - Y)
            continue
        v = valuation(t.ball.center, p)
        depth = t.ball.k - v
        if chi.is_ramified and chi.f > depth:
            continue
        val = 1.0
        if chi.is_ramified:
            val = _twisted_unit_value(chi, unit_part(t.ball.center, p))
            val = val.conjugate() if conjugate else val
        # the ball p^v(u + p^depth Z_p) has d^×-volume p^{-depth}/(1 - 1/p)
        total += c * val * Y**v * p ** (-depth) / (1 - 1 / p)
    return total


@dataclass(frozen=True)
class MultiplierCheck:
    lhs: complex
    rhs: complex
    discrepancy: float


def tate_multiplier_check(phi: BruhatFunction, chi: UnitaryCharacter, tau: float) -> MultiplierCheck:
    """Compare ∫ℱφ·χω_τ|t|^{1/2}d^×t with Γ(χω_τ, 1/2)·∫φ·conj(χω_τ)|t|^{1/2}d^×t."""
    if not chi.place.is_exact or chi.place.q != phi.p:
        raise ValueError("the multiplier check runs on Q_p with a character of the same p")
    if chi.is_ramified and not chi.has_unit_data:
        raise NotRepresentableError("conductor-only characters cannot be integrated")
    if not phi.canonicalize().terms:
        return MultiplierCheck(0j, 0j, 0.0)
    lhs = multiplicative_transform(phi.fourier(), chi, tau)
    g = gamma_eval(chi.twisted(tau), 0.5).value
    rhs = g * multiplicative_transform(phi, chi, tau, conjugate=True)
    return MultiplierCheck(lhs, rhs, abs(lhs - rhs))
