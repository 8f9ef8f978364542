from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np
import pytest

from tatelocal.errors import OutOfStripError, UnramifiedInputError
from tatelocal.gamma import gamma_eval, gamma_values, gauss_sum, root_number
from tatelocal.localfield import BruhatFunction, Place, UnitaryCharacter, characters_mod, shell_mellin

STRIP = (np.linspace(0.05, 0.95, 9)[:, None] + 1j * np.linspace(-20, 20, 9)[None, :]).ravel()


def test_simple_values():
    assert abs(gamma_eval(UnitaryCharacter.real("plus"), 0.5).value - 1) < 1e-15
    assert abs(gamma_eval(UnitaryCharacter.complex(1), 0.5).value - 1j) < 1e-15
    assert abs(gamma_eval(UnitaryCharacter.unramified(Place.finite(7)), 0.5).value - 1) < 1e-15


def test_out_of_strip():
    chi = UnitaryCharacter.real("plus")
    for s in (1.5, 0.0, -0.2 + 3j, 1.0):
        with pytest.raises(OutOfStripError):
            gamma_eval(chi, s)


def test_real_factor_against_mpmath():
    # γ₊(s) = π^{1/2-s}Γ(s/2)/Γ((1-s)/2), γ₋(s) = i·π^{1/2-s}Γ((s+1)/2)/Γ((2-s)/2)
    for s in STRIP:
        s_ = mpmath.mpc(s.real, s.imag)
        plus = mpmath.pi ** (0.5 - s_) * mpmath.gamma(s_ / 2) / mpmath.gamma((1 - s_) / 2)
        minus = 1j * mpmath.pi ** (0.5 - s_) * mpmath.gamma((s_ + 1) / 2) / mpmath.gamma((2 - s_) / 2)
        assert abs(gamma_eval(UnitaryCharacter.real("plus"), s).value - complex(plus)) < 1e-12 * abs(complex(plus))
        assert abs(gamma_eval(UnitaryCharacter.real("minus"), s).value - complex(minus)) < 1e-12 * abs(complex(minus))


@pytest.mark.parametrize("N", [0, 1, -2, 5])
def test_complex_factor_against_mpmath(N):
    n = abs(N)
    for s in STRIP:
        s_ = mpmath.mpc(s.real, s.imag)
        ref = (1j) ** n * (2 * mpmath.pi) ** (1 - 2 * s_) * mpmath.gamma(n / 2 + s_) / mpmath.gamma(n / 2 + 1 - s_)
        ours = gamma_eval(UnitaryCharacter.complex(N), s).value
        assert abs(ours - complex(ref)) < 1e-12 * abs(complex(ref))


def test_twist_shifts_argument():
    chi = UnitaryCharacter.complex(2, tau=1.7)
    assert abs(gamma_eval(chi, 0.3 + 0.2j).value - gamma_eval(chi.untwisted(), 0.3 + 1.9j).value) < 1e-14


def test_unramified_with_different_exponent():
    q, d, s = 9, 2, 0.31 + 0.8j
    expect = q ** (d * (s - 0.5)) * (1 - q ** (s - 1)) / (1 - q ** (-s))
    assert abs(gamma_eval(UnitaryCharacter.unramified(Place.finite(q, d)), s).value - expect) < 1e-13


def test_gauss_sum_modulus():
    for p, f in ((5, 1), (7, 1), (3, 2), (2, 3)):
        for chi in characters_mod(p, f):
            assert abs(abs(gauss_sum(chi)) - p ** (f / 2)) < 1e-12
            assert abs(abs(root_number(chi)) - 1) < 1e-12


def test_quadratic_gauss_sum_mod5():
    # Σ (u/5) e^{-2πiu/5} = √5 for p ≡ 1 mod 4
    assert abs(gauss_sum(UnitaryCharacter.dirichlet(5, 1, 2)) - math.sqrt(5)) < 1e-13


def test_root_number_rejects_unramified():
    with pytest.raises(UnramifiedInputError):
        root_number(UnitaryCharacter.unramified(Place.finite(5)))


@pytest.mark.parametrize("p,f", [(3, 1), (5, 1), (2, 2), (2, 3), (3, 2)])
def test_ramified_against_local_functional_equation(p, f):
    """Exact Bruhat oracle: ∫ℱφ·χ|y|^{s-1}dy = Γ(χ,s)·∫φ·χ^{-1}|x|^{-s}dx for φ = χ^{-1} on the units."""
    for chi in characters_mod(p, f):
        phi = BruhatFunction.character_block(chi, 0)
        phi_hat = phi.fourier().canonicalize()
        for s in (0.3 + 0.4j, 0.5, 0.8 - 2j):
            lhs = shell_mellin(phi_hat, chi.inverse())(p ** (-(1 - s)))
            rhs = gamma_eval(chi, s).value * shell_mellin(phi, chi)(p ** (-s))
            assert abs(lhs - rhs) < 1e-12


@pytest.mark.parametrize("p", [3, 5, 7])
def test_unramified_against_local_functional_equation(p):
    """φ = 1_{1+pZ_p} - p·1_{p+p²Z_p} has mean zero, so φ and ℱφ both vanish near 0."""
    phi = BruhatFunction.from_terms(p, [(1, 1, 1), (p, 2, -p)]).canonicalize()
    phi_hat = phi.fourier().canonicalize()
    for tau in (0.0, 1.1):
        chi = UnitaryCharacter.unramified(Place.finite(p), tau)
        for s in (0.2 + 0.1j, 0.5 + 3j, 0.7):
            lhs = shell_mellin(phi_hat, chi.inverse())(p ** (-(1 - s + 1j * chi.inverse().tau)))
            rhs = gamma_eval(chi, s).value * shell_mellin(phi, chi)(p ** (-(s + 1j * chi.tau)))
            assert abs(rhs) > 1e-3
            assert abs(lhs - rhs) < 1e-12
    chi = UnitaryCharacter.unramified(Place.finite(p))
    for s in STRIP:
        assert abs(gamma_eval(chi, s).value - (1 - p ** (s - 1)) / (1 - p ** (-s))) < 1e-13


def test_vectorised_matches_scalar():
    chi = UnitaryCharacter.dirichlet(7, 1, 3, tau=0.4)
    vec = gamma_values(chi, STRIP)
    assert np.max(np.abs(vec - np.array([gamma_eval(chi, s).value for s in STRIP]))) < 1e-15


ALL = (
    UnitaryCharacter.unramified(Place.finite(3)),
    UnitaryCharacter.unramified(Place.finite(8, 3), tau=-0.3),
    UnitaryCharacter.dirichlet(7, 1, 1),
    UnitaryCharacter.dirichlet(2, 3, (1, 1), tau=0.6),
    UnitaryCharacter.real("plus", 0.2),
    UnitaryCharacter.real("minus"),
    UnitaryCharacter.complex(4),
    UnitaryCharacter.complex(-1, -2.5),
)


@pytest.mark.parametrize("chi", ALL, ids=lambda c: c.place.label())
def test_conjugation_symmetry(chi):
    conj = chi.inverse()  # unitary: conj χ = χ^{-1}
    lhs = np.conj(gamma_values(chi, STRIP))
    rhs = chi.sign() * gamma_values(conj, np.conj(STRIP))
    assert np.max(np.abs(lhs - rhs)) < 1e-10


@pytest.mark.parametrize("chi", [c for c in ALL if c.place.is_finite], ids=lambda c: c.place.label())
def test_finite_periodicity(chi):
    period = 2j * math.pi / math.log(chi.place.q)
    s = STRIP[np.abs(STRIP.imag) < 15]
    assert np.max(np.abs(gamma_values(chi, s + period) - gamma_values(chi, s))) < 1e-10


def test_root_number_matches_half_value():
    chi = UnitaryCharacter.dirichlet(5, 1, 1)
    assert abs(gamma_eval(chi, 0.5).value - root_number(chi)) < 1e-15
    assert cmath.isclose(gamma_eval(chi, 0.5).value, gauss_sum(chi) / math.sqrt(5))
