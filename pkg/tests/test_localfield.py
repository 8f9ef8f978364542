from __future__ import annotations

import cmath
import json
import math
from fractions import Fraction

import pytest

from tatelocal.errors import SupportAtZeroError, ZeroArgumentError
from tatelocal.localfield import (BruhatFunction, Cyclotomic, LaurentPolynomial, LogExact, MultiplicativeTestFunction,
                                  Place, TestFunctionSum, UnitaryCharacter, bruhat_canonicalize, bruhat_eval, char_eval,
                                  characters_mod, conductor_exponent, haar_constants, norm, primitive_root,
                                  shell_mellin)
from tatelocal.localfield.padic import padic_abs, valuation

F = Fraction


# --- places and absolute values -------------------------------------------------


def test_place_validation():
    with pytest.raises(ValueError):
        Place.finite(6)
    with pytest.raises(ValueError):
        Place.finite(3, -1)
    assert Place.finite(9, 2).p == 3
    assert Place.finite(5).is_exact and not Place.finite(4).is_exact


def test_norm_examples():
    assert norm(Place.finite(5), 5) == F(1, 5)
    assert abs(norm(Place.complex(), 1 + 1j) - 2) < 1e-15
    for place in (Place.finite(3), Place.real(), Place.complex()):
        assert norm(place, 0) == 0


def test_haar_constants():
    assert haar_constants(Place.real()) == pytest.approx((2, 0.5), abs=1e-15)
    assert haar_constants(Place.complex()) == pytest.approx((2 * math.pi, 1 / (2 * math.pi)), abs=1e-15)
    q = 7
    R, g = haar_constants(Place.finite(q))
    assert R == pytest.approx((1 - 1 / q) / math.log(q), abs=1e-15)
    assert g == pytest.approx(math.log(q) / (1 - 1 / q), abs=1e-15)


def test_padic_valuation_and_abs():
    assert valuation(F(18, 5), 3) == 2
    assert valuation(F(5, 27), 3) == -3
    assert padic_abs(F(5, 27), 3) == 27


# --- characters -------------------------------------------------------------------


def test_char_eval_examples():
    triv = UnitaryCharacter.unramified(Place.finite(3))
    assert char_eval(triv, F(7, 9)) == 1
    assert char_eval(UnitaryCharacter.real("minus"), -2.0) == -1
    assert abs(char_eval(UnitaryCharacter.complex(1), 1j) - 1j) < 1e-15
    with pytest.raises(ZeroArgumentError):
        char_eval(triv, 0)


def test_twist_factor():
    chi = UnitaryCharacter.unramified(Place.finite(2), tau=0.7)
    # |1/4|_2 = 4
    assert abs(char_eval(chi, F(1, 4)) - cmath.exp(0.7j * math.log(4))) < 1e-15


def test_conductor_exponents():
    assert conductor_exponent(UnitaryCharacter.dirichlet(5, 1, 2)) == 1
    for chi in characters_mod(2, 3):
        assert conductor_exponent(chi) >= 2
    assert characters_mod(2, 1) == []


def test_quadratic_character_mod5_values():
    chi = UnitaryCharacter.dirichlet(5, 1, 2)
    # Legendre symbol mod 5
    legendre = {1: 1, 2: -1, 3: -1, 4: 1}
    for u, v in legendre.items():
        assert abs(char_eval(chi, u) - v) < 1e-15
    assert abs(char_eval(chi, 6) - 1) < 1e-15


def test_primitive_roots():
    assert primitive_root(5, 1) == 2
    assert primitive_root(7, 1) == 3
    assert primitive_root(9 // 3, 2) == 2


def test_character_orthogonality():
    # Σ_u χ(u) over (Z/p^f)^× vanishes for nontrivial χ
    for p, f in ((5, 1), (3, 2), (2, 3)):
        for chi in characters_mod(p, f):
            total = sum(char_eval(chi, u) for u in range(1, p**f) if u % p)
            assert abs(total) < 1e-12


def test_character_dict_round_trip():
    for chi in (UnitaryCharacter.dirichlet(2, 3, (1, 1), tau=0.25), UnitaryCharacter.complex(-2, 1.5),
                UnitaryCharacter.real("minus")):
        assert UnitaryCharacter.from_dict(json.loads(json.dumps(chi.to_dict()))) == chi


# --- exact scalars ------------------------------------------------------------------


def test_logexact_arithmetic():
    a = LogExact(F(1, 2), 3, 5)
    b = LogExact.log(5, F(-1, 3))
    assert a + b == LogExact(F(1, 2), F(8, 3), 5)
    assert float(a) == pytest.approx(0.5 + 3 * math.log(5), abs=1e-15)
    assert LogExact.from_dict(a.to_dict()) == a
    with pytest.raises(ValueError):
        _ = LogExact.log(2) + LogExact.log(3)


def test_cyclotomic_roots():
    i = Cyclotomic.root(4, 1)
    assert i * i == Cyclotomic.rational(-1)
    zeta5 = Cyclotomic.root(5, 1)
    total, power = Cyclotomic.rational(0), Cyclotomic.rational(1)
    for _ in range(5):
        total, power = total + power, power * zeta5
    assert total.is_zero()
    assert abs(complex(zeta5) - cmath.exp(2j * math.pi / 5)) < 1e-15


# --- Bruhat functions ---------------------------------------------------------------


def test_bruhat_eval_examples():
    one = BruhatFunction.indicator(3)
    assert bruhat_eval(one, 1) == 1
    assert bruhat_eval(one, F(1, 3)) == 0
    assert bruhat_eval(BruhatFunction.indicator(3, 1, 1, 2), 1) == 2


def test_canonicalize_examples():
    assert bruhat_canonicalize(BruhatFunction.from_terms(5, [])).terms == ()
    cancel = BruhatFunction.from_terms(5, [(0, 0, 1), (0, 0, -1)])
    assert bruhat_canonicalize(cancel).is_zero()
    canon = bruhat_canonicalize(BruhatFunction.indicator(2), central_exponent=4)
    samples = [F(k) / F(2) ** j for k in range(1, 40) for j in range(-2, 6)]
    assert all(bruhat_eval(canon, x) == bruhat_eval(BruhatFunction.indicator(2), x) for x in samples)
    assert canon.central_term() is not None


def test_fourier_of_unit_ball_is_self_dual():
    for p in (2, 3, 5):
        assert bruhat_canonicalize(BruhatFunction.indicator(p).fourier()) == bruhat_canonicalize(
            BruhatFunction.indicator(p))


def test_fourier_of_small_ball():
    # ℱ(1_{pZ_p}) = p^{-1}·1_{p^{-1}Z_p}
    p = 3
    lhs = BruhatFunction.indicator(p, 0, 1).fourier()
    rhs = BruhatFunction.indicator(p, 0, -1, F(1, p))
    assert bruhat_canonicalize(lhs) == bruhat_canonicalize(rhs)


def test_fourier_inversion_reflects():
    p = 3
    phi = BruhatFunction.from_terms(p, [(F(1, 3), 1, 2), (2, 1, -1)])
    twice = phi.fourier().fourier()
    for x in (F(1, 3), F(4, 3), F(-1, 3), 2, -2, 5, 0):
        assert bruhat_eval(twice, x) == bruhat_eval(phi, -x)


def test_bruhat_json_round_trip():
    phi = BruhatFunction.from_terms(7, [(F(1, 7), 0, F(2, 3)), (3, 2, -1)])
    assert BruhatFunction.from_dict(json.loads(json.dumps(phi.to_dict()))) == phi


def test_shell_mellin_examples():
    p = 5
    triv = UnitaryCharacter.unramified(Place.finite(p))
    units = BruhatFunction.unit_indicator(p).canonicalize()
    assert shell_mellin(units, triv) == LaurentPolynomial.from_dict({0: F(p - 1, p)})
    shell = (BruhatFunction.indicator(p, 0, -1) - BruhatFunction.indicator(p)).canonicalize()
    assert shell_mellin(shell, triv) == LaurentPolynomial.from_dict({1: F(p - 1, p) * p})
    assert shell_mellin(BruhatFunction.from_terms(p, []), triv) == LaurentPolynomial()
    with pytest.raises(SupportAtZeroError):
        shell_mellin(BruhatFunction.indicator(p).canonicalize(), triv)


def test_shell_mellin_of_ramified_block():
    # the block χ^{-1} on the units integrates against ψ^{-1} to vol(units) when ψ = χ^{-1}, else to 0
    chi = UnitaryCharacter.dirichlet(5, 1, 1)
    block = BruhatFunction.character_block(chi, 0)
    assert shell_mellin(block, chi.inverse()) == LaurentPolynomial.from_dict({0: F(4, 5)})
    assert shell_mellin(block, chi) == LaurentPolynomial()
    quad = UnitaryCharacter.dirichlet(5, 1, 2)
    assert shell_mellin(BruhatFunction.character_block(quad, 0), quad) == LaurentPolynomial.from_dict({0: F(4, 5)})


# --- multiplicative test functions ----------------------------------------------------


def test_bump_rejects_degenerate_parameters():
    for u, L in ((0, 0.5), (-1, 0.5), (2, 0), (2, -0.1)):
        with pytest.raises(ValueError):
            MultiplicativeTestFunction.bump(u, L)


def test_bump_support_and_peak():
    g = MultiplicativeTestFunction.bump(2.0, 0.5)
    lo, hi = g.support()
    assert lo == pytest.approx(2 * math.exp(-0.5)) and hi == pytest.approx(2 * math.exp(0.5))
    assert g(lo) == 0 and g(hi) == 0
    assert g(2.0) == pytest.approx(math.exp(-1))


def test_sum_of_test_functions():
    a, b = MultiplicativeTestFunction.bump(2.0, 0.2), MultiplicativeTestFunction.bump(3.0, 0.1, 2.0)
    s = TestFunctionSum.of(a, b)
    assert s(2.9) == pytest.approx(a(2.9) + b(2.9))
    assert s.support() == (a.support()[0], b.support()[1])
