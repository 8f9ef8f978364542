"""End-to-end acceptance checks, one test per criterion, each timed."""

from __future__ import annotations

import math
import time
from contextlib import contextmanager
from fractions import Fraction

import mpmath
import numpy as np

from conftest import ACCEPTANCE_LINES, BUMP_MATRIX
from tatelocal.gamma import gamma_values
from tatelocal.globalverify import explicit_report, load_zeros, poisson_check
from tatelocal.localfield import BruhatFunction, LogExact, Place, UnitaryCharacter, bruhat_eval, characters_mod
from tatelocal.numerics import EULER_GAMMA
from tatelocal.spectral import dlog_gamma, h_line, spectral_minimum, symbol, toeplitz_spectrum
from tatelocal.weil import (ArchimedeanFunction, conductor_apply, conductor_integral, g_apply, ih_pairing, omegas_for,
                            tate_multiplier_check, weil_term)

ARCHETYPES = (
    UnitaryCharacter.unramified(Place.finite(3)),
    UnitaryCharacter.unramified(Place.finite(4, 1), tau=0.4),
    UnitaryCharacter.dirichlet(5, 1, 1),
    UnitaryCharacter.dirichlet(2, 2, 1, tau=-1.3),
    UnitaryCharacter.real("plus"),
    UnitaryCharacter.real("minus", tau=0.8),
    UnitaryCharacter.complex(0),
    UnitaryCharacter.complex(-3, tau=2.0),
)

EXACT_PAIRS = ((3, 1), (5, 1), (2, 2), (7, 1))


@contextmanager
def criterion(number: int, limit: float, detail: dict):
    """Time the block, then record one PASS/FAIL line with the runtime."""
    start = time.perf_counter()
    detail["ok"] = False
    try:
        yield detail
    finally:
        elapsed = time.perf_counter() - start
        ok = detail["ok"] and elapsed < limit
        extra = detail.get("note", "")
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s, limit {limit:g}s) {extra}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        detail["elapsed"] = elapsed


def _strip_grid(n: int = 20) -> np.ndarray:
    re = np.linspace(0.03, 0.97, n)
    im = np.linspace(-12.0, 12.0, n)
    return (re[:, None] + 1j * im[None, :]).ravel()


def test_01_gamma_reflection():
    d = {}
    with criterion(1, 5.0, d):
        s = _strip_grid()
        worst = 0.0
        for chi in ARCHETYPES:
            prod = gamma_values(chi, s) * gamma_values(chi.inverse(), 1 - s)
            worst = max(worst, float(np.max(np.abs(prod - chi.sign()))))
        d["note"] = f"max deviation {worst:.2e}"
        d["ok"] = worst < 1e-10
    assert d["ok"], d["note"]
    assert d["elapsed"] < 5.0


def test_02_critical_line_unitarity():
    d = {}
    with criterion(2, 5.0, d):
        s = 0.5 + 1j * np.linspace(-30.0, 30.0, 1201)
        worst = max(float(np.max(np.abs(np.abs(gamma_values(chi, s)) - 1))) for chi in ARCHETYPES)
        d["note"] = f"max ||Γ| - 1| {worst:.2e}"
        d["ok"] = worst < 1e-10
    assert d["ok"], d["note"]
    assert d["elapsed"] < 5.0


def test_03_spectral_minima():
    d = {}
    with criterion(3, 1.0, d):
        base = math.log(8 * math.pi) + EULER_GAMMA
        errs = [
            abs(dlog_gamma(UnitaryCharacter.real("plus"), 0.5, 1).value - (-base - math.pi / 2)),
            abs(dlog_gamma(UnitaryCharacter.real("minus"), 0.5, 1).value - (-base + math.pi / 2)),
        ]
        for N in range(-6, 7):
            chi = UnitaryCharacter.complex(N)
            # independent digamma from mpmath
            mu = -2 * math.log(2 * math.pi) + 2 * float(mpmath.digamma((abs(N) + 1) / 2))
            errs.append(abs(spectral_minimum(chi) - mu))
            errs.append(abs(h_line(chi, 0.0).value - mu))
        worst = max(errs)
        d["note"] = f"max error {worst:.2e}"
        d["ok"] = worst < 1e-10
    assert d["ok"], d["note"]
    assert d["elapsed"] < 1.0


def _stated_interval(p: int, kind: str) -> tuple[float, float]:
    lp, rp = math.log(p), math.sqrt(p)
    if kind == "H":
        return -2 * lp / (rp - 1), 2 * lp / (rp + 1)
    return -2 * lp**2 / rp, 2 * lp**2 / rp


def test_04_symbols_and_toeplitz():
    d = {}
    failures = []
    with criterion(4, 30.0, d):
        for p in (2, 3, 5):
            for kind in ("H", "K"):
                lo, hi = _stated_interval(p, kind)
                ends = sorted((float(symbol(p, 1.0, kind)), float(symbol(p, -1.0, kind))))
                if abs(ends[0] - lo) > 1e-12 or abs(ends[1] - hi) > 1e-12:
                    failures.append(f"{kind} p={p}: symbol(±1) = {ends}, stated [{lo:.6g}, {hi:.6g}]")
                ev = toeplitz_spectrum(p, kind, 200).eigenvalues
                if ev.min() < lo - 1e-9 or ev.max() > hi + 1e-9:
                    failures.append(f"{kind} p={p}: eigenvalues [{ev.min():.6g}, {ev.max():.6g}] "
                                    f"outside stated [{lo:.6g}, {hi:.6g}]")
        for kind in ("H", "K"):
            lo, hi = _stated_interval(2, kind)
            ev = toeplitz_spectrum(2, kind, 500).eigenvalues
            if abs(ev.min() - lo) > 0.01 * abs(lo) or abs(ev.max() - hi) > 0.01 * abs(hi):
                failures.append(f"{kind} p=2 N=500: extremes [{ev.min():.6g}, {ev.max():.6g}] "
                                f"vs stated [{lo:.6g}, {hi:.6g}]")
        d["note"] = "; ".join(failures)
        d["ok"] = not failures
    assert d["ok"], d["note"]
    assert d["elapsed"] < 30.0


def test_05_ramified_eigenvalue_exact():
    d = {}
    with criterion(5, 5.0, d):
        bad = []
        for p, f in EXACT_PAIRS:
            for chi in characters_mod(p, f):
                block = BruhatFunction.character_block(chi, 0)
                image = conductor_apply(block)
                eig = LogExact.log(p, f)
                if image.tail[1] != LogExact(0, 0, p):
                    bad.append((p, f, chi.char_index, "tail"))
                if image.central is not None and (image.central[1] != 0 or image.central[2] != LogExact(0, 0, p)):
                    bad.append((p, f, chi.char_index, "central"))
                covered = {t.ball for t in block.terms}
                for ball, value in image.regions:
                    if value != eig * bruhat_eval(block, ball.center):
                        bad.append((p, f, chi.char_index, ball))
                    covered.discard(ball)
                if covered:
                    bad.append((p, f, chi.char_index, "uncovered"))
        d["note"] = f"{len(bad)} mismatches" if bad else "exact"
        d["ok"] = not bad
    assert d["ok"], bad
    assert d["elapsed"] < 5.0


def test_06_conductor_integral_exact():
    d = {}
    with criterion(6, 5.0, d):
        cases = [characters_mod(p, f)[0] for p, f in EXACT_PAIRS]
        cases += [UnitaryCharacter.dirichlet(5, 1, k) for k in (1, 2, 3)]
        bad = [chi for chi in cases if conductor_integral(chi) != LogExact.log(chi.place.q, chi.f)]
        d["note"] = f"{len(cases)} characters, {len(bad)} mismatches"
        d["ok"] = not bad
    assert d["ok"], bad
    assert d["elapsed"] < 5.0


def test_07_route_agreement():
    d = {}
    with criterion(7, 120.0, d):
        chars = (
            UnitaryCharacter.unramified(Place.finite(2)),
            UnitaryCharacter.unramified(Place.finite(3)),
            UnitaryCharacter.dirichlet(3, 1, 1),
            UnitaryCharacter.real("plus"),
        )
        worst = 0.0
        bad = []
        for chi in chars:
            for g in BUMP_MATRIX:
                r = {route: weil_term(chi.place, chi, g, route) for route in ("spectral", "convolution", "closed")}
                for a, b in (("spectral", "convolution"), ("spectral", "closed"), ("convolution", "closed")):
                    gap = abs(r[a].value - r[b].value)
                    worst = max(worst, gap)
                    if gap > 1e-8 + r[a].tolerance + r[b].tolerance:
                        bad.append((chi.place.label(), g.center, g.log_half_width, a, b, gap))
        d["note"] = f"max pairwise gap {worst:.2e}"
        d["ok"] = not bad
    assert d["ok"], bad
    assert d["elapsed"] < 120.0


def _ih_functions(p: int):
    f = Fraction
    return (
        BruhatFunction.indicator(p, 1, 1),
        BruhatFunction.from_terms(p, [(f(1, p), 0, 2), (p, 2, -1), (p + 1, 1, f(1, 3))]),
        BruhatFunction.unit_indicator(p).scaled(-1) + BruhatFunction.indicator(p, f(1, p**2), -1),
    )


def test_08_ih_identity():
    d = {}
    with criterion(8, 30.0, d):
        rng = np.random.default_rng(20240611)
        points = rng.uniform(0.05, 0.95, 20) + 1j * rng.uniform(-15, 15, 20)
        chars = {
            2: (UnitaryCharacter.unramified(Place.finite(2)), UnitaryCharacter.unramified(Place.finite(2), 0.9),
                UnitaryCharacter.dirichlet(2, 2, 1)),
            3: (UnitaryCharacter.unramified(Place.finite(3)), UnitaryCharacter.dirichlet(3, 1, 1, tau=-0.6)),
        }
        worst = 0.0
        for p, chis in chars.items():
            for phi in _ih_functions(p):
                phi = phi.canonicalize()
                for chi in chis:
                    for s in points:
                        lhs, rhs = ih_pairing(phi, chi, s)
                        worst = max(worst, abs(lhs - rhs))
        d["note"] = f"max discrepancy {worst:.2e}"
        d["ok"] = worst < 1e-10
    assert d["ok"], d["note"]
    assert d["elapsed"] < 30.0


def test_09_multiplier():
    d = {}
    with criterion(9, 10.0, d):
        worst = 0.0
        for p in (2, 3, 5):
            chi = UnitaryCharacter.unramified(Place.finite(p))
            phis = (BruhatFunction.indicator(p), BruhatFunction.from_terms(p, []), BruhatFunction.indicator(p, 0, 1))
            for phi in phis:
                for tau in (0.0, 0.7, 2.1):
                    worst = max(worst, tate_multiplier_check(phi, chi, tau).discrepancy)
        d["note"] = f"max discrepancy {worst:.2e}"
        d["ok"] = worst < 1e-12
    assert d["ok"], d["note"]
    assert d["elapsed"] < 10.0


def test_10_explicit_formula():
    d = {}
    with criterion(10, 300.0, d):
        table = load_zeros()
        first = table.head(100)
        bad = []
        worst_ratio = 0.0
        for g in BUMP_MATRIX:
            r100 = explicit_report(g, first)
            r1000 = explicit_report(g, table)
            worst_ratio = max(worst_ratio, r1000.residual / r100.residual)
            if not r100.passes:
                bad.append((g.center, g.log_half_width, "bound", r100.residual, r100.zero_truncation_bound))
            if not r1000.residual < r100.residual:
                bad.append((g.center, g.log_half_width, "no shrink", r100.residual, r1000.residual))
        d["note"] = f"worst residual ratio 1000/100 zeros {worst_ratio:.2e}"
        d["ok"] = not bad
    assert d["ok"], bad
    assert d["elapsed"] < 300.0


def test_11_poisson():
    d = {}
    with criterion(11, 30.0, d):
        worst = max(poisson_check(u, g).discrepancy for u in (2.0, math.e, 10.0) for g in BUMP_MATRIX)
        d["note"] = f"max discrepancy {worst:.2e}"
        d["ok"] = worst < 1e-10
    assert d["ok"], d["note"]
    assert d["elapsed"] < 30.0


def _real_probes():
    R = Place.real()
    bump = ArchimedeanFunction(R, lambda x: np.where(np.abs(x - 0.3) < 1.2,
                                                     np.exp(-1 / np.maximum(1.44 - (np.asarray(x) - 0.3) ** 2, 1e-300)),
                                                     0.0), 1.5, (-0.9, 1.5))
    wave = ArchimedeanFunction(R, lambda x: np.exp(-np.asarray(x) ** 2) * np.cos(3 * np.asarray(x) - 0.4), None, (),
                               decay=4.0)
    return ArchimedeanFunction.unit_ball(R), ArchimedeanFunction.gaussian(R), bump, wave


def _complex_probes():
    C = Place.complex()
    ring = ArchimedeanFunction(C, lambda z: ((np.abs(z) <= 2) & (np.abs(z) >= 0.5)) * (1 + np.real(z)) + (np.abs(z) < 0.5),
                               2.0, (0.5, 2.0))
    return ArchimedeanFunction.unit_ball(C), ArchimedeanFunction.gaussian(C), ring


def test_12_omega_independence():
    d = {}
    with criterion(12, 30.0, d):
        bad = []
        f = Fraction
        for p in (2, 3, 5):
            place = Place.finite(p)
            probes = (
                BruhatFunction.indicator(p),
                BruhatFunction.from_terms(p, [(0, 2, 3), (f(1, p), -1, -1), (1, 1, f(2, 7))]),
                BruhatFunction.indicator(p, 0, -2),
            )
            for phi in probes:
                vals = [g_apply(place, phi, o.tag) for o in omegas_for(place)]
                if any(v != vals[0] for v in vals[1:]):
                    bad.append(("Q_p", p, vals))
        worst = 0.0
        for place, probes in ((Place.real(), _real_probes()), (Place.complex(), _complex_probes())):
            for phi in probes:
                vals = [g_apply(place, phi, o.tag) for o in omegas_for(place)]
                spread = max(abs(v - vals[0]) for v in vals)
                worst = max(worst, spread)
                if spread > 1e-8:
                    bad.append((place.label(), spread))
        # G(ω) = -∫log|y|·ℱω(y)dy on the Fourier side: ℱ(sinc) = 1 on |y| <= 1/2, ℱ(sinc²) = (1 - |y|)_+
        tags = {o.tag: o for o in omegas_for(Place.real())}
        g_sinc = -2 * float(mpmath.quad(mpmath.log, [0, 0.5]))
        g_sinc2 = -2 * float(mpmath.quad(lambda y: mpmath.log(y) * (1 - y), [0, 1]))
        for tag, oracle, closed in (("real-sinc", g_sinc, 1 + math.log(2)), ("real-sinc2", g_sinc2, 1.5)):
            if abs(tags[tag].g_constant() - oracle) > 1e-12 or abs(oracle - closed) > 1e-12:
                bad.append((tag, tags[tag].g_constant(), oracle))
        d["note"] = f"max archimedean spread {worst:.2e}"
        d["ok"] = not bad
    assert d["ok"], bad
    assert d["elapsed"] < 30.0
