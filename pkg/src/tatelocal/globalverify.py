"""Desk-scale checks of the explicit formula for ζ and of Poisson summation.

Zero side:  Z(g) = ĝ(0) + ĝ(1) - Σ_n 2·Re ĝ(1/2 + iγ_n)
Place side: W(g) = Σ_p W_p(1, g) + W_∞(1, g)

Table zeros are assumed to lie on the critical line.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import SupportTooWideError, ZeroTableError
from .localfield.characters import UnitaryCharacter
from .localfield.padic import is_prime
from .localfield.place import Place
from .numerics import _require_compact, mellin_envelope, mellin_hat_many
from .weil.terms import weil_term

MAX_SUPPORT = 1e4
REPORT_SLACK = 1e-6
DEFAULT_ZEROS = "zeta_zeros_1000.txt"


@dataclass(frozen=True)
class ZeroTable:
    ordinates: tuple[float, ...]
    source: str
    count: int

    def head(self, n: int) -> ZeroTable:
        if n < 1:
            raise ValueError("a zero table needs at least one ordinate")
        return ZeroTable(self.ordinates[:n], self.source, min(n, self.count))


def load_zeros(path=None) -> ZeroTable:
    """Parse a file of ascending positive ordinates, one per line ('#' comments)."""
    if path is None:
        text = resources.files("tatelocal.data").joinpath(DEFAULT_ZEROS).read_text(encoding="utf-8")
        source = f"package:{DEFAULT_ZEROS}"
    else:
        text = Path(path).read_text(encoding="utf-8")
        source = str(path)
    values: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            x = float(line)
        except ValueError:
            raise ZeroTableError(f"cannot parse ordinate {line!r}", lineno) from None
        if not math.isfinite(x) or x <= 0:
            raise ZeroTableError(f"ordinate must be positive and finite, got {line!r}", lineno)
        if values and x <= values[-1]:
            raise ZeroTableError(f"ordinates must be strictly ascending ({x} after {values[-1]})", lineno)
        values.append(x)
    if not values:
        raise ZeroTableError("zero table is empty", None)
    return ZeroTable(tuple(values), source, len(values))


def _fsum_complex(z: np.ndarray) -> complex:
    return complex(math.fsum(z.real), math.fsum(z.imag))


def _is_zero_function(g) -> bool:
    return all(p.amplitude == 0 for p in g.pieces())


def zero_truncation_bound(g, T: float) -> float:
    """Bound for Σ over zeros above T of 2|ĝ(1/2+iγ)|.

    Per unit height: at most (1/2π)log(t/2π) + 1 zeros, each weighted by
    the envelope supremum on the interval (the envelope decreases in τ).
    """
    if _is_zero_function(g):
        return 0.0
    total, t = [], float(T)
    while True:
        count = max(math.log(t / (2 * math.pi)), 0.0) / (2 * math.pi) + 1
        term = 2 * float(mellin_envelope(g, 0.5, t)) * count
        total.append(term)
        if term < 1e-18 * max(sum(total), 1e-300) or term < 1e-30:
            break
        t += 1.0
    return math.fsum(total)


def z_side(g, zeros: ZeroTable) -> tuple[float, float]:
    """(ĝ(0) + ĝ(1) - Σ 2Re ĝ(1/2+iγ_n), truncation bound)."""
    _require_compact(g)
    if _is_zero_function(g):
        return 0.0, 0.0
    poles = mellin_hat_many(g, np.array([0.0, 1.0], dtype=complex))
    ords = np.asarray(zeros.ordinates, dtype=float)
    vals = mellin_hat_many(g, 0.5 + 1j * ords)
    terms = [poles[0].real, poles[1].real] + list(-2 * vals.real)
    return math.fsum(terms), zero_truncation_bound(g, zeros.ordinates[-1])


def _primes_below(X: float) -> list[int]:
    return [n for n in range(2, int(X) + 1) if is_prime(n)]


def w_side(g) -> tuple[float, list[tuple[str, float]]]:
    """Σ of local terms (finite closed prime-power sums, real spectral route)."""
    _require_compact(g)
    if _is_zero_function(g):
        return 0.0, []
    lo, hi = g.support()
    X = max(hi, 1 / lo)
    if X >= MAX_SUPPORT:
        raise SupportTooWideError(f"support must lie in (1/X, X) with X < {MAX_SUPPORT:g}")
    breakdown: list[tuple[str, float]] = []
    for p in _primes_below(X):
        place = Place.finite(p)
        w = weil_term(place, UnitaryCharacter.unramified(place), g, "closed").value.real
        breakdown.append((place.label(), w))
    real = Place.real()
    breakdown.append((real.label(), weil_term(real, UnitaryCharacter.unramified(real), g, "spectral").value.real))
    return math.fsum(v for _, v in breakdown), breakdown


@dataclass(frozen=True)
class ExplicitFormulaReport:
    z_side: float
    w_side: float
    residual: float
    zero_truncation_bound: float
    prime_bound: int
    per_place: list = field(default_factory=list)
    zero_count: int = 0
    zero_source: str = ""
    density: str = "(1/2π)·log(T/2π) + 1 zeros per unit height"

    @property
    def passes(self) -> bool:
        return self.residual <= self.zero_truncation_bound + REPORT_SLACK

    def to_dict(self) -> dict:
        d = asdict(self)
        d["per_place"] = [[name, value] for name, value in self.per_place]
        d["passes"] = self.passes
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> ExplicitFormulaReport:
        d = {k: v for k, v in d.items() if k != "passes"}
        d["per_place"] = [tuple(x) for x in d.get("per_place", [])]
        return cls(**d)


def explicit_report(g, zeros: ZeroTable) -> ExplicitFormulaReport:
    z, bound = z_side(g, zeros)
    w, breakdown = w_side(g)
    if _is_zero_function(g):
        X = 0
    else:
        lo, hi = g.support()
        X = int(math.floor(max(hi, 1 / lo)))
    return ExplicitFormulaReport(z, w, abs(z - w), bound, X, breakdown, zeros.count, zeros.source)


@dataclass(frozen=True)
class PoissonCheck:
    lhs: float
    rhs: float
    discrepancy: float
    terms: int
    tail_bound: float


def poisson_check(u: float, g, tol: float = 1e-13) -> PoissonCheck:
    """log u·Σ_k g(u^k) against Σ_j ĝ(2πij/log u), truncated where the envelope is below tol."""
    if not u > 1:
        raise ValueError("u must be greater than 1")
    _require_compact(g)
    if _is_zero_function(g):
        return PoissonCheck(0.0, 0.0, 0.0, 0, 0.0)
    lu = math.log(u)
    lo, hi = g.support()
    ks = range(math.floor(math.log(lo) / lu), math.ceil(math.log(hi) / lu) + 1)
    lhs = lu * math.fsum(float(g(u**k)) for k in ks)
    step = 2 * math.pi / lu
    J = 1
    while True:
        tail = 2 * math.fsum(float(mellin_envelope(g, 0.0, j * step)) for j in range(J + 1, J + 200))
        if tail < tol:
            break
        J *= 2
    js = np.arange(-J, J + 1)
    vals = mellin_hat_many(g, 1j * step * js)
    rhs = math.fsum(vals.real)
    return PoissonCheck(lhs, rhs, abs(lhs - rhs), len(js), tail)
