"""Schwartz–Bruhat functions on Q_p as finite sums of ball indicators.

A ball B(c, k) = {x : |x - c|_p <= p^{-k}} is keyed by (residue(c, k), k).
Coefficients may be ints, Fractions, Cyclotomic numbers or complex floats;
the exact types stay exact through every operation here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import NotCanonicalError, SupportAtZeroError
from .characters import UnitaryCharacter
from .cyclotomic import Cyclotomic
from .padic import INF_VALUATION, as_fraction, is_prime, residue, unit_part, valuation


def is_zero_coeff(c) -> bool:
    if isinstance(c, Cyclotomic):
        return c.is_zero()
    return c == 0


def simplify_coeff(c):
    if isinstance(c, Cyclotomic):
        r = c.rational_value()
        return r if r is not None else c
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


def coeff_to_json(c):
    c = simplify_coeff(c)
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, Cyclotomic):
        return c.to_dict()
    c = complex(c)
    return [c.real, c.imag]


def coeff_from_json(c):
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        return complex(c)
    if isinstance(c, dict):
        return simplify_coeff(Cyclotomic.from_dict(c))
    if isinstance(c, (list, tuple)) and len(c) == 2:
        return complex(float(c[0]), float(c[1]))
    raise ValueError(f"unrecognized coefficient {c!r}")


@dataclass(frozen=True)
class Ball:
    center: Fraction
    k: int

    def contains(self, x, p: int) -> bool:
        return valuation(as_fraction(x) - self.center, p) >= self.k

    def is_central(self, p: int) -> bool:
        return self.center == 0

    def volume(self, p: int) -> Fraction:
        return Fraction(1, p**self.k) if self.k >= 0 else Fraction(p ** (-self.k))


@dataclass(frozen=True)
class BruhatTerm:
    ball: Ball
    coeff: object


@dataclass(frozen=True)
class BruhatFunction:
    """Σ coeff·1_{B(center, k)} on Q_p."""

    p: int
    terms: tuple[BruhatTerm, ...] = ()
    canonical: bool = False

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")

    @classmethod
    def from_terms(cls, p: int, items) -> BruhatFunction:
        """Build from (center, k, coeff) triples."""
        terms = []
        for center, k, coeff in items:
            k = int(k)
            terms.append(BruhatTerm(Ball(residue(as_fraction(center), p, k), k), simplify_coeff(coeff)))
        return cls(p, tuple(terms))

    @classmethod
    def indicator(cls, p: int, center=0, k: int = 0, coeff=1) -> BruhatFunction:
        return cls.from_terms(p, [(center, k, coeff)])

    @classmethod
    def unit_indicator(cls, p: int) -> BruhatFunction:
        """1 on |x| = 1."""
        return cls.from_terms(p, [(0, 0, 1), (0, 1, -1)]).canonicalize()

    @classmethod
    def character_block(cls, chi: UnitaryCharacter, valuation_: int = 0) -> BruhatFunction:
        """x ↦ χ₀^{-1}(unit(x)) on the shell |x| = p^{-v}, exact values."""
        p, f = chi.place.q, max(chi.f, 1)
        items = []
        for u in range(1, p**f):
            if u % p:
                val = chi.inverse().unit_value_exact(u) if chi.is_ramified else Fraction(1)
                items.append((Fraction(u) * Fraction(p) ** valuation_, valuation_ + f, val))
        return cls.from_terms(p, items).canonicalize()

    # --- evaluation -------------------------------------------------------

    def __call__(self, x):
        return bruhat_eval(self, x)

    def __add__(self, other: BruhatFunction) -> BruhatFunction:
        if other.p != self.p:
            raise ValueError("cannot add Bruhat functions over different primes")
        return BruhatFunction(self.p, self.terms + other.terms)

    def scaled(self, c) -> BruhatFunction:
        return BruhatFunction(self.p, tuple(BruhatTerm(t.ball, simplify_coeff(t.coeff * c)) for t in self.terms),
                              self.canonical)

    def __neg__(self) -> BruhatFunction:
        return self.scaled(Fraction(-1))

    def __sub__(self, other: BruhatFunction) -> BruhatFunction:
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.canonicalize().terms

    def value_at_zero(self):
        return bruhat_eval(self, 0)

    def central_term(self) -> BruhatTerm | None:
        """The ball around 0 of a canonical function, if any."""
        self.require_canonical()
        for t in self.terms:
            if t.ball.center == 0:
                return t
        return None

    def require_canonical(self) -> None:
        if not self.canonical and self.terms:
            raise NotCanonicalError("operation needs a canonical Bruhat function; call canonicalize() first")

    def dilate(self, t) -> BruhatFunction:
        """φ_t(x) = φ(t·x)."""
        t = as_fraction(t)
        if t == 0:
            raise ValueError("dilation by 0")
        vt = valuation(t, self.p)
        items = [(term.ball.center / t, term.ball.k - vt, term.coeff) for term in self.terms]
        out = BruhatFunction.from_terms(self.p, items)
        return out.canonicalize() if self.canonical else out

    def canonicalize(self, central_exponent: int | None = None) -> BruhatFunction:
        return bruhat_canonicalize(self, central_exponent)

    def max_radius_exponent(self) -> int:
        return max((t.ball.k for t in self.terms), default=0)

    def fourier(self) -> BruhatFunction:
        return bruhat_fourier(self)

    # --- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {"p": self.p, "terms": [{"center": str(t.ball.center), "k": t.ball.k, "coeff": coeff_to_json(t.coeff)}
                                       for t in self.terms]}

    @classmethod
    def from_dict(cls, d: dict) -> BruhatFunction:
        p = int(d["p"])
        items = [(Fraction(t["center"]), int(t["k"]), coeff_from_json(t.get("coeff", "1"))) for t in d["terms"]]
        return cls.from_terms(p, items)


def bruhat_eval(phi: BruhatFunction, x):
    """Pointwise value; exact for exact coefficients."""
    x = as_fraction(x)
    total = Fraction(0)
    for t in phi.terms:
        if t.ball.contains(x, phi.p):
            total = total + t.coeff
    return simplify_coeff(total)


def _relation(ball: Ball, b: Fraction, k: int, p: int) -> str:
    # how a term ball sits relative to the region B(b, k)
    if ball.k <= k:
        return "contains" if residue(b, p, ball.k) == ball.center else "disjoint"
    return "inside" if residue(ball.center, p, k) == b else "disjoint"


def bruhat_canonicalize(phi: BruhatFunction, central_exponent: int | None = None) -> BruhatFunction:
    """Equivalent disjoint form where every ball is central or has |x| constant.

    The result is the coarsest such partition (so the operation is
    idempotent).  With ``central_exponent`` = K the ball around 0 is split
    into shells until the central ball is B(0, K) or smaller.
    """
    p = phi.p
    terms = [t for t in phi.terms if not is_zero_coeff(t.coeff)]
    if not terms:
        return BruhatFunction(p, (), True)
    top = min(min(t.ball.k for t in terms),
              min((valuation(t.ball.center, p) for t in terms if t.ball.center != 0), default=INF_VALUATION))
    out: list[BruhatTerm] = []
    stack = [(Fraction(0), top, terms)]
    while stack:
        b, k, active = stack.pop()
        value = Fraction(0)
        inside = []
        for t in active:
            rel = _relation(t.ball, b, k, p)
            if rel == "contains":
                value = value + t.coeff
            elif rel == "inside":
                inside.append(t)
        if not inside and not (b == 0 and central_exponent is not None and k < central_exponent):
            value = simplify_coeff(value)
            if not is_zero_coeff(value):
                out.append(BruhatTerm(Ball(b, k), value))
            continue
        live = [t for t in active if _relation(t.ball, b, k, p) != "disjoint"]
        step = Fraction(p) ** k
        for j in range(p - 1, -1, -1):
            stack.append((b + j * step, k + 1, live))
    out.sort(key=lambda t: (t.ball.k, t.ball.center))
    return BruhatFunction(p, tuple(out), True)


def _lambda_exact(x: Fraction, p: int) -> Cyclotomic | Fraction:
    # λ(x) = exp(2πi {x}_p)
    frac = residue(x, p, 0)
    if frac == 0:
        return Fraction(1)
    return Cyclotomic.root(frac.denominator, frac.numerator)


def bruhat_fourier(phi: BruhatFunction) -> BruhatFunction:
    """ℱφ(y) = ∫ φ(x) λ(-xy) dx, exact (self-dual measure, vol Z_p = 1)."""
    p = phi.p
    items = []
    for t in phi.terms:
        a, k = t.ball.center, t.ball.k
        vol = t.ball.volume(p)
        va = valuation(a, p)
        if va >= k:
            items.append((Fraction(0), -k, t.coeff * vol))
            continue
        e = -va
        for j in range(p ** (e + k)):
            c = Fraction(j) * Fraction(p) ** (-k)
            items.append((c, e, simplify_coeff(t.coeff * vol * _lambda_exact(-a * c, p))))
    return BruhatFunction.from_terms(p, items).canonicalize()


@dataclass(frozen=True)
class LaurentPolynomial:
    """Σ c_n X^n with finitely many exact or complex coefficients."""

    coeffs: tuple[tuple[int, object], ...] = ()

    @classmethod
    def from_dict(cls, d: dict) -> LaurentPolynomial:
        items = sorted((int(n), simplify_coeff(c)) for n, c in d.items() if not is_zero_coeff(c))
        return cls(tuple(items))

    def as_dict(self) -> dict[int, object]:
        return dict(self.coeffs)

    def __call__(self, X) -> complex:
        return complex(sum(complex(c if not isinstance(c, Fraction) else float(c)) * X**n for n, c in self.coeffs))

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        d = self.as_dict()
        for n, c in other.coeffs:
            d[n] = d.get(n, Fraction(0)) + c
        return LaurentPolynomial.from_dict(d)

    def scaled(self, c) -> LaurentPolynomial:
        return LaurentPolynomial.from_dict({n: v * c for n, v in self.coeffs})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        a, b = self.as_dict(), other.as_dict()
        if set(a) != set(b):
            return False
        return all(Cyclotomic._coerce(a[n]) == Cyclotomic._coerce(b[n]) if not isinstance(a[n], complex)
                   and not isinstance(b[n], complex) else complex(a[n]) == complex(b[n]) for n in a)

    def __hash__(self) -> int:
        return hash(tuple(n for n, _ in self.coeffs))


def ball_character_integral(ball: Ball, chi: UnitaryCharacter, p: int):
    """∫_ball χ₀^{-1}(unit(x)) dx for a non-central ball (the |x|^{-s} factor excluded)."""
    v = valuation(ball.center, p)
    depth = ball.k - v  # the ball is p^v·(u + p^depth Z_p)
    vol = ball.volume(p)
    if not chi.is_ramified:
        return vol
    if chi.f > depth:
        return Fraction(0)
    return simplify_coeff(chi.inverse().unit_value_exact(unit_part(ball.center, p)) * vol)


def shell_mellin(phi: BruhatFunction, chi: UnitaryCharacter) -> LaurentPolynomial:
    """∫ φ(x) χ^{-1}(x) |x|^{-s} dx as a Laurent polynomial in X = q^{-(s+iτ)}.

    The twist τ of χ is folded into X, so only χ₀ enters the coefficients.
    """
    phi.require_canonical()
    p = phi.p
    if chi.place.q != p:
        raise ValueError("character and function live over different primes")
    coeffs: dict[int, object] = {}
    for t in phi.terms:
        if t.ball.center == 0:
            raise SupportAtZeroError("shell_mellin needs a function vanishing near 0")
        v = valuation(t.ball.center, p)
        integral = ball_character_integral(t.ball, chi, p)
        # |x|^{-s} = p^{v s} = X^{-v}
        coeffs[-v] = coeffs.get(-v, Fraction(0)) + t.coeff * integral
    return LaurentPolynomial.from_dict(coeffs)


def shell_mass(p: int, k: int) -> Fraction:
    """dx-volume of the shell |x| = p^{-k}."""
    return Fraction(p - 1, p) * (Fraction(1, p**k) if k >= 0 else Fraction(p ** (-k)))


