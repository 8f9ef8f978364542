"""Exact scalars a + b·log q."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Cyclotomic, exact_equal, to_complex


def _exact(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not exact scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, Cyclotomic)):
        if isinstance(x, Cyclotomic):
            r = x.rational_value()
            return r if r is not None else x
        return x
    raise TypeError(f"not an exact scalar: {x!r}")


@dataclass(frozen=True, eq=False)
class LogExact:
    """The number a + b·log q with exact a, b.

    a and b are Fractions in the common case; ramified computations may
    produce cyclotomic coefficients (character values), which are kept
    exact as well.
    """

    a: Fraction | Cyclotomic = Fraction(0)
    b: Fraction | Cyclotomic = Fraction(0)
    q: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _exact(self.a))
        object.__setattr__(self, "b", _exact(self.b))
        if self.q < 2:
            raise ValueError("log base must be an integer >= 2")

    @classmethod
    def log(cls, q: int, coeff=1) -> LogExact:
        return cls(Fraction(0), coeff, q)

    @classmethod
    def rational(cls, value, q: int = 2) -> LogExact:
        return cls(value, Fraction(0), q)

    def _check_base(self, other: LogExact) -> int:
        if self.q == other.q:
            return self.q
        if exact_equal(self.b, 0):
            return other.q
        if exact_equal(other.b, 0):
            return self.q
        raise ValueError(f"cannot combine log {self.q} with log {other.q}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return LogExact(self.a + other, self.b, self.q)
        if not isinstance(other, LogExact):
            return NotImplemented
        q = self._check_base(other)
        return LogExact(self.a + other.a, self.b + other.b, q)

    __radd__ = __add__

    def __neg__(self) -> LogExact:
        return LogExact(-self.a, -self.b, self.q)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, Cyclotomic)):
            return LogExact(self.a * c, self.b * c, self.q)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return LogExact(self.a / Fraction(c), self.b / Fraction(c), self.q)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = LogExact(other, 0, self.q)
        if not isinstance(other, LogExact):
            return NotImplemented
        try:
            self._check_base(other)
        except ValueError:
            return False
        return exact_equal(self.a, other.a) and exact_equal(self.b, other.b)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.q if not exact_equal(self.b, 0) else None))

    def is_zero(self) -> bool:
        return exact_equal(self.a, 0) and exact_equal(self.b, 0)

    def is_real(self) -> bool:
        return not isinstance(self.a, Cyclotomic) and not isinstance(self.b, Cyclotomic)

    def __float__(self) -> float:
        if not self.is_real():
            raise TypeError("LogExact with cyclotomic coefficients has no float value; use complex()")
        return float(self.a) + float(self.b) * math.log(self.q)

    def __complex__(self) -> complex:
        return to_complex(self.a) + to_complex(self.b) * math.log(self.q)

    def __repr__(self) -> str:
        return f"LogExact({self.a} + {self.b}*log {self.q})"

    def to_dict(self) -> dict:
        """CLI payload form; cyclotomic coefficients are serialized structurally."""

        def enc(x):
            return str(x) if isinstance(x, Fraction) else x.to_dict()

        val = complex(self)
        out = {"rational": enc(self.a), "log_coeff": enc(self.b), "base": self.q}
        out["float"] = val.real if self.is_real() else [val.real, val.imag]
        return out

    @classmethod
    def from_dict(cls, d: dict) -> LogExact:
        def dec(x):
            return Fraction(x) if isinstance(x, str) else Cyclotomic.from_dict(x)

        return cls(dec(d["rational"]), dec(d["log_coeff"]), int(d["base"]))
