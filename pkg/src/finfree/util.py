"""Small shared pieces: exact rational I/O and dense univariate polynomials.

Rationals cross the package boundary as strings ("3", "-1/2"); internally
everything exact is a fractions.Fraction.  VarPoly is the exact polynomial
in a named indeterminate used for lattice polynomials in d, the truncated
R-transform in s, and the lattice characteristic polynomial in t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputFormatError


def parse_rational(text) -> Fraction:
    """Parse "num/den" or a bare integer/decimal string into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise InputFormatError(
            "refusing float %r for an exact slot; pass a string like '1/3'" % text
        )
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError("not a rational: %r" % (text,)) from exc


def format_rational(q: Fraction) -> str:
    """Render exactly: integers bare ("3"), everything else as "num/den"."""
    return str(Fraction(q))


@dataclass(frozen=True)
class VarPoly:
    """Dense exact polynomial in one named variable.

    coeffs are ascending; trailing zeros are trimmed; the zero polynomial
    has empty coeffs.
    """

    var: str
    coeffs: tuple

    @classmethod
    def make(cls, var, coeffs) -> "VarPoly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(var, tuple(cs))

    @classmethod
    def zero(cls, var) -> "VarPoly":
        return cls(var, ())

    @classmethod
    def constant(cls, var, c) -> "VarPoly":
        return cls.make(var, [c])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __add__(self, other: "VarPoly") -> "VarPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return VarPoly.make(self.var, out)

    def __neg__(self) -> "VarPoly":
        return VarPoly(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "VarPoly") -> "VarPoly":
        return self + (-other)

    def __mul__(self, other: "VarPoly") -> "VarPoly":
        if not self.coeffs or not other.coeffs:
            return VarPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return VarPoly.make(self.var, out)

    def scale(self, c) -> "VarPoly":
        c = Fraction(c)
        if c == 0:
            return VarPoly.zero(self.var)
        return VarPoly(self.var, tuple(x * c for x in self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> dict:
        return {"var": self.var, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "VarPoly":
        try:
            var = obj["var"]
            coeffs = obj["coeffs"]
        except (KeyError, TypeError) as exc:
            raise InputFormatError("VarPoly JSON needs 'var' and 'coeffs'") from exc
        return cls.make(var, [parse_rational(c) for c in coeffs])

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(format_rational(c))
            elif i == 1:
                parts.append("%s*%s" % (format_rational(c), self.var))
            else:
                parts.append("%s*%s^%d" % (format_rational(c), self.var, i))
        return " + ".join(parts)


def falling(x, n: int):
    """(x)_n = x(x-1)...(x-n+1), with (x)_0 = 1.  Exact on int/Fraction."""
    v = 1
    for i in range(n):
        v = v * (x - i)
    return v


def falling_poly(n: int, var: str = "d") -> VarPoly:
    """(var)_n as an exact VarPoly."""
    out = VarPoly.constant(var, 1)
    for i in range(n):
        out = out * VarPoly.make(var, [-i, 1])
    return out
