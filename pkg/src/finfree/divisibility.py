"""Infinite divisibility: conditional positive definiteness of cumulant
sequences, the Hermite-uniqueness classification, real-rootedness thresholds
for fractional convolution powers, and the Cramer-failure construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .convolution import boxplus, boxplus_power
from .errors import DomainError
from .families import hermite_clt
from .partitions import DEFAULT_N_MAX
from .polynomial import MonicPoly, is_real_rooted
from .transforms import (
    CumulantVector,
    coefficients_from_cumulants,
    cumulants_from_coefficients,
    rescale_cumulants,
)


def _exact_psd(rows) -> bool:
    """Exact PSD test for a symmetric rational matrix: diagonal-pivot
    elimination.  A negative pivot, or a zero pivot with a nonzero row,
    certifies an indefinite direction; otherwise recurse on the Schur
    complement."""
    m = [list(r) for r in rows]
    while m:
        piv = m[0][0]
        if piv < 0:
            return False
        if piv == 0:
            if any(x != 0 for x in m[0]):
                return False
            m = [row[1:] for row in m[1:]]
            continue
        m = [
            [m[i][j] - m[i][0] * m[0][j] / piv for j in range(1, len(m))]
            for i in range(1, len(m))
        ]
    return True


def is_conditionally_positive_definite(seq) -> bool:
    """Whether the shifted Hankel form of kappa_1..kappa_d is PSD.

    Tests M_{ij} = kappa_{i+j} for 1 <= i, j <= floor(d/2), the largest
    square window a degree-d cumulant vector supports.  Exact: no floats,
    so boundary cases (Hermite) are decided correctly.
    """
    vals = tuple(Fraction(x) for x in seq)
    d = len(vals)
    if d < 2:
        raise DomainError("need at least two cumulants to test, got %d" % d)
    k = d // 2
    rows = [[vals[i + j + 1] for j in range(k)] for i in range(k)]
    return _exact_psd(rows)


@dataclass(frozen=True)
class IDReport:
    centered_normalized: MonicPoly
    cpd_standard: bool
    cpd_rescaled: bool
    higher_cumulants_zero: bool
    verdict: str

    def to_json(self) -> dict:
        return {
            "centered_normalized": self.centered_normalized.to_json(),
            "cpd_standard": self.cpd_standard,
            "cpd_rescaled": self.cpd_rescaled,
            "higher_cumulants_zero": self.higher_cumulants_zero,
            "verdict": self.verdict,
        }


def _rational_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def infinite_divisibility_report(
    p: MonicPoly, n_max: int = DEFAULT_N_MAX
) -> IDReport:
    """Classify a real-rooted polynomial: infinitely divisible iff, after
    centering, every cumulant of order >= 3 vanishes (the Hermite case, or
    x^d when kappa_2 = 0).

    Centering is the exact shift x -> x + kappa_1.  Scaling to kappa_2 = 1
    happens only when kappa_2 is a perfect rational square; zeroness of the
    higher cumulants is scale-invariant (homogeneity), so the verdict never
    depends on that.  Both conditional-positive-definiteness necessary
    conditions are reported alongside; for d = 1 they hold vacuously.
    """
    if is_real_rooted(p) == "no":
        raise DomainError("infinite divisibility is defined for real-rooted input")
    d = p.d
    k = cumulants_from_coefficients(p, n_max=n_max)
    q = p.translate(k.kappa[0]) if k.kappa[0] != 0 else p
    kq = cumulants_from_coefficients(q, n_max=n_max)
    if d >= 2 and kq.kappa[1] > 0:
        s = _rational_sqrt(kq.kappa[1])
        if s is not None and s != 1:
            q = q.dilate(s)  # kappa_n -> kappa_n / s^n, so kappa_2 -> 1
            kq = cumulants_from_coefficients(q, n_max=n_max)
    higher_zero = all(v == 0 for v in kq.kappa[2:])
    if d >= 2:
        cpd_std = is_conditionally_positive_definite(kq.kappa)
        cpd_res = is_conditionally_positive_definite(rescale_cumulants(kq).kappa)
    else:
        cpd_std = cpd_res = True
    verdict = "infinitely_divisible" if higher_zero else "not_infinitely_divisible"
    return IDReport(q, cpd_std, cpd_res, higher_zero, verdict)


def real_rooted_threshold(
    p: MonicPoly, t_max, steps: int = 16, n_max: int = DEFAULT_N_MAX
):
    """Smallest t found such that p^{boxplus s} has d distinct real roots for
    every sampled s >= t; None if no such t <= t_max shows up.

    Grid: t = 1/16, 1/8, ..., doubling up to t_max, then one bisection
    refinement (steps iterations) between the last failing and the first
    persistently passing grid point.
    """
    if all(v == 0 for v in p.a[1:]):
        raise DomainError("x^d is excluded: every convolution power is x^d")
    t_max = Fraction(t_max)
    if t_max <= 0:
        raise DomainError("t_max must be positive")

    def ok(t) -> bool:
        return is_real_rooted(
            boxplus_power(p, t, n_max=n_max), require_distinct=True
        ) == "yes"

    grid = []
    t = Fraction(1, 16)
    while t <= t_max:
        grid.append(t)
        t *= 2
    if not grid or not ok(grid[-1]):
        return None
    results = [ok(t) for t in grid[:-1]] + [True]
    first = len(grid) - 1
    while first > 0 and results[first - 1]:
        first -= 1
    if first == 0:
        return grid[0]
    lo, hi = grid[first - 1], grid[first]  # ok fails at lo, holds at hi
    for _ in range(steps):
        mid = (lo + hi) / 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class CramerPair:
    p_plus: MonicPoly
    p_minus: MonicPoly
    convolution: MonicPoly
    p_plus_real_rooted: bool
    p_minus_real_rooted: bool

    def to_json(self) -> dict:
        return {
            "p_plus": self.p_plus.to_json(),
            "p_minus": self.p_minus.to_json(),
            "convolution": self.convolution.to_json(),
            "p_plus_real_rooted": self.p_plus_real_rooted,
            "p_minus_real_rooted": self.p_minus_real_rooted,
        }


def cramer_counterexample(d: int, eps, n_max: int = DEFAULT_N_MAX) -> CramerPair:
    """p± with cumulants (0, 1, ±eps, 0, ..., 0) and their convolution.

    The convolution has cumulants (0, 2, 0, ..., 0), a sqrt(2)-dilate of the
    Hermite polynomial, hence real-rooted; for suitable eps > 0 the factors
    p± themselves are not, which is the failure of Cramer's theorem here.
    """
    if d < 3:
        raise DomainError("need d >= 3 to place a third cumulant")
    eps = Fraction(eps)
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    if eps == 0:
        h = hermite_clt(d)
        return CramerPair(h, h, boxplus(h, h), True, True)
    kap = [Fraction(0)] * d
    kap[1] = Fraction(1)
    kap[2] = eps
    p_plus = coefficients_from_cumulants(CumulantVector(d, tuple(kap)), n_max=n_max)
    kap[2] = -eps
    p_minus = coefficients_from_cumulants(CumulantVector(d, tuple(kap)), n_max=n_max)
    return CramerPair(
        p_plus,
        p_minus,
        boxplus(p_plus, p_minus),
        is_real_rooted(p_plus) == "yes",
        is_real_rooted(p_minus) == "yes",
    )
