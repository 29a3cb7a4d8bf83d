"""Transform triangle tests.

The load-bearing checks are cross-path: the grouped lattice sums against
naive enumeration, against the double-sum kernels, and against a third
derivation of the cumulants through formal series division (the log
derivative of the coefficient generating series), which shares no code
with the lattice sums at all.
"""

import json
import random
from fractions import Fraction
from math import factorial

import pytest

from finfree import (
    JOIN_FORM_SIGN,
    CumulantVector,
    MonicPoly,
    SetPartition,
    block_size_product,
    coefficients_from_cumulants,
    coefficients_from_moments,
    cumulant_from_moments,
    cumulants_from_coefficients,
    cumulants_from_moments,
    enumerate_partitions,
    falling,
    moment_from_cumulants,
    moments,
    moments_from_coefficients,
    moments_from_cumulants,
    p_sigma,
    p_sigma_defining_sum,
    p_sigma_join_form,
    q_sigma,
    rescale_cumulants,
    truncated_r_transform,
    x_power,
)
from finfree.errors import DomainError, InputFormatError, SizeCapError


def rand_poly(rng, d):
    a = [Fraction(1)]
    for _ in range(d):
        a.append(Fraction(rng.randint(-9, 9), rng.randint(1, 6)))
    return MonicPoly(d, tuple(a))


def series_cumulants(p):
    """kappa_n as coefficients of -(1/d) (log S)' with
    S(s) = sum_i (-d)^i a_i s^i / (d)_i, computed by series division.

    Independent derivation: no partitions involved.
    """
    d = p.d
    S = [
        Fraction(-d) ** i * p.a[i] / falling(Fraction(d), i)
        for i in range(d + 1)
    ]
    dS = [i * S[i] for i in range(1, d + 1)]  # S' up to order d-1
    # T = S'/S by long division, T_k = (dS_k - sum_{j<k} T_j S_{k-j}) / S_0
    T = []
    for k in range(d):
        acc = dS[k]
        for j in range(k):
            acc -= T[j] * S[k - j]
        T.append(acc)  # S_0 = 1
    return tuple(-t / d for t in T)


def test_hermite_d2_frozen():
    p = MonicPoly.from_plain_coefficients([1, 0, Fraction(-1, 2)])
    assert cumulants_from_coefficients(p).kappa == (Fraction(0), Fraction(1))


def test_first_two_cumulants_closed_form():
    rng = random.Random(23)
    for _ in range(40):
        d = rng.randint(2, 9)
        p = rand_poly(rng, d)
        k = cumulants_from_coefficients(p)
        m = moments(p, 2)
        assert k.kappa[0] == m[0]
        assert k.kappa[1] == Fraction(d, d - 1) * (m[1] - m[0] ** 2)


def test_grouped_equals_enumerate():
    rng = random.Random(31)
    for _ in range(12):
        d = rng.randint(1, 7)
        p = rand_poly(rng, d)
        assert cumulants_from_coefficients(p) == cumulants_from_coefficients(
            p, method="enumerate"
        )
        assert moments_from_coefficients(p, d).entries == moments_from_coefficients(
            p, d, method="enumerate"
        ).entries
        k = cumulants_from_coefficients(p)
        assert coefficients_from_cumulants(k) == coefficients_from_cumulants(
            k, method="enumerate"
        )
        m = moments_from_coefficients(p, d)
        assert coefficients_from_moments(m, d) == coefficients_from_moments(
            m, d, method="enumerate"
        )
    with pytest.raises(InputFormatError):
        cumulants_from_coefficients(p, method="fast")


def test_series_division_third_path():
    rng = random.Random(37)
    for _ in range(25):
        p = rand_poly(rng, rng.randint(1, 9))
        assert cumulants_from_coefficients(p).kappa == series_cumulants(p)


def test_round_trips_all_sides():
    rng = random.Random(41)
    for _ in range(15):
        d = rng.randint(1, 8)
        p = rand_poly(rng, d)
        k = cumulants_from_coefficients(p)
        m = moments_from_coefficients(p, d)
        assert coefficients_from_cumulants(k) == p
        assert coefficients_from_moments(m, d) == p
        assert cumulants_from_moments(m, d) == k
        assert moments_from_cumulants(k, d).entries == m.entries
        # the triangle commutes
        assert moments_from_cumulants(cumulants_from_moments(m, d), d).entries == m.entries


def test_moments_agree_with_newton_path():
    rng = random.Random(43)
    for _ in range(15):
        d = rng.randint(1, 7)
        p = rand_poly(rng, d)
        n = d + rng.randint(0, 4)
        assert moments_from_coefficients(p, n).entries == moments(p, n).entries
    # above the cap the lattice path delegates; values still match Newton
    p = rand_poly(rng, 4)
    assert moments_from_coefficients(p, 20).entries == moments(p, 20).entries


def test_moments_from_cumulants_past_degree():
    # kappa_j = 0 for j > d extends the sum; compare against Newton moments
    rng = random.Random(47)
    for _ in range(10):
        d = rng.randint(1, 6)
        p = rand_poly(rng, d)
        k = cumulants_from_coefficients(p)
        n = d + rng.randint(1, 3)
        assert moments_from_cumulants(k, n).entries == moments(p, n).entries


def test_kernel_large_d():
    # the sums run over P(n), so d far above the cap is fine
    m = [Fraction(0), Fraction(1), Fraction(1), Fraction(2)]
    v = cumulant_from_moments(m, 10**6, 4)
    assert abs(v - Fraction(0)) < Fraction(1, 10**5)  # free kappa_4 of these moments is 0
    with pytest.raises(DomainError):
        cumulant_from_moments(m, 3, 4)  # integer d below n
    with pytest.raises(DomainError):
        cumulant_from_moments([Fraction(1)], 5, 3)


def test_homogeneity_under_dilation():
    rng = random.Random(53)
    for _ in range(20):
        d = rng.randint(1, 7)
        p = rand_poly(rng, d)
        lam = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        kp = cumulants_from_coefficients(p).kappa
        kq = cumulants_from_coefficients(p.dilate(lam)).kappa
        for n in range(1, d + 1):
            assert kq[n - 1] == kp[n - 1] / lam**n


def test_translation_shifts_only_kappa_1():
    rng = random.Random(59)
    for _ in range(15):
        d = rng.randint(1, 7)
        p = rand_poly(rng, d)
        c = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        kp = cumulants_from_coefficients(p).kappa
        kq = cumulants_from_coefficients(p.translate(c)).kappa
        assert kq[0] == kp[0] - c
        assert kq[1:] == kp[1:]


def test_rescale_toggle():
    rng = random.Random(61)
    p = rand_poly(rng, 6)
    k = cumulants_from_coefficients(p)
    kt = rescale_cumulants(k)
    assert kt.variant == "rescaled"
    for n in range(1, 7):
        assert kt.kappa[n - 1] == falling(Fraction(6), n) / Fraction(6) ** n * k.kappa[n - 1]
    assert rescale_cumulants(kt) == k
    # rescaled input converts transparently
    assert coefficients_from_cumulants(kt) == p


def test_cumulant_vector_json():
    k = CumulantVector.make(3, ["0", "1", "-2/3"])
    again = CumulantVector.from_json(json.loads(json.dumps(k.to_json())))
    assert again == k
    assert again.variant == "standard"
    with pytest.raises(InputFormatError):
        CumulantVector.make(3, [1, 2])
    with pytest.raises(InputFormatError):
        CumulantVector.make(2, [1, 2], variant="other")


def test_truncated_r_transform():
    p = MonicPoly.from_plain_coefficients([1, 0, -1])
    r = truncated_r_transform(p)
    assert r.var == "s" and r.coeffs == (Fraction(0), Fraction(2))
    assert truncated_r_transform(x_power(5)).coeffs == ()


def test_size_caps():
    rng = random.Random(67)
    p = rand_poly(rng, 13)
    with pytest.raises(SizeCapError):
        cumulants_from_coefficients(p)
    with pytest.raises(SizeCapError):
        cumulant_from_moments([Fraction(1)] * 13, 13, 13)
    k = CumulantVector.make(4, [0, 1, 0, 0])
    with pytest.raises(SizeCapError):
        moments_from_cumulants(k, 13)


def test_p_sigma_agrees_with_defining_sum():
    for n in range(1, 7):
        for sig in enumerate_partitions(n):
            assert p_sigma(sig).coeffs == p_sigma_defining_sum(sig).coeffs


def test_p_sigma_smallest_cases():
    # P at the two-element lattice: (d)_1^2 1! - (d)_2 1! = d
    s = SetPartition.parse("{1|2}")
    assert p_sigma(s).coeffs == (Fraction(0), Fraction(1))
    assert p_sigma(SetPartition.parse("{1,2}")).coeffs == (Fraction(0), Fraction(1), Fraction(-1))


def test_join_form_sign():
    assert JOIN_FORM_SIGN == -1
    for n in range(1, 7):
        for sig in enumerate_partitions(n):
            got = p_sigma_join_form(sig)
            want = p_sigma(sig).scale(JOIN_FORM_SIGN)
            assert got.coeffs == want.coeffs, sig


def test_q_sigma_monic_with_expected_degree():
    for n in range(1, 8):
        for sig in enumerate_partitions(n):
            m = len(sig.blocks)
            P = p_sigma(sig)
            assert P.degree == n + 1 - m
            assert P.leading == Fraction(
                (-1) ** m * factorial(n - 1) * block_size_product(sig),
                factorial(n + 1 - m),
            )
            Q = q_sigma(sig)
            assert Q.degree == n + 1 - m and Q.leading == 1
