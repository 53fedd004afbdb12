"""Precision-explicit arbitrary-precision numerics for ladder verification.

Values are mpmath reals/complexes (binary mantissa + exponent), but unlike
plain mpmath every function here takes its working precision in bits as an
explicit argument; nothing depends on the ambient ``mpmath.mp`` context, and
results are rounded back to the requested precision before being returned.

Error model: a result returned at ``prec`` bits differs from the exact value
by at most ``2**(GUARD_BITS - prec)`` in relative terms.  Internally every
routine carries ``GUARD_BITS`` extra working bits and truncates series at
``2**-(workprec + 8)``, so the practical error sits near ``2**-prec``; the
bound above is the documented guarantee, and the test suite re-checks values
at doubled precision instead of doing interval arithmetic.

The dilogarithm is evaluated from its defining series only for arguments of
modulus <= 1/2; everything else is moved there through the complement,
duplication and inversion formulas (real case), with a logarithmic series
around z = 1 covering the complex annulus those three cannot reach.  The
complex branch is the principal one, cut along [1, oo); real arguments above
the cut take the value of the lower lip (the side selected by the principal
logarithm of a negative real).
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath as mp

GUARD_BITS = 16

_MIN_PREC = 32


def bits_for_digits(digits: int) -> int:
    """Bits of binary precision needed to carry `digits` decimal digits."""
    return int(math.ceil(digits * math.log2(10)))


def round_to(value, prec: int):
    """Round an mpmath real/complex to `prec` bits."""
    with mp.workprec(prec):
        return +value


def as_mpf(x) -> mp.mpf:
    """Convert to mpf under the current context; Fractions go through num/den."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    return mp.mpf(x)


def _check_prec(prec: int) -> None:
    if prec < _MIN_PREC:
        raise ValueError(f"precision must be at least {_MIN_PREC} bits, got {prec}")


def const_pi(prec: int) -> mp.mpf:
    """pi at `prec` bits."""
    _check_prec(prec)
    with mp.workprec(prec + GUARD_BITS):
        v = +mp.pi
    return round_to(v, prec)


def const_zeta2(prec: int) -> mp.mpf:
    """zeta(2) = pi^2/6 at `prec` bits."""
    _check_prec(prec)
    with mp.workprec(prec + GUARD_BITS):
        v = mp.pi**2 / 6
    return round_to(v, prec)


def const_zeta(m: int, prec: int) -> mp.mpf:
    """zeta(m) for integer m >= 2 at `prec` bits."""
    if m < 2:
        raise ValueError("zeta(m) requires m >= 2 here")
    _check_prec(prec)
    with mp.workprec(prec + GUARD_BITS):
        v = mp.zeta(m)
    return round_to(v, prec)


def golden_ratio(prec: int) -> mp.mpf:
    """(sqrt(5) + 1)/2 at `prec` bits."""
    _check_prec(prec)
    with mp.workprec(prec + GUARD_BITS):
        v = (mp.sqrt(5) + 1) / 2
    return round_to(v, prec)


def to_decimal(value, digits: int) -> str:
    """Round-to-nearest decimal rendering with `digits` significant digits."""
    if digits < 1:
        raise ValueError("digits must be positive")
    return mp.nstr(value, digits)


# ---------------------------------------------------------------------------
# dilogarithm
# ---------------------------------------------------------------------------

def _li2_series(z):
    # defining series; caller guarantees |z| <= 1/2, so the tail after a term
    # below tol is itself below tol (ratio <= 1/2)
    tol = mp.mpf(2) ** (-(mp.mp.prec + 8))
    total = z
    zk = z
    k = 2
    while True:
        zk = zk * z
        term = zk / (k * k)
        total += term
        if abs(term) < tol:
            return total
        k += 1


def _li2_real_core(z):
    if z == 0:
        return mp.mpf(0)
    if z == 1:
        return mp.pi**2 / 6
    if z < -1:
        # inversion maps (-oo, -1) into (-1, 0)
        return -mp.pi**2 / 6 - mp.log(-z) ** 2 / 2 - _li2_real_core(1 / z)
    if abs(z) <= mp.mpf(1) / 2:
        return _li2_series(z)
    if z < 0:
        # duplication; both pieces land in series or complement range
        return _li2_real_core(z * z) / 2 - _li2_real_core(-z)
    # complement for (1/2, 1)
    return mp.pi**2 / 6 - mp.log(z) * mp.log(1 - z) - _li2_series(1 - z)


def li2_real(z, prec: int) -> mp.mpf:
    """Real dilogarithm Li_2(z) for z <= 1 (z < -1 reached by inversion)."""
    _check_prec(prec)
    with mp.workprec(prec + GUARD_BITS):
        zv = as_mpf(z)
        if zv > 1:
            raise ValueError("li2_real needs z <= 1; use li2_complex past the cut")
        v = _li2_real_core(zv)
    return round_to(v, prec)


def _li2_log_series(u):
    # Li2(z) = sum_{k>=0} B_k u^{k+1}/(k+1)! with u = -log(1-z); convergent for
    # |u| < 2*pi and only reached with |u| < 2 by the branch logic below
    if abs(u) > 5:
        raise ValueError("log-series argument outside its convergence region")
    tol = mp.mpf(2) ** (-(mp.mp.prec + 8))
    total = u - u * u / 4
    u2 = u * u
    upow = u * u2
    fact = mp.mpf(6)
    k = 2
    while True:
        term = mp.bernoulli(k) * upow / fact
        total += term
        if abs(term) < tol:
            return total
        upow *= u2
        fact *= (k + 2) * (k + 3)
        k += 2


def _li2_complex_core(z):
    if z == 0:
        return mp.mpc(0)
    if z == 1:
        return mp.mpc(mp.pi**2 / 6)
    if abs(z) > 1:
        # inversion with the principal log; for real z > 1 this lands on the
        # lower lip of the cut, since log(-z) carries +i*pi there
        return -mp.pi**2 / 6 - mp.log(-z) ** 2 / 2 - _li2_complex_core(1 / z)
    if abs(z) <= mp.mpf(1) / 2:
        return _li2_series(z)
    if abs(1 - z) <= mp.mpf(1) / 2:
        return mp.pi**2 / 6 - mp.log(z) * mp.log(1 - z) - _li2_series(1 - z)
    return _li2_log_series(-mp.log(1 - z))


def li2_complex(z, prec: int) -> mp.mpc:
    """Principal-branch complex dilogarithm, cut along [1, oo)."""
    _check_prec(prec)
    with mp.workprec(prec + GUARD_BITS + 8):
        zv = mp.mpc(z)
        v = _li2_complex_core(zv)
    return round_to(v, prec)


def li2_reduction_path(z) -> str:
    """Name the reduction used by li2_complex for a given argument.

    Diagnostic only; mirrors the dispatch in the evaluator.
    """
    z = mp.mpc(z)
    if z == 0 or z == 1:
        return "exact endpoint"
    if abs(z) > 1:
        return "inversion to 1/z (principal log(-z); real z>1 takes the lower lip of the cut)"
    if abs(z) <= 0.5:
        return "defining series (|z| <= 1/2)"
    if abs(1 - z) <= 0.5:
        return "complement to 1-z, then defining series"
    return "logarithmic series around z=1 (principal log(1-z))"


# ---------------------------------------------------------------------------
# general-order polylogarithm, Rogers form, Legendre chi
# ---------------------------------------------------------------------------

def _li_n_series(n, z):
    # |z| < 1; tail after the k-th term is below |term| * |z|/(1-|z|)
    tol = mp.mpf(2) ** (-(mp.mp.prec + 8))
    factor = abs(z) / (1 - abs(z))
    total = z
    zk = z
    k = 2
    while True:
        zk = zk * z
        term = zk / mp.mpf(k) ** n
        total += term
        if abs(term) * factor < tol:
            return total
        k += 1


def li_n(n: int, z, prec: int) -> mp.mpf:
    """Li_n(z) for integer n >= 1 and real |z| <= 1; Li_1(1) diverges."""
    if n < 1:
        raise ValueError("li_n requires n >= 1")
    _check_prec(prec)
    with mp.workprec(prec + GUARD_BITS):
        zv = as_mpf(z)
        if abs(zv) > 1:
            raise ValueError("li_n requires |z| <= 1")
        if n == 1:
            if zv == 1:
                raise ValueError("Li_1(1) diverges (harmonic series)")
            v = -mp.log(1 - zv)
        elif zv == 1:
            v = mp.zeta(n)
        elif zv == -1:
            v = -(1 - mp.mpf(2) ** (1 - n)) * mp.zeta(n)
        elif n == 2:
            v = _li2_real_core(zv)
        else:
            v = _li_n_series(n, zv)
    return round_to(v, prec)


def rogers_l(x, prec: int) -> mp.mpf:
    """Rogers dilogarithm L(x) = Li_2(x) + log(x)log(1-x)/2 on [0, 1].

    Endpoints are the continuous limits L(0) = 0 and L(1) = zeta(2); the
    log product has removable singularities there.
    """
    _check_prec(prec)
    with mp.workprec(prec + GUARD_BITS):
        xv = as_mpf(x)
        if xv < 0 or xv > 1:
            raise ValueError("rogers_l is defined on [0, 1]")
        if xv == 0:
            v = mp.mpf(0)
        elif xv == 1:
            v = mp.pi**2 / 6
        else:
            v = _li2_real_core(xv) + mp.log(xv) * mp.log(1 - xv) / 2
    return round_to(v, prec)


def chi2(z, prec: int) -> mp.mpf:
    """Legendre chi function chi_2(z) = (Li_2(z) - Li_2(-z))/2 for |z| <= 1."""
    _check_prec(prec)
    with mp.workprec(prec + GUARD_BITS):
        zv = as_mpf(z)
        if abs(zv) > 1:
            raise ValueError("chi2 requires |z| <= 1")
        v = (_li2_real_core(zv) - _li2_real_core(-zv)) / 2
    return round_to(v, prec)
