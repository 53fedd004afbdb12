"""Special-function tests against independent oracles.

Oracle policy: where a brute-force computation is feasible, the expected
value is produced by a test-local direct summation that shares no code with
the implementation; elsewhere mpmath's own polylog/constants serve as an
independently implemented cross-check.
"""

import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diladder import numerics
from diladder.numerics import (
    GUARD_BITS,
    bits_for_digits,
    chi2,
    const_pi,
    const_zeta,
    const_zeta2,
    golden_ratio,
    li2_complex,
    li2_real,
    li_n,
    rogers_l,
)

PREC = 200
TOL = mp.mpf(2) ** (GUARD_BITS - PREC)


def brute_li2(z, terms=4000):
    """Direct defining-series summation; independent of the implementation."""
    with mp.workprec(PREC + 64):
        z = mp.mpf(z) if not isinstance(z, mp.mpc) else z
        total = mp.mpc(0) if isinstance(z, mp.mpc) else mp.mpf(0)
        zk = mp.mpf(1) if not isinstance(z, mp.mpc) else mp.mpc(1)
        for k in range(1, terms + 1):
            zk *= z
            total += zk / (k * k)
        return total


class TestConstants:
    def test_pi_value(self):
        assert mp.nstr(const_pi(64), 15) == "3.14159265358979"

    def test_pi_floor_self_consistent(self):
        # same integer part of pi * 10^50 at two precisions
        with mp.workprec(400):
            a = int(mp.floor(const_pi(200) * mp.mpf(10) ** 50))
            b = int(mp.floor(const_pi(400) * mp.mpf(10) ** 50))
        assert a == b

    def test_zeta2_is_li2_at_one(self):
        assert abs(li2_real(1, PREC) - const_zeta2(PREC)) < TOL

    def test_zeta2_against_series(self):
        # sum 1/k^2 with an integral tail bound ~ 1/N
        with mp.workprec(80):
            partial = mp.fsum(mp.mpf(1) / (k * k) for k in range(1, 200001))
        assert abs(const_zeta2(64) - partial) < mp.mpf("6e-6")

    def test_min_precision_rejected(self):
        with pytest.raises(ValueError):
            const_pi(16)

    def test_golden_ratio(self):
        phi = golden_ratio(PREC)
        assert abs(phi * phi - phi - 1) < TOL
        assert mp.nstr(phi, 11) == "1.6180339887"
        assert abs(1 / phi - (phi - 1)) < TOL

    def test_decimal_rendering(self):
        assert numerics.to_decimal(const_pi(64), 10) == "3.141592654"


class TestLi2Real:
    def test_zero(self):
        assert li2_real(0, PREC) == 0

    def test_half(self):
        with mp.workprec(PREC + 32):
            expected = mp.pi**2 / 12 - mp.log(2) ** 2 / 2
        assert abs(li2_real(Fraction(1, 2), PREC) - expected) < TOL

    def test_against_brute_series_inside_disk(self):
        for z in ["0.5", "-0.5", "0.123456789", "-0.34", "0.47"]:
            assert abs(li2_real(mp.mpf(z), PREC) - brute_li2(mp.mpf(z))) < TOL

    def test_against_mpmath_polylog(self):
        with mp.workprec(PREC + 32):
            for z in ["0.9", "0.999", "0.51", "-0.9", "-1.0", "-3.7", "-250.0", "0.05"]:
                mine = li2_real(mp.mpf(z), PREC)
                theirs = mp.polylog(2, mp.mpf(z))
                assert abs(mine - theirs) < TOL, z

    def test_golden_ratio_squared_value(self):
        # the classical closed form, confirmed by brute summation
        phi = golden_ratio(PREC + 32)
        with mp.workprec(PREC + 32):
            z = 1 / phi**2
            closed = mp.pi**2 / 15 - mp.log(phi) ** 2
        assert abs(brute_li2(z) - closed) < TOL
        assert abs(li2_real(z, PREC) - closed) < TOL

    def test_rejects_beyond_cut(self):
        with pytest.raises(ValueError):
            li2_real(mp.mpf("1.5"), PREC)

    def test_precision_scaling(self):
        for z in ["0.77", "-0.77"]:
            a = li2_real(mp.mpf(z), PREC)
            b = li2_real(mp.mpf(z), 2 * PREC)
            assert abs(a - b) < TOL


class TestLi2Complex:
    def test_zero_and_real_consistency(self):
        assert li2_complex(0, PREC) == 0
        for z in ["0.3", "0.72", "0.95"]:
            c = li2_complex(mp.mpc(mp.mpf(z)), PREC)
            r = li2_real(mp.mpf(z), PREC)
            assert abs(c.real - r) < TOL and abs(c.imag) < TOL

    def test_at_i(self):
        # Re = -pi^2/48, Im = Catalan's constant; |i| = 1 so the defining
        # series converges and the closed forms are classical
        v = li2_complex(mp.mpc(0, 1), PREC)
        with mp.workprec(PREC + 32):
            re = -mp.pi**2 / 48
            im = +mp.catalan
        assert abs(v.real - re) < TOL
        assert abs(v.imag - im) < TOL

    def test_against_mpmath_polylog_grid(self):
        pts = [
            mp.mpc("0.3", "0.3"),
            mp.mpc("0.8", "0.5"),
            mp.mpc("-0.9", "0.1"),
            mp.mpc("0.19", "-0.59"),
            mp.mpc("0.5", "-1.54"),
            mp.mpc("2.5", "3.5"),
            mp.mpc("-7.0", "-0.25"),
            mp.mpc("0.99", "0.01"),
        ]
        with mp.workprec(PREC + 32):
            for z in pts:
                mine = li2_complex(z, PREC)
                theirs = mp.polylog(2, z)
                assert abs(mine - theirs) < TOL, z

    def test_lower_lip_on_the_cut(self):
        # real arguments past 1 take the lower-side value: negative imaginary part
        v = li2_complex(mp.mpf(3), PREC)
        with mp.workprec(PREC + 32):
            expected_im = -mp.pi * mp.log(3)
        assert abs(v.imag - expected_im) < TOL


class TestLiN:
    def test_li1_is_log(self):
        for z in ["0.4", "-0.8"]:
            with mp.workprec(PREC + 32):
                expected = -mp.log(1 - mp.mpf(z))
            assert abs(li_n(1, mp.mpf(z), PREC) - expected) < TOL

    def test_li1_diverges_at_one(self):
        with pytest.raises(ValueError):
            li_n(1, 1, PREC)

    def test_matches_li2(self):
        for z in ["0.3", "0.9", "-0.6"]:
            assert abs(li_n(2, mp.mpf(z), PREC) - li2_real(mp.mpf(z), PREC)) < TOL

    def test_zeta3_by_direct_summation(self):
        # tail of sum 1/k^3 beyond N is below 1/(2 N^2)
        with mp.workprec(80):
            partial = mp.fsum(mp.mpf(1) / k**3 for k in range(1, 20001))
        v = li_n(3, 1, 64)
        assert abs(v - partial) < mp.mpf("2e-9")
        assert mp.nstr(v, 8) == "1.2020569"

    def test_li4_against_mpmath(self):
        with mp.workprec(PREC + 32):
            assert abs(li_n(4, mp.mpf("0.37"), PREC) - mp.polylog(4, mp.mpf("0.37"))) < TOL


class TestRogersAndChi:
    def test_endpoints(self):
        assert rogers_l(0, PREC) == 0
        assert abs(rogers_l(1, PREC) - const_zeta2(PREC)) < TOL

    def test_half_by_reflection(self):
        with mp.workprec(PREC + 32):
            expected = mp.pi**2 / 12
        assert abs(rogers_l(Fraction(1, 2), PREC) - expected) < TOL

    def test_inverse_golden_ratio(self):
        phi = golden_ratio(PREC + 32)
        with mp.workprec(PREC + 32):
            arg = 1 / phi
            expected = mp.pi**2 / 10
            # independent route: series value plus the log product
            direct = brute_li2(arg) + mp.log(arg) * mp.log(1 - arg) / 2
        assert abs(direct - expected) < TOL
        assert abs(rogers_l(arg, PREC) - expected) < TOL

    def test_domain(self):
        with pytest.raises(ValueError):
            rogers_l(mp.mpf("1.01"), PREC)

    def test_chi2_values(self):
        assert chi2(0, PREC) == 0
        with mp.workprec(PREC + 32):
            expected_one = mp.pi**2 / 8
            r = mp.sqrt(2) - 1
            expected_r = mp.pi**2 / 16 - mp.log(r) ** 2 / 4
            got_r = chi2(r, PREC)
        assert abs(chi2(1, PREC) - expected_one) < TOL
        assert abs(got_r - expected_r) < TOL

    def test_chi2_double_representation(self):
        for z in ["0.9", "0.35", "-0.8"]:
            zv = Fraction(z.lstrip("-")) * (-1 if z.startswith("-") else 1)
            a = chi2(zv, PREC)
            b = li2_real(zv, PREC) - li2_real(zv * zv, PREC) / 4
            assert abs(a - b) < TOL


# ---------------------------------------------------------------------------
# functional-equation properties (hypothesis)
# ---------------------------------------------------------------------------

HP = 150
HTOL = mp.mpf(2) ** (GUARD_BITS - HP)

unit_open = st.floats(min_value=0.001, max_value=0.999)


@settings(max_examples=60, deadline=None)
@given(unit_open)
def test_complement_identity(zf):
    z = mp.mpf(zf)
    with mp.workprec(HP + 32):
        lhs = li2_real(z, HP) + li2_real(1 - z, HP)
        rhs = mp.pi**2 / 6 - mp.log(z) * mp.log(1 - z)
    assert abs(lhs - rhs) < HTOL


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-0.999, max_value=0.999))
def test_duplication_identity(zf):
    z = Fraction(zf)  # exact, so z*z is the exact square
    lhs = li2_real(z, HP) + li2_real(-z, HP)
    rhs = li2_real(z * z, HP) / 2
    assert abs(lhs - rhs) < HTOL


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.01, max_value=100.0))
def test_inversion_identity(zf):
    z = mp.mpf(zf)
    with mp.workprec(HP + 32):
        lhs = li2_real(-z, HP) + li2_real(-1 / z, HP)
        rhs = -mp.pi**2 / 6 - mp.log(z) ** 2 / 2
    assert abs(lhs - rhs) < HTOL


@settings(max_examples=60, deadline=None)
@given(unit_open, unit_open)
def test_rogers_five_term(xf, yf):
    x, y = mp.mpf(xf), mp.mpf(yf)
    with mp.workprec(HP + 32):
        lhs = rogers_l(x, HP) + rogers_l(y, HP)
        rhs = (
            rogers_l(x * y, HP)
            + rogers_l(x * (1 - y) / (1 - x * y), HP)
            + rogers_l(y * (1 - x) / (1 - x * y), HP)
        )
    assert abs(lhs - rhs) < HTOL


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-0.999, max_value=0.999))
def test_chi2_representations_agree(zf):
    z = Fraction(zf)
    a = chi2(z, HP)
    b = li2_real(z, HP) - li2_real(z * z, HP) / 4
    assert abs(a - b) < HTOL


def test_bits_for_digits():
    assert bits_for_digits(60) == 200
    assert bits_for_digits(1) == 4


def test_zeta_m():
    with mp.workprec(PREC + 32):
        assert abs(const_zeta(3, PREC) - mp.zeta(3)) < TOL
    with pytest.raises(ValueError):
        const_zeta(1, PREC)
