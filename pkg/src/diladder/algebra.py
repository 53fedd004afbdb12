"""Exact rational polynomial arithmetic and real algebraic numbers.

Everything in this module that claims to be exact is exact: polynomials carry
`fractions.Fraction` coefficients, quotient-ring identities are certified by
long division over Q with no floating point anywhere, and an algebraic number
is a defining polynomial plus a rational interval containing exactly one of
its real roots (endpoint signs differ).  Floating point enters only when a
caller asks for a numeric value at some precision, and even then the interval
refinement that backs it is re-certified with exact sign evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .numerics import GUARD_BITS, round_to


class NoPositiveRoot(ValueError):
    """The polynomial has no positive real root (in the requested range)."""


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RatPoly:
    """Dense univariate polynomial over Q, coefficients ascending by degree."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [_fr(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls(())

    @classmethod
    def one(cls) -> "RatPoly":
        return cls((Fraction(1),))

    @classmethod
    def x(cls) -> "RatPoly":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def x_power(cls, k: int) -> "RatPoly":
        return cls((Fraction(0),) * k + (Fraction(1),))

    # -- ring operations (all exact) -----------------------------------------

    def __add__(self, other) -> "RatPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return RatPoly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other) -> "RatPoly":
        return self + (-self._coerce(other))

    def __neg__(self) -> "RatPoly":
        return RatPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            return RatPoly(tuple(c * _fr(other) for c in self.coeffs))
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return RatPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return RatPoly(tuple(out))

    __rmul__ = __mul__

    @staticmethod
    def _coerce(other) -> "RatPoly":
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly((_fr(other),))
        raise TypeError(f"cannot combine RatPoly with {type(other)!r}")

    def __divmod__(self, other) -> tuple["RatPoly", "RatPoly"]:
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        d = other.degree
        lead = other.leading
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] / lead
            if c == 0:
                continue
            q[i - d] = c
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] -= c * b
        return RatPoly(tuple(q)), RatPoly(tuple(rem))

    def __mod__(self, other) -> "RatPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other) -> "RatPoly":
        return divmod(self, other)[0]

    def monic(self) -> "RatPoly":
        if self.is_zero:
            return self
        return self * (1 / self.leading)

    def gcd(self, other: "RatPoly") -> "RatPoly":
        a, b = self, self._coerce(other)
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def derivative(self) -> "RatPoly":
        return RatPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1))

    def __call__(self, x):
        """Horner evaluation; exact on Fractions, rounded on mpmath floats."""
        if self.is_zero:
            return Fraction(0) if isinstance(x, Fraction) else mp.mpf(0)
        acc = self.coeffs[-1] if isinstance(x, Fraction) else mp.mpf(self.coeffs[-1].numerator) / self.coeffs[-1].denominator
        for c in reversed(self.coeffs[:-1]):
            cv = c if isinstance(x, Fraction) else mp.mpf(c.numerator) / c.denominator
            acc = acc * x + cv
        return acc

    def sign_changes(self) -> int:
        """Descartes count: strict sign alternations of the coefficients."""
        signs = [1 if c > 0 else -1 for c in self.coeffs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    # -- presentation ---------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            parts.append(("- " if c < 0 else "+ " if parts else "") + body)
        return " ".join(parts).lstrip("+ ")

    def to_json(self) -> list[dict]:
        return [{"num": str(c.numerator), "den": str(c.denominator)} for c in self.coeffs]

    @classmethod
    def from_json(cls, data, where: str = "coeffs") -> "RatPoly":
        return cls(tuple(fraction_from_json(item, f"{where}[{i}]") for i, item in enumerate(data)))


def fraction_from_json(obj, where: str) -> Fraction:
    try:
        num = int(obj["num"])
        den = int(obj["den"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{where}: expected {{num, den}} integer strings ({exc})") from None
    if den == 0:
        raise ValueError(f"{where}: zero denominator")
    return Fraction(num, den)


def fraction_to_json(fr: Fraction) -> dict:
    return {"num": str(fr.numerator), "den": str(fr.denominator)}


# ---------------------------------------------------------------------------
# base-equation families
# ---------------------------------------------------------------------------

def even_family_poly(n: int) -> RatPoly:
    """x^{2n} + ... + x^n - x^{n-1} - ... - x - 1 (one Descartes sign change)."""
    if n < 1:
        raise ValueError("family index must be >= 1")
    return RatPoly((Fraction(-1),) * n + (Fraction(1),) * (n + 1))


def odd_family_poly(n: int) -> RatPoly:
    """x^{2n+1} + ... + x^n - x^{n-1} - ... - x - 1 (one Descartes sign change)."""
    if n < 1:
        raise ValueError("family index must be >= 1")
    return RatPoly((Fraction(-1),) * n + (Fraction(1),) * (n + 2))


# ---------------------------------------------------------------------------
# quotient ring Q[x]/(m)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Residue:
    """Element of Q[x]/(modulus), kept as its reduced representative."""

    modulus: RatPoly
    rep: RatPoly

    @classmethod
    def of(cls, modulus: RatPoly, poly: RatPoly) -> "Residue":
        if modulus.degree < 1:
            raise ValueError("modulus must have degree >= 1")
        return cls(modulus, poly % modulus)

    def _check(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ValueError("residues live in different quotient rings")

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.modulus, (self.rep + other.rep) % self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.modulus, (self.rep - other.rep) % self.modulus)

    def __mul__(self, other) -> "Residue":
        if isinstance(other, (int, Fraction)):
            return Residue(self.modulus, (self.rep * other) % self.modulus)
        self._check(other)
        return Residue(self.modulus, (self.rep * other.rep) % self.modulus)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Residue":
        if k < 0:
            raise ValueError("negative powers not supported in the quotient ring")
        result = Residue(self.modulus, RatPoly.one() % self.modulus)
        square = self
        while k:
            if k & 1:
                result = result * square
            k >>= 1
            if k:
                square = square * square
        return result


# ---------------------------------------------------------------------------
# exact certification of the family identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    witness_degrees: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "identity_name": self.name,
            "pass": self.passed,
            "witness_degrees": list(self.witness_degrees),
        }


@dataclass(frozen=True)
class CertReport:
    family: str
    n: int
    checks: tuple[IdentityCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "all_passed": self.all_passed,
            "checks": [c.to_json() for c in self.checks],
        }


def _check_parity(parity: str) -> None:
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")


def _compare(name: str, lhs: Residue, rhs: Residue) -> IdentityCheck:
    return IdentityCheck(name, lhs.rep == rhs.rep, (lhs.rep.degree, rhs.rep.degree))


def verify_step_identities(n: int, parity: str) -> CertReport:
    """Certify the power identities behind the family ladders, exactly.

    Working modulo the base polynomial itself (never its compact form, which
    has the extraneous root x = 1), so a passing check holds at every root of
    the base, in particular at the ladder argument u.
    """
    _check_parity(parity)
    if n < 1:
        raise ValueError("n must be >= 1")
    m = even_family_poly(n) if parity == "even" else odd_family_poly(n)
    x = Residue.of(m, RatPoly.x())
    one = Residue.of(m, RatPoly.one())
    two = Residue.of(m, RatPoly((Fraction(2),)))
    s = 1 if parity == "even" else 2  # square-shift: the third ladder argument is u^s
    checks = (
        _compare(
            f"u^{n} * (2 - u^{n + s}) == 1",
            x**n * (two - x ** (n + s)),
            one,
        ),
        _compare(
            f"2*u^{n + s} - u^{2 * (n + s)} == u^{s}",
            two * x ** (n + s) - x ** (2 * (n + s)),
            x**s,
        ),
        _compare(
            f"u^{s}*(1 - u^{n}) == u^{n + s}*(1 - u^{n + s})",
            x**s * (one - x**n),
            x ** (n + s) * (one - x ** (n + s)),
        ),
    )
    return CertReport(parity, n, checks)


def verify_cyclotomic(n: int, parity: str) -> CertReport:
    """Certify the multiplicative (cyclotomic-style) identity for index n.

    'Cyclotomic' follows the classical ladder literature: a multiplicative
    relation among powers of u and factors (1 - u^k), not a cyclotomic
    polynomial.  Checked as an exact cross-multiplied congruence modulo the
    base polynomial, via binary exponentiation in the quotient ring.
    """
    _check_parity(parity)
    if n < 1:
        raise ValueError("n must be >= 1")
    m = even_family_poly(n) if parity == "even" else odd_family_poly(n)
    x = Residue.of(m, RatPoly.x())
    one = Residue.of(m, RatPoly.one())
    if parity == "even":
        lhs = (one - x) * (one - x**n) ** (2 * n)
        rhs = x ** (2 * n * n) * (one - x ** (n + 1)) ** (2 * n + 2)
        checks = (
            _compare(
                f"(1-u)*(1-u^{n})^{2 * n} == u^{2 * n * n}*(1-u^{n + 1})^{2 * n + 2}",
                lhs,
                rhs,
            ),
        )
    else:
        lhs = (one - x**2) * (one - x**n) ** n
        rhs = x ** (n * n) * (one - x ** (n + 2)) ** (n + 2)
        checks = (
            _compare(
                f"(1-u^2)*(1-u^{n})^{n} == u^{n * n}*(1-u^{n + 2})^{n + 2}",
                lhs,
                rhs,
            ),
            _compare(
                f"1-u^2 == (1-u^{n + 2})^2",
                one - x**2,
                (one - x ** (n + 2)) ** 2,
            ),
        )
    return CertReport(parity, n, checks)


# ---------------------------------------------------------------------------
# algebraic numbers
# ---------------------------------------------------------------------------

def _mpf_to_fraction(x: mp.mpf) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise ValueError("cannot convert non-finite value to Fraction")
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def _fraction_to_mpf(fr: Fraction) -> mp.mpf:
    return mp.mpf(fr.numerator) / mp.mpf(fr.denominator)


@dataclass
class AlgebraicNumber:
    """Real algebraic number: defining polynomial + isolating interval.

    The interval endpoints are exact rationals with poly(lo)*poly(hi) < 0, so
    exactly one simple real root is bracketed; `refine` narrows the bracket
    (certified by exact sign evaluation) and `value` returns the root at a
    requested bit precision, caching the most precise evaluation so far.
    """

    poly: RatPoly
    lo: Fraction
    hi: Fraction
    _cached: mp.mpf | None = field(default=None, compare=False, repr=False)
    _cached_prec: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        self.lo = _fr(self.lo)
        self.hi = _fr(self.hi)
        if not self.lo < self.hi:
            raise ValueError("isolating interval must satisfy lo < hi")
        if not self.poly(self.lo) * self.poly(self.hi) < 0:
            raise ValueError("interval endpoints must give opposite polynomial signs")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine(self, prec: int) -> None:
        """Narrow the isolating interval to width below 2**-prec."""
        target = Fraction(1, 1 << prec)
        if self.width < target:
            return
        f = self.poly
        lo, hi = self.lo, self.hi
        lo_negative = f(lo) < 0

        def bisect_until(limit: Fraction):
            nonlocal lo, hi, lo_negative
            while hi - lo >= limit:
                mid = (lo + hi) / 2
                fm = f(mid)
                if fm == 0:
                    # rational root hit dead-on: re-bracket it symmetrically
                    eps = (hi - lo) / 4
                    while eps > 0 and not (f(mid - eps) * f(mid + eps) < 0):
                        eps /= 2
                    if eps == 0:
                        raise ValueError("could not re-bracket a rational root")
                    lo, hi = mid - eps, mid + eps
                    lo_negative = f(lo) < 0
                    continue
                if (fm < 0) == lo_negative:
                    lo = mid
                else:
                    hi = mid

        # cheap exact bisection to give Newton a safe, single-basin start
        bisect_until(max(target, Fraction(1, 1 << 16)))
        if hi - lo >= target:
            approx = self._newton(lo, hi, prec)
            bracketed = False
            if approx is not None:
                half = Fraction(1, 1 << (prec + 2))
                cand_lo = max(lo, approx - half)
                cand_hi = min(hi, approx + half)
                if cand_lo < cand_hi and f(cand_lo) * f(cand_hi) < 0:
                    lo, hi = cand_lo, cand_hi
                    bracketed = True
            if not bracketed:
                bisect_until(target)  # guaranteed fallback
        self.lo, self.hi = lo, hi

    def _newton(self, lo: Fraction, hi: Fraction, prec: int) -> Fraction | None:
        f = self.poly
        df = f.derivative()
        with mp.workprec(prec + 48):
            x = _fraction_to_mpf((lo + hi) / 2)
            tol = mp.mpf(2) ** (-(prec + 8))
            for _ in range(prec.bit_length() * 8 + 16):
                dfx = df(x)
                if dfx == 0:
                    return None
                step = f(x) / dfx
                x = x - step
                if abs(step) < tol:
                    return _mpf_to_fraction(x)
        return None

    def value(self, prec: int) -> mp.mpf:
        """The bracketed root as an mpf accurate to `prec` bits."""
        if self._cached is None or self._cached_prec < prec:
            self.refine(prec + 8)
            with mp.workprec(prec + GUARD_BITS):
                mid = (self.lo + self.hi) / 2
                self._cached = _fraction_to_mpf(mid)
                self._cached_prec = prec
        return round_to(self._cached, prec)

    def to_json(self) -> dict:
        return {
            "coeffs": self.poly.to_json(),
            "interval": [str(self.lo), str(self.hi)],
        }

    @classmethod
    def from_json(cls, obj, where: str = "base") -> "AlgebraicNumber":
        try:
            poly = RatPoly.from_json(obj["coeffs"], where=f"{where}.coeffs")
            lo_s, hi_s = obj["interval"]
            lo, hi = Fraction(lo_s), Fraction(hi_s)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ValueError) and str(exc).startswith(where):
                raise
            raise ValueError(f"{where}: malformed algebraic number ({exc})") from None
        try:
            return cls(poly, lo, hi)
        except ValueError as exc:
            raise ValueError(f"{where}: {exc}") from None


def _cauchy_bound(poly: RatPoly) -> Fraction:
    lead = abs(poly.leading)
    return 1 + max(abs(c) for c in poly.coeffs) / lead


def _sign_change_cells(poly: RatPoly, lo: Fraction, hi: Fraction, cells: int):
    """Sign-change brackets of poly on (lo, hi], scanning a uniform grid."""
    brackets = []
    step = (hi - lo) / cells
    prev_x = lo
    prev_s = poly(lo)
    for i in range(1, cells + 1):
        x = lo + step * i
        s = poly(x)
        if s == 0:
            # grid point is a rational root; bracket it tightly if simple
            eps = step / 4
            while eps > 0 and not (poly(x - eps) * poly(x + eps) < 0):
                eps /= 2
            if eps > 0:
                brackets.append((x - eps, x + eps))
            prev_x, prev_s = x + step / 4, poly(x + step / 4)
            continue
        if prev_s != 0 and (prev_s < 0) != (s < 0):
            brackets.append((prev_x, x))
        prev_x, prev_s = x, s
    return brackets


def positive_root(
    poly: RatPoly,
    prec: int = 64,
    interval: tuple[Fraction, Fraction] | None = None,
    unit_interval: bool = False,
) -> AlgebraicNumber:
    """Isolate a positive real root of `poly` and refine it to `prec` bits.

    Preference order: the largest root inside (0, 1) when one exists, else the
    smallest positive root.  With `unit_interval=True` roots outside (0, 1)
    are rejected.  An explicit `interval` restricts the scan (used by corpus
    entries that pin a specific root).  Roots of even multiplicity produce no
    sign change and are not found; the ladder bases handled here are simple.
    """
    if poly.degree < 1:
        raise NoPositiveRoot("polynomial is constant")
    reduced = poly
    shift = 0
    while reduced.coeffs[0] == 0:
        reduced = RatPoly(reduced.coeffs[1:])  # x = 0 roots are not positive
        shift += 1
        if reduced.degree < 1:
            raise NoPositiveRoot("no positive real root found")

    if interval is not None:
        lo_dom, hi_dom = _fr(interval[0]), _fr(interval[1])
    elif unit_interval:
        lo_dom, hi_dom = Fraction(0), Fraction(1)
    else:
        lo_dom, hi_dom = Fraction(0), _cauchy_bound(reduced)

    if reduced.sign_changes() == 0 and interval is None:
        raise NoPositiveRoot("no coefficient sign change, hence no positive root")

    for cells in (256, 2048, 16384):
        if interval is None and not unit_interval and hi_dom > 1:
            # split at 1 so no cell straddles the unit-interval boundary
            brackets = _sign_change_cells(reduced, lo_dom, Fraction(1), cells)
            brackets += _sign_change_cells(reduced, Fraction(1), hi_dom, cells)
        else:
            brackets = _sign_change_cells(reduced, lo_dom, hi_dom, cells)
        if brackets:
            break
    if not brackets:
        raise NoPositiveRoot("no sign change located in the scanned range")

    inside_unit = [b for b in brackets if b[1] <= 1]
    if unit_interval and not inside_unit:
        raise NoPositiveRoot("no root inside (0, 1)")
    chosen = inside_unit[-1] if inside_unit else brackets[0]

    root = AlgebraicNumber(poly, chosen[0], chosen[1])
    root.refine(prec)
    return root
