"""Dilogarithm ladders: data model, residual evaluation, corpus, generators.

A ladder is stored in a flat residual convention: with 0 < u < 1 algebraic,

    sum_r c_r * Li_n(u^r)  +  b * log^n(u)  +  sum_m d_m * zeta(m) * log^(n-m)(u)  =  0

for exact rational c_r, b, d_m.  Classical two-sided displays are transcribed
into this form once, when a corpus entry is defined, so there is a single
testable normal form; a ladder is numerically certified at `prec` bits when
its residual magnitude stays below 2**(GUARD_BITS - prec).

All the weight-2 machinery lives here: the classical corpus, the two
infinite base families with arbitrarily many base-polynomial terms, the
Abel-style four-exponent family, validity/shape classification, and the
golden-ratio special relations (the Rogers-dilogarithm pi^2/20 identity, its
half-square duplication route, and the experimentally observed complex
relation with arguments of modulus 1/phi and phi).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath as mp

from . import numerics
from .algebra import (
    AlgebraicNumber,
    RatPoly,
    even_family_poly,
    fraction_from_json,
    fraction_to_json,
    odd_family_poly,
    positive_root,
)
from .numerics import GUARD_BITS, round_to


class InvalidExponents(ValueError):
    """Exponent triple outside the valid range of the four-exponent family."""


class NoInteriorRoot(ValueError):
    """The base equation has no root strictly inside (0, 1)."""


@dataclass(frozen=True)
class LadderTerm:
    exponent: int
    coeff: Fraction


@dataclass(frozen=True)
class Ladder:
    base: AlgebraicNumber
    terms: tuple[LadderTerm, ...]
    log_coeff: Fraction
    zeta_terms: tuple[tuple[int, Fraction], ...]
    weight: int = 2
    name: str | None = None

    @property
    def index(self) -> int:
        return max((t.exponent for t in self.terms), default=0)


def make_ladder(base, terms, log_coeff=0, zeta_terms=(), weight=2, name=None) -> Ladder:
    """Build a ladder, merging duplicate exponents and dropping zero terms."""
    if weight < 2:
        raise ValueError("ladder weight must be >= 2")
    merged: dict[int, Fraction] = {}
    for r, c in terms:
        r = int(r)
        if r < 1:
            raise ValueError(f"term exponent must be >= 1, got {r}")
        merged[r] = merged.get(r, Fraction(0)) + Fraction(c)
    tidy = tuple(
        LadderTerm(r, merged[r]) for r in sorted(merged) if merged[r] != 0
    )
    zt: dict[int, Fraction] = {}
    for m, d in zeta_terms:
        m = int(m)
        if not 2 <= m <= weight:
            raise ValueError(f"zeta order must lie in 2..weight, got {m}")
        zt[m] = zt.get(m, Fraction(0)) + Fraction(d)
    zeta = tuple((m, zt[m]) for m in sorted(zt) if zt[m] != 0)
    return Ladder(base, tidy, Fraction(log_coeff), zeta, weight, name)


def residual(ladder: Ladder, prec: int) -> mp.mpf:
    """Signed residual of the flat convention at `prec` bits.

    A magnitude below 2**(GUARD_BITS - prec) certifies the ladder numerically
    at this precision.  Weight > 2 is evaluated through the plain series
    polylogarithm and only admits the zeta(2) column.
    """
    n = ladder.weight
    if n > 2 and any(m > 2 for m, _ in ladder.zeta_terms):
        raise ValueError("weight > 2 residuals only support the zeta(2) column")
    work = prec + 32
    u = ladder.base.value(work)
    with mp.workprec(work):
        logu = mp.log(u)
        total = mp.mpf(0)
        for t in ladder.terms:
            arg = u**t.exponent
            li = numerics.li2_real(arg, work) if n == 2 else numerics.li_n(n, arg, work)
            total += numerics.as_mpf(t.coeff) * li
        total += numerics.as_mpf(ladder.log_coeff) * logu**n
        for m, d in ladder.zeta_terms:
            total += numerics.as_mpf(d) * numerics.const_zeta(m, work) * logu ** (n - m)
    return round_to(total, prec)


def classify(ladder: Ladder) -> dict:
    """Shape flags: pure exponent arithmetic, no special-function evaluation.

    `restricted` is the older divisor-constrained shape (every exponent below
    the index divides the index, zeta column limited to zeta(2)); `valid`
    asks that all zeta coefficients be rational, which stored ladders satisfy
    by construction.
    """
    top = ladder.index
    restricted = (
        top > 0
        and any(t.exponent == top for t in ladder.terms)
        and all(top % t.exponent == 0 for t in ladder.terms)
        and all(m == 2 for m, _ in ladder.zeta_terms)
    )
    return {"restricted": restricted, "valid": True}


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def even_family_ladder(n: int) -> Ladder:
    """Weight-2 ladder on the degree-2n base with n+1 positive and n negative terms.

    With u the unique positive root of x^{2n} + ... + x^n - x^{n-1} - ... - 1:

        2 Li2(u^{n+1}) - 2 Li2(u^n) - Li2(u) - n^2 log^2 u + zeta(2) = 0

    Exponent collisions merge (n = 1 gives coefficients 2, -3 on u^2, u).
    """
    base = positive_root(even_family_poly(n))
    return make_ladder(
        base,
        [(n + 1, 2), (n, -2), (1, -1)],
        log_coeff=-n * n,
        zeta_terms=[(2, 1)],
        name=f"even-family-{n}",
    )


def odd_family_ladder(n: int) -> Ladder:
    """Weight-2 ladder on the degree-(2n+1) base; the squared-argument variant.

    With u the unique positive root of x^{2n+1} + ... + x^n - x^{n-1} - ... - 1:

        2 Li2(u^{n+2}) - 2 Li2(u^n) - Li2(u^2) - n^2 log^2 u + zeta(2) = 0

    Exponent collisions merge (n = 2 gives coefficients 2, -3 on u^4, u^2).
    """
    base = positive_root(odd_family_poly(n))
    return make_ladder(
        base,
        [(n + 2, 2), (n, -2), (2, -1)],
        log_coeff=-n * n,
        zeta_terms=[(2, 1)],
        name=f"odd-family-{n}",
    )


def abel_four_term(n: int, p: int, q: int) -> Ladder:
    """Ladder from the four-term base u^p + u^q - u^n - 1 = 0 (p + q < n).

        Li2(u^{n-p-q}) - Li2(u^{n-p}) - Li2(u^{n-q}) + Li2(u^p) + Li2(u^q)
            + p*q*log^2 u - zeta(2) = 0

    The base polynomial always has x = 1 as a root; those factors are deflated
    exactly before the interior root in (0, 1) is isolated (the stored
    defining polynomial remains the full base).
    """
    if min(n, p, q) < 1 or p + q >= n:
        raise InvalidExponents(f"need p, q >= 1 and p + q < n, got n={n} p={p} q={q}")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[0] += 1
    coeffs[n] += 1
    coeffs[p] -= 1
    coeffs[q] -= 1
    base_poly = RatPoly(tuple(coeffs))
    x_minus_1 = RatPoly((Fraction(-1), Fraction(1)))
    deflated = base_poly
    while deflated(Fraction(1)) == 0:
        deflated = deflated // x_minus_1
    try:
        inner = positive_root(deflated, unit_interval=True)
    except Exception as exc:
        raise NoInteriorRoot(f"base has no root strictly inside (0, 1): {exc}") from None
    base = AlgebraicNumber(base_poly, inner.lo, inner.hi)
    return make_ladder(
        base,
        [(n - p - q, 1), (n - p, -1), (n - q, -1), (p, 1), (q, 1)],
        log_coeff=p * q,
        zeta_terms=[(2, -1)],
        name=f"four-term-{n}-{p}-{q}",
    )


def rogers_form_residual(n: int, parity: str, prec: int, leading: int = 2) -> mp.mpf:
    """Residual of the Rogers-dilogarithm form of a family ladder.

        leading*L(u^{n+s}) - 2*L(u^n) - L(u^s) + zeta(2),   s = 1 (even) or 2 (odd)

    The identity requires leading = 2; `leading` is overridable so tests can
    demonstrate that the coefficient-1 variant genuinely fails.
    """
    if parity == "even":
        base, s = even_family_poly(n), 1
    elif parity == "odd":
        base, s = odd_family_poly(n), 2
    else:
        raise ValueError("parity must be 'even' or 'odd'")
    work = prec + 32
    u = positive_root(base, prec=work).value(work)
    with mp.workprec(work):
        val = (
            leading * numerics.rogers_l(u ** (n + s), work)
            - 2 * numerics.rogers_l(u**n, work)
            - numerics.rogers_l(u**s, work)
            + numerics.const_zeta2(work)
        )
    return round_to(val, prec)


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    name: str
    ladder: Ladder
    citation: str
    note: str | None = None


_W_QUINTIC_NOTE = (
    "Sometimes described as the n = 2 member of the odd-degree base family, "
    "but that member has base x^5 + x^4 + x^3 + x^2 - x - 1 and terms "
    "2 Li2(u^4) - 3 Li2(u^2), while this entry's base is the all-positive "
    "quintic w^5 + w^4 + w^3 + w^2 + w - 1.  The two relations are distinct "
    "and are verified independently; the discrepancy is recorded, not resolved."
)


def _entry(name, poly_coeffs, interval, terms, log_coeff, d2, citation, note=None):
    base = AlgebraicNumber(
        RatPoly(tuple(Fraction(c) for c in poly_coeffs)),
        Fraction(*interval[0]) if isinstance(interval[0], tuple) else Fraction(interval[0]),
        Fraction(*interval[1]) if isinstance(interval[1], tuple) else Fraction(interval[1]),
    )
    ladder = make_ladder(
        base, terms, log_coeff=log_coeff, zeta_terms=[(2, Fraction(d2))], name=name
    )
    return CorpusEntry(name, ladder, citation, note)


def corpus() -> list[CorpusEntry]:
    """The classical weight-2 ladder corpus, in the flat residual convention.

    Each entry records the base polynomial with an isolating interval pinning
    the intended root (several bases have more than one root in (0, 1) or
    beyond), the Li2 coefficients, the log^2 coefficient, and the zeta(2)
    coefficient after moving everything to the left-hand side.
    """
    entries = [
        _entry(
            "euler-legendre",
            (-1, 2, 1),  # x^2 + 2x - 1, root sqrt(2) - 1
            ((2, 5), (1, 2)),
            [(2, 1), (1, -4)],
            -1,
            Fraction(3, 2),
            "chi_2 functional equation; known to Euler and Legendre",
        ),
        _entry(
            "coxeter",
            (-1, 1, 1),  # x^2 + x - 1, root (sqrt(5) - 1)/2
            ((1, 2), (7, 10)),
            [(6, 1), (3, -4), (2, -3), (1, 6)],
            0,
            Fraction(-7, 5),
            "Coxeter 1935",
        ),
        _entry(
            "watson",
            (-1, -1, 2, 1),  # x^3 + 2x^2 - x - 1
            ((4, 5), (81, 100)),
            [(2, 1), (1, -1)],
            1,
            Fraction(1, 7),
            "Watson 1937",
        ),
        _entry(
            "loxton",
            (-1, 2, 2),  # 2x^2 + 2x - 1, root (sqrt(3) - 1)/2
            ((1, 3), (2, 5)),
            [(3, 2), (2, -3), (1, -12)],
            -3,
            5,
            "Loxton 1984",
        ),
        CorpusEntry(
            "motivating",
            replace(even_family_ladder(5), name="motivating"),
            "even-degree base family at n = 5 (degree-10 base with six positive "
            "and five negative terms)",
        ),
        _entry(
            "bailey-broadhurst",
            (1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1),  # Lehmer's degree-10 polynomial
            ((4, 5), (22, 25)),
            [
                (630, 1), (315, -2), (210, -3), (126, -10), (90, -7),
                (35, 18), (15, 84), (14, 90), (9, -4), (8, 339), (7, 45),
                (6, 265), (5, -273), (4, -678), (3, -1016), (2, -744), (1, -804),
            ],
            -22050,
            2003,
            "Bailey and Broadhurst; base is Lehmer's polynomial, u its root in (0, 1)",
        ),
        _entry(
            "al-index9-quintic",
            (-1, 1, 1, -1, 0, 1),  # x^5 - x^3 + x^2 + x - 1
            ((27, 40), (7, 10)),
            [(9, 2), (8, 1), (6, -2), (4, -2), (3, -2), (1, -4)],
            -13,
            4,
            "Abouzahra and Lewin (index-9 quintic)",
        ),
        _entry(
            "al-w-quintic",
            (-1, 1, 1, 1, 1, 1),  # w^5 + w^4 + w^3 + w^2 + w - 1
            ((1, 2), (13, 25)),
            [(5, 2), (4, -1), (1, -2)],
            -1,
            1,
            "all-positive quintic base",
            note=_W_QUINTIC_NOTE,
        ),
        _entry(
            "al-index21",
            (-1, 1, 0, 0, 1),  # x^4 + x - 1
            ((7, 10), (3, 4)),
            [(21, 2), (7, -6), (6, -14), (2, 21), (1, 5)],
            31,
            -11,
            "Abouzahra and Lewin (index-21, three-term base x^4 + x - 1)",
        ),
        _entry(
            "kummer-rogers-quartic",
            (1, -2, 0, -2, 1),  # x^4 - 2x^3 - 2x + 1
            ((2, 5), (1, 2)),
            [(4, 3), (3, -4), (2, -6), (1, -12)],
            -6,
            7,
            "from a 15-term functional equation (Kummer 1840, Rogers 1907)",
        ),
    ]
    return entries


def corpus_entry(name: str) -> CorpusEntry:
    for entry in corpus():
        if entry.name == name:
            return entry
    raise KeyError(name)


# ---------------------------------------------------------------------------
# special relations
# ---------------------------------------------------------------------------

def verify_khoi(prec: int) -> mp.mpf:
    """Residual of L(phi/(phi+sqrt(phi))) - L(1/(phi(phi+sqrt(phi)))) = pi^2/20.

    L is the Rogers dilogarithm and phi the golden ratio.  The identity is
    implemented in the orientation its duplication-route proof produces
    (larger argument first); transcriptions that subtract the terms the other
    way around come out at -pi^2/20 instead.
    """
    work = prec + 32
    with mp.workprec(work):
        phi = (mp.sqrt(5) + 1) / 2
        s = mp.sqrt(phi)
        small = 1 / (phi * (phi + s))
        big = phi / (phi + s)
        val = (
            numerics.rogers_l(big, work)
            - numerics.rogers_l(small, work)
            - mp.pi**2 / 20
        )
    return round_to(val, prec)


def verify_lima(z, prec: int) -> mp.mpf:
    """Residual of the duplication identity
    L(z) = L(1/(2-z)) + L(2z - z^2)/2 - pi^2/12 for 0 < z < 1."""
    work = prec + 32
    with mp.workprec(work):
        zv = numerics.as_mpf(z)
        if not 0 < zv < 1:
            raise ValueError("duplication identity requires 0 < z < 1")
        val = (
            numerics.rogers_l(zv, work)
            - numerics.rogers_l(1 / (2 - zv), work)
            - numerics.rogers_l(2 * zv - zv * zv, work) / 2
            + mp.pi**2 / 12
        )
    return round_to(val, prec)


@dataclass(frozen=True)
class ConjectureReport:
    """Outcome of the complex golden-ratio relation check.

    The relation is numerically observed, not proven; `passed` reports what
    the evaluation found at this precision rather than asserting the result.
    """

    re_residual: mp.mpf
    im_residual: mp.mpf
    passed: bool
    threshold: mp.mpf
    precision: int
    branch_notes: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "re_residual": mp.nstr(self.re_residual, 8),
            "im_residual": mp.nstr(self.im_residual, 8),
            "pass": self.passed,
            "threshold": mp.nstr(self.threshold, 8),
            "precision_bits": self.precision,
            "branch_notes": list(self.branch_notes),
        }


def verify_conjecture(prec: int) -> ConjectureReport:
    """Check the observed complex relation

        Li2(1/(2 phi^2) - sqrt(-1 - 1/phi^2)/2) - Li2((1 - sqrt((1-2phi)(1+2phi)))/2)
            = log^2(phi)/2 + 3 pi log(phi) i / 5 + pi^2/150

    with principal square roots (negative radicands lift to +i), so the first
    argument has modulus 1/phi and negative imaginary part and the second has
    modulus phi.  Both sides are evaluated on the principal branch of Li2 and
    the componentwise residual is reported with branch diagnostics.
    """
    work = prec + 48
    with mp.workprec(work):
        phi = (mp.sqrt(5) + 1) / 2
        logphi = mp.log(phi)
        z1 = 1 / (2 * phi**2) - mp.sqrt(mp.mpc(-1 - 1 / phi**2)) / 2
        z2 = (1 - mp.sqrt(mp.mpc((1 - 2 * phi) * (1 + 2 * phi)))) / 2
        lhs = numerics.li2_complex(z1, work) - numerics.li2_complex(z2, work)
        rhs = logphi**2 / 2 + mp.mpc(0, 3) * mp.pi * logphi / 5 + mp.pi**2 / 150
        diff = lhs - rhs
        threshold = mp.mpf(2) ** (34 - prec)
        notes = (
            f"first argument {mp.nstr(z1, 8)}: {numerics.li2_reduction_path(z1)}",
            f"second argument {mp.nstr(z2, 8)}: {numerics.li2_reduction_path(z2)}",
            "principal branch throughout, cut [1, oo); principal square roots "
            "(sqrt of a negative real lifts to +i)",
        )
        passed = bool(abs(diff.real) < threshold and abs(diff.imag) < threshold)
        report = ConjectureReport(
            round_to(diff.real, prec),
            round_to(diff.imag, prec),
            passed,
            round_to(threshold, prec),
            prec,
            notes,
        )
    return report


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def ladder_to_json(ladder: Ladder) -> dict:
    obj = {
        "weight": ladder.weight,
        "index": ladder.index,
        "base": ladder.base.to_json(),
        "terms": [
            {"r": t.exponent, "num": str(t.coeff.numerator), "den": str(t.coeff.denominator)}
            for t in ladder.terms
        ],
        "log_coeff": fraction_to_json(ladder.log_coeff),
        "zeta_terms": [
            {"m": m, "num": str(d.numerator), "den": str(d.denominator)}
            for m, d in ladder.zeta_terms
        ],
    }
    if ladder.name is not None:
        obj["name"] = ladder.name
    return obj


def ladder_from_json(obj: dict, where: str = "ladder") -> Ladder:
    if not isinstance(obj, dict):
        raise ValueError(f"{where}: expected an object")
    try:
        weight = int(obj["weight"])
        base = AlgebraicNumber.from_json(obj["base"], where=f"{where}.base")
        raw_terms = obj["terms"]
        log_coeff = fraction_from_json(obj["log_coeff"], f"{where}.log_coeff")
        raw_zeta = obj["zeta_terms"]
    except KeyError as exc:
        raise ValueError(f"{where}: missing field {exc}") from None
    terms = []
    for i, t in enumerate(raw_terms):
        loc = f"{where}.terms[{i}]"
        try:
            r = int(t["r"])
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"{loc}: malformed exponent") from None
        c = fraction_from_json(t, loc)
        if c == 0:
            raise ValueError(f"{loc}: zero coefficient is not a ladder term")
        if r < 1:
            raise ValueError(f"{loc}: exponent must be >= 1")
        terms.append((r, c))
    zeta_terms = []
    for i, t in enumerate(raw_zeta):
        loc = f"{where}.zeta_terms[{i}]"
        try:
            m = int(t["m"])
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"{loc}: malformed zeta order") from None
        zeta_terms.append((m, fraction_from_json(t, loc)))
    try:
        ladder = make_ladder(
            base, terms, log_coeff=log_coeff, zeta_terms=zeta_terms,
            weight=weight, name=obj.get("name"),
        )
    except ValueError as exc:
        raise ValueError(f"{where}: {exc}") from None
    if "index" in obj and int(obj["index"]) != ladder.index:
        raise ValueError(f"{where}.index: stated {obj['index']} != max exponent {ladder.index}")
    return ladder


def corpus_to_json(entries=None) -> list[dict]:
    entries = corpus() if entries is None else entries
    out = []
    for e in entries:
        obj = ladder_to_json(e.ladder)
        obj["citation"] = e.citation
        if e.note:
            obj["note"] = e.note
        out.append(obj)
    return out


def corpus_from_json(data) -> list[CorpusEntry]:
    entries = []
    for i, obj in enumerate(data):
        ladder = ladder_from_json(obj, where=f"[{i}]")
        entries.append(
            CorpusEntry(ladder.name or f"entry-{i}", ladder, obj.get("citation", ""), obj.get("note"))
        )
    return entries
