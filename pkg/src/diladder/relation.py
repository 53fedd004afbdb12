"""Integer relation detection (PSLQ) and experimental ladder discovery.

The engine is a single-level PSLQ with gamma = sqrt(4/3), run in fixed-point
integer arithmetic carved out of the requested bit precision (64 extra bits
internally).  Beyond the relation vector itself it reports what the classical
implementations usually discard:

* the iteration count and precision actually used;
* on success, a certified bound on |sum c_i v_i| for the *given* input
  values (the fixed-point dot product is computed exactly);
* on failure, an exclusion bound: no integer relation with max-norm below
  the bound exists among the supplied approximations.  The bound is the
  PSLQ min-diagonal bound (a Euclidean-norm lower bound divided by sqrt(n)
  and a safety factor of 2), and it bounds relations among the computed
  approximations -- statements about the underlying exact numbers are only
  as good as the inputs.

`discover` turns a relation among Li2 powers, log^2 u and zeta(2) into a
ladder, and re-verifies the residual at doubled precision before returning;
a spurious near-relation fails that re-check and raises PrecisionExhausted
instead of being reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from . import numerics
from .algebra import RatPoly, _mpf_to_fraction, positive_root
from .ladders import Ladder, make_ladder

GAMMA_SQUARED = Fraction(4, 3)

_EXTRA_BITS = 64


class PrecisionExhausted(RuntimeError):
    """PSLQ hit numerical noise or its iteration cap before deciding."""


@dataclass(frozen=True)
class RelationResult:
    """An integer relation: primitive coefficients, first nonzero positive."""

    coeffs: tuple[int, ...]
    residual_bound: mp.mpf
    iterations: int
    precision_used: int

    def to_json(self) -> dict:
        return {
            "coeffs": list(self.coeffs),
            "residual_bound": mp.nstr(self.residual_bound, 8),
            "iterations": self.iterations,
            "precision_used": self.precision_used,
        }


@dataclass(frozen=True)
class Exclusion:
    """No-relation outcome; falsy, with a certified max-norm exclusion bound."""

    bound: mp.mpf
    iterations: int
    precision_used: int

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {
            "coeffs": None,
            "exclusion_bound": mp.nstr(self.bound, 8),
            "iterations": self.iterations,
            "precision_used": self.precision_used,
        }


def _normalize(vec: list[int]) -> tuple[int, ...]:
    g = 0
    for c in vec:
        g = math.gcd(g, c)
    if g:
        vec = [c // g for c in vec]
    for c in vec:
        if c:
            return tuple(vec) if c > 0 else tuple(-x for x in vec)
    raise ValueError("zero relation vector")


def _sqrt_fixed(x: int, prec: int) -> int:
    return math.isqrt(x << prec)


def pslq(
    values,
    prec: int,
    max_norm: int = 10**6,
    max_iterations: int | None = None,
) -> RelationResult | Exclusion:
    """Search for integer coefficients c with |c|_inf <= max_norm and c . values ~ 0.

    Returns a RelationResult whose residual_bound certifies the dot product
    against the supplied values, or an Exclusion whose bound certifies that
    no relation of max-norm up to max_norm exists among them.  Raises
    PrecisionExhausted when noise or the iteration cap preempts a decision.
    """
    n = len(values)
    if n < 2:
        raise ValueError("pslq needs at least two values")
    if prec < 64:
        raise ValueError("pslq needs at least 64 bits of precision")
    if max_norm < 1:
        raise ValueError("max_norm must be positive")
    if max_iterations is None:
        max_iterations = max(10_000, 500 * n * n)

    p = prec + _EXTRA_BITS
    one = 1 << p
    target = (3 * prec) // 4
    tol = 1 << (p - target)

    with mp.workprec(p):
        vals = [numerics.as_mpf(v) for v in values]
        if any(v == 0 for v in vals):
            raise ValueError("pslq requires nonzero input values")
        x = [0] + [int(mp.ldexp(v, p)) for v in vals]
        norm_v = float(mp.norm(mp.matrix(vals)))
    if any(abs(xi) < tol for xi in x[1:]):
        raise ValueError("input values too small for this precision")

    def round_fixed(a: int) -> int:
        return ((a + (1 << (p - 1))) >> p) << p

    g = _sqrt_fixed((GAMMA_SQUARED.numerator << p) // GAMMA_SQUARED.denominator, p)

    A = [[0] * (n + 1) for _ in range(n + 1)]
    B = [[0] * (n + 1) for _ in range(n + 1)]
    H = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        A[i][i] = B[i][i] = one

    s = [0] * (n + 1)
    t = 0
    for k in range(n, 0, -1):
        t += (x[k] * x[k]) >> p
        s[k] = _sqrt_fixed(t, p)
    t = s[1]
    y = x[:]
    for k in range(1, n + 1):
        y[k] = (x[k] << p) // t
        s[k] = (s[k] << p) // t
    for i in range(1, n + 1):
        if i <= n - 1 and s[i]:
            H[i][i] = (s[i + 1] << p) // s[i]
        for j in range(1, i):
            d = s[j] * s[j + 1]
            if d:
                H[i][j] = ((-y[i] * y[j]) << p) // d
    for i in range(2, n + 1):
        for j in range(i - 1, 0, -1):
            if not H[j][j]:
                continue
            t = round_fixed((H[i][j] << p) // H[j][j])
            if not t:
                continue
            y[j] += (t * y[i]) >> p
            for k in range(1, j + 1):
                H[i][k] -= (t * H[j][k]) >> p
            for k in range(1, n + 1):
                A[i][k] -= (t * A[j][k]) >> p
                B[k][j] += (t * B[k][i]) >> p

    sqrt_n = math.isqrt(n - 1) + 1
    best_bound = 0.0

    for iteration in range(1, max_iterations + 1):
        m, biggest = -1, -1
        gpow = one
        for i in range(1, n):
            gpow = (gpow * g) >> p
            size = (gpow * abs(H[i][i])) >> p
            if size > biggest:
                m, biggest = i, size

        y[m], y[m + 1] = y[m + 1], y[m]
        A[m], A[m + 1] = A[m + 1], A[m]
        H[m], H[m + 1] = H[m + 1], H[m]
        for row in B:
            row[m], row[m + 1] = row[m + 1], row[m]

        if m <= n - 2:
            t0 = _sqrt_fixed((H[m][m] ** 2 + H[m][m + 1] ** 2) >> p, p)
            if not t0:
                raise PrecisionExhausted("degenerate pivot; raise the precision")
            t1 = (H[m][m] << p) // t0
            t2 = (H[m][m + 1] << p) // t0
            for i in range(m, n + 1):
                t3, t4 = H[i][m], H[i][m + 1]
                H[i][m] = (t1 * t3 + t2 * t4) >> p
                H[i][m + 1] = (t1 * t4 - t2 * t3) >> p

        for i in range(m + 1, n + 1):
            for j in range(min(i - 1, m + 1), 0, -1):
                if not H[j][j]:
                    raise PrecisionExhausted("zero diagonal during reduction")
                t = round_fixed((H[i][j] << p) // H[j][j])
                if not t:
                    continue
                y[j] += (t * y[i]) >> p
                for k in range(1, j + 1):
                    H[i][k] -= (t * H[j][k]) >> p
                for k in range(1, n + 1):
                    A[i][k] -= (t * A[j][k]) >> p
                    B[k][j] += (t * B[k][i]) >> p

        for i in range(1, n + 1):
            if abs(y[i]) < tol:
                vec = [int(round_fixed(B[j][i]) >> p) for j in range(1, n + 1)]
                if not any(vec):
                    raise PrecisionExhausted("null candidate; raise the precision")
                coeffs = _normalize(vec)
                if max(abs(c) for c in coeffs) > max_norm:
                    continue  # a larger relation exists; keep looking below max_norm
                # certify against the fixed-point inputs: exact integer dot
                dot = sum(c * xi for c, xi in zip(coeffs, x[1:]))
                slack = sum(abs(c) for c in coeffs)
                with mp.workprec(p):
                    bound = (mp.mpf(abs(dot)) + slack) / mp.mpf(2) ** p
                    screen = mp.mpf(2) ** (-(prec // 2)) * norm_v
                if bound >= screen:
                    raise PrecisionExhausted(
                        "candidate failed certification; raise the precision"
                    )
                return RelationResult(
                    coeffs=coeffs,
                    residual_bound=numerics.round_to(bound, 64),
                    iterations=iteration,
                    precision_used=prec,
                )

        rec = max(abs(h) for row in H for h in row)
        if rec:
            # Euclidean-norm lower bound 1/max|H|, halved for fixed-point slack,
            # then converted to a max-norm statement
            euclid = ((one * one) // rec) >> p  # plain integer part of 1/max|H|
            inf_bound = euclid / (2 * sqrt_n)
            best_bound = max(best_bound, inf_bound)
            if inf_bound > max_norm:
                return Exclusion(
                    bound=mp.mpf(inf_bound),
                    iterations=iteration,
                    precision_used=prec,
                )

    raise PrecisionExhausted(
        f"no decision after {max_iterations} iterations "
        f"(best exclusion bound {best_bound:.3g}); raise the precision"
    )


# ---------------------------------------------------------------------------
# ladder discovery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscoveryOutcome:
    """Full record of one discovery run (CLI and tests want the details)."""

    ladder: Ladder | None
    relation: RelationResult | None
    exclusion: Exclusion | None
    exponents: tuple[int, ...]
    precision: int


def _ladder_vector(base: RatPoly, exponents, prec: int):
    exps = sorted({int(e) for e in exponents})
    if not exps or exps[0] < 1:
        raise ValueError("exponents must be positive integers")
    root = positive_root(base, prec=min(prec, 64), unit_interval=True)
    work = prec + 32
    u = root.value(work)
    with mp.workprec(work):
        vector = [numerics.li2_real(u**r, work) for r in exps]
        vector.append(mp.log(u) ** 2)
        vector.append(numerics.const_zeta2(work))
    return root, exps, vector


def discover_detailed(
    base: RatPoly,
    exponents,
    prec: int,
    max_norm: int = 10**6,
    max_iterations: int | None = None,
) -> DiscoveryOutcome:
    """Run PSLQ over (Li2(u^r), log^2 u, zeta(2)) and package the outcome.

    A found relation is re-verified as a ladder residual at doubled precision
    before being reported; no relation is ever returned on the strength of a
    single-precision match alone.
    """
    root, exps, vector = _ladder_vector(base, exponents, prec)
    result = pslq(vector, prec, max_norm=max_norm, max_iterations=max_iterations)
    if isinstance(result, Exclusion):
        return DiscoveryOutcome(None, None, result, tuple(exps), prec)

    coeffs = result.coeffs
    ladder = make_ladder(
        root,
        [(r, c) for r, c in zip(exps, coeffs)],
        log_coeff=coeffs[-2],
        zeta_terms=[(2, coeffs[-1])],
    )
    from .ladders import residual  # local import keeps module load cheap

    check = residual(ladder, 2 * prec)
    if not abs(check) < mp.mpf(2) ** (-(5 * prec) // 4):
        raise PrecisionExhausted(
            "relation failed re-verification at doubled precision"
        )
    return DiscoveryOutcome(ladder, result, None, tuple(exps), prec)


def discover(
    base: RatPoly,
    exponents,
    prec: int,
    max_norm: int = 10**6,
    max_iterations: int | None = None,
) -> Ladder | None:
    """Discover a ladder on `base` over the given exponent set, or None."""
    outcome = discover_detailed(base, exponents, prec, max_norm, max_iterations)
    return outcome.ladder


def discover_all(
    base: RatPoly,
    exponents,
    prec: int,
    max_norm: int = 10**6,
    max_iterations: int | None = None,
) -> list[tuple[int, ...]]:
    """All independent relations PSLQ can reach, by pivot deflation.

    After each relation is found, the coordinate carrying its largest
    coefficient is removed and the search repeats on the rest, so the output
    vectors (in the full coordinate order: ascending exponents, log^2 u,
    zeta(2)) are linearly independent and span the reachable relation space
    over Q.  Exhaustion of precision mid-sweep ends the sweep; relations
    already found are returned.
    """
    root, exps, vector = _ladder_vector(base, exponents, prec)
    dim = len(vector)
    active = list(range(dim))
    found: list[tuple[int, ...]] = []
    while len(active) >= 2:
        sub = [vector[i] for i in active]
        try:
            result = pslq(sub, prec, max_norm=max_norm, max_iterations=max_iterations)
        except PrecisionExhausted:
            break
        if isinstance(result, Exclusion):
            break
        full = [0] * dim
        for idx, c in zip(active, result.coeffs):
            full[idx] = c
        found.append(tuple(full))
        pivot = max(range(len(result.coeffs)), key=lambda k: abs(result.coeffs[k]))
        del active[pivot]
    return found


def in_rational_span(vector, basis) -> bool:
    """Exact membership of an integer vector in the Q-span of integer vectors."""
    rows = [[Fraction(c) for c in b] for b in basis]
    target = [Fraction(c) for c in vector]
    if not rows:
        return not any(target)
    width = len(target)
    if any(len(r) != width for r in rows):
        raise ValueError("dimension mismatch")
    # Gauss-reduce the generators, then eliminate the target against them
    mat = [r[:] for r in rows]
    pivots = []
    r_i = 0
    for c_j in range(width):
        pivot = None
        for k in range(r_i, len(mat)):
            if mat[k][c_j]:
                pivot = k
                break
        if pivot is None:
            continue
        mat[r_i], mat[pivot] = mat[pivot], mat[r_i]
        pv = mat[r_i][c_j]
        mat[r_i] = [v / pv for v in mat[r_i]]
        for k in range(len(mat)):
            if k != r_i and mat[k][c_j]:
                f = mat[k][c_j]
                mat[k] = [a - f * b for a, b in zip(mat[k], mat[r_i])]
        pivots.append(c_j)
        r_i += 1
    # reduce the target against the echelon basis
    t = target[:]
    for row_idx, c_j in enumerate(pivots):
        if t[c_j]:
            f = t[c_j]
            t = [a - f * b for a, b in zip(t, mat[row_idx])]
    return not any(t)


def rationalize(x, max_den: int, prec: int) -> Fraction | None:
    """Best rational with denominator <= max_den, if within 2**-(prec/2) of x."""
    if max_den < 1:
        raise ValueError("max_den must be positive")
    exact = _mpf_to_fraction(numerics.round_to(x, prec + 8))
    cand = exact.limit_denominator(max_den)
    if abs(cand - exact) < Fraction(1, 1 << (prec // 2)):
        return cand
    return None
