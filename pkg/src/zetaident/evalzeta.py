"""Arbitrary-precision evaluation of the derived identities.

Big-float arithmetic is mpmath (mpf/mpc); every public operation takes a
decimal `digits` target and works internally at digits + 10 guard digits
(more where cancellation demands it). Exact rationals from the derivation
layer are converted at working precision only at the point of use.

The independent cross-check `zeta_em_reference` computes zeta directly by
Euler-Maclaurin summation and shares nothing with `eval_identity` except
the Bernoulli table, so agreement between the two is meaningful.

Inner sums use the fixed schedule N = 10 + digits direct terms and
M = ceil(digits/4) + 5 correction terms. Truncation of the outer series
stops at the first k >= k0 + 8 whose bound
|r_k| * |(s)_k| / (k+1)! * 2^(1 - Re s - k) * 4 drops below 10^-(digits+5);
the 2^(1-sigma) factor majorizes |zeta(sigma) - 1| (times the safety 4).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Union

from mpmath import mp

from .derive import IdentitySpec
from .exactmath import Polynomial, bernoulli

_GUARD = 10

Number = Union[int, float, complex, Fraction]


class PoleError(ValueError):
    """Evaluation point is at (or numerically indistinguishable from) s = 1."""


class CapacityError(ValueError):
    """The identity does not store (or extrapolate to) enough series terms
    for the requested precision."""


@dataclass
class EvalReport:
    """Result of one identity evaluation.

    error_estimate bounds |value - zeta(s)|: outer truncation bound plus
    accumulated inner-sum bounds plus a rounding allowance.
    inner_sum_cutoffs records the (uniform) inner schedule used.
    """

    value: object
    p_used: int
    terms_used: int
    error_estimate: float
    inner_sum_cutoffs: dict


def _check_digits(digits: int) -> None:
    if not isinstance(digits, int) or digits < 15:
        raise ValueError("digits must be an integer >= 15")


def _direct_terms(digits: int) -> int:
    return 10 + digits


def _em_order(digits: int) -> int:
    return (digits + 3) // 4 + 5


def _fraction_to_mp(q: Fraction):
    return mp.mpf(q.numerator) / q.denominator


def _to_mp(x):
    """Convert to mpf/mpc at the current working precision.

    Accepts ints, floats, complex, Fractions, mpf/mpc, and (re, im) pairs
    of exact rationals (how the CLI passes decimal complex literals without
    a float round trip).
    """
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    if isinstance(x, complex):
        return mp.mpc(x)
    if isinstance(x, tuple) and len(x) == 2:
        return mp.mpc(_to_mp(x[0]), _to_mp(x[1]))
    return mp.mpmathify(x)


def _poly_eval_mp(poly: Polynomial, x):
    """Horner evaluation with per-step conversion of exact coefficients."""
    acc = mp.mpf(0)
    for c in reversed(poly.coefficients):
        acc = acc * x + _fraction_to_mp(c)
    return acc


def _real_part(s: Number) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, (int, float)):
        return Fraction(s)
    if isinstance(s, complex):
        return Fraction(s.real)
    if isinstance(s, tuple) and len(s) == 2:
        return _real_part(s[0])
    return Fraction(float(mp.re(s)))


def pochhammer(s, k: int):
    """Rising factorial s(s+1)...(s+k-1); empty product 1 for k = 0.

    Exact for int/Fraction input, working-precision floats otherwise.
    """
    if k < 0:
        raise ValueError("pochhammer order must be nonnegative")
    result = 1
    for i in range(k):
        result = result * (s + i)
    return result


# One entry per (sigma, digits): the value is independent of call order, so
# caching never changes results, only cost. Guarded for concurrent growth.
_ZETA_M1_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def _zeta_m1_core(z, digits: int):
    """(zeta(z) - 1, error bound) for Re z >= 1.5 by Euler-Maclaurin.

    z must already be an mpf/mpc created at digits + 10 working precision.
    """
    key = (mp.mpc(z), digits)
    hit = _ZETA_M1_CACHE.get(key)
    if hit is not None:
        return hit
    n_direct = _direct_terms(digits)
    order = _em_order(digits)
    with mp.workdps(digits + _GUARD):
        total = mp.mpf(0)
        for n in range(2, n_direct):
            total += mp.power(n, -z)
        nf = mp.mpf(n_direct)
        total += mp.power(nf, 1 - z) / (z - 1)
        total += mp.power(nf, -z) / 2
        poch = z
        npow = mp.power(nf, -z - 1)
        inv_n2 = 1 / (nf * nf)
        fact = 2
        j = 1
        while True:
            b = bernoulli(2 * j)
            term = _fraction_to_mp(b) / fact * poch * npow
            if j > order:
                # first omitted term times the standard reflection factor
                reflect = abs((z + 2 * order + 1) / (mp.re(z) + 2 * order + 1))
                err = abs(term) * reflect
                err += mp.mpf(10) ** (-(digits + _GUARD - 2)) * (1 + abs(total))
                break
            total += term
            poch = poch * (z + 2 * j - 1) * (z + 2 * j)
            npow = npow * inv_n2
            fact = fact * (2 * j + 1) * (2 * j + 2)
            j += 1
    with _CACHE_LOCK:
        _ZETA_M1_CACHE.setdefault(key, (total, err))
    return _ZETA_M1_CACHE[key]


def zeta_m1(sigma, digits: int = 40):
    """zeta(sigma) - 1, keeping full relative accuracy when the value is
    tiny (large Re sigma). Requires Re sigma >= 1.5."""
    _check_digits(digits)
    with mp.workdps(digits + _GUARD):
        z = _to_mp(sigma)
        if not mp.re(z) >= mp.mpf(3) / 2:
            raise ValueError(
                "zeta_m1 requires Re(sigma) >= 1.5; identity evaluation keeps "
                "inner arguments in this range"
            )
        return _zeta_m1_core(z, digits)[0]


def zeta_em_reference(s, digits: int = 40):
    """Independent zeta oracle: direct Euler-Maclaurin continuation.

    Shares only the Bernoulli table with the identity evaluator. For
    Re s < 1 the direct sum grows like N^(1-Re s) while zeta(s) = O(1), so
    the lost leading digits are compensated with extra working precision.
    """
    _check_digits(digits)
    n_direct = _direct_terms(digits)
    order = _em_order(digits)
    with mp.workdps(digits + _GUARD):
        probe = _to_mp(s)
        if probe == 1:
            raise PoleError("zeta has a pole at s = 1")
        re_s = mp.re(probe)
        extra = 0
        if re_s < 1:
            extra = int(mp.ceil((1 - re_s) * mp.log10(n_direct))) + 2
    with mp.workdps(digits + _GUARD + extra):
        z = _to_mp(s)
        total = mp.mpf(0)
        for n in range(1, n_direct):
            total += mp.power(n, -z)
        nf = mp.mpf(n_direct)
        total += mp.power(nf, 1 - z) / (z - 1)
        total += mp.power(nf, -z) / 2
        poch = z
        npow = mp.power(nf, -z - 1)
        inv_n2 = 1 / (nf * nf)
        fact = 2
        for j in range(1, order + 1):
            b = bernoulli(2 * j)
            total += _fraction_to_mp(b) / fact * poch * npow
            poch = poch * (z + 2 * j - 1) * (z + 2 * j)
            npow = npow * inv_n2
            fact = fact * (2 * j + 1) * (2 * j + 2)
    return total


def supports(spec: IdentitySpec, s: Number) -> bool:
    """Whether eval_identity accepts s for this identity: inside the
    validity half-plane and with inner arguments Re(s) + k0 >= 1.5."""
    re_s = _real_part(s)
    return re_s > spec.effective_validity and re_s + spec.k0 >= Fraction(3, 2)


def eval_identity(spec: IdentitySpec, s: Number, digits: int = 40) -> EvalReport:
    """Evaluate zeta(s) through the depth-p identity at the given target
    precision.

    Raises ValueError outside the validity half-plane or when the inner
    series arguments would leave Re >= 1.5, PoleError within 10^(-digits/2)
    of s = 1, and CapacityError when more series terms are needed than the
    spec stores and no closed form is available to extrapolate.
    """
    _check_digits(digits)
    wp = digits + _GUARD
    with mp.workdps(wp):
        z = _to_mp(s)
        bound = spec.effective_validity
        if not mp.re(z) > _fraction_to_mp(bound):
            raise ValueError(
                f"s with Re s = {mp.nstr(mp.re(z), 8)} is outside the validity "
                f"half-plane Re s > {bound} of the depth-{spec.p} identity"
            )
        if abs(z - 1) <= mp.mpf(10) ** (-mp.mpf(digits) / 2):
            raise PoleError(
                f"s is within the pole guard radius 10^-({digits}/2) of s = 1"
            )
        if not mp.re(z) + spec.k0 >= mp.mpf(3) / 2:
            raise ValueError(
                f"inner series argument Re(s) + k0 = Re(s) + {spec.k0} falls "
                f"below 1.5; use a deeper identity (larger p)"
            )
        threshold = mp.mpf(10) ** (-(digits + 5))
        total = _fraction_to_mp(spec.pole_coefficient) / (z - 1)
        total += _poly_eval_mp(spec.q_poly, z)
        re_z = mp.re(z)
        k = spec.k0
        poch = pochhammer(z, k)
        fact = factorial(k + 1)
        inner_err = mp.mpf(0)
        max_term = mp.mpf(0)
        while True:
            r = spec.series_coefficient(k)
            if r is None:
                raise CapacityError(
                    f"depth-{spec.p} identity stores coefficients through "
                    f"k={spec.k_max} and has no closed form; k={k} is needed "
                    f"at digits={digits}"
                )
            r_mp = _fraction_to_mp(r)
            coef = r_mp * poch / mp.mpf(fact)
            if coef != 0:
                inner_val, ierr = _zeta_m1_core(z + k, digits)
                term = coef * inner_val
                total += term
                inner_err += abs(coef) * ierr
                at = abs(term)
                if at > max_term:
                    max_term = at
            tail_bound = abs(r_mp) * abs(poch) / mp.mpf(fact)
            tail_bound *= mp.power(2, 1 - re_z - k) * 4
            if k >= spec.k0 + 8 and tail_bound < threshold:
                break
            poch = poch * (z + k)
            fact = fact * (k + 2)
            k += 1
        rounding = (k + 16) * mp.mpf(10) ** (-(wp - 2))
        rounding *= 1 + max_term + abs(total)
        return EvalReport(
            value=mp.mpc(total),
            p_used=spec.p,
            terms_used=k,
            error_estimate=float(tail_bound + inner_err + rounding),
            inner_sum_cutoffs={
                "direct_terms": _direct_terms(digits),
                "correction_order": _em_order(digits),
            },
        )


def zeta_prime_at_zero(spec: IdentitySpec, digits: int = 40):
    """zeta'(0) from the term-by-term derivative of the identity at s = 0:
    -pole + Q'(0) + sum_k r_k / (k(k+1)) * (zeta(k) - 1).

    Needs an identity valid at 0, i.e. depth p >= 2.
    """
    _check_digits(digits)
    if spec.effective_validity >= 0:
        raise ValueError(
            f"depth-{spec.p} identity is not valid at s = 0; use p >= 2"
        )
    with mp.workdps(digits + _GUARD):
        threshold = mp.mpf(10) ** (-(digits + 5))
        qprime0 = spec.q_poly.derivative().coefficient(0)
        total = -_fraction_to_mp(spec.pole_coefficient) + _fraction_to_mp(qprime0)
        k = spec.k0
        while True:
            r = spec.series_coefficient(k)
            if r is None:
                raise CapacityError(
                    f"depth-{spec.p} identity stores coefficients through "
                    f"k={spec.k_max} and has no closed form; k={k} is needed "
                    f"at digits={digits}"
                )
            r_mp = _fraction_to_mp(r)
            if r_mp != 0:
                inner_val, _ = _zeta_m1_core(mp.mpf(k), digits)
                total += r_mp / (k * (k + 1)) * inner_val
            bound = abs(r_mp) / (k * (k + 1)) * mp.power(2, 1 - k) * 4
            if k >= spec.k0 + 8 and bound < threshold:
                break
            k += 1
        return total


def sum_zeta_m1(digits: int = 40):
    """Partial sum of sum_{k>=2} (zeta(k) - 1), truncated at the first K
    with 2*2^-K < 10^-digits. The full sum is exactly 1."""
    _check_digits(digits)
    k_top = 2
    limit = 2 * 10**digits
    while 2**k_top <= limit:
        k_top += 1
    with mp.workdps(digits + _GUARD):
        total = mp.mpf(0)
        for k in range(2, k_top + 1):
            total += _zeta_m1_core(mp.mpf(k), digits)[0]
        return total


def trivial_zero_report(spec: IdentitySpec, digits: int = 40) -> list[tuple[int, float]]:
    """|zeta(-2m)| through the identity at every even negative integer
    inside the validity half-plane. Empty for depths whose half-plane
    contains no such point (p <= 2)."""
    _check_digits(digits)
    out: list[tuple[int, float]] = []
    m = -2
    while m > spec.effective_validity:
        report = eval_identity(spec, m, digits)
        out.append((m, float(abs(report.value))))
        m -= 2
    return out
