"""Reference coefficient tables for depths 1 through 12.

The polynomial parts Q_p and the closed forms of the series coefficients
r_k below are transcribed as printed in the source tables, kept in factored
form where the source factors them. They are deliberately NOT computed by
the derivation engine: the verifier compares engine output against this
independent transcription, so any slip in either route shows up as a
mismatch.

Even depths 4, 6, 8, 10, 12 produce the same identity as the preceding odd
depth (the derivation pairs up), so their records reuse the odd-depth data
with the nominal validity bound of the even depth.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .exactmath import Polynomial
from .derive import IdentitySpec

MAX_REFERENCE_DEPTH = 12

# Q_p as printed: list of coefficients, ascending in s.
_Q_TABLE: dict[int, tuple[Fraction, ...]] = {
    1: (Fraction(1),),
    2: (Fraction(1, 2),),
    3: (Fraction(1, 2), Fraction(1, 12)),
    5: (Fraction(1, 2), Fraction(29, 360), Fraction(-1, 240), Fraction(-1, 720)),
    7: tuple(
        Fraction(c, 30240) for c in (15120, 2460, -76, -7, 10, 1)
    ),
    9: tuple(
        Fraction(c, 1209600)
        for c in (604800, 97680, -4804, -1904, -335, -135, -21, -1)
    ),
    11: tuple(
        Fraction(c, 239500800)
        for c in (
            119750400,
            19542240,
            -403272,
            213628,
            270090,
            85515,
            18522,
            2532,
            180,
            5,
        )
    ),
}

# Closed form of r_k as printed: (k0, prefactor, factors), each factor a
# coefficient list ascending in k. The expanded polynomial reproduces r_k
# for every k >= k0 and vanishes at the skipped indices below k0.
_SERIES_TABLE: dict[int, tuple[int, Fraction, tuple[tuple[int, ...], ...]]] = {
    1: (1, Fraction(-1), ()),
    2: (2, Fraction(1, 2), ((-1, 1),)),
    3: (4, Fraction(-1, 12), ((-2, 1), (-3, 1))),
    5: (6, Fraction(1, 720), ((-2, 1), (-4, 1), (-5, 1), (9, 1))),
    7: (
        8,
        Fraction(-1, factorial(6) * 42),
        ((-2, 1), (-4, 1), (-6, 1), (-7, 1), (45, 10, 1)),
    ),
    9: (
        10,
        Fraction(1, factorial(8) * 30),
        ((-2, 1), (-4, 1), (-6, 1), (-8, 1), (-9, 1), (5, 1), (35, 4, 1)),
    ),
    11: (
        12,
        Fraction(-1, factorial(10) * 66),
        (
            (-2, 1),
            (-4, 1),
            (-6, 1),
            (-8, 1),
            (-10, 1),
            (-11, 1),
            (2835, 1122, 232, 30, 5),
        ),
    ),
}


def _expand_closed_form(p_base: int) -> Polynomial:
    _, prefactor, factors = _SERIES_TABLE[p_base]
    poly = Polynomial.constant(prefactor)
    for coeffs in factors:
        poly = poly * Polynomial(coeffs)
    return poly


def reference_identity(p: int, k_max: int = 64) -> IdentitySpec:
    """The depth-p identity built from the transcribed tables.

    Series terms are the closed form evaluated at each stored k, which is
    exactly what the source's formulas assert. Supported depths are
    1 <= p <= 12.
    """
    if not 1 <= p <= MAX_REFERENCE_DEPTH:
        raise ValueError(
            f"reference tables cover depths 1..{MAX_REFERENCE_DEPTH}, got p={p}"
        )
    base = p if p in _SERIES_TABLE else p - 1
    k0 = _SERIES_TABLE[base][0]
    if k_max < k0:
        raise ValueError("k_max must be at least k0")
    closed = _expand_closed_form(base)
    terms = tuple((k, closed(Fraction(k))) for k in range(k0, k_max + 1))
    extended = Fraction(-p) if (p == base and p % 2 == 1 and p >= 3) else None
    return IdentitySpec(
        p=p,
        k0=k0,
        pole_coefficient=Fraction(1),
        q_poly=Polynomial(_Q_TABLE[base]),
        terms=terms,
        closed_form=closed,
        validity_re_gt=Fraction(-(p - 1)),
        extended_validity_re_gt=extended,
    )
