import dataclasses
from fractions import Fraction

import pytest
from mpmath import mp

from zetaident.evalzeta import (
    CapacityError,
    PoleError,
    eval_identity,
    pochhammer,
    supports,
    sum_zeta_m1,
    trivial_zero_report,
    zeta_em_reference,
    zeta_m1,
    zeta_prime_at_zero,
)


def F(n, d=1):
    return Fraction(n, d)


# ---- pochhammer ----


def test_pochhammer_integers():
    assert pochhammer(3, 2) == 12
    assert pochhammer(5, 0) == 1
    assert pochhammer(0, 3) == 0


def test_pochhammer_exact_fraction():
    assert pochhammer(F(1, 2), 3) == F(15, 8)


def test_pochhammer_float_context():
    with mp.workdps(30):
        assert pochhammer(mp.mpf("0.5"), 3) == mp.mpf(15) / 8


def test_pochhammer_negative_order():
    with pytest.raises(ValueError):
        pochhammer(2, -1)


# ---- zeta_m1 ----


def test_zeta_m1_at_two():
    with mp.workdps(60):
        assert abs(zeta_m1(2, 40) - (mp.pi**2 / 6 - 1)) < mp.mpf(10) ** -44


def test_zeta_m1_at_four():
    with mp.workdps(60):
        assert abs(zeta_m1(4, 40) - (mp.pi**4 / 90 - 1)) < mp.mpf(10) ** -44


def test_zeta_m1_keeps_relative_accuracy_when_tiny():
    with mp.workdps(60):
        value = zeta_m1(60, 40)
        assert abs(value * mp.mpf(2) ** 60 - 1) < mp.mpf(10) ** -9


def test_zeta_m1_complex_argument():
    with mp.workdps(60):
        value = zeta_m1(mp.mpc(2, 20), 40)
        assert abs(value) < 1


def test_zeta_m1_domain():
    with pytest.raises(ValueError):
        zeta_m1(1.2, 40)
    zeta_m1(1.5, 40)  # boundary is allowed


def test_digits_floor():
    for call in (
        lambda: zeta_m1(2, 14),
        lambda: zeta_em_reference(2, 14),
        lambda: sum_zeta_m1(14),
    ):
        with pytest.raises(ValueError):
            call()


# ---- zeta_em_reference ----


def test_em_reference_matches_constants():
    with mp.workdps(60):
        assert abs(zeta_em_reference(2, 40) - mp.pi**2 / 6) < mp.mpf(10) ** -44
        assert abs(zeta_em_reference(0, 40) + F(1, 2)) < mp.mpf(10) ** -44
        assert abs(zeta_em_reference(-1, 40) + F(1, 12)) < mp.mpf(10) ** -40


def test_em_reference_trivial_zero():
    with mp.workdps(60):
        assert abs(zeta_em_reference(-8, 40)) < mp.mpf(10) ** -40


def test_em_reference_pole():
    with pytest.raises(PoleError):
        zeta_em_reference(1, 40)


def test_em_reference_deterministic():
    a = zeta_em_reference(F(-21, 2), 40)
    b = zeta_em_reference(F(-21, 2), 40)
    assert a == b


# ---- eval_identity: values ----


def test_zeta_zero_is_exact_minus_half(specs64):
    with mp.workdps(60):
        for p in range(2, 13):
            report = eval_identity(specs64[p], 0, 40)
            assert abs(report.value + F(1, 2)) < mp.mpf(10) ** -39


def test_zeta_of_two_through_depth_five(specs64):
    with mp.workdps(60):
        report = eval_identity(specs64[5], 2, 40)
        assert abs(report.value - mp.pi**2 / 6) < mp.mpf(10) ** -40


def test_zeta_at_minus_one(specs64):
    with mp.workdps(60):
        report = eval_identity(specs64[3], -1, 40)
        assert abs(report.value + F(1, 12)) < mp.mpf(10) ** -40


def test_depths_agree_with_each_other(specs64):
    # p=1 is excluded: its inner series at s=1/4 starts at zeta(5/4).
    with mp.workdps(60):
        values = [
            eval_identity(specs64[p], F(1, 4), 40).value for p in range(2, 13)
        ]
        for v in values[1:]:
            assert abs(v - values[0]) < mp.mpf(10) ** -38


def test_identity_agrees_with_em_reference_spot(specs64):
    with mp.workdps(60):
        s = (F(1, 2), F(29, 2))
        direct = zeta_em_reference(s, 40)
        via_identity = eval_identity(specs64[3], s, 40).value
        assert abs(direct - via_identity) < mp.mpf(10) ** -36


def test_input_forms_agree(specs64):
    a = eval_identity(specs64[3], complex(0.5, 14.5), 40).value
    b = eval_identity(specs64[3], (F(1, 2), F(29, 2)), 40).value
    assert a == b


def test_pole_laurent_behavior(specs64):
    s = 1 + F(1, 10**6)
    with mp.workdps(60):
        report = eval_identity(specs64[2], s, 40)
        assert abs(report.value * F(1, 10**6) - 1) < mp.mpf(10) ** -5


def test_deterministic_bits(specs64):
    a = eval_identity(specs64[7], (F(-9, 4), F(3, 2)), 40)
    b = eval_identity(specs64[7], (F(-9, 4), F(3, 2)), 40)
    assert a.value == b.value
    assert a.error_estimate == b.error_estimate
    assert a.terms_used == b.terms_used


# ---- eval_identity: report contents ----


def test_report_fields(specs64):
    report = eval_identity(specs64[2], 3, 40)
    assert report.p_used == 2
    assert report.terms_used >= specs64[2].k0 + 8
    assert report.error_estimate >= 0
    assert report.inner_sum_cutoffs == {"direct_terms": 50, "correction_order": 15}


def test_series_short_circuits_at_negative_even_integers(specs64):
    # all rising factorials vanish there, so only k0+8 terms are touched
    report = eval_identity(specs64[5], -2, 40)
    assert report.terms_used == specs64[5].k0 + 8
    assert abs(report.value) < 1e-40


def test_error_estimate_covers_observed_error(specs64):
    points = [
        (1, F(5, 2)),
        (2, F(1, 4)),
        (3, (F(-3, 4), F(0))),
        (7, (F(-9, 2), F(2))),
        (12, F(-21, 2)),
    ]
    with mp.workdps(80):
        for p, s in points:
            coarse = eval_identity(specs64[p], s, 40)
            fine = eval_identity(specs64[p], s, 60)
            assert abs(coarse.value - fine.value) <= coarse.error_estimate


# ---- eval_identity: errors ----


def test_outside_validity(specs64):
    with pytest.raises(ValueError, match="validity"):
        eval_identity(specs64[3], -5, 40)


def test_inner_argument_constraint(specs64):
    with pytest.raises(ValueError, match="deeper"):
        eval_identity(specs64[1], F(1, 4), 40)
    with pytest.raises(ValueError, match="deeper"):
        eval_identity(specs64[2], F(-3, 4), 40)


def test_pole_guard(specs64):
    with pytest.raises(PoleError):
        eval_identity(specs64[2], 1 + F(1, 10**25), 40)
    eval_identity(specs64[2], F(5, 4), 40)  # outside the guard radius


def test_capacity_error_names_required_index(specs64):
    stripped = dataclasses.replace(specs64[2], closed_form=None)
    with pytest.raises(CapacityError, match=r"k=65"):
        eval_identity(stripped, F(1, 4), 40)


def test_digits_floor_eval(specs64):
    with pytest.raises(ValueError):
        eval_identity(specs64[2], 3, 14)


# ---- supports ----


def test_supports_half_plane(specs64):
    assert supports(specs64[3], F(-5, 2))
    assert not supports(specs64[3], -3)
    assert not supports(specs64[3], F(-7, 2))
    assert supports(specs64[12], F(-21, 2))
    assert not supports(specs64[2], F(-3, 4))  # inner constraint
    assert supports(specs64[3], complex(-0.75, 2.0))


# ---- derivative, sums, trivial zeros ----


def test_zeta_prime_at_zero_two_depths(specs64):
    with mp.workdps(60):
        target = -mp.log(2 * mp.pi) / 2
        v2 = zeta_prime_at_zero(specs64[2], 40)
        v3 = zeta_prime_at_zero(specs64[3], 40)
        assert abs(v2 - target) < mp.mpf(10) ** -38
        assert abs(v3 - target) < mp.mpf(10) ** -38
        assert abs(v2 - v3) < mp.mpf(10) ** -38


def test_zeta_prime_needs_validity_at_zero(specs64):
    with pytest.raises(ValueError):
        zeta_prime_at_zero(specs64[1], 40)


def test_sum_zeta_m1_totals_one():
    with mp.workdps(60):
        assert abs(sum_zeta_m1(40) - 1) < mp.mpf(10) ** -40


def test_trivial_zero_report_domains(specs64):
    assert trivial_zero_report(specs64[2], 40) == []
    report = trivial_zero_report(specs64[5], 40)
    assert [s for s, _ in report] == [-2, -4]
    assert all(magnitude < 1e-39 for _, magnitude in report)
    deep = trivial_zero_report(specs64[12], 40)
    assert [s for s, _ in deep] == [-2, -4, -6, -8, -10]
