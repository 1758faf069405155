"""Thresholds, r-conditions, ray certificates, and the cone-equality sampler."""

import random
from fractions import Fraction

import pytest

from helpers import abelian_surface, k3_surface, p2_blowup, p2_surface, standard_minus_one_records
from surface_cones.cones import ConePosition, in_positive_cone
from surface_cones.errors import InternalConsistencyError, PreconditionError, ThresholdError
from surface_cones.lattice import BlowupModel, SurfaceModel, intersect
from surface_cones.scalar import as_fraction, compare, make_scalar, sign, sqrt_scalar
from surface_cones.thresholds import (
    ThresholdContext,
    check_conditions,
    choose_positive_delta,
    k_minus_sl_h_negative,
    main_theorem_check,
    ray_certificate,
    s_monotonicity,
    s_threshold,
)
from surface_cones.zariski import NegativeCurveRecord


def ctx_p2(r: int) -> ThresholdContext:
    return ThresholdContext.from_model(p2_blowup(r))


class TestSThreshold:
    def test_plane_r10_is_zero(self):
        assert s_threshold(ctx_p2(10), 1) == Fraction(0)

    def test_plane_r17_is_one(self):
        assert s_threshold(ctx_p2(17), 1) == Fraction(1)

    def test_plane_r12_irrational(self):
        assert s_threshold(ctx_p2(12), 1) == make_scalar(-3, 1, 11)

    def test_boundary_strictness_for_n_one(self):
        with pytest.raises(ThresholdError) as info:
            s_threshold(ctx_p2(1), 1)
        assert "strict" in str(info.value)

    def test_negative_radicand(self):
        with pytest.raises(ThresholdError) as info:
            s_threshold(ctx_p2(0), 1)
        assert "r too small" in str(info.value)

    def test_weak_inequality_for_higher_n(self):
        # on a quartic K3 at r = 1 the n = 2 radicand is 4 - 2 = 2 > 0
        ctx = ThresholdContext.from_model(BlowupModel(k3_surface(), 1))
        value = s_threshold(ctx, 2)
        assert compare(value, sqrt_scalar(2) / 4) == 0

    def test_defines_k_sl_square(self):
        for r, n in ((11, 1), (12, 1), (17, 2), (20, 3)):
            model = p2_blowup(r)
            s = s_threshold(ThresholdContext.from_model(model), n)
            k_sl = model.canonical() - s * model.line()
            assert compare(intersect(k_sl, k_sl), Fraction(-1, n)) == 0


class TestCheckConditions:
    def test_plane_basic_bounds(self):
        report = check_conditions(ctx_p2(10), 1, 0)
        assert report.satisfied and report.bound == 10 and not report.strict
        assert check_conditions(ctx_p2(9), 1, 0).satisfied is False

    def test_k3_bound(self):
        ctx = ThresholdContext.from_model(BlowupModel(k3_surface(), 37))
        report = check_conditions(ctx, 2, 1)
        assert report.bound == 1 + 9 * 4 and report.satisfied

    def test_abelian_strict_branch(self):
        ctx = ThresholdContext.from_model(BlowupModel(abelian_surface(), 2))
        report = check_conditions(ctx, 1, 0)
        assert report.strict and report.bound == 1 and report.satisfied
        ctx1 = ThresholdContext.from_model(BlowupModel(abelian_surface(), 1))
        assert check_conditions(ctx1, 1, 0).satisfied is False

    def test_invalid_bounds_rejected(self):
        with pytest.raises(PreconditionError):
            check_conditions(ctx_p2(10), 0, 0)


class TestRayCertificate:
    def test_exceptional_curve(self):
        model = p2_blowup(12)
        s = s_threshold(ThresholdContext.from_model(model), 1)
        cert = ray_certificate(model, NegativeCurveRecord.from_class(model.exceptional(1)), s)
        assert cert.valid and cert.t0 == 1 and cert.checks.all_pass()
        assert sign(intersect(cert.alpha, cert.alpha)) == 0

    def test_line_type_curve_at_rational_threshold(self):
        model = p2_blowup(17)
        s = s_threshold(ThresholdContext.from_model(model), 1)
        curve = NegativeCurveRecord.from_class(
            model.pullback([1]) - model.exceptional(1) - model.exceptional(2)
        )
        cert = ray_certificate(model, curve, s)
        assert cert.valid
        assert cert.t0 == make_scalar(2, 1, 3)

    def test_condition_violation_named(self):
        # genus-1 class 3H - E_1 - ... - E_10 at r = 10 needs r >= 26
        model = p2_blowup(10)
        cubic = model.pullback([3])
        for i in range(1, 11):
            cubic = cubic - model.exceptional(i)
        record = NegativeCurveRecord.from_class(cubic)
        assert record.genus == 1
        s = s_threshold(ThresholdContext.from_model(model), 1)
        cert = ray_certificate(model, record, s)
        assert not cert.valid
        assert "26" in cert.failing

    def test_wrong_threshold_rejected(self):
        model = p2_blowup(12)
        record = NegativeCurveRecord.from_class(model.exceptional(1))
        with pytest.raises(PreconditionError):
            ray_certificate(model, record, Fraction(1, 2))

    def test_alpha_h_strictly_positive_with_chosen_delta(self):
        model = p2_blowup(12)
        s = s_threshold(ThresholdContext.from_model(model), 1)
        for record in standard_minus_one_records(model)[:20]:
            cert = ray_certificate(model, record, s)
            assert cert.valid
            h = model.ample_h(cert.delta)
            assert sign(intersect(cert.alpha, h)) > 0

    def test_t0_at_least_one_over_n(self):
        surface = SurfaceModel(chi=1, kY_sq=9, gram_Y=((1,),), k_Y=(-3,), a_Y=(1,), kind="P2")
        model = BlowupModel(surface, 30)
        ctx = ThresholdContext.from_model(model)
        # (-2, 0): conic through 7 points 2H - E_1..E_7 wait (2H-sum_7 E)^2 = 4-7 = -3;
        # use H - E_1 - E_2 - E_3: square -2, genus 0
        cls = model.pullback([1])
        for i in (1, 2, 3):
            cls = cls - model.exceptional(i)
        record = NegativeCurveRecord.from_class(cls)
        assert record.self_int == -2
        s = s_threshold(ctx, 2)
        cert = ray_certificate(model, record, s, level=2)
        assert cert.valid
        assert compare(cert.t0, Fraction(1, 2)) >= 0

    def test_containment_monotonicity_by_rational_shift(self):
        # a witness at threshold s stays a positive-cone witness at s' > s
        # after the shift alpha' = alpha + (s' - s) L
        model = p2_blowup(17)
        s = s_threshold(ThresholdContext.from_model(model), 1)  # = 1, rational
        for record in standard_minus_one_records(model)[:10]:
            cert = ray_certificate(model, record, s)
            assert cert.valid
            for shift in (Fraction(1, 7), Fraction(2)):
                shifted = cert.alpha + shift * model.line()
                assert in_positive_cone(shifted) is not ConePosition.OUTSIDE
                rebuilt = cert.t0 * record.cls - (
                    model.canonical() - (s + shift) * model.line()
                )
                assert rebuilt == shifted


class TestMonotonicity:
    def test_plane_r17(self):
        values = s_monotonicity(ctx_p2(17), 2)
        assert values[0] == 1
        assert values[1] == make_scalar(-3, 1, Fraction(33, 2))

    def test_increasing_up_to_five(self):
        values = s_monotonicity(ctx_p2(40), 5)
        for a, b in zip(values, values[1:]):
            assert compare(a, b) < 0

    def test_singleton(self):
        assert len(s_monotonicity(ctx_p2(11), 1)) == 1

    def test_radicand_failure_propagates(self):
        with pytest.raises(ThresholdError):
            s_monotonicity(ctx_p2(1), 1)


class TestPairingIdentity:
    def test_worked_example(self):
        assert k_minus_sl_h_negative(p2_blowup(10), Fraction(0), Fraction(1, 100)) == Fraction(-29, 10)

    def test_negative_for_small_delta(self):
        model = p2_blowup(12)
        s = s_threshold(ThresholdContext.from_model(model), 1)
        value = k_minus_sl_h_negative(model, s, Fraction(1, 24))
        assert sign(value) < 0

    def test_large_delta_flips_sign(self):
        value = k_minus_sl_h_negative(p2_blowup(10), Fraction(0), Fraction(1))
        assert sign(value) > 0  # -3 + 10 > 0: the delta rule prevents this regime

    def test_random_triples(self):
        rng = random.Random(11)
        done = 0
        while done < 100:
            g1 = rng.randint(1, 3)
            k1 = rng.choice([-5, -3, -1, 1, 3])
            a1 = rng.randint(1, 3)
            if (g1 + k1) % 2:
                continue
            try:
                surface = SurfaceModel(
                    chi=1, kY_sq=Fraction(k1 * k1 * g1), gram_Y=((g1,),),
                    k_Y=(k1,), a_Y=(a1,),
                )
            except Exception:
                continue
            n = rng.randint(1, 3)
            ctx0 = ThresholdContext(
                A_sq=surface.a_sq, AK=surface.a_dot_k, kY_sq=surface.kY_sq, r=0
            )
            r_min = surface.kY_sq + 1 - ctx0.AK**2 / ctx0.A_sq
            r = max(2, int(r_min) + 2) + rng.randint(0, 5)
            model = BlowupModel(surface, r)
            s = s_threshold(ThresholdContext.from_model(model), n)
            delta = Fraction(1, rng.randint(2, 100) * r)
            k_minus_sl_h_negative(model, s, delta)  # raises on identity mismatch
            done += 1


class TestMainTheorem:
    def test_plane_r12_full_run(self):
        model = p2_blowup(12)
        curves = standard_minus_one_records(model)
        assert len(curves) == 78
        report = main_theorem_check(model, curves, 1, 0, samples=200, seed=0)
        assert report.passed
        assert report.s == make_scalar(-3, 1, 11)
        assert all(c.valid for c in report.certificates)
        assert report.counterexamples == ()

    def test_conditions_checked_before_sampling(self):
        model = p2_blowup(9)
        with pytest.raises(ThresholdError):
            main_theorem_check(model, [], 1, 0, samples=10, seed=0)

    def test_out_of_bounds_curve_rejected(self):
        model = p2_blowup(30)
        cls = model.pullback([1])
        for i in (1, 2, 3):
            cls = cls - model.exceptional(i)
        record = NegativeCurveRecord.from_class(cls)  # a (-2, 0) class
        with pytest.raises(PreconditionError):
            main_theorem_check(model, [record], 1, 0, samples=10, seed=0)

    def test_mixed_levels_certified_at_own_thresholds(self):
        # (nu, pi) = (2, 1) on the plane needs r >= 9 + 1 + 9 + 18 = 37;
        # each curve is certified at its own s_n with s_n <= s_nu verified
        model = BlowupModel(p2_surface(), 37)
        records = [NegativeCurveRecord.from_class(model.exceptional(i)) for i in (1, 2)]
        cls = model.pullback([1])
        for i in (1, 2, 3):
            cls = cls - model.exceptional(i)
        records.append(NegativeCurveRecord.from_class(cls))
        report = main_theorem_check(model, records, 2, 1, samples=50, seed=3)
        assert report.passed
        assert [c.level for c in report.certificates] == [1, 1, 2]
        for cert in report.certificates:
            assert compare(cert.s, report.s) <= 0

    def test_deterministic_given_seed(self):
        model = p2_blowup(11)
        curves = standard_minus_one_records(model)
        a = main_theorem_check(model, curves, 1, 0, samples=25, seed=9)
        b = main_theorem_check(model, curves, 1, 0, samples=25, seed=9)
        assert a.counterexamples == b.counterexamples == ()
        assert [c.alpha for c in a.certificates] == [c.alpha for c in b.certificates]


class TestThresholdSliceMonotonicity:
    def test_classes_on_k_sl_perp_stay_nonnegative_at_smaller_t(self):
        # gamma.L >= 0 and gamma.(K - sL) = 0 force gamma.(K - tL) >= 0 for t <= s
        model = p2_blowup(17)
        ctx = ThresholdContext.from_model(model)
        s = s_threshold(ctx, 2)
        t = s_threshold(ctx, 1)  # = 1 < s
        assert compare(t, s) < 0
        line = model.line()
        k_sl = model.canonical() - s * line
        scale = intersect(line, k_sl)
        rng = random.Random(13)
        for _ in range(50):
            base = model.divisor([Fraction(rng.randint(-3, 3)) for _ in range(model.rank)])
            gamma = base - (intersect(base, k_sl) / scale) * line
            assert sign(intersect(gamma, k_sl)) == 0
            if sign(intersect(gamma, line)) < 0:
                gamma = -gamma
            assert sign(intersect(gamma, model.canonical() - t * line)) >= 0


class TestDeltaChooser:
    def test_cap_respected(self):
        model = p2_blowup(12)
        s = s_threshold(ThresholdContext.from_model(model), 1)
        alpha = model.exceptional(1) - (model.canonical() - s * model.line())
        delta = choose_positive_delta(alpha, Fraction(1, 24))
        assert delta is not None and delta <= Fraction(1, 24)

    def test_hopeless_direction_returns_none(self):
        model = p2_blowup(2)
        bad = -model.line()
        assert choose_positive_delta(bad, Fraction(1, 4)) is None
