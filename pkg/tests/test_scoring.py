import numpy as np
import pytest

from strokesense.errors import BadWeights, MixedLabels, NotReciprocal, TooFew
from strokesense.labels import IDLE, StrokeLabel
from strokesense.scoring import (
    REFERENCE_AHP_MATRIX,
    REFERENCE_LEVEL_WEIGHTS,
    AhpMatrix,
    IndicatorSpec,
    StandardProfile,
    ahp_weights,
    build_profile,
    consistency,
    derive_velocity,
    indicator_values,
    level_scores,
    score_interval,
    score_maximal,
    score_window,
    total_score,
)
from strokesense.synth import GenConfig, generate, stroke_windows


class TestAhp:
    def test_weights_match_reference(self):
        w = ahp_weights(REFERENCE_AHP_MATRIX)
        np.testing.assert_allclose(w, REFERENCE_LEVEL_WEIGHTS, atol=5e-3)
        np.testing.assert_allclose(w.sum(), 1.0, atol=1e-12)

    def test_consistency_ratio_acceptable(self):
        lam, ci, cr = consistency(REFERENCE_AHP_MATRIX)
        assert lam > 5.0
        assert 0.0 < cr < 0.1

    def test_identity_matrix_uniform_weights(self):
        np.testing.assert_allclose(ahp_weights(np.ones((5, 5))), 0.2, atol=1e-12)
        lam, ci, cr = consistency(np.ones((5, 5)))
        np.testing.assert_allclose(lam, 5.0, atol=1e-8)
        np.testing.assert_allclose(cr, 0.0, atol=1e-8)

    def test_scale_invariance(self):
        w1 = ahp_weights(REFERENCE_AHP_MATRIX)
        w2 = ahp_weights(3.0 * REFERENCE_AHP_MATRIX)
        np.testing.assert_allclose(w1, w2, atol=1e-12)

    def test_not_reciprocal_rejected(self):
        bad = REFERENCE_AHP_MATRIX.copy()
        bad[0, 1] = 2.0
        with pytest.raises(NotReciprocal):
            ahp_weights(bad)

    def test_inconsistent_matrix_warns(self):
        a = np.array(
            [[1.0, 9.0, 1 / 9], [1 / 9, 1.0, 9.0], [9.0, 1 / 9, 1.0]]
        )
        with pytest.warns(UserWarning):
            ahp_weights(a)

    def test_wrapper_dataclass(self):
        w = ahp_weights(AhpMatrix(REFERENCE_AHP_MATRIX))
        np.testing.assert_allclose(w, ahp_weights(REFERENCE_AHP_MATRIX))


class TestVelocity:
    def test_constant_acc_integrates_to_zero_mean_ramp(self):
        from strokesense.windows import MotionWindow

        channels = np.zeros((200, 9))
        channels[:, 0] = 2.0  # constant bias is removed before integration
        v = derive_velocity(MotionWindow(0, channels))
        np.testing.assert_allclose(v, 0.0, atol=1e-12)

    def test_linear_ramp(self):
        from strokesense.windows import MotionWindow

        n, dt = 200, 0.01
        t = np.arange(n) * dt
        channels = np.zeros((n, 9))
        channels[:, 1] = t  # a(t) = t, mean removed -> a(t) = t - T/2
        v = derive_velocity(MotionWindow(0, channels))
        tbar = t.mean()
        expect = 0.5 * (t - tbar) ** 2 - 0.5 * tbar**2
        np.testing.assert_allclose(v[:, 1], expect, atol=1e-4)
        np.testing.assert_allclose(v[:, [0, 2]], 0.0, atol=1e-12)


class TestIndicatorValues:
    def test_shape_and_finiteness(self, small_corpus):
        windows, _, _ = small_corpus
        vals = indicator_values(windows[0])
        assert vals.shape == (15,)
        assert np.isfinite(vals).all()

    def test_angle_indicators_bounded(self, small_corpus):
        windows, _, _ = small_corpus
        for w in windows[:10]:
            vals = indicator_values(w)
            assert (vals[3:6] >= 0).all() and (vals[3:6] <= 180).all()
            assert (vals[9:12] >= 0).all() and (vals[9:12] <= 180).all()

    def test_strength_indicators_nonnegative(self, small_corpus):
        windows, _, _ = small_corpus
        vals = indicator_values(windows[0])
        assert (vals[0:3] >= 0).all()
        assert (vals[6:9] >= 0).all()


def _spec_maximal(center=1.0, spread=0.5):
    return IndicatorSpec(
        kind="maximal", center=center, up=center + spread, down=center - spread,
        lo=0.0, hi=0.0, k1=1.0, k2=1.0,
    )


def _spec_interval(lo=-1.0, hi=1.0, k1=2.0, k2=4.0):
    return IndicatorSpec(
        kind="interval", center=0.0, up=1.0, down=-1.0,
        lo=lo, hi=hi, k1=k1, k2=k2,
    )


class TestScoreMaps:
    def test_maximal_monotone_and_half_at_center(self):
        spec = _spec_maximal()
        assert score_maximal(spec.center, spec) == pytest.approx(0.5)
        grid = np.linspace(-5, 5, 101)
        scores = [score_maximal(v, spec) for v in grid]
        assert all(a < b for a, b in zip(scores, scores[1:]))
        assert all(0 < s < 1 for s in scores)

    def test_interval_inside_is_one(self):
        spec = _spec_interval()
        for v in (-1.0, -0.3, 0.0, 1.0):
            assert score_interval(v, spec) == 1.0

    def test_interval_decay_values(self):
        spec = _spec_interval(lo=-1, hi=1, k1=2.0, k2=4.0)
        assert score_interval(-3.0, spec) == pytest.approx(np.exp(-1.0))
        assert score_interval(5.0, spec) == pytest.approx(np.exp(-1.0))

    def test_interval_literal_interval_branches(self):
        spec = _spec_interval(lo=-1, hi=1, k1=2.0, k2=4.0)
        assert score_interval(-3.0, spec, literal_interval=True) == pytest.approx(
            1.0 - np.exp(-1.0)
        )

    def test_interval_continuity_at_boundary(self):
        spec = _spec_interval()
        eps = 1e-9
        assert score_interval(spec.hi + eps, spec) == pytest.approx(1.0, abs=1e-8)


class TestTotalScore:
    def test_perfect_scores_with_normalized_weights(self):
        w = ahp_weights(REFERENCE_AHP_MATRIX)
        assert total_score(np.ones(5), w) == pytest.approx(1.0)

    def test_rounded_reference_weights_accepted(self):
        assert total_score(np.ones(5), REFERENCE_LEVEL_WEIGHTS) == pytest.approx(
            1.001, abs=1e-12
        )

    def test_weighted_sum(self):
        q = np.array([1.0, 0.0, 1.0, 0.0, 1.0])
        k = np.array([0.1, 0.2, 0.3, 0.2, 0.2])
        assert total_score(q, k) == pytest.approx(0.6)

    def test_bad_weights_rejected(self):
        with pytest.raises(BadWeights):
            total_score(np.ones(5), np.full(5, 0.3))
        with pytest.raises(BadWeights):
            total_score(np.ones(5), np.array([-0.1, 0.4, 0.3, 0.2, 0.2]))
        with pytest.raises(BadWeights):
            total_score(np.ones(4), REFERENCE_LEVEL_WEIGHTS)


def _class_windows(seed, label, noise, n=12):
    cfg = GenConfig(seed=seed, strokes_per_class=n, noise_sigma=noise)
    series, truth = generate(cfg)
    return [w for w in stroke_windows(series, truth) if w.label == label]


class TestProfiles:
    def test_build_requires_uniform_labels(self, small_corpus):
        windows, _, _ = small_corpus
        mixed = [w for w in windows if w.label is not None][:6]
        assert len({w.label for w in mixed}) > 1
        with pytest.raises(MixedLabels):
            build_profile(mixed)

    def test_build_requires_two_windows(self):
        with pytest.raises(TooFew):
            build_profile([])

    def test_round_trip(self):
        ref = _class_windows(31, StrokeLabel(2), noise=0.02)
        profile = build_profile(ref)
        again = StandardProfile.from_json(profile.to_json())
        assert again.stroke == profile.stroke
        for a, b in zip(profile.indicators, again.indicators):
            assert a.to_dict() == b.to_dict()

    def test_reference_windows_score_high(self):
        ref = _class_windows(31, StrokeLabel(2), noise=0.02)
        profile = build_profile(ref)
        totals = [score_window(w, profile).total for w in ref]
        assert np.mean(totals) >= 0.8

    def test_degraded_windows_score_lower(self):
        ref = _class_windows(31, StrokeLabel(2), noise=0.02)
        profile = build_profile(ref)
        sloppy = _class_windows(77, StrokeLabel(2), noise=0.8)
        good = np.mean([score_window(w, profile).total for w in ref])
        bad = np.mean([score_window(w, profile).total for w in sloppy])
        assert bad < good

    def test_wrong_label_rejected(self):
        ref = _class_windows(31, StrokeLabel(2), noise=0.02)
        profile = build_profile(ref)
        other = _class_windows(31, StrokeLabel(4), noise=0.02)
        with pytest.raises(MixedLabels):
            level_scores(other[0], profile)

    def test_report_fields(self):
        ref = _class_windows(31, StrokeLabel(2), noise=0.02)
        profile = build_profile(ref)
        report = score_window(ref[0], profile)
        assert report.stroke == StrokeLabel(2)
        assert report.q.shape == (5,)
        assert ((report.q >= 0) & (report.q <= 1)).all()
        assert 0.0 <= report.total <= 1.0
        d = report.to_dict()
        assert set(d) == {"stroke", "q", "total", "weights"}
