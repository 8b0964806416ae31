"""
Unit tests for the lemmas module.

Condition term sequences, the Frechet-Hoeffding guard, the tends-to-zero
hypothesis and the verdict priority of ``evaluate``.
"""

import numpy as np
import pytest

from borel_cantelli_lab.checks.lemmas import random_valid_pair
from borel_cantelli_lab.errors import FrechetViolation, InsufficientRange, OutOfRangeProbability
from borel_cantelli_lab.lemmas import (
    Condition,
    Conclusion,
    PairSeq,
    ProbSeq,
    Rule,
    check_frechet,
    check_tends_to_zero,
    cond_1_3,
    cond_1_4,
    cond_2_1,
    cond_sum_p,
    evaluate,
)
from borel_cantelli_lab.models.clayton import ClaytonParams, ScaledMaxEvent, diff_term, scaled_max_events
from borel_cantelli_lab.series import SeriesClass, classify, evaluate_terms


def power_p(s, certified=True):
    return ProbSeq(p=lambda n: np.power(n.astype(float), -s), tends_to_zero=certified, label=f"n^-{s}")


def independent_q(s):
    return PairSeq(q=lambda n: np.power(n * (n + 1.0), -s), label="product")


def shifted_p(s):
    """p(n) = (n + 1)^-s, keeping q(1) = 0 inside the Frechet bounds."""
    return ProbSeq(p=lambda n: np.power(n + 1.0, -s), tends_to_zero=True, label=f"(n+1)^-{s}")


ZERO_Q = PairSeq(q=lambda n: np.zeros(n.shape), label="disjoint")


@pytest.mark.unit
class TestConditionTerms:
    """Term sequences of the lemma conditions."""

    def test_sum_p_terms(self):
        """cond_sum_p returns p(n) itself."""
        p = ProbSeq(p=lambda n: np.power(2.0, -n.astype(float)))
        assert evaluate_terms(cond_sum_p(p), 1, 3).tolist() == [0.5, 0.25, 0.125]

    def test_sum_p_rejects_out_of_range(self):
        """A probability above 1 is reported with its index."""
        p = ProbSeq(p=lambda n: np.where(n == 4, 1.5, 0.1))
        with pytest.raises(OutOfRangeProbability) as excinfo:
            evaluate_terms(cond_sum_p(p), 1, 10)
        assert excinfo.value.n == 4

    def test_geometric_and_harmonic_sums(self):
        """Geometric p converges, harmonic p diverges."""
        geometric = ProbSeq(p=lambda n: np.power(2.0, -n.astype(float)))
        assert classify(cond_sum_p(geometric), 1000).classification is SeriesClass.CONVERGENT
        assert classify(cond_sum_p(power_p(1.0)), 100_000).classification is SeriesClass.DIVERGENT

    def test_nested_events_give_zero_terms(self):
        """q(n) = p(n) with p constant: A_n within A_n+1, no exits."""
        p = ProbSeq(p=lambda n: np.full(n.shape, 0.5))
        q = PairSeq(q=lambda n: np.full(n.shape, 0.5))
        assert not evaluate_terms(cond_1_3(p, q), 1, 100).any()

    def test_reverse_nested_events_give_zero_terms(self):
        """q(n) = p(n + 1): A_n+1 within A_n, no entries."""
        p = power_p(2.0)
        q = PairSeq(q=lambda n: np.power(n + 1.0, -2.0))
        assert not evaluate_terms(cond_1_4(p, q), 1, 100).any()

    def test_disjoint_events(self):
        """With q = 0 the exit terms are p(n) and the entry terms p(n + 1)."""
        p = shifted_p(1.0)
        n = np.arange(1, 101)
        np.testing.assert_allclose(evaluate_terms(cond_1_3(p, ZERO_Q), 1, 100), 1.0 / (n + 1))
        np.testing.assert_allclose(evaluate_terms(cond_1_4(p, ZERO_Q), 1, 100), 1.0 / (n + 2))

    def test_disjoint_harmonic_violates_lower_bound(self):
        """p = 1/n forces P(A_1 A_2) >= 1/2, so q(1) = 0 is rejected."""
        with pytest.raises(FrechetViolation) as excinfo:
            evaluate_terms(cond_1_3(power_p(1.0), ZERO_Q), 1, 10)
        assert excinfo.value.n == 1
        assert excinfo.value.lower == 0.5

    def test_clayton_exit_terms_match_difference(self):
        """cond_1_3 on the Clayton events equals the closed-form difference term."""
        params, ev = ClaytonParams(), ScaledMaxEvent(x=0.5, alpha=0.5)
        p, q = scaled_max_events(params, ev)
        n = np.arange(1, 10_001)
        np.testing.assert_allclose(evaluate_terms(cond_1_3(p, q), 1, 10_000), diff_term(params, n, ev), rtol=1e-8)

    def test_pair_terms_are_q(self):
        """cond_2_1 returns q(n); for the Clayton pairs at x = 0.9, alpha = 0.5 the sum diverges."""
        params, ev = ClaytonParams(), ScaledMaxEvent(x=0.9, alpha=0.5)
        p, q = scaled_max_events(params, ev)
        n = np.arange(1, 101, dtype=np.int64)
        np.testing.assert_array_equal(evaluate_terms(cond_2_1(p, q), 1, 100), q.q(n))
        assert classify(cond_2_1(p, q), 1_000_000).classification is SeriesClass.DIVERGENT

    def test_clayton_entry_terms_converge(self):
        """cond_1_4 on the Clayton events converges too."""
        p, q = scaled_max_events(ClaytonParams(), ScaledMaxEvent(x=0.5, alpha=0.5))
        assert classify(cond_1_4(p, q), 1_000_000).classification is SeriesClass.CONVERGENT

    def test_proof_identity(self):
        """P(A_n A^c_n+1) + P(A_n A_n+1) = P(A_n) to 1e-15."""
        p, q = scaled_max_events(ClaytonParams(), ScaledMaxEvent(x=0.9, alpha=0.5))
        n = np.arange(1, 100_001, dtype=np.int64)
        terms = evaluate_terms(cond_1_3(p, q), 1, 100_000)
        assert np.max(np.abs(terms + q.q(n) - p.p(n))) <= 1e-15

    def test_proof_identity_random_pairs(self, rng):
        """The identity holds to 1e-15 on 10^4 random valid (p, q) rows."""
        for _ in range(50):
            p, q = random_valid_pair(rng)
            terms = evaluate_terms(cond_1_3(ProbSeq.from_values(p), PairSeq.from_values(q)), 1, len(q))
            assert np.max(np.abs(terms + q - p[:-1])) <= 1e-15

    def test_entry_terms_mirror_exit_terms(self):
        """Shifting p one step right turns the exit terms into entry terms, bit for bit."""
        p, q = scaled_max_events(ClaytonParams(), ScaledMaxEvent(x=0.5, alpha=0.5))
        shifted = ProbSeq(p=lambda n: p.p(np.maximum(n - 1, 1)), tends_to_zero=True)
        exits = evaluate_terms(cond_1_3(p, q), 1, 10_000)
        entries = evaluate_terms(cond_1_4(shifted, q), 1, 10_000)
        assert np.all(exits > 0)
        np.testing.assert_array_equal(entries, exits)


@pytest.mark.unit
class TestFrechetBounds:
    """Frechet-Hoeffding guard on q."""

    def test_random_valid_pairs_pass(self, rng):
        """Random pairs inside the bounds never raise."""
        for _ in range(50):
            p, q = random_valid_pair(rng)
            check_frechet(ProbSeq.from_values(p), PairSeq.from_values(q), len(q))

    def test_random_invalid_pairs_raise(self, rng):
        """q pushed above min(p_n, p_n+1) by more than 1e-6 raises at that index."""
        for _ in range(50):
            p, q = random_valid_pair(rng)
            i = int(rng.integers(0, len(q)))
            q[i] = min(p[i], p[i + 1]) + 2e-6
            with pytest.raises(FrechetViolation) as excinfo:
                check_frechet(ProbSeq.from_values(p), PairSeq.from_values(q), len(q))
            assert excinfo.value.n == i + 1

    def test_tolerance_is_absolute(self):
        """Overshoot within the tolerance is accepted, beyond it rejected."""
        p = ProbSeq.from_values([0.5, 0.5, 0.5])
        check_frechet(p, PairSeq.from_values([0.5 + 5e-13, 0.5]), 2)
        with pytest.raises(FrechetViolation):
            check_frechet(p, PairSeq.from_values([0.5 + 5e-12, 0.5]), 2)
        check_frechet(p, PairSeq.from_values([0.5 + 5e-12, 0.5]), 2, tolerance=1e-11)

    def test_clayton_pairs_respect_bounds(self):
        """The exact Clayton pair probabilities sit inside the bounds."""
        for x in (0.5, 0.9, 0.99):
            for alpha in (0.0, 0.3, 0.5, 0.7):
                p, q = scaled_max_events(ClaytonParams(), ScaledMaxEvent(x=x, alpha=alpha))
                check_frechet(p, q, 10_000)


@pytest.mark.unit
class TestTendsToZero:
    """The P(A_n) -> 0 hypothesis."""

    def test_certificate_wins(self):
        """A certified sequence is accepted without looking at it."""
        holds, why = check_tends_to_zero(ProbSeq(p=lambda n: np.full(n.shape, 0.3), tends_to_zero=True), 1000)
        assert holds
        assert "certified" in why

    def test_numeric_check_accepts_decaying(self):
        """n^-2 passes the heuristic check."""
        holds, why = check_tends_to_zero(power_p(2.0, certified=False), 10_000)
        assert holds
        assert "heuristic" in why

    def test_numeric_check_rejects_constant(self):
        """A constant 0.3 does not tend to zero."""
        holds, _ = check_tends_to_zero(ProbSeq(p=lambda n: np.full(n.shape, 0.3)), 10_000)
        assert not holds

    def test_numeric_check_rejects_slow_decay(self):
        """Clayton probabilities at x = 0.99 are still above the tolerance at 10^4."""
        p, _ = scaled_max_events(ClaytonParams(), ScaledMaxEvent(x=0.99, alpha=0.5))
        uncertified = ProbSeq(p=p.p)
        holds, _ = check_tends_to_zero(uncertified, 10_000)
        assert not holds


@pytest.mark.unit
class TestEvaluate:
    """Verdict priority and reporting."""

    def test_bc1(self):
        """n^-2 without q is IOZero through BC1."""
        verdict = evaluate(power_p(2.0), n_max=100_000)
        assert (verdict.conclusion, verdict.fired_by) == (Conclusion.IO_ZERO, Rule.BC1)

    def test_bc2(self):
        """Independent 1/n without q is IOOne through BC2."""
        verdict = evaluate(power_p(1.0), independent=True, n_max=100_000)
        assert (verdict.conclusion, verdict.fired_by) == (Conclusion.IO_ONE, Rule.BC2)

    def test_missing_pair_sequence_is_recorded(self):
        """Branches needing q are skipped and the skip is recorded."""
        verdict = evaluate(power_p(1.0), n_max=100_000)
        assert verdict.conclusion is Conclusion.UNKNOWN
        assert verdict.fired_by is Rule.NONE
        assert any("skipped" in line and "pair sequence" in line for line in verdict.evidence)
        assert any("independence was not asserted" in line for line in verdict.evidence)

    def test_clayton_fires_lemma21(self):
        """Clayton scaled maxima at x = 0.9, alpha = 0.5 settle through the exit-probability lemma."""
        p, q = scaled_max_events(ClaytonParams(), ScaledMaxEvent(x=0.9, alpha=0.5))
        verdict = evaluate(p, q, n_max=1_000_000)
        assert (verdict.conclusion, verdict.fired_by) == (Conclusion.IO_ZERO, Rule.LEMMA21)
        assert verdict.report(Condition.C1_2).classification is SeriesClass.DIVERGENT
        assert verdict.report(Condition.C2_1).classification is SeriesClass.DIVERGENT
        assert verdict.report(Condition.C2_2).classification is SeriesClass.CONVERGENT

    @pytest.mark.slow
    @pytest.mark.parametrize("x", [0.5, 0.9])
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
    def test_clayton_grid_fires_lemma21(self, x, alpha):
        """Every point of the x, alpha grid settles through the exit-probability lemma at n_max = 10^6."""
        p, q = scaled_max_events(ClaytonParams(), ScaledMaxEvent(x=x, alpha=alpha))
        verdict = evaluate(p, q, n_max=1_000_000)
        assert (verdict.conclusion, verdict.fired_by) == (Conclusion.IO_ZERO, Rule.LEMMA21)
        assert verdict.report(Condition.C1_2).classification is SeriesClass.DIVERGENT
        assert verdict.report(Condition.C2_1).classification is SeriesClass.DIVERGENT
        assert verdict.report(Condition.C2_2).classification is SeriesClass.CONVERGENT

    def test_slowly_convergent_independent_is_not_io_one(self):
        """Independent n^-1.02 is summable, so BC2 must not fire."""
        verdict = evaluate(power_p(1.02), independent=True, n_max=100_000)
        assert verdict.conclusion is not Conclusion.IO_ONE
        assert verdict.report(Condition.C1_1).classification is SeriesClass.INCONCLUSIVE

    def test_all_conditions_reported(self):
        """Every condition is reported even when BC1 settles first."""
        verdict = evaluate(power_p(2.0), independent_q(2.0), independent=True, n_max=10_000)
        assert verdict.fired_by is Rule.BC1
        assert {cond for cond, _ in verdict.condition_reports} == set(Condition)

    def test_bc1_precedes_exit_route(self):
        """Independent n^-2: both BC1 and the exit-series route apply; BC1 is reported."""
        p, q = power_p(2.0), independent_q(2.0)
        assert classify(cond_1_3(p, q), 100_000).classification is SeriesClass.CONVERGENT
        assert evaluate(p, q, independent=True, n_max=100_000).fired_by is Rule.BC1

    def test_monotone_shortcut(self):
        """Decreasing events with p -> 0 are IOZero even though sum p diverges."""
        verdict = evaluate(power_p(1.0), monotone_decreasing=True, n_max=100_000)
        assert (verdict.conclusion, verdict.fired_by) == (Conclusion.IO_ZERO, Rule.MONOTONE)

    def test_monotone_needs_tends_to_zero(self):
        """Constant p: the monotone shortcut does not apply."""
        p = ProbSeq(p=lambda n: np.full(n.shape, 0.3))
        verdict = evaluate(p, monotone_decreasing=True, n_max=10_000)
        assert verdict.conclusion is Conclusion.UNKNOWN

    def test_barndorff_nielsen(self):
        """Nested events with an undecided sum p: the exit series alone settles it."""
        p = ProbSeq(p=lambda n: 0.5 * np.power(n.astype(float), -1.05), tends_to_zero=True)
        q = PairSeq(q=lambda n: 0.5 * np.power((n + 1).astype(float), -1.05))
        verdict = evaluate(p, q, n_max=100_000)
        assert verdict.report(Condition.C1_2).classification is SeriesClass.INCONCLUSIVE
        assert verdict.report(Condition.C1_3).classification is SeriesClass.CONVERGENT
        assert (verdict.conclusion, verdict.fired_by) == (Conclusion.IO_ZERO, Rule.BARNDORFF_NIELSEN)

    def test_disjoint_events_without_independence(self):
        """Exit terms equal p(n) for disjoint events; nothing applies without independence."""
        verdict = evaluate(shifted_p(1.0), ZERO_Q, n_max=10_000)
        assert verdict.report(Condition.C1_3).classification is SeriesClass.DIVERGENT
        assert verdict.fired_by is Rule.NONE

    def test_remark21(self):
        """Entry series converges while the exit series is undecided: the entry-probability route."""
        p = ProbSeq(p=lambda n: 0.5 * np.power(n.astype(float), -0.05), tends_to_zero=True)
        # entry terms P(A^c_n A_n+1) = (n + 1)^-2
        q = PairSeq(q=lambda n: 0.5 * np.power(n + 1.0, -0.05) - np.power(n + 1.0, -2.0))
        verdict = evaluate(p, q, n_max=100_000)
        assert verdict.report(Condition.C1_2).classification is SeriesClass.DIVERGENT
        assert verdict.report(Condition.C2_1).classification is SeriesClass.DIVERGENT
        assert verdict.report(Condition.C2_2).classification is SeriesClass.INCONCLUSIVE
        assert verdict.report(Condition.C2_2_ALT).classification is SeriesClass.CONVERGENT
        assert (verdict.conclusion, verdict.fired_by) == (Conclusion.IO_ZERO, Rule.REMARK21)

    def test_independence_flag_never_undoes_io_zero(self):
        """Adding independence keeps an IOZero verdict and its rule."""
        p, q = scaled_max_events(ClaytonParams(), ScaledMaxEvent(x=0.5, alpha=0.5))
        plain = evaluate(p, q, n_max=100_000)
        flagged = evaluate(p, q, independent=True, n_max=100_000)
        assert plain.conclusion is Conclusion.IO_ZERO
        assert (flagged.conclusion, flagged.fired_by) == (plain.conclusion, plain.fired_by)

    def test_short_range_rejected(self):
        """n_max below 100 is rejected up front."""
        with pytest.raises(InsufficientRange):
            evaluate(power_p(2.0), n_max=50)

    def test_frechet_violation_propagates(self):
        """An invalid q surfaces as FrechetViolation."""
        q = PairSeq(q=lambda n: np.full(n.shape, 0.9))
        with pytest.raises(FrechetViolation):
            evaluate(shifted_p(2.0), q, n_max=1000)

    def test_record(self):
        """to_record carries the conclusion, rule and every condition."""
        record = evaluate(power_p(2.0), n_max=1000).to_record()
        assert record["conclusion"] == "IOZero"
        assert record["fired_by"] == "BC1"
        assert set(record["conditions"]) == {"1.1", "1.2"}
