"""Lemma engine invariants: bounds on q, the proof identity, verdict order."""

from __future__ import annotations

import numpy as np

from borel_cantelli_lab.check_wrapper import Check, CheckContext, CheckResult
from borel_cantelli_lab.errors import FrechetViolation
from borel_cantelli_lab.lemmas import Conclusion, PairSeq, ProbSeq, Rule, check_frechet, cond_1_3, evaluate
from borel_cantelli_lab.models.clayton import ClaytonParams, ScaledMaxEvent, scaled_max_events
from borel_cantelli_lab.series import evaluate_terms

PAIRS = 20
ROWS = 200


def random_valid_pair(rng: np.random.Generator, rows: int = ROWS) -> tuple[np.ndarray, np.ndarray]:
    """Random p and a q inside its Frechet-Hoeffding bounds; q(1) sits on the upper bound."""
    p = rng.uniform(0.0, 1.0, rows + 1)
    lower = np.maximum(0.0, p[:-1] + p[1:] - 1.0)
    upper = np.minimum(p[:-1], p[1:])
    u = rng.uniform(0.0, 1.0, rows)
    u[0] = 1.0
    return p, lower + u * (upper - lower)


def frechet_valid_pairs(ctx: CheckContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed)
    for k in range(PAIRS):
        p, q = random_valid_pair(rng)
        try:
            check_frechet(ProbSeq.from_values(p), PairSeq.from_values(q + ctx.perturb), ROWS)
        except FrechetViolation as e:
            return CheckResult(False, f"valid pair {k} rejected: {e!s}")
    return CheckResult(True, f"{PAIRS} random valid (p, q) pairs accepted")


def frechet_invalid_pairs(ctx: CheckContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed + 1)
    for k in range(PAIRS):
        p, q = random_valid_pair(rng)
        i = int(rng.integers(0, ROWS))
        q[i] = min(p[i], p[i + 1]) + 1e-5
        try:
            check_frechet(ProbSeq.from_values(p), PairSeq.from_values(q), ROWS)
        except FrechetViolation as e:
            if e.n != i + 1:
                return CheckResult(False, f"invalid pair {k}: violation reported at n={e.n}, expected {i + 1}")
            continue
        return CheckResult(False, f"invalid pair {k} accepted")
    return CheckResult(True, f"{PAIRS} perturbed pairs rejected at the perturbed index")


def proof_identity(ctx: CheckContext) -> CheckResult:
    """cond_1_3 terms + q(n) = p(n) on the Clayton example and on random valid pairs."""
    n_max = 10_000 if ctx.quick else 100_000
    p, q = scaled_max_events(ClaytonParams(), ScaledMaxEvent(x=0.5, alpha=0.5))
    n = np.arange(1, n_max + 1, dtype=np.int64)
    terms = evaluate_terms(cond_1_3(p, q), 1, n_max)
    gap = float(np.max(np.abs(terms + np.asarray(q.q(n)) - np.asarray(p.p(n)))))
    if gap > 1e-15:
        return CheckResult(False, f"Clayton: max |a_n + q(n) - p(n)| = {gap:.3g} over n <= {n_max}")

    rng = np.random.default_rng(ctx.seed + 2)
    pairs = PAIRS if ctx.quick else 10 * PAIRS
    for k in range(pairs):
        pv, qv = random_valid_pair(rng)
        terms = evaluate_terms(cond_1_3(ProbSeq.from_values(pv), PairSeq.from_values(qv)), 1, ROWS)
        worst = float(np.max(np.abs(terms + qv - pv[:-1])))
        if worst > 1e-15:
            return CheckResult(False, f"random pair {k}: max |a_n + q(n) - p(n)| = {worst:.3g}")
        gap = max(gap, worst)
    return CheckResult(True, f"max |a_n + q(n) - p(n)| = {gap:.3g} over n <= {n_max} and {pairs * ROWS} random rows")


def independence_flag_keeps_io_zero(ctx: CheckContext) -> CheckResult:
    n_max = 100_000 if ctx.quick else 1_000_000
    p, q = scaled_max_events(ClaytonParams(), ScaledMaxEvent(x=0.9, alpha=0.5))
    plain = evaluate(p, q, n_max=n_max)
    flagged = evaluate(p, q, independent=True, n_max=n_max)
    ok = plain.conclusion is Conclusion.IO_ZERO and flagged.conclusion is plain.conclusion
    return CheckResult(ok, f"{plain.conclusion.value}/{plain.fired_by.value} -> {flagged.conclusion.value}/{flagged.fired_by.value}")


def classical_lemmas(ctx: CheckContext) -> CheckResult:
    n_max = 100_000

    def independent(s: float) -> tuple[ProbSeq, PairSeq]:
        p = ProbSeq(p=lambda n: np.power(n.astype(float), -s), tends_to_zero=True, label=f"n^-{s:g}")
        q = PairSeq(q=lambda n: np.power(n * (n + 1.0), -s), label="independent pairs")
        return p, q

    bc1 = evaluate(*independent(2.0), independent=True, n_max=n_max)
    bc2 = evaluate(*independent(1.0), independent=True, n_max=n_max)
    ok = (bc1.conclusion, bc1.fired_by, bc2.conclusion, bc2.fired_by) == (
        Conclusion.IO_ZERO,
        Rule.BC1,
        Conclusion.IO_ONE,
        Rule.BC2,
    )
    return CheckResult(ok, f"n^-2: {bc1.fired_by.value}, n^-1: {bc2.fired_by.value}")


def get_all_checks() -> list[Check]:
    """Return checks exposed by this module for verify registration."""
    return [
        Check(
            fn=frechet_valid_pairs,
            name="frechet_valid_pairs",
            title="Frechet bounds: valid pairs",
            description="Random (p, q) inside the bounds never raise; --perturb shifts q upwards.",
        ),
        Check(
            fn=frechet_invalid_pairs,
            name="frechet_invalid_pairs",
            title="Frechet bounds: invalid pairs",
            description="q pushed 1e-5 above min(p_n, p_n+1) raises at that index.",
        ),
        Check(
            fn=proof_identity,
            name="proof_identity",
            title="Proof identity",
            description="P(A_n A^c_n+1) + P(A_n A_n+1) = P(A_n) term by term, Clayton and random pairs.",
        ),
        Check(
            fn=independence_flag_keeps_io_zero,
            name="independence_keeps_io_zero",
            title="Verdict monotonicity",
            description="Asserting independence never turns IOZero into anything else.",
        ),
        Check(
            fn=classical_lemmas,
            name="classical_lemmas",
            title="Classical lemmas",
            description="Independent n^-2 fires BC1 and independent n^-1 fires BC2.",
        ),
    ]
