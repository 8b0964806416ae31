"""Classify a tabulated event sequence with the lemma engine, or a plain series."""

from __future__ import annotations

import click

from borel_cantelli_lab.app import EXIT_FAILURE, EXIT_INCONCLUSIVE, EXIT_OK, RunConfig, output_options
from borel_cantelli_lab.errors import BorelCantelliError
from borel_cantelli_lab.lemmas import Conclusion, LemmaVerdict, evaluate
from borel_cantelli_lab.logger import get_logger
from borel_cantelli_lab.models.tabulated import read_table, read_terms
from borel_cantelli_lab.records import Reporter
from borel_cantelli_lab.series import SeriesClass, classify

logger = get_logger(__name__)

__all__ = ["get_all_commands", "report_verdict", "run_classify", "run_classify_series"]


def report_verdict(reporter: Reporter, verdict: LemmaVerdict, **context: object) -> int:
    """Print a verdict with its condition reports; return the exit status it implies."""
    reporter.record(
        "verdict",
        {
            **context,
            "conclusion": verdict.conclusion.value,
            "fired_by": verdict.fired_by.value,
            "evidence": list(verdict.evidence),
        },
    )
    reporter.table(
        "condition",
        ["condition", "class", "partial_sum", "n_scanned", "tail_exponent", "evidence"],
        [
            [cond.value, s.classification.value, s.partial_sum, s.n_scanned, s.tail_exponent, s.evidence]
            for cond, s in verdict.condition_reports
        ],
    )
    return EXIT_INCONCLUSIVE if verdict.conclusion is Conclusion.UNKNOWN else EXIT_OK


def run_classify_series(config: RunConfig, reporter: Reporter) -> int:
    """Classify sum a_n for a two-column (n, a_n) table, without any lemma."""
    try:
        with open(config.input_path, encoding="utf-8") as stream:  # type: ignore[arg-type]
            terms, n_max = read_terms(stream, source=config.input_path or "terms")
        logger.info(f"classifying series {config.input_path}: scan to n={n_max}")
        verdict = classify(terms, n_max, config.margin)
    except OSError as e:
        reporter.error(f"Error reading input: {e!s}")
        return EXIT_FAILURE
    except BorelCantelliError as e:
        reporter.error(f"Error classifying {config.input_path}: {e!s}")
        return EXIT_FAILURE

    reporter.record("series_verdict", {"input": config.input_path, **verdict.to_record()})
    return EXIT_INCONCLUSIVE if verdict.classification is SeriesClass.INCONCLUSIVE else EXIT_OK


def run_classify(config: RunConfig, reporter: Reporter) -> int:
    if config.input_path is None:
        reporter.error("Error classifying: --input is required")
        return EXIT_FAILURE
    if config.series:
        return run_classify_series(config, reporter)
    try:
        with open(config.input_path, encoding="utf-8") as stream:
            table = read_table(stream, source=config.input_path)
        p, q = table.sequences(tends_to_zero=config.tends_to_zero)
        n_max = table.scan_limit
        logger.info(f"classifying {config.input_path}: {table.rows} rows, scan to n={n_max}")
        verdict = evaluate(
            p,
            q,
            independent=config.independent,
            monotone_decreasing=config.monotone_decreasing,
            n_max=n_max,
            margin=config.margin,
            frechet_tolerance=config.frechet_tolerance,
        )
    except OSError as e:
        reporter.error(f"Error reading input: {e!s}")
        return EXIT_FAILURE
    except BorelCantelliError as e:
        reporter.error(f"Error classifying {config.input_path}: {e!s}")
        return EXIT_FAILURE

    return report_verdict(reporter, verdict, input=config.input_path, n_max=n_max)


@click.command("classify")
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True, help="Table of n, p[, q].")
@click.option("--independent", is_flag=True, help="Assert the events are mutually independent (enables BC2).")
@click.option("--monotone-decreasing", is_flag=True, help="Assert A_{n+1} is contained in A_n.")
@click.option("--tends-to-zero", is_flag=True, help="Certify P(A_n) -> 0 instead of checking it numerically.")
@click.option("--series", is_flag=True, help="Read n, a_n and classify sum a_n itself; terms may exceed 1.")
@click.option("--frechet-tolerance", type=click.FloatRange(min=0.0), default=1e-12, show_default=True)
@click.option("--margin", type=click.FloatRange(0.0, 0.5, min_open=True, max_open=True), default=0.1, show_default=True)
@output_options
def classify_command(
    input_path: str,
    independent: bool,
    monotone_decreasing: bool,
    tends_to_zero: bool,
    series: bool,
    frechet_tolerance: float,
    margin: float,
    output_format: str,
) -> None:
    """Decide P(A_n i.o.) from a tabulated sequence, or classify sum a_n with --series."""
    config = RunConfig(
        command="classify",
        input_path=input_path,
        independent=independent,
        monotone_decreasing=monotone_decreasing,
        tends_to_zero=tends_to_zero,
        series=series,
        frechet_tolerance=frechet_tolerance,
        margin=margin,
        output_format=output_format,
    )
    raise SystemExit(run_classify(config, Reporter(output_format)))


def get_all_commands() -> list[click.Command]:
    return [classify_command]
