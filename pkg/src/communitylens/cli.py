"""Command-line front end.

Subcommands: validate | cohorts | indicators | classify | overlay | compare |
synth. Global flags may come from a JSON config file named by the
COMMUNITYLENS_CONFIG environment variable; explicit flags always win.

Exit codes: 0 success, 1 data/validation failure (defect listing on stderr),
2 usage error. Reports are staged in memory and written atomically (temp file
+ rename, manifest.json last), so a failed run leaves no partial outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .classify import DegenerateDistributionError, classify_authors, resolve_thresholds
from .cohorts import UnknownTopicError, cohort_series, topic_activity
from .compare import compare, comparison_files
from .corpus import Corpus, CorpusError, load_corpus, validate
from .indicators import (
    CareerDataError,
    aggregates_as_band_profiles,
    author_profiles,
    production_bands,
    year_summaries,
)
from .overlay import area_rollup, cluster_overlay
from .reports import (
    atomic_write_text,
    build_manifest,
    emit_areas_csv,
    emit_bands_csv,
    emit_cohorts_csv,
    emit_indicators_csv,
    emit_map_csv,
    emit_map_json,
    emit_overlay_csv,
    emit_quadrant_authors_csv,
    emit_quadrant_summary_csv,
    emit_thresholds_json,
    sha256_file,
    write_run,
)
from .synthgen import GeneratorConfig, InfeasibleConfigError, generate

ENV_CONFIG = "COMMUNITYLENS_CONFIG"

_CONFIG_KEYS = {
    "corpus", "careers", "clusters", "topic", "topic_b", "corpus_b", "careers_b", "clusters_b",
    "horizon", "window", "stay_denominator", "threads", "out", "raw", "doc_types", "terms",
    "threshold_rule", "focus_mode", "pooled_thresholds", "color_metric", "map_format",
    "seed", "entrants", "entrants_map", "p_newborn", "stay_prob", "alpha", "clusters_n",
    "areas_n", "topic_share", "max_production", "career_back",
}


def _load_env_config() -> dict:
    path = os.environ.get(ENV_CONFIG)
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            config = json.load(fh)
    except FileNotFoundError:
        raise _Usage(f"{ENV_CONFIG} points to missing file {path}") from None
    except json.JSONDecodeError as exc:
        raise _Usage(f"{ENV_CONFIG} file {path} is not valid JSON: {exc.msg}") from None
    if not isinstance(config, dict):
        raise _Usage(f"{ENV_CONFIG} file {path} must hold a JSON object")
    unknown = sorted(set(config) - _CONFIG_KEYS)
    if unknown:
        raise _Usage(f"{ENV_CONFIG} file {path} has unknown keys: {', '.join(unknown)}")
    return config


class _Usage(Exception):
    """Raised for usage-level failures mapped to exit code 2."""


def _parse_horizon(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        horizon = (int(a), int(b))
    except ValueError:
        raise _Usage(f"--horizon expects Y0:Y1, got {text!r}") from None
    if horizon[0] > horizon[1]:
        raise _Usage(f"--horizon range is empty: {text}")
    return horizon


def _split_csv(text: str | None) -> list[str] | None:
    if text is None:
        return None
    items = [part.strip() for part in text.split(",") if part.strip()]
    if not items:
        raise _Usage(f"expected a comma-separated list, got {text!r}")
    return items


def build_parser(defaults: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="communitylens",
        description="Individual-level scientific-community indicators from bibliographic corpora.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--corpus", default=defaults.get("corpus"), help="publications JSONL path")
    common.add_argument("--careers", default=defaults.get("careers"), help="careers CSV path")
    common.add_argument("--clusters", default=defaults.get("clusters"), help="clusters CSV path")
    common.add_argument("--topic", default=defaults.get("topic"), help="topic label")
    common.add_argument("--horizon", default=defaults.get("horizon", "2008:2017"), metavar="Y0:Y1")
    common.add_argument("--window", type=int, default=defaults.get("window", 2), metavar="N",
                        help="stay window in years (default 2)")
    common.add_argument("--stay-denominator", choices=["new", "all"],
                        default=defaults.get("stay_denominator", "new"))
    common.add_argument("--threads", type=int, default=defaults.get("threads", 1), metavar="N")
    common.add_argument("--out", default=defaults.get("out"), metavar="DIR")
    common.add_argument("--raw", action="store_true", default=bool(defaults.get("raw", False)),
                        help="append full-precision columns")
    common.add_argument("--doc-types", default=defaults.get("doc_types"), metavar="A,B",
                        help="keep only these doc_type values")
    common.add_argument("--terms", default=defaults.get("terms"), metavar="T1,T2",
                        help="delineate --topic by matching these phrases")
    common.add_argument("--threshold-rule", choices=["promote", "strict", "inclusive"],
                        default=defaults.get("threshold_rule", "promote"))
    common.add_argument("--focus-mode", choices=["total", "annual"],
                        default=defaults.get("focus_mode", "total"))

    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("validate", parents=[common], help="check corpus files, list defects")
    sub.add_parser("cohorts", parents=[common], help="per-year cohort table")
    sub.add_parser("indicators", parents=[common], help="cohorts plus indicator summaries and bands")
    sub.add_parser("classify", parents=[common], help="quadrant classification")

    overlay_p = sub.add_parser("overlay", parents=[common], help="cluster overlay and area rollups")
    overlay_p.add_argument("--color-metric", choices=["p_au", "p_stay"],
                           default=defaults.get("color_metric", "p_au"))
    overlay_p.add_argument("--map-format", choices=["csv", "json"],
                           default=defaults.get("map_format", "csv"))

    compare_p = sub.add_parser("compare", parents=[common], help="two-community comparison")
    compare_p.add_argument("--topic-b", default=defaults.get("topic_b"), help="second topic label")
    compare_p.add_argument("--corpus-b", default=defaults.get("corpus_b"),
                           help="publications for side b (defaults to --corpus)")
    compare_p.add_argument("--careers-b", default=defaults.get("careers_b"))
    compare_p.add_argument("--clusters-b", default=defaults.get("clusters_b"))
    compare_p.add_argument("--pooled-thresholds", action="store_true",
                           default=bool(defaults.get("pooled_thresholds", False)))

    synth_p = sub.add_parser("synth", parents=[common], help="generate a synthetic corpus")
    synth_p.add_argument("--seed", type=int, default=defaults.get("seed", 0))
    synth_p.add_argument("--entrants", type=int, default=defaults.get("entrants", 100),
                         help="new entrants per horizon year")
    synth_p.add_argument("--entrants-map", default=defaults.get("entrants_map"), metavar="Y=N,...",
                         help="override entrants for specific years")
    synth_p.add_argument("--p-newborn", type=float, default=defaults.get("p_newborn", 0.35))
    synth_p.add_argument("--stay-prob", type=float, default=defaults.get("stay_prob", 0.16))
    synth_p.add_argument("--alpha", type=float, default=defaults.get("alpha", 2.0))
    synth_p.add_argument("--clusters-n", type=int, default=defaults.get("clusters_n", 0))
    synth_p.add_argument("--areas-n", type=int, default=defaults.get("areas_n", 1))
    synth_p.add_argument("--topic-share", type=float, default=defaults.get("topic_share", 0.6))
    synth_p.add_argument("--max-production", type=int, default=defaults.get("max_production", 10_000))
    synth_p.add_argument("--career-back", type=int, default=defaults.get("career_back", 15))
    return parser


def _require(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            raise _Usage(f"--{name.replace('_', '-')} is required for {args.subcommand}")


def _check_exists(*paths: str | None) -> None:
    for path in paths:
        if path is not None and not Path(path).exists():
            raise _Usage(f"input file not found: {path}")


def _load(args: argparse.Namespace, *, need_topic: bool = True) -> Corpus:
    _require(args, "corpus")
    if need_topic:
        _require(args, "topic")
    _check_exists(args.corpus, args.careers, args.clusters)
    terms = _split_csv(args.terms)
    if terms and not args.topic:
        raise _Usage("--terms requires --topic")
    return load_corpus(
        args.corpus,
        args.careers,
        args.clusters,
        _parse_horizon(args.horizon),
        doc_types=_split_csv(args.doc_types),
        delineate_terms=terms,
        delineate_topic=args.topic if terms else None,
    )


def _config_echo(args: argparse.Namespace) -> dict:
    config = {k: v for k, v in sorted(vars(args).items()) if k != "subcommand"}
    return config


def _inputs(args: argparse.Namespace) -> dict[str, str]:
    inputs = {}
    for name in ("corpus", "careers", "clusters", "corpus_b", "careers_b", "clusters_b"):
        path = getattr(args, name, None)
        if path is not None:
            inputs[name] = path
    return inputs


def _finish(args: argparse.Namespace, files: dict[str, str]) -> int:
    _require(args, "out")
    files = dict(files)
    files["manifest.json"] = build_manifest(
        args.subcommand, _config_echo(args), _inputs(args), files
    )
    write_run(args.out, files)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        corpus = _load(args, need_topic=False)
    except CorpusError as exc:
        print(f"invalid corpus: {exc}", file=sys.stderr)
        return 1
    report = validate(corpus)
    load_report = corpus.load_report
    lines = list(report.summary_lines())
    if load_report is not None:
        lines.insert(0, f"publications loaded: {load_report.publications_loaded}")
        lines.insert(1, f"dropped outside horizon: {load_report.dropped_out_of_horizon}")
        lines.insert(2, f"unknown cluster references repaired: {load_report.unknown_cluster_count}")
        lines.insert(3, f"careers: {load_report.careers_total} ({load_report.career_source})")
    text = "\n".join(lines) + "\n"
    print(text, end="")
    if args.out:
        _finish(args, {"validation.txt": text})
    return 0 if report.is_clean else 1


def _cmd_cohorts(args: argparse.Namespace) -> int:
    corpus = _load(args)
    activity = topic_activity(corpus, args.topic)
    if not activity:
        print(f"warning: topic {args.topic!r} has no publications; emitting zero rows", file=sys.stderr)
    corpus.publications.clear()  # the topic index replaces the record list
    rows = cohort_series(corpus, args.topic, args.window, args.stay_denominator, activity=activity)
    return _finish(args, {"cohorts.csv": emit_cohorts_csv(rows, raw=args.raw)})


def _cmd_indicators(args: argparse.Namespace) -> int:
    corpus = _load(args)
    activity = topic_activity(corpus, args.topic)
    if not activity:
        print(f"warning: topic {args.topic!r} has no publications; emitting zero rows", file=sys.stderr)
    corpus.publications.clear()

    def rows():
        return cohort_series(corpus, args.topic, args.window, args.stay_denominator, activity=activity)

    def sums():
        return year_summaries(corpus, args.topic, activity=activity)

    def bands():
        return production_bands(
            aggregates_as_band_profiles(corpus, args.topic, args.focus_mode, activity=activity)
        )

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            futures = [pool.submit(task) for task in (rows, sums, bands)]
            cohort_rows, summaries, band_rows = [f.result() for f in futures]
    else:
        cohort_rows, summaries, band_rows = rows(), sums(), bands()
    return _finish(
        args,
        {
            "cohorts.csv": emit_cohorts_csv(cohort_rows, raw=args.raw),
            "indicators.csv": emit_indicators_csv(summaries, raw=args.raw),
            "bands.csv": emit_bands_csv(band_rows, raw=args.raw),
        },
    )


def _cmd_classify(args: argparse.Namespace) -> int:
    corpus = _load(args)
    activity = topic_activity(corpus, args.topic)
    if not activity:
        raise UnknownTopicError(args.topic)
    profiles = author_profiles(corpus, args.topic, args.focus_mode, activity=activity)
    thresholds = resolve_thresholds(profiles, args.threshold_rule)
    result = classify_authors(profiles, thresholds, corpus=corpus, topic=args.topic)
    return _finish(
        args,
        {
            "quadrant_authors.csv": emit_quadrant_authors_csv(result, raw=args.raw),
            "quadrant_summary.csv": emit_quadrant_summary_csv(result, raw=args.raw),
            "thresholds.json": emit_thresholds_json(result),
        },
    )


def _cmd_overlay(args: argparse.Namespace) -> int:
    _require(args, "clusters")
    corpus = _load(args)
    activity = topic_activity(corpus, args.topic)
    profiles = author_profiles(corpus, args.topic, args.focus_mode, activity=activity)
    rows = cohort_series(corpus, args.topic, args.window, args.stay_denominator, activity=activity)
    overlay_rows = cluster_overlay(corpus, args.topic, profiles, rows)
    rollups = area_rollup(
        overlay_rows, corpus=corpus, topic=args.topic, profiles=profiles, cohort_rows=rows
    )
    if args.map_format == "json":
        map_name, map_text = "map.json", emit_map_json(overlay_rows, args.color_metric)
    else:
        map_name, map_text = "map.csv", emit_map_csv(overlay_rows, args.color_metric)
    return _finish(
        args,
        {
            "overlay.csv": emit_overlay_csv(overlay_rows, raw=args.raw),
            "areas.csv": emit_areas_csv(rollups, raw=args.raw),
            map_name: map_text,
        },
    )


def _cmd_compare(args: argparse.Namespace) -> int:
    _require(args, "topic_b")
    corpus = _load(args)
    corpus_b = None
    if args.corpus_b:
        _check_exists(args.corpus_b, args.careers_b, args.clusters_b)
        corpus_b = load_corpus(
            args.corpus_b,
            args.careers_b,
            args.clusters_b,
            _parse_horizon(args.horizon),
            doc_types=_split_csv(args.doc_types),
        )

    pool = ThreadPoolExecutor(max_workers=args.threads) if args.threads > 1 else None
    try:
        report = compare(
            corpus, args.topic, args.topic_b, corpus_b,
            stay_window=args.window,
            stay_denominator=args.stay_denominator,
            threshold_rule=args.threshold_rule,
            focus_mode=args.focus_mode,
            pooled_thresholds=args.pooled_thresholds,
            pool=pool,
        )
    finally:
        if pool is not None:
            pool.shutdown()
    return _finish(args, comparison_files(report, raw=args.raw))


def _cmd_synth(args: argparse.Namespace) -> int:
    _require(args, "out")
    horizon = _parse_horizon(args.horizon)
    entrants = {y: args.entrants for y in range(horizon[0], horizon[1] + 1)}
    if args.entrants_map:
        for pair in _split_csv(args.entrants_map) or []:
            try:
                year_text, count_text = pair.split("=")
                entrants[int(year_text)] = int(count_text)
            except ValueError:
                raise _Usage(f"--entrants-map expects Y=N pairs, got {pair!r}") from None
    config = GeneratorConfig(
        seed=args.seed,
        horizon=horizon,
        authors_per_year=entrants,
        p_newborn=args.p_newborn,
        stay_prob=args.stay_prob,
        lotka_alpha=args.alpha,
        n_clusters=args.clusters_n,
        n_areas=args.areas_n,
        topic_share=args.topic_share,
        topic=args.topic or "topic",
        stay_window=args.window,
        max_production=args.max_production,
        career_back_max=args.career_back,
    )
    truth = generate(config, args.out)
    out = Path(args.out)
    outputs = {}
    for name in ("publications.jsonl", "careers.csv", "clusters.csv", "ground_truth.json"):
        if (out / name).exists():
            outputs[name] = sha256_file(out / name)
    manifest = {
        "tool": "communitylens",
        "version": __version__,
        "subcommand": "synth",
        "config": config.as_dict(),
        "inputs": {},
        "outputs": outputs,
    }
    atomic_write_text(out / "manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(
        f"generated {truth.n_publications} publications, {truth.n_authors} authors -> {out}",
        file=sys.stderr,
    )
    return 0


_HANDLERS = {
    "validate": _cmd_validate,
    "cohorts": _cmd_cohorts,
    "indicators": _cmd_indicators,
    "classify": _cmd_classify,
    "overlay": _cmd_overlay,
    "compare": _cmd_compare,
    "synth": _cmd_synth,
}


def main(argv: list[str] | None = None) -> int:
    try:
        defaults = _load_env_config()
        parser = build_parser(defaults)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        if args.threads < 1:
            raise _Usage("--threads must be at least 1")
        if args.window < 1:
            raise _Usage("--window must be at least 1")
        return _HANDLERS[args.subcommand](args)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (CorpusError, UnknownTopicError, CareerDataError, DegenerateDistributionError) as exc:
        # data-level failures; UnknownTopicError must outrank the ValueError
        # branch below, which maps flag/config mistakes to usage errors
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InfeasibleConfigError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
