"""Deterministic report emission.

Every emitter returns the complete file content as a string so callers can
stage a whole run and write it atomically (temp file + rename, manifest
last). Percentages and mean years are exact rationals rounded half-up to one
decimal at this boundary; `raw` appends full-precision float columns. Files
use LF line endings and UTF-8 unconditionally, and never embed timestamps,
so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .classify import GROUPS, ClassificationResult
from .cohorts import ALL_AUTHORS, NEW_AUTHORS, YearCohorts
from .indicators import ProductionBand, YearIndicatorSummary
from .rounding import format_fixed, round_half_up

COHORT_COLUMNS = ["N_AU", "N_old", "N_new", "N_newborn", "N_stay", "P_old", "P_new", "P_newborn", "P_stay"]
OVERLAY_COLUMNS = [
    "cluster_id", "label", "area", "x", "y", "n_topic_authors",
    "p_au", "p_stay", "mean_yfp", "mean_yfp_topic", "mean_production", "mean_focus",
]
INDICATOR_COLUMNS = [
    "year", "n_authors", "n_new", "n_old", "mean_yfp", "mean_yfp_new", "mean_yfp_old",
    "mean_yfp_topic", "mean_production", "mean_focus", "focus_ci95",
]
MAP_COLUMNS = ["cluster_id", "label", "area", "x", "y", "size", "color"]


def cell(value, digits: int = 1) -> str:
    """Rounded report cell; None (absent / undetermined) is an empty cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        raise TypeError("boolean has no report representation")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return format_fixed(value, digits)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def raw_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return repr(float(value))
    return repr(value) if isinstance(value, float) else str(value)


def _csv_buffer() -> tuple[io.StringIO, csv.writer]:
    buf = io.StringIO()
    return buf, csv.writer(buf, lineterminator="\n")


def emit_cohorts_csv(
    rows: Sequence[YearCohorts],
    *,
    raw: bool = False,
    both_stay_denominators: bool = False,
) -> str:
    """Cohort series CSV; one row per horizon year, in year order.

    The pinned columns carry the configured stay denominator; the comparison
    variant appends both denominator series side by side.
    """
    header = list(COHORT_COLUMNS)
    if both_stay_denominators:
        header += ["P_stay_new", "P_stay_all"]
    if raw:
        header += ["P_old_raw", "P_new_raw", "P_newborn_raw", "P_stay_raw"]
    buf, writer = _csv_buffer()
    writer.writerow(header)
    for row in rows:
        record = [
            row.n_all,
            row.n_old,
            row.n_new,
            row.n_newborn,
            cell(row.n_stay),
            cell(row.percent_old),
            cell(row.percent_new),
            cell(row.percent_newborn),
            cell(row.percent_stay()),
        ]
        if both_stay_denominators:
            record += [cell(row.percent_stay(NEW_AUTHORS)), cell(row.percent_stay(ALL_AUTHORS))]
        if raw:
            record += [
                raw_cell(row.percent_old),
                raw_cell(row.percent_new),
                raw_cell(row.percent_newborn),
                raw_cell(row.percent_stay()),
            ]
        writer.writerow(record)
    return buf.getvalue()


def emit_indicators_csv(summaries: Sequence[YearIndicatorSummary], *, raw: bool = False) -> str:
    header = list(INDICATOR_COLUMNS)
    if raw:
        header += ["mean_yfp_raw", "mean_yfp_topic_raw", "mean_production_raw", "mean_focus_raw"]
    buf, writer = _csv_buffer()
    writer.writerow(header)
    for s in summaries:
        record = [
            s.year,
            s.n_active,
            s.n_new,
            s.n_old,
            cell(s.mean_first_year_all),
            cell(s.mean_first_year_new),
            cell(s.mean_first_year_old),
            cell(s.mean_entry_year),
            cell(s.mean_production),
            cell(s.mean_focus),
            "" if s.focus_ci95 is None else f"{s.focus_ci95:.2f}",
        ]
        if raw:
            record += [
                raw_cell(s.mean_first_year_all),
                raw_cell(s.mean_entry_year),
                raw_cell(s.mean_production),
                raw_cell(s.mean_focus),
            ]
        writer.writerow(record)
    return buf.getvalue()


def emit_bands_csv(bands: Sequence[ProductionBand], *, raw: bool = False) -> str:
    header = ["band", "low", "high", "n_authors", "share", "mean_focus"]
    if raw:
        header += ["share_raw", "mean_focus_raw"]
    buf, writer = _csv_buffer()
    writer.writerow(header)
    for b in bands:
        record = [b.label, b.low, cell(b.high), b.n_authors, cell(b.share), cell(b.mean_focus)]
        if raw:
            record += [raw_cell(b.share), raw_cell(b.mean_focus)]
        writer.writerow(record)
    return buf.getvalue()


def emit_quadrant_authors_csv(result: ClassificationResult, *, raw: bool = False) -> str:
    header = ["author_id", "production_total", "focus_overall", "group"]
    if raw:
        header.append("focus_overall_raw")
    buf, writer = _csv_buffer()
    writer.writerow(header)
    for a in result.assignments:
        record = [a.author_id, a.production_total, cell(a.focus_overall), a.group]
        if raw:
            record.append(raw_cell(a.focus_overall))
        writer.writerow(record)
    return buf.getvalue()


def emit_quadrant_summary_csv(result: ClassificationResult, *, raw: bool = False) -> str:
    header = ["scope", "area", "group", "n_authors", "share"]
    if raw:
        header.append("share_raw")
    buf, writer = _csv_buffer()
    writer.writerow(header)
    scopes = [("community", "", result.community)]
    if result.by_area:
        scopes += [("area", area, shares) for area, shares in result.by_area.items()]
    for scope, area, shares in scopes:
        for group in GROUPS:
            record = [scope, area, group, shares.counts[group], cell(shares.share(group))]
            if raw:
                record.append(raw_cell(shares.share(group)))
            writer.writerow(record)
    return buf.getvalue()


def emit_thresholds_json(result: ClassificationResult) -> str:
    t = result.thresholds
    obj = {
        "rule": t.rule,
        "production_cutoff": t.production_cutoff,
        "focus_cutoff": float(t.focus_cutoff),
        "focus_cutoff_exact": str(t.focus_cutoff),
        "production_trace": {
            "raw_percentile": float(t.production_trace.raw_percentile),
            "cutoff": float(t.production_trace.cutoff),
            "promoted": t.production_trace.promoted,
        },
        "focus_trace": {
            "raw_percentile": float(t.focus_trace.raw_percentile),
            "cutoff": float(t.focus_trace.cutoff),
            "promoted": t.focus_trace.promoted,
        },
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def emit_overlay_csv(rows: Iterable, *, raw: bool = False) -> str:
    """Cluster overlay CSV in the pinned column order."""
    header = list(OVERLAY_COLUMNS)
    if raw:
        header += ["p_au_raw", "p_stay_raw", "mean_yfp_raw", "mean_yfp_topic_raw",
                   "mean_production_raw", "mean_focus_raw"]
    buf, writer = _csv_buffer()
    writer.writerow(header)
    for r in rows:
        record = [
            r.cluster_id,
            r.label,
            r.area,
            cell(r.x),
            cell(r.y),
            r.n_topic_authors,
            cell(r.p_au),
            cell(r.p_stay),
            cell(r.mean_first_year),
            cell(r.mean_entry_year),
            cell(r.mean_production),
            cell(r.mean_focus),
        ]
        if raw:
            record += [
                raw_cell(r.p_au),
                raw_cell(r.p_stay),
                raw_cell(r.mean_first_year),
                raw_cell(r.mean_entry_year),
                raw_cell(r.mean_production),
                raw_cell(r.mean_focus),
            ]
        writer.writerow(record)
    return buf.getvalue()


def emit_areas_csv(rollups: Iterable, *, raw: bool = False) -> str:
    header = [
        "area", "n_clusters", "n_authors", "n_authors_full",
        "avg_p_au", "avg_p_stay", "pooled_p_stay",
        "mean_yfp", "mean_yfp_topic", "mean_lag",
        "top_cluster_id", "top_cluster_label", "top_cluster_p_au",
    ]
    if raw:
        header += ["avg_p_au_raw", "avg_p_stay_raw", "pooled_p_stay_raw", "mean_lag_raw"]
    buf, writer = _csv_buffer()
    writer.writerow(header)
    for r in rollups:
        record = [
            r.area,
            r.n_clusters,
            r.n_authors,
            r.n_authors_full,
            cell(r.avg_p_au),
            cell(r.avg_p_stay),
            cell(r.pooled_p_stay),
            cell(r.mean_first_year),
            cell(r.mean_entry_year),
            cell(r.mean_lag),
            "" if r.top_cluster_id is None else r.top_cluster_id,
            "" if r.top_cluster_label is None else r.top_cluster_label,
            cell(r.top_cluster_p_au),
        ]
        if raw:
            record += [
                raw_cell(r.avg_p_au),
                raw_cell(r.avg_p_stay),
                raw_cell(r.pooled_p_stay),
                raw_cell(r.mean_lag),
            ]
        writer.writerow(record)
    return buf.getvalue()


def emit_map_csv(rows: Iterable, color_metric: str = "p_au") -> str:
    buf, writer = _csv_buffer()
    writer.writerow(MAP_COLUMNS)
    for r in rows:
        color = r.p_au if color_metric == "p_au" else r.p_stay
        writer.writerow(
            [r.cluster_id, r.label, r.area, cell(r.x), cell(r.y), r.n_topic_authors, cell(color)]
        )
    return buf.getvalue()


def emit_map_json(rows: Iterable, color_metric: str = "p_au") -> str:
    out = []
    for r in rows:
        color = r.p_au if color_metric == "p_au" else r.p_stay
        out.append(
            {
                "cluster_id": r.cluster_id,
                "label": r.label,
                "area": r.area,
                "x": r.x,
                "y": r.y,
                "size": r.n_topic_authors,
                "color": None if color is None else float(round_half_up(color, 1)),
            }
        )
    return json.dumps(out, indent=2) + "\n"


# --- atomic run emission ------------------------------------------------------


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def atomic_write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def build_manifest(
    subcommand: str,
    config: dict,
    inputs: dict[str, str | Path],
    outputs: dict[str, str],
) -> str:
    """Run manifest: configuration verbatim plus digests of inputs and outputs."""
    manifest = {
        "tool": "communitylens",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
        "inputs": {name: sha256_file(path) for name, path in sorted(inputs.items())},
        "outputs": {name: sha256_text(text) for name, text in sorted(outputs.items())},
    }
    return json.dumps(manifest, indent=2, sort_keys=True) + "\n"


def write_run(out_dir: str | Path, files: dict[str, str]) -> None:
    """Write a run's files atomically: stage everything, then rename in order.

    A failure while staging leaves only .tmp files behind, which are removed;
    no partial report file ever appears under its final name.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    # manifest.json renames last: its presence marks a complete run
    order = sorted(files, key=lambda name: (name == "manifest.json", name))
    staged: list[tuple[Path, Path]] = []
    try:
        for name in order:
            final = out / name
            tmp = out / (name + ".tmp")
            with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(files[name])
            staged.append((tmp, final))
    except BaseException:
        for tmp, _ in staged:
            tmp.unlink(missing_ok=True)
        raise
    for tmp, final in staged:
        os.replace(tmp, final)
