import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from communitylens.classify import classify_authors, resolve_thresholds
from communitylens.cohorts import UnknownTopicError, cohort_series
from communitylens.compare import (
    compare,
    comparison_files,
    diff_bands_csv,
    diff_cohorts_csv,
)
from communitylens.indicators import author_profiles, production_bands, year_summaries

from oracles import make_corpus, oracle_cutoff, random_raw_corpus


def two_topic_corpus():
    pubs = [
        ("p01", 2012, ["a1"], ["alpha"]),
        ("p02", 2012, ["a1"], ["alpha"]),
        ("p03", 2012, ["a2"], ["alpha"]),
        ("p04", 2013, ["a2"], ["alpha"]),
        ("p05", 2012, ["x1"], ["alpha", "beta"]),
        ("p06", 2012, ["b1"], ["beta"]),
        ("p07", 2013, ["b1"], ["beta"]),
        ("p08", 2013, ["b1"], ["beta"]),
        ("p09", 2013, ["b2"], ["beta"]),
    ]
    careers = {
        "a1": (2010, {2010: 1, 2012: 2}),
        "a2": (2012, {2012: 1, 2013: 1}),
        "x1": (2012, {2012: 2}),
        "b1": (2012, {2012: 1, 2013: 2}),
        "b2": (2013, {2013: 1}),
    }
    return make_corpus(pubs, careers)


def random_corpus(seed):
    pubs, careers, clusters = random_raw_corpus(random.Random(seed))
    return make_corpus(pubs, careers, clusters)


def test_self_compare_is_all_zero():
    corpus = two_topic_corpus()
    report = compare(corpus, "alpha", "alpha")
    assert report.side_a == report.side_b
    assert report.overlap == report.side_a.n_authors == 3
    files = comparison_files(report)
    # every difference cell is zero or blank; label columns are skipped
    label_cols = {"diff_cohorts.csv": 0, "diff_indicators.csv": 1,
                  "diff_bands.csv": 1, "diff_quadrant_summary.csv": 3}
    for name, start in label_cols.items():
        for line in files[name].splitlines()[1:]:
            for cell in line.split(",")[start:]:
                assert cell in ("", "0", "0.0", "0.00"), (name, line)


def test_sides_match_standalone_pipeline():
    corpus = two_topic_corpus()
    report = compare(corpus, "alpha", "beta", stay_window=3)
    for side, topic in ((report.side_a, "alpha"), (report.side_b, "beta")):
        assert side.topic == topic
        assert side.cohort_rows == cohort_series(corpus, topic, stay_window=3)
        assert side.summaries == year_summaries(corpus, topic)
        profiles = author_profiles(corpus, topic)
        assert side.profiles == profiles
        assert side.bands == production_bands(profiles)
        want = classify_authors(
            profiles, resolve_thresholds(profiles, "promote"), corpus=corpus, topic=topic
        )
        assert side.classification == want
    assert report.overlap == 1  # only x1 holds both flags


def test_second_corpus_feeds_side_b():
    corpus_a = random_corpus(1)
    corpus_b = random_corpus(2)
    report = compare(corpus_a, "alpha", "alpha", corpus_b)
    assert report.side_a.cohort_rows == cohort_series(corpus_a, "alpha", stay_window=2)
    assert report.side_b.cohort_rows == cohort_series(corpus_b, "alpha", stay_window=2)
    both = set(report.side_a.profiles) & set(report.side_b.profiles)
    assert report.overlap == len(both)


def test_pooled_thresholds_use_union_of_values():
    corpus = two_topic_corpus()
    split = compare(corpus, "alpha", "beta")
    pooled = compare(corpus, "alpha", "beta", pooled_thresholds=True)
    values_p = [p.production_total for side in (pooled.side_a, pooled.side_b)
                for p in side.profiles.values()]
    values_f = [p.focus_overall for side in (pooled.side_a, pooled.side_b)
                for p in side.profiles.values()]
    want_p, _ = oracle_cutoff(values_p, "promote")
    want_f, _ = oracle_cutoff(values_f, "promote")
    for side in (pooled.side_a, pooled.side_b):
        assert side.classification.thresholds.production_cutoff == want_p
        assert side.classification.thresholds.focus_cutoff == want_f
    # per-side cutoffs differ here, so pooling must actually change something
    assert (
        split.side_a.classification.thresholds != split.side_b.classification.thresholds
    )


def test_degenerate_side_reports_note():
    pubs = [
        ("p1", 2012, ["a1"], ["alpha"]),
        ("p2", 2012, ["a1"], ["alpha"]),
        ("p3", 2013, ["a2"], ["alpha"]),
        ("p4", 2012, ["c1"], ["gamma"]),
        ("p5", 2013, ["c2"], ["gamma"]),
    ]
    careers = {
        "a1": (2012, {2012: 3}),
        "a2": (2013, {2013: 1}),
        "c1": (2012, {2012: 1}),
        "c2": (2013, {2013: 1}),
    }
    corpus = make_corpus(pubs, careers)
    report = compare(corpus, "alpha", "gamma")
    assert report.side_a.classification is not None
    assert report.side_b.classification is None
    assert "production" in report.side_b.classification_note
    files = comparison_files(report)
    assert "a_thresholds.json" in files
    for name in ("b_thresholds.json", "b_quadrant_authors.csv", "b_quadrant_summary.csv"):
        assert name not in files
    assert "classification_note_b" in files["summary.csv"]
    assert "classification_note_a" not in files["summary.csv"]
    # the diff table degrades to header-only rather than inventing zeros
    assert files["diff_quadrant_summary.csv"].count("\n") == 1


def test_unknown_topic_raises():
    corpus = two_topic_corpus()
    with pytest.raises(UnknownTopicError):
        compare(corpus, "alpha", "no-such-topic")
    with pytest.raises(UnknownTopicError):
        compare(corpus, "no-such-topic", "beta")


def test_comparison_file_set_is_complete():
    corpus = two_topic_corpus()
    files = comparison_files(compare(corpus, "alpha", "beta"))
    want = {"summary.csv", "diff_cohorts.csv", "diff_indicators.csv",
            "diff_bands.csv", "diff_quadrant_summary.csv"}
    for prefix in ("a", "b"):
        want |= {
            f"{prefix}_cohorts.csv", f"{prefix}_indicators.csv", f"{prefix}_bands.csv",
            f"{prefix}_quadrant_authors.csv", f"{prefix}_quadrant_summary.csv",
            f"{prefix}_thresholds.json",
        }
    assert set(files) == want
    for body in files.values():
        assert body.endswith("\n")
        assert "\r" not in body


def test_executor_has_no_effect_on_output():
    corpus = random_corpus(3)
    serial = comparison_files(compare(corpus, "alpha", "beta"))
    with ThreadPoolExecutor(max_workers=2) as pool:
        threaded = comparison_files(compare(corpus, "alpha", "beta", pool=pool))
    assert serial == threaded


def test_diff_rejects_mismatched_series():
    wide = cohort_series(two_topic_corpus(), "alpha", stay_window=2)
    narrow = cohort_series(
        make_corpus([("p1", 2012, ["a1"], ["alpha"])], horizon=(2012, 2013)),
        "alpha",
        stay_window=1,
    )
    with pytest.raises(ValueError):
        diff_cohorts_csv(wide, narrow)


def test_diff_cells_subtract_exactly():
    corpus = two_topic_corpus()
    report = compare(corpus, "alpha", "beta")
    lines = diff_cohorts_csv(
        report.side_a.cohort_rows, report.side_b.cohort_rows
    ).splitlines()
    # 2012: alpha 3 entrants / beta 2, both all-new, 2 newborns and 1 stayer each
    row_2012 = lines[5].split(",")
    assert row_2012[:5] == ["1", "0", "1", "0", "0"]
    bands = diff_bands_csv(report.side_a.bands, report.side_b.bands).splitlines()
    # one-paper authors: alpha {x1} vs beta {x1, b2}
    assert bands[1].split(",")[:2] == ["1", "-1"]


def test_random_corpora_sides_equal_direct_runs():
    checked = 0
    for seed in range(40, 70):
        corpus = random_corpus(seed)
        for denom in ("new", "all"):
            try:
                report = compare(
                    corpus, "alpha", "beta", stay_denominator=denom,
                    focus_mode="mean_annual", threshold_rule="inclusive",
                )
            except UnknownTopicError:
                continue
            for side, topic in ((report.side_a, "alpha"), (report.side_b, "beta")):
                assert side.cohort_rows == cohort_series(
                    corpus, topic, stay_window=2, stay_denominator=denom
                )
                assert side.profiles == author_profiles(
                    corpus, topic, focus_mode="mean_annual"
                )
            checked += 1
    assert checked > 20
