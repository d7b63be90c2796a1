"""Author-level indicators and their per-year and per-band aggregates.

Each topic author gets a profile: first publication year ever, topic entry
year, per-year topic production, per-year focus (share of that year's total
output that is on-topic), whole-horizon production and focus, and the entry
lag between first publication and first topic publication.

Aggregation has two equivalent paths: author_profiles() materializes profile
objects for interactive use, while the summary functions can also stream over
the raw topic index so ten-million-record corpora never hold per-author
objects. Both paths share the same exact-rational arithmetic; count-derived
means are Fractions, only the 95% interval half-width is a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .cohorts import YearCohorts, topic_activity
from .corpus import Corpus, MissingCareerError
from .rounding import MeanAccumulator

TOTAL_RATIO = "total_ratio"
MEAN_ANNUAL = "mean_annual"

_FOCUS_MODES = {
    "total": TOTAL_RATIO,
    "total_ratio": TOTAL_RATIO,
    "annual": MEAN_ANNUAL,
    "mean_annual": MEAN_ANNUAL,
}

#: Production bands: (label, low, high); high None = unbounded.
BANDS = (("1", 1, 1), ("2", 2, 2), ("3-5", 3, 5), ("6-10", 6, 10), (">10", 11, None))


class CareerDataError(Exception):
    """Career data cannot support the requested indicator (surfaced, not patched)."""


def normalize_focus_mode(value: str) -> str:
    try:
        return _FOCUS_MODES[value]
    except KeyError:
        raise ValueError(f"focus mode must be one of {sorted(_FOCUS_MODES)}, got {value!r}") from None


@dataclass(slots=True)
class AuthorProfile:
    author_id: str
    first_year: int  # first publication ever
    entry_year: int  # first topic publication
    topic_counts: dict[int, int]  # per-year topic production
    focus_by_year: dict[int, Fraction]  # per-year percentage of output on topic
    production_total: int
    focus_overall: Fraction
    entry_lag: int  # entry_year - first_year


@dataclass(slots=True)
class AuthorAggregate:
    """Lightweight per-author row for streaming reductions."""

    author_id: str
    first_year: int
    entry_year: int
    topic_counts: dict[int, int]
    career_counts: dict[int, int]  # total output, topic years and horizon only
    production_total: int
    career_total: int  # career output summed over horizon years


def iter_author_aggregates(
    corpus: Corpus,
    topic: str,
    *,
    activity: dict[str, dict[int, int]] | None = None,
) -> Iterator[AuthorAggregate]:
    """Yield one aggregate per topic author, ordered by author_id.

    Raises MissingCareerError / CareerDataError when the career file lacks an
    author or undercounts a year in which they have topic output.
    """
    if activity is None:
        activity = topic_activity(corpus, topic)
    y0, y1 = corpus.horizon
    careers = corpus.careers
    missing = [a for a in activity if a not in careers]
    if missing:
        raise MissingCareerError(sorted(missing))
    for author, topic_counts in activity.items():
        career = careers[author]
        pubs_by_year = career.pubs_by_year
        career_counts: dict[int, int] = {}
        career_total = 0
        for y, n in pubs_by_year.items():
            if y0 <= y <= y1:
                career_total += n
        for y, n_topic in topic_counts.items():
            n_total = pubs_by_year.get(y, 0)
            if n_total < n_topic:
                raise CareerDataError(
                    f"author {author!r}: career lists {n_total} publication(s) in {y} "
                    f"but the corpus holds {n_topic} topic record(s)"
                )
            career_counts[y] = n_total
        yield AuthorAggregate(
            author_id=author,
            first_year=career.first_year,
            entry_year=min(topic_counts),
            topic_counts=topic_counts,
            career_counts=career_counts,
            production_total=sum(topic_counts.values()),
            career_total=career_total,
        )


def _focus_overall(agg: AuthorAggregate, focus_mode: str) -> Fraction:
    if focus_mode == TOTAL_RATIO:
        return Fraction(100 * agg.production_total, agg.career_total)
    acc = MeanAccumulator()
    for y, n_topic in agg.topic_counts.items():
        acc.add(100 * n_topic, agg.career_counts[y])
    mean = acc.mean()
    assert mean is not None  # every topic author has at least one topic year
    return mean


def author_profiles(
    corpus: Corpus,
    topic: str,
    focus_mode: str = TOTAL_RATIO,
    *,
    activity: dict[str, dict[int, int]] | None = None,
) -> dict[str, AuthorProfile]:
    """One profile per distinct topic author, keyed and ordered by author_id."""
    focus_mode = normalize_focus_mode(focus_mode)
    profiles: dict[str, AuthorProfile] = {}
    for agg in iter_author_aggregates(corpus, topic, activity=activity):
        focus_by_year = {
            y: Fraction(100 * n, agg.career_counts[y]) for y, n in sorted(agg.topic_counts.items())
        }
        profiles[agg.author_id] = AuthorProfile(
            author_id=agg.author_id,
            first_year=agg.first_year,
            entry_year=agg.entry_year,
            topic_counts=dict(sorted(agg.topic_counts.items())),
            focus_by_year=focus_by_year,
            production_total=agg.production_total,
            focus_overall=_focus_overall(agg, focus_mode),
            entry_lag=agg.entry_year - agg.first_year,
        )
    return profiles


@dataclass(slots=True)
class YearIndicatorSummary:
    """Means over the authors active on the topic in one year.

    Absent groups yield None cells. focus_ci95 is the 95% half-width of the
    mean focus under the normal approximation (1.96 * s / sqrt(n), sample sd
    with ddof=1), 0.0 when fewer than two authors carry a focus value.
    """

    year: int
    n_active: int
    n_new: int
    n_old: int
    mean_first_year_all: Fraction | None
    mean_first_year_new: Fraction | None
    mean_first_year_old: Fraction | None
    mean_entry_year: Fraction | None
    mean_production: Fraction | None
    mean_focus: Fraction | None
    focus_ci95: float | None


class _YearAccumulator:
    __slots__ = (
        "year",
        "first_all",
        "first_new",
        "first_old",
        "entry",
        "production",
        "focus",
        "focus_sum",
        "focus_sumsq",
    )

    def __init__(self, year: int) -> None:
        self.year = year
        self.first_all = MeanAccumulator()
        self.first_new = MeanAccumulator()
        self.first_old = MeanAccumulator()
        self.entry = MeanAccumulator()
        self.production = MeanAccumulator()
        self.focus = MeanAccumulator()
        self.focus_sum = 0.0
        self.focus_sumsq = 0.0

    def add(self, first_year: int, entry_year: int, n_topic: int, n_total: int) -> None:
        self.first_all.add(first_year)
        if entry_year == self.year:
            self.first_new.add(first_year)
        else:
            self.first_old.add(first_year)
        self.entry.add(entry_year)
        self.production.add(n_topic)
        self.focus.add(100 * n_topic, n_total)
        x = 100.0 * n_topic / n_total
        self.focus_sum += x
        self.focus_sumsq += x * x

    def summary(self) -> YearIndicatorSummary:
        n = self.first_all.count
        ci: float | None = None
        if n >= 1:
            ci = 0.0
            if n >= 2:
                mean = self.focus_sum / n
                var = (self.focus_sumsq - n * mean * mean) / (n - 1)
                ci = 1.96 * math.sqrt(max(var, 0.0) / n)
        return YearIndicatorSummary(
            year=self.year,
            n_active=n,
            n_new=self.first_new.count,
            n_old=self.first_old.count,
            mean_first_year_all=self.first_all.mean(),
            mean_first_year_new=self.first_new.mean(),
            mean_first_year_old=self.first_old.mean(),
            mean_entry_year=self.entry.mean(),
            mean_production=self.production.mean(),
            mean_focus=self.focus.mean(),
            focus_ci95=ci,
        )


def year_summaries(
    corpus: Corpus,
    topic: str,
    *,
    activity: dict[str, dict[int, int]] | None = None,
) -> list[YearIndicatorSummary]:
    """Streaming per-year summaries for every horizon year."""
    y0, y1 = corpus.horizon
    accs = {y: _YearAccumulator(y) for y in range(y0, y1 + 1)}
    for agg in iter_author_aggregates(corpus, topic, activity=activity):
        for y, n_topic in agg.topic_counts.items():
            accs[y].add(agg.first_year, agg.entry_year, n_topic, agg.career_counts[y])
    return [accs[y].summary() for y in range(y0, y1 + 1)]


def year_summary(
    profiles: dict[str, AuthorProfile],
    cohorts: YearCohorts,
    year: int | None = None,
) -> YearIndicatorSummary:
    """Summary for one year from materialized profiles and its cohort row."""
    if year is None:
        year = cohorts.year
    elif year != cohorts.year:
        raise ValueError(f"year {year} does not match cohort row year {cohorts.year}")
    acc = _YearAccumulator(year)
    for author_id in sorted(cohorts.all_authors):
        p = profiles[author_id]
        n_topic = p.topic_counts.get(year, 0)
        if n_topic == 0:
            continue
        # The year's total output is recoverable exactly from the focus
        # fraction: focus = 100*n_topic/total.
        total = int(Fraction(100 * n_topic) / p.focus_by_year[year])
        acc.add(p.first_year, p.entry_year, n_topic, total)
    return acc.summary()


@dataclass(slots=True)
class ProductionBand:
    label: str
    low: int
    high: int | None
    n_authors: int
    share: Fraction  # percent of all topic authors
    mean_focus: Fraction | None


def production_bands(
    profiles: dict[str, AuthorProfile] | Iterable[AuthorProfile],
) -> list[ProductionBand]:
    """Partition authors by whole-horizon production; mean focus per band."""
    if isinstance(profiles, dict):
        items: Iterable[AuthorProfile] = profiles.values()
    else:
        items = profiles
    counts = [0] * len(BANDS)
    focus = [MeanAccumulator() for _ in BANDS]
    total = 0
    for p in items:
        total += 1
        for i, (_, low, high) in enumerate(BANDS):
            if p.production_total >= low and (high is None or p.production_total <= high):
                counts[i] += 1
                focus[i].add(p.focus_overall.numerator, p.focus_overall.denominator)
                break
    rows = []
    for i, (label, low, high) in enumerate(BANDS):
        share = Fraction(100 * counts[i], total) if total else Fraction(0)
        rows.append(ProductionBand(label, low, high, counts[i], share, focus[i].mean()))
    return rows


def aggregates_as_band_profiles(
    corpus: Corpus,
    topic: str,
    focus_mode: str = TOTAL_RATIO,
    *,
    activity: dict[str, dict[int, int]] | None = None,
) -> Iterator[AuthorProfile]:
    """Minimal profiles (production and focus only) for streaming band tables."""
    focus_mode = normalize_focus_mode(focus_mode)
    for agg in iter_author_aggregates(corpus, topic, activity=activity):
        yield AuthorProfile(
            author_id=agg.author_id,
            first_year=agg.first_year,
            entry_year=agg.entry_year,
            topic_counts={},
            focus_by_year={},
            production_total=agg.production_total,
            focus_overall=_focus_overall(agg, focus_mode),
            entry_lag=agg.entry_year - agg.first_year,
        )
