"""Per-year community composition for a topic.

For each calendar year the topic's authors split into old authors (topic
publications in an earlier horizon year) and new authors (first topic
publication that year). New authors subdivide further: new-born authors whose
first publication ever falls in the entry year, and stayers who publish on
the topic again within the stay window. Stayer status is undetermined for
entry years whose window extends past the horizon, mirroring the blank
trailing cells in the source tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .corpus import Corpus, MissingCareerError
from .rounding import percent

NEW_AUTHORS = "new_authors"
ALL_AUTHORS = "all_authors"

_DENOMINATORS = {
    "new": NEW_AUTHORS,
    "new_authors": NEW_AUTHORS,
    "all": ALL_AUTHORS,
    "all_authors": ALL_AUTHORS,
}


class UnknownTopicError(ValueError):
    def __init__(self, topic: str):
        super().__init__(f"topic label {topic!r} has no publications in the corpus")
        self.topic = topic


def normalize_denominator(value: str) -> str:
    try:
        return _DENOMINATORS[value]
    except KeyError:
        raise ValueError(f"stay_denominator must be one of {sorted(_DENOMINATORS)}, got {value!r}") from None


@dataclass(slots=True)
class YearCohorts:
    """Cohort membership for one year. stayers is None when undetermined."""

    year: int
    stay_window: int
    stay_denominator: str
    all_authors: frozenset[str]
    old_authors: frozenset[str]
    new_authors: frozenset[str]
    newborn_authors: frozenset[str]
    stayers: frozenset[str] | None

    @property
    def stay_determined(self) -> bool:
        return self.stayers is not None

    @property
    def n_all(self) -> int:
        return len(self.all_authors)

    @property
    def n_old(self) -> int:
        return len(self.old_authors)

    @property
    def n_new(self) -> int:
        return len(self.new_authors)

    @property
    def n_newborn(self) -> int:
        return len(self.newborn_authors)

    @property
    def n_stay(self) -> int | None:
        return None if self.stayers is None else len(self.stayers)

    @property
    def percent_old(self) -> Fraction:
        return percent(self.n_old, self.n_all)

    @property
    def percent_new(self) -> Fraction:
        return percent(self.n_new, self.n_all)

    @property
    def percent_newborn(self) -> Fraction:
        return percent(self.n_newborn, self.n_new)

    def percent_stay(self, denominator: str | None = None) -> Fraction | None:
        """Stayer share; None while undetermined, 0 on an empty denominator."""
        if self.stayers is None:
            return None
        denom = normalize_denominator(denominator or self.stay_denominator)
        base = self.n_new if denom == NEW_AUTHORS else self.n_all
        return percent(len(self.stayers), base)

    def zero_denominator_fields(self) -> tuple[str, ...]:
        """Percentage fields whose denominator was 0 (reported as 0, flagged)."""
        flagged = []
        if self.n_all == 0:
            flagged.extend(["percent_old", "percent_new"])
        if self.n_new == 0:
            flagged.append("percent_newborn")
        if self.stayers is not None:
            base = self.n_new if self.stay_denominator == NEW_AUTHORS else self.n_all
            if base == 0:
                flagged.append("percent_stay")
        return tuple(flagged)


def topic_activity(corpus: Corpus, topic: str) -> dict[str, dict[int, int]]:
    """Per-author topic publication counts by year (the shared topic index).

    Cohort and indicator computations both reduce over this structure; the
    CLI builds it once per run. Iteration order is sorted by author_id so
    every downstream reduction is enumeration-order independent.
    """
    y0, y1 = corpus.horizon
    activity: dict[str, dict[int, int]] = {}
    for rec in corpus.publications:
        if topic in rec.topic_flags:
            if not y0 <= rec.year <= y1:
                raise ValueError(
                    f"publication {rec.pub_id!r} in {rec.year} lies outside horizon {y0}:{y1}"
                )
            for author in rec.author_ids:
                by_year = activity.get(author)
                if by_year is None:
                    activity[author] = {rec.year: 1}
                else:
                    by_year[rec.year] = by_year.get(rec.year, 0) + 1
    return {a: activity[a] for a in sorted(activity)}


def _build_year_sets(
    corpus: Corpus,
    activity: dict[str, dict[int, int]],
    stay_window: int,
    stay_denominator: str,
) -> list[YearCohorts]:
    y0, y1 = corpus.horizon
    years = range(y0, y1 + 1)
    all_by_year: dict[int, set[str]] = {y: set() for y in years}
    old_by_year: dict[int, set[str]] = {y: set() for y in years}
    new_by_year: dict[int, set[str]] = {y: set() for y in years}
    newborn_by_year: dict[int, set[str]] = {y: set() for y in years}
    stay_by_year: dict[int, set[str]] = {y: set() for y in years}
    missing: set[str] = set()

    for author, by_year in activity.items():
        active_years = sorted(by_year)
        entry = active_years[0]
        new_by_year[entry].add(author)
        career = corpus.careers.get(author)
        if career is None:
            missing.add(author)
        elif career.first_year == entry:
            newborn_by_year[entry].add(author)
        for y in active_years:
            all_by_year[y].add(author)
            if y > entry:
                old_by_year[y].add(author)
        if entry + stay_window <= y1 and any(
            entry < t <= entry + stay_window for t in active_years[1:]
        ):
            stay_by_year[entry].add(author)

    if missing:
        raise MissingCareerError(sorted(missing))

    rows = []
    for y in years:
        determined = y + stay_window <= y1
        rows.append(
            YearCohorts(
                year=y,
                stay_window=stay_window,
                stay_denominator=stay_denominator,
                all_authors=frozenset(all_by_year[y]),
                old_authors=frozenset(old_by_year[y]),
                new_authors=frozenset(new_by_year[y]),
                newborn_authors=frozenset(newborn_by_year[y]),
                stayers=frozenset(stay_by_year[y]) if determined else None,
            )
        )
    return rows


def cohort_series(
    corpus: Corpus,
    topic: str,
    stay_window: int = 2,
    stay_denominator: str = NEW_AUTHORS,
    *,
    activity: dict[str, dict[int, int]] | None = None,
) -> list[YearCohorts]:
    """One YearCohorts per horizon year.

    A topic with no publications yields all-empty rows rather than an error,
    so series emission stays total. Pass a precomputed topic_activity() to
    share the index with indicator summaries.
    """
    if stay_window < 1:
        raise ValueError(f"stay_window must be >= 1, got {stay_window}")
    stay_denominator = normalize_denominator(stay_denominator)
    if activity is None:
        activity = topic_activity(corpus, topic)
    return _build_year_sets(corpus, activity, stay_window, stay_denominator)


def year_cohorts(
    corpus: Corpus,
    topic: str,
    year: int,
    stay_window: int = 2,
    stay_denominator: str = NEW_AUTHORS,
) -> YearCohorts:
    """Cohorts for a single year; raises on a topic absent from the corpus."""
    y0, y1 = corpus.horizon
    if not y0 <= year <= y1:
        raise ValueError(f"year {year} outside horizon {y0}:{y1}")
    if stay_window < 1:
        raise ValueError(f"stay_window must be >= 1, got {stay_window}")
    stay_denominator = normalize_denominator(stay_denominator)
    activity = topic_activity(corpus, topic)
    if not activity:
        raise UnknownTopicError(topic)
    rows = _build_year_sets(corpus, activity, stay_window, stay_denominator)
    return rows[year - y0]
