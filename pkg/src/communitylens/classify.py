"""Quadrant classification of topic authors.

Authors split into four groups by whole-horizon production and focus, cut at
the top-25% boundary of each distribution: specialist (high production, high
focus), interested (low, high), casual (high, low), incidental (low, low).

The cutoff is the nearest-rank 75th percentile (ascending sort, rank
ceil(0.75 n)) and "high" means value >= cutoff. When the percentile value
equals the distribution minimum, so "high" would cover everyone, the cutoff
is promoted to the smallest observed value strictly above the minimum; this
tie rule reproduces both a >=2-papers specialist floor on a distribution
dominated by one-paper authors and a 100%-focus boundary where the top
quartile is saturated. Plain strict (>) and inclusive (>=) rules without
promotion are available for sensitivity runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .corpus import Corpus
from .indicators import AuthorProfile
from .rounding import percent

GROUPS = ("specialist", "interested", "casual", "incidental")

PROMOTE = "promote"
STRICT = "strict"
INCLUSIVE = "inclusive"

_RULES = {
    "promote": PROMOTE,
    "nearest_rank_promote": PROMOTE,
    "strict": STRICT,
    "inclusive": INCLUSIVE,
}


class DegenerateDistributionError(Exception):
    """All values equal: no meaningful quartile boundary exists."""

    def __init__(self, indicator: str, value):
        super().__init__(
            f"cannot resolve a quadrant cutoff: every author has {indicator} = {value}"
        )
        self.indicator = indicator
        self.value = value


def normalize_rule(value: str) -> str:
    try:
        return _RULES[value]
    except KeyError:
        raise ValueError(f"threshold rule must be one of {sorted(_RULES)}, got {value!r}") from None


@dataclass(slots=True)
class CutTrace:
    """How one cutoff was resolved."""

    raw_percentile: Fraction
    cutoff: Fraction
    promoted: bool


@dataclass(slots=True)
class QuadrantThresholds:
    production_cutoff: int
    focus_cutoff: Fraction
    rule: str
    production_trace: CutTrace
    focus_trace: CutTrace

    def high_production(self, value: int) -> bool:
        if self.rule == STRICT:
            return value > self.production_cutoff
        return value >= self.production_cutoff

    def high_focus(self, value: Fraction) -> bool:
        if self.rule == STRICT:
            return value > self.focus_cutoff
        return value >= self.focus_cutoff


def _nearest_rank_p75(values: list) -> Fraction:
    # values ascending; rank = ceil(0.75 n), 1-based
    rank = math.ceil(Fraction(3, 4) * len(values))
    return values[rank - 1]


def _resolve_one(values: list, indicator: str, rule: str) -> CutTrace:
    values = sorted(values)
    if values[0] == values[-1]:
        raise DegenerateDistributionError(indicator, values[0])
    raw = _nearest_rank_p75(values)
    cutoff = raw
    promoted = False
    if rule == PROMOTE and raw == values[0]:
        cutoff = next(v for v in values if v > raw)
        promoted = True
    return CutTrace(raw_percentile=Fraction(raw), cutoff=Fraction(cutoff), promoted=promoted)


def resolve_thresholds(
    profiles: dict[str, AuthorProfile],
    rule: str = PROMOTE,
) -> QuadrantThresholds:
    """Resolve both cutoffs over the author distribution."""
    if not profiles:
        raise ValueError("cannot resolve thresholds without profiles")
    rule = normalize_rule(rule)
    items = list(profiles.values())
    production = _resolve_one([p.production_total for p in items], "production", rule)
    focus = _resolve_one([p.focus_overall for p in items], "focus", rule)
    return QuadrantThresholds(
        production_cutoff=int(production.cutoff),
        focus_cutoff=focus.cutoff,
        rule=rule,
        production_trace=production,
        focus_trace=focus,
    )


@dataclass(slots=True)
class QuadrantAssignment:
    author_id: str
    group: str
    production_total: int
    focus_overall: Fraction


@dataclass
class GroupShares:
    total: int
    counts: dict[str, int]

    def share(self, group: str) -> Fraction:
        return percent(self.counts[group], self.total)

    def shares(self) -> dict[str, Fraction]:
        return {g: self.share(g) for g in GROUPS}


@dataclass
class ClassificationResult:
    thresholds: QuadrantThresholds
    assignments: list[QuadrantAssignment]  # ordered by author_id
    community: GroupShares
    by_area: dict[str, GroupShares] | None  # None without cluster metadata


def assign_group(thresholds: QuadrantThresholds, production: int, focus: Fraction) -> str:
    high_p = thresholds.high_production(production)
    high_f = thresholds.high_focus(focus)
    if high_p:
        return "specialist" if high_f else "casual"
    return "interested" if high_f else "incidental"


def classify_authors(
    profiles: dict[str, AuthorProfile],
    thresholds: QuadrantThresholds,
    *,
    corpus: Corpus | None = None,
    topic: str | None = None,
) -> ClassificationResult:
    """Assign every author a group; share tables per community and per area.

    Area shares need the corpus and topic to locate each author's clustered
    topic publications; an author counts once in every area where they have
    one. Without cluster metadata by_area is None.
    """
    assignments = []
    counts = {g: 0 for g in GROUPS}
    for author_id in sorted(profiles):
        p = profiles[author_id]
        group = assign_group(thresholds, p.production_total, p.focus_overall)
        counts[group] += 1
        assignments.append(QuadrantAssignment(author_id, group, p.production_total, p.focus_overall))
    community = GroupShares(total=len(assignments), counts=counts)

    by_area: dict[str, GroupShares] | None = None
    if corpus is not None and corpus.clusters and topic is not None:
        author_areas: dict[str, set[str]] = {}
        for rec in corpus.publications:
            if rec.cluster_id is None or topic not in rec.topic_flags:
                continue
            meta = corpus.clusters.get(rec.cluster_id)
            if meta is None:
                continue
            for a in rec.author_ids:
                if a in profiles:
                    author_areas.setdefault(a, set()).add(meta.area)
        area_counts: dict[str, dict[str, int]] = {}
        by_group = {a.author_id: a.group for a in assignments}
        for author_id in sorted(author_areas):
            group = by_group[author_id]
            for area in author_areas[author_id]:
                area_counts.setdefault(area, {g: 0 for g in GROUPS})[group] += 1
        by_area = {
            area: GroupShares(total=sum(c.values()), counts=c)
            for area, c in sorted(area_counts.items())
        }
    return ClassificationResult(thresholds, assignments, community, by_area)
