"""Corpus loading, validation, delineation, and canonical writers.

A corpus couples three inputs:

* publications: JSONL, one record per line with fields
  pub_id (str), year (int), authors (non-empty list of str), and optional
  topic_flags (list of str), cluster_id, doc_type, title, abstract, keywords.
* careers: CSV in long format with header ``author_id,yfp,year,count`` giving
  each author's first publication year and full per-year output. Optional;
  when absent, careers are derived from the publication stream itself.
* clusters: CSV with header ``cluster_id,label,area,total_authors,x,y``
  describing the publication-level clustering and its map layout. Optional.

Records outside the analysis horizon are dropped at load (and counted), so
downstream history lookups only ever see within-horizon activity. Career
derivation happens before the horizon drop: an author's first year and totals
reflect every parsed record, which keeps derived careers consistent with what
a supplied careers file built from the same stream would say.
"""

from __future__ import annotations

import csv
import gc
import json
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

# Canonical top-level research areas for cluster metadata.
RESEARCH_AREAS = (
    "Biomedical & Health Sciences",
    "Life & Earth Sciences",
    "Mathematics & Computer Science",
    "Physical Sciences & Engineering",
    "Social Sciences & Humanities",
)

DEFAULT_HORIZON = (2008, 2017)

_CAREERS_HEADER = ["author_id", "yfp", "year", "count"]
_CLUSTERS_HEADER = ["cluster_id", "label", "area", "total_authors", "x", "y"]

# Cap on per-item detail kept in reports and error messages; counts stay exact.
_SAMPLE_CAP = 50


class CorpusError(Exception):
    """Base class for defects in corpus inputs."""


class MalformedRecordError(CorpusError):
    def __init__(self, source: str, line: int, reason: str):
        super().__init__(f"{source}, line {line}: {reason}")
        self.source = source
        self.line = line
        self.reason = reason


class DuplicatePubIdError(CorpusError):
    def __init__(self, line: int, pub_id: str):
        super().__init__(f"duplicate pub_id {pub_id!r} at line {line}")
        self.line = line
        self.pub_id = pub_id


class MissingCareerError(CorpusError):
    def __init__(self, author_ids: Sequence[str]):
        shown = ", ".join(author_ids[:_SAMPLE_CAP])
        more = "" if len(author_ids) <= _SAMPLE_CAP else f" (+{len(author_ids) - _SAMPLE_CAP} more)"
        super().__init__(f"{len(author_ids)} author(s) missing from careers file: {shown}{more}")
        self.author_ids = list(author_ids)


class CareerConflictError(CorpusError):
    """Supplied career data contradicts itself or the publication stream."""

    def __init__(self, conflicts: Sequence[tuple[str, str]]):
        shown = "; ".join(f"{a}: {why}" for a, why in conflicts[:_SAMPLE_CAP])
        more = "" if len(conflicts) <= _SAMPLE_CAP else f" (+{len(conflicts) - _SAMPLE_CAP} more)"
        super().__init__(f"{len(conflicts)} career conflict(s): {shown}{more}")
        self.conflicts = list(conflicts)


@dataclass(slots=True)
class PublicationRecord:
    """One publication. Treat instances as read-only once loaded."""

    pub_id: str
    year: int
    author_ids: tuple[str, ...]
    topic_flags: frozenset[str]
    cluster_id: str | None = None
    doc_type: str | None = None
    title: str | None = None
    abstract: str | None = None
    keywords: tuple[str, ...] | None = None


@dataclass(slots=True)
class AuthorCareer:
    """First publication year and full per-year output of one author."""

    author_id: str
    first_year: int
    pubs_by_year: dict[int, int]

    def total_in(self, horizon: tuple[int, int]) -> int:
        y0, y1 = horizon
        return sum(n for y, n in self.pubs_by_year.items() if y0 <= y <= y1)


@dataclass(slots=True)
class ClusterMeta:
    cluster_id: str
    label: str
    area: str
    total_authors: int
    x: float | None = None
    y: float | None = None


@dataclass
class LoadReport:
    """What load_corpus did: counts of parsed, kept, dropped, and repaired rows."""

    horizon: tuple[int, int]
    publications_parsed: int = 0
    publications_loaded: int = 0
    dropped_out_of_horizon: int = 0
    dropped_doc_type: int = 0
    delineated: int = 0
    unknown_cluster_count: int = 0
    unknown_cluster_samples: list[tuple[str, str]] = field(default_factory=list)
    unknown_areas: list[str] = field(default_factory=list)
    career_source: str = "derived"
    careers_total: int = 0


@dataclass
class ValidationReport:
    """Defects found in an in-memory corpus. Lists are sorted and exact.

    Hard defects (duplicates, malformed records, career problems) make the
    corpus unusable; unknown cluster references, out-of-horizon records and
    non-canonical areas are warnings that load_corpus already handles.
    """

    duplicate_pub_ids: list[str] = field(default_factory=list)
    malformed: list[tuple[str, str]] = field(default_factory=list)
    missing_careers: list[str] = field(default_factory=list)
    career_conflicts: list[tuple[str, str]] = field(default_factory=list)
    out_of_horizon: list[str] = field(default_factory=list)
    unknown_clusters: list[tuple[str, str]] = field(default_factory=list)
    unknown_areas: list[str] = field(default_factory=list)

    @property
    def hard_defects(self) -> int:
        return (
            len(self.duplicate_pub_ids)
            + len(self.malformed)
            + len(self.missing_careers)
            + len(self.career_conflicts)
        )

    @property
    def warnings(self) -> int:
        return len(self.out_of_horizon) + len(self.unknown_clusters) + len(self.unknown_areas)

    @property
    def is_clean(self) -> bool:
        return self.hard_defects == 0

    def summary_lines(self) -> list[str]:
        out = [
            f"duplicate pub_ids: {len(self.duplicate_pub_ids)}",
            f"malformed records: {len(self.malformed)}",
            f"missing careers: {len(self.missing_careers)}",
            f"career conflicts: {len(self.career_conflicts)}",
            f"out-of-horizon records (warning): {len(self.out_of_horizon)}",
            f"unknown cluster references (warning): {len(self.unknown_clusters)}",
            f"non-canonical areas (warning): {len(self.unknown_areas)}",
        ]
        for name in ("duplicate_pub_ids", "missing_careers", "unknown_areas"):
            for item in getattr(self, name)[:_SAMPLE_CAP]:
                out.append(f"  {name}: {item}")
        for name in ("malformed", "career_conflicts", "unknown_clusters"):
            for subject, detail in getattr(self, name)[:_SAMPLE_CAP]:
                out.append(f"  {name}: {subject}: {detail}")
        return out


@dataclass
class Corpus:
    publications: list[PublicationRecord]
    careers: dict[str, AuthorCareer]
    clusters: dict[str, ClusterMeta]
    horizon: tuple[int, int]
    load_report: LoadReport | None = None
    _topic_labels: frozenset[str] | None = field(default=None, repr=False, compare=False)

    def topic_labels(self) -> frozenset[str]:
        """Union of all topic flags in the corpus (cached)."""
        if self._topic_labels is None:
            labels: set[str] = set()
            for rec in self.publications:
                labels.update(rec.topic_flags)
            self._topic_labels = frozenset(labels)
        return self._topic_labels


# --- topic delineation ----------------------------------------------------

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def _normalize(text: str) -> str:
    # Flatten to space-joined lowercase tokens with sentinel spaces so a plain
    # substring test is a token-boundary phrase test.
    return " " + " ".join(_TOKEN_RE.findall(text.lower())) + " "


def _compile_terms(terms: Sequence[str]) -> list[str]:
    compiled = []
    for term in terms:
        norm = _normalize(term)
        if norm != "  ":
            compiled.append(norm)
    if not compiled:
        raise ValueError("no usable delineation terms")
    return compiled


def delineate(record: PublicationRecord, terms: Sequence[str]) -> bool:
    """True if any term occurs as a contiguous phrase in the record's text.

    Matching is case-insensitive on token boundaries, so "Big-Data" and
    "big data" are the same phrase; a phrase never spans two keywords.
    """
    compiled = _compile_terms(terms)
    fields = [record.title, record.abstract]
    fields.extend(record.keywords or ())
    for text in fields:
        if not text:
            continue
        norm = _normalize(text)
        if any(phrase in norm for phrase in compiled):
            return True
    return False


# --- loading ----------------------------------------------------------------


def _check_horizon(horizon: tuple[int, int]) -> tuple[int, int]:
    y0, y1 = int(horizon[0]), int(horizon[1])
    if y0 > y1:
        raise ValueError(f"empty horizon {y0}:{y1}")
    return (y0, y1)


def load_careers_csv(path: str | Path) -> dict[str, AuthorCareer]:
    """Parse a long-format careers file into one AuthorCareer per author."""
    careers: dict[str, AuthorCareer] = {}
    conflicts: list[tuple[str, str]] = []
    source = str(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _CAREERS_HEADER:
            raise MalformedRecordError(source, 1, f"expected header {','.join(_CAREERS_HEADER)}")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise MalformedRecordError(source, line_no, f"expected 4 columns, got {len(row)}")
            author_id = row[0]
            if not author_id:
                raise MalformedRecordError(source, line_no, "empty author_id")
            try:
                yfp, year, count = int(row[1]), int(row[2]), int(row[3])
            except ValueError:
                raise MalformedRecordError(source, line_no, f"non-integer value in {row[1:]}") from None
            if count < 0:
                raise MalformedRecordError(source, line_no, f"negative count {count}")
            career = careers.get(author_id)
            if career is None:
                careers[author_id] = AuthorCareer(author_id, yfp, {year: count} if count else {})
            else:
                if career.first_year != yfp:
                    conflicts.append((author_id, f"inconsistent yfp {career.first_year} vs {yfp}"))
                if count:
                    career.pubs_by_year[year] = career.pubs_by_year.get(year, 0) + count
    for author_id in careers:
        career = careers[author_id]
        if not career.pubs_by_year:
            conflicts.append((author_id, "no positive publication counts"))
        elif min(career.pubs_by_year) < career.first_year:
            conflicts.append(
                (author_id, f"count in {min(career.pubs_by_year)} precedes yfp {career.first_year}")
            )
    if conflicts:
        conflicts.sort()
        raise CareerConflictError(conflicts)
    return careers


def load_clusters_csv(path: str | Path) -> tuple[dict[str, ClusterMeta], list[str]]:
    """Parse cluster metadata; returns (clusters, non-canonical area names)."""
    clusters: dict[str, ClusterMeta] = {}
    bad_areas: set[str] = set()
    source = str(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _CLUSTERS_HEADER:
            raise MalformedRecordError(source, 1, f"expected header {','.join(_CLUSTERS_HEADER)}")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 6:
                raise MalformedRecordError(source, line_no, f"expected 6 columns, got {len(row)}")
            cluster_id, label, area, total_raw, x_raw, y_raw = row
            if not cluster_id:
                raise MalformedRecordError(source, line_no, "empty cluster_id")
            if cluster_id in clusters:
                raise MalformedRecordError(source, line_no, f"duplicate cluster_id {cluster_id!r}")
            try:
                total = int(total_raw)
                x = float(x_raw) if x_raw else None
                y = float(y_raw) if y_raw else None
            except ValueError:
                raise MalformedRecordError(source, line_no, f"bad numeric field in {row[3:]}") from None
            if total < 0:
                raise MalformedRecordError(source, line_no, f"negative total_authors {total}")
            if area not in RESEARCH_AREAS:
                bad_areas.add(area)
            clusters[cluster_id] = ClusterMeta(cluster_id, label, area, total, x, y)
    return clusters, sorted(bad_areas)


def load_corpus(
    publications_path: str | Path,
    careers_path: str | Path | None = None,
    clusters_path: str | Path | None = None,
    horizon: tuple[int, int] = DEFAULT_HORIZON,
    *,
    doc_types: Iterable[str] | None = None,
    delineate_terms: Sequence[str] | None = None,
    delineate_topic: str | None = None,
) -> Corpus:
    """Load and cross-check a corpus.

    Raises MalformedRecordError / DuplicatePubIdError on bad publication
    lines, MissingCareerError when supplied careers omit an observed author,
    and CareerConflictError when supplied careers contradict the stream
    (first year later than an observed record, or a per-year count below the
    number of observed records). Unknown cluster references are repaired to
    None and reported, not fatal.
    """
    horizon = _check_horizon(horizon)
    y0, y1 = horizon
    report = LoadReport(horizon=horizon)

    doc_type_filter = frozenset(doc_types) if doc_types is not None else None
    terms = _compile_terms(delineate_terms) if delineate_terms else None
    if terms and not delineate_topic:
        raise ValueError("delineate_terms requires delineate_topic")

    clusters: dict[str, ClusterMeta] = {}
    if clusters_path is not None:
        clusters, bad_areas = load_clusters_csv(clusters_path)
        report.unknown_areas = bad_areas

    careers: dict[str, AuthorCareer] | None = None
    career_index: dict[str, int] = {}
    career_list: list[AuthorCareer] = []
    if careers_path is not None:
        careers = load_careers_csv(careers_path)
        report.career_source = "supplied"
        for i, author_id in enumerate(careers):
            career_index[author_id] = i
            career_list.append(careers[author_id])

    publications: list[PublicationRecord] = []
    seen_ids: set[str] = set()
    # Interning tables: corpora repeat years, author tuples, flag sets and
    # small labels millions of times; sharing them dominates peak memory.
    intern_str: dict[str, str] = {}
    intern_year: dict[int, int] = {}
    intern_authors: dict[tuple[str, ...], tuple[str, ...]] = {}
    intern_flags: dict[frozenset[str], frozenset[str]] = {}
    # Author activity observed in the stream: either to derive careers or to
    # cross-check supplied ones. Supplied mode packs (author index, year) into
    # one int key to keep 10M-record corpora inside memory.
    derived: dict[str, dict[int, int]] = {}
    observed: dict[int, int] = {}
    missing_authors: set[str] = set()

    source = str(publications_path)
    gc_was_enabled = gc.isenabled()
    gc.disable()  # bulk allocation phase; nothing here creates cycles
    try:
        with open(publications_path, encoding="utf-8") as fh:
            line_no = 0
            for line in fh:
                line_no += 1
                if not line.strip():
                    continue
                try:
                    raw = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise MalformedRecordError(source, line_no, f"invalid JSON: {exc.msg}") from None
                if type(raw) is not dict:
                    raise MalformedRecordError(source, line_no, "record is not an object")
                try:
                    pub_id = raw["pub_id"]
                    year = raw["year"]
                    authors = raw["authors"]
                except KeyError as exc:
                    raise MalformedRecordError(source, line_no, f"missing field {exc.args[0]}") from None
                if type(pub_id) is not str or not pub_id:
                    raise MalformedRecordError(source, line_no, "pub_id must be a non-empty string")
                if type(year) is not int or not 1 <= year <= 9999:
                    raise MalformedRecordError(source, line_no, f"year must be an integer in 1..9999, got {year!r}")
                if type(authors) is not list or not authors:
                    raise MalformedRecordError(source, line_no, "authors must be a non-empty list")
                for a in authors:
                    if type(a) is not str or not a:
                        raise MalformedRecordError(source, line_no, "author ids must be non-empty strings")
                if len(set(authors)) != len(authors):
                    raise MalformedRecordError(source, line_no, "duplicate author_id within record")
                if pub_id in seen_ids:
                    raise DuplicatePubIdError(line_no, pub_id)
                seen_ids.add(pub_id)
                report.publications_parsed += 1

                doc_type = raw.get("doc_type")
                if doc_type is not None and (type(doc_type) is not str or not doc_type):
                    raise MalformedRecordError(source, line_no, "doc_type must be a non-empty string")
                if doc_type_filter is not None and doc_type not in doc_type_filter:
                    report.dropped_doc_type += 1
                    continue

                year = intern_year.setdefault(year, year)
                author_key = tuple(authors)
                author_tuple = intern_authors.get(author_key)
                if author_tuple is None:
                    author_tuple = tuple(intern_str.setdefault(a, a) for a in authors)
                    intern_authors[author_tuple] = author_tuple

                # Careers account for every record surviving the doc-type
                # filter, including out-of-horizon ones dropped below.
                if careers is None:
                    for a in author_tuple:
                        by_year = derived.get(a)
                        if by_year is None:
                            derived[a] = {year: 1}
                        else:
                            by_year[year] = by_year.get(year, 0) + 1
                else:
                    for a in author_tuple:
                        idx = career_index.get(a)
                        if idx is None:
                            missing_authors.add(a)
                        else:
                            key = idx * 10000 + year
                            observed[key] = observed.get(key, 0) + 1

                if not y0 <= year <= y1:
                    report.dropped_out_of_horizon += 1
                    continue

                flags_raw = raw.get("topic_flags")
                if flags_raw is None:
                    flags_key = frozenset()
                else:
                    if type(flags_raw) is not list:
                        raise MalformedRecordError(source, line_no, "topic_flags must be a list")
                    for f in flags_raw:
                        if type(f) is not str or not f:
                            raise MalformedRecordError(source, line_no, "topic flags must be non-empty strings")
                    flags_key = frozenset(flags_raw)
                title = raw.get("title")
                abstract = raw.get("abstract")
                keywords_raw = raw.get("keywords")
                if title is not None and type(title) is not str:
                    raise MalformedRecordError(source, line_no, "title must be a string")
                if abstract is not None and type(abstract) is not str:
                    raise MalformedRecordError(source, line_no, "abstract must be a string")
                keywords: tuple[str, ...] | None = None
                if keywords_raw is not None:
                    if type(keywords_raw) is not list:
                        raise MalformedRecordError(source, line_no, "keywords must be a list")
                    for k in keywords_raw:
                        if type(k) is not str:
                            raise MalformedRecordError(source, line_no, "keywords must be strings")
                    keywords = tuple(keywords_raw)

                cluster_id = raw.get("cluster_id")
                if cluster_id is not None and (type(cluster_id) is not str or not cluster_id):
                    raise MalformedRecordError(source, line_no, "cluster_id must be a non-empty string")
                if cluster_id is not None and clusters and cluster_id not in clusters:
                    report.unknown_cluster_count += 1
                    if len(report.unknown_cluster_samples) < _SAMPLE_CAP:
                        report.unknown_cluster_samples.append((pub_id, cluster_id))
                    cluster_id = None
                if cluster_id is not None:
                    cluster_id = intern_str.setdefault(cluster_id, cluster_id)
                if doc_type is not None:
                    doc_type = intern_str.setdefault(doc_type, doc_type)

                if terms is not None and delineate_topic not in flags_key:
                    hit = False
                    for text in (title, abstract, *(keywords or ())):
                        if text and any(p in _normalize(text) for p in terms):
                            hit = True
                            break
                    if hit:
                        flags_key = flags_key | {delineate_topic}
                        report.delineated += 1
                flags = intern_flags.setdefault(flags_key, flags_key)

                publications.append(
                    PublicationRecord(
                        pub_id, year, author_tuple, flags, cluster_id, doc_type, title, abstract, keywords
                    )
                )
    finally:
        if gc_was_enabled:
            gc.enable()

    report.publications_loaded = len(publications)
    del seen_ids, intern_str, intern_year, intern_authors, intern_flags

    if careers is None:
        careers = {}
        for author_id in derived:
            by_year = derived[author_id]
            careers[author_id] = AuthorCareer(author_id, min(by_year), by_year)
    else:
        if missing_authors:
            raise MissingCareerError(sorted(missing_authors))
        conflicts: list[tuple[str, str]] = []
        for key in observed:
            idx, year = divmod(key, 10000)
            career = career_list[idx]
            n_seen = observed[key]
            if year < career.first_year:
                conflicts.append(
                    (career.author_id, f"record in {year} precedes yfp {career.first_year}")
                )
            elif career.pubs_by_year.get(year, 0) < n_seen:
                conflicts.append(
                    (
                        career.author_id,
                        f"{n_seen} record(s) in {year} exceed career count "
                        f"{career.pubs_by_year.get(year, 0)}",
                    )
                )
        if conflicts:
            conflicts.sort()
            raise CareerConflictError(conflicts)
    report.careers_total = len(careers)

    if report.unknown_cluster_count:
        log.warning(
            "%d publication(s) referenced unknown clusters; references cleared (e.g. %s)",
            report.unknown_cluster_count,
            report.unknown_cluster_samples[:3],
        )

    return Corpus(publications, careers, clusters, horizon, load_report=report)


# --- validation of in-memory corpora ---------------------------------------


def validate(corpus: Corpus) -> ValidationReport:
    """Re-derive every defect and warning for an in-memory corpus."""
    report = ValidationReport()
    y0, y1 = corpus.horizon
    seen: set[str] = set()
    observed: dict[str, dict[int, int]] = {}
    missing: set[str] = set()
    unknown_clusters: list[tuple[str, str]] = []

    for rec in corpus.publications:
        if rec.pub_id in seen:
            report.duplicate_pub_ids.append(rec.pub_id)
        seen.add(rec.pub_id)
        if not rec.author_ids:
            report.malformed.append((rec.pub_id, "empty author list"))
        elif len(set(rec.author_ids)) != len(rec.author_ids):
            report.malformed.append((rec.pub_id, "duplicate author_id within record"))
        if not 1 <= rec.year <= 9999:
            report.malformed.append((rec.pub_id, f"year {rec.year} out of range"))
        elif not y0 <= rec.year <= y1:
            report.out_of_horizon.append(rec.pub_id)
        if any(not f for f in rec.topic_flags):
            report.malformed.append((rec.pub_id, "empty topic flag"))
        if rec.cluster_id is not None and corpus.clusters and rec.cluster_id not in corpus.clusters:
            unknown_clusters.append((rec.pub_id, rec.cluster_id))
        for a in rec.author_ids:
            career = corpus.careers.get(a)
            if career is None:
                missing.add(a)
                continue
            by_year = observed.get(a)
            if by_year is None:
                observed[a] = {rec.year: 1}
            else:
                by_year[rec.year] = by_year.get(rec.year, 0) + 1

    for author_id in sorted(observed):
        career = corpus.careers[author_id]
        if not career.pubs_by_year:
            report.career_conflicts.append((author_id, "no positive publication counts"))
            continue
        if min(career.pubs_by_year) < career.first_year:
            report.career_conflicts.append(
                (author_id, f"count in {min(career.pubs_by_year)} precedes yfp {career.first_year}")
            )
        for year in sorted(observed[author_id]):
            n_seen = observed[author_id][year]
            if year < career.first_year:
                report.career_conflicts.append(
                    (author_id, f"record in {year} precedes yfp {career.first_year}")
                )
            elif career.pubs_by_year.get(year, 0) < n_seen:
                report.career_conflicts.append(
                    (author_id, f"{n_seen} record(s) in {year} exceed career count {career.pubs_by_year.get(year, 0)}")
                )

    report.missing_careers = sorted(missing)
    report.duplicate_pub_ids.sort()
    report.malformed.sort()
    report.out_of_horizon.sort()
    report.unknown_clusters = sorted(unknown_clusters)
    if corpus.clusters:
        report.unknown_areas = sorted(
            {c.area for c in corpus.clusters.values() if c.area not in RESEARCH_AREAS}
        )
    return report


# --- canonical writers ------------------------------------------------------


def publication_to_json(rec: PublicationRecord) -> str:
    """One canonical JSONL line (fixed key order, sorted flags)."""
    obj: dict = {"pub_id": rec.pub_id, "year": rec.year, "authors": list(rec.author_ids)}
    if rec.topic_flags:
        obj["topic_flags"] = sorted(rec.topic_flags)
    if rec.cluster_id is not None:
        obj["cluster_id"] = rec.cluster_id
    if rec.doc_type is not None:
        obj["doc_type"] = rec.doc_type
    if rec.title is not None:
        obj["title"] = rec.title
    if rec.abstract is not None:
        obj["abstract"] = rec.abstract
    if rec.keywords is not None:
        obj["keywords"] = list(rec.keywords)
    return json.dumps(obj, separators=(",", ":"))


def write_publications_jsonl(path: str | Path, records: Iterable[PublicationRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(publication_to_json(rec))
            fh.write("\n")


def write_careers_csv(path: str | Path, careers: dict[str, AuthorCareer]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_CAREERS_HEADER)
        for author_id in sorted(careers):
            career = careers[author_id]
            for year in sorted(career.pubs_by_year):
                count = career.pubs_by_year[year]
                if count:
                    writer.writerow([author_id, career.first_year, year, count])


def write_clusters_csv(path: str | Path, clusters: dict[str, ClusterMeta]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_CLUSTERS_HEADER)
        for cluster_id in sorted(clusters):
            c = clusters[cluster_id]
            writer.writerow(
                [
                    c.cluster_id,
                    c.label,
                    c.area,
                    c.total_authors,
                    "" if c.x is None else repr(c.x),
                    "" if c.y is None else repr(c.y),
                ]
            )
