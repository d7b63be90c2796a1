"""Brute-force oracles and random corpus builders.

Every oracle here recomputes its answer by repeated full scans over raw
publication dicts with nested loops and no shared indexes, so agreement with
the pipeline is evidence, not tautology. Oracles stay quadratic on purpose;
they only ever run on small corpora.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from communitylens.corpus import AuthorCareer, ClusterMeta, Corpus, PublicationRecord

AREAS = (
    "Biomedical & Health Sciences",
    "Life & Earth Sciences",
    "Mathematics & Computer Science",
    "Physical Sciences & Engineering",
    "Social Sciences & Humanities",
)


# --- corpus construction helpers ---------------------------------------------


def make_corpus(pubs, careers=None, clusters=None, horizon=(2008, 2017)):
    """Build a Corpus from loose tuples.

    pubs: iterable of (pub_id, year, authors, topics) or (..., cluster_id).
    careers: {author: (yfp, {year: count})}; None derives from the records.
    clusters: {cluster_id: (label, area, total_authors, x, y)} or None.
    """
    records = []
    for item in pubs:
        pub_id, year, authors, topics = item[:4]
        cluster_id = item[4] if len(item) > 4 else None
        records.append(
            PublicationRecord(
                pub_id=str(pub_id),
                year=year,
                author_ids=tuple(authors),
                topic_flags=frozenset(topics),
                cluster_id=cluster_id,
            )
        )
    if careers is None:
        derived: dict[str, dict[int, int]] = {}
        for rec in records:
            for a in rec.author_ids:
                derived.setdefault(a, {})
                derived[a][rec.year] = derived[a].get(rec.year, 0) + 1
        career_map = {a: AuthorCareer(a, min(by), by) for a, by in derived.items()}
    else:
        career_map = {
            a: AuthorCareer(a, yfp, dict(by_year)) for a, (yfp, by_year) in careers.items()
        }
    cluster_map = {}
    if clusters:
        for cid, (label, area, total, x, y) in clusters.items():
            cluster_map[cid] = ClusterMeta(cid, label, area, total, x, y)
    return Corpus(records, career_map, cluster_map, horizon)


def corpus_to_raw(corpus: Corpus):
    """Plain dicts for the oracles, decoupled from package types."""
    pubs = []
    for rec in corpus.publications:
        pubs.append(
            {
                "pub_id": rec.pub_id,
                "year": rec.year,
                "authors": list(rec.author_ids),
                "topics": set(rec.topic_flags),
                "cluster_id": rec.cluster_id,
            }
        )
    careers = {
        a: {"yfp": c.first_year, "counts": dict(c.pubs_by_year)}
        for a, c in corpus.careers.items()
    }
    clusters = {
        cid: {"label": m.label, "area": m.area, "total": m.total_authors, "x": m.x, "y": m.y}
        for cid, m in corpus.clusters.items()
    }
    return pubs, careers, clusters


# --- cohort oracle ------------------------------------------------------------


def oracle_year_cohorts(pubs, careers, topic, year, window, horizon):
    """Quadratic recomputation of one year's cohort sets."""
    y0, y1 = horizon

    def on_topic(p):
        return topic in p["topics"] and y0 <= p["year"] <= y1

    all_authors = set()
    for p in pubs:
        if on_topic(p) and p["year"] == year:
            all_authors.update(p["authors"])
    old = set()
    for a in all_authors:
        for p in pubs:
            if on_topic(p) and p["year"] < year and a in p["authors"]:
                old.add(a)
                break
    new = all_authors - old
    newborn = set()
    for a in new:
        if careers[a]["yfp"] == year:
            newborn.add(a)
    if year + window > y1:
        stay = None
    else:
        stay = set()
        for a in new:
            for p in pubs:
                if on_topic(p) and year < p["year"] <= year + window and a in p["authors"]:
                    stay.add(a)
                    break
    return {
        "all": all_authors,
        "old": old,
        "new": new,
        "newborn": newborn,
        "stay": stay,
    }


# --- profile oracle -----------------------------------------------------------


def oracle_profiles(pubs, careers, topic, horizon, focus_mode="total_ratio"):
    y0, y1 = horizon

    def on_topic(p):
        return topic in p["topics"] and y0 <= p["year"] <= y1

    authors = set()
    for p in pubs:
        if on_topic(p):
            authors.update(p["authors"])
    out = {}
    for a in sorted(authors):
        counts = {}
        for p in pubs:
            if on_topic(p) and a in p["authors"]:
                counts[p["year"]] = counts.get(p["year"], 0) + 1
        career = careers[a]
        focus_by_year = {
            y: Fraction(100 * n, career["counts"][y]) for y, n in sorted(counts.items())
        }
        production = sum(counts.values())
        career_total = sum(n for y, n in career["counts"].items() if y0 <= y <= y1)
        if focus_mode == "total_ratio":
            overall = Fraction(100 * production, career_total)
        else:
            vals = list(focus_by_year.values())
            overall = sum(vals, Fraction(0)) / len(vals)
        entry = min(counts)
        out[a] = {
            "yfp": career["yfp"],
            "entry": entry,
            "counts": counts,
            "focus_by_year": focus_by_year,
            "production": production,
            "focus": overall,
            "lag": entry - career["yfp"],
        }
    return out


# --- classification oracle -----------------------------------------------------


def oracle_cutoff(values, rule):
    """Independent nearest-rank P75 with explicit promotion."""
    ordered = sorted(values)
    n = len(ordered)
    rank = math.ceil(0.75 * n)
    raw = ordered[rank - 1]
    if rule == "promote" and raw == ordered[0]:
        above = [v for v in ordered if v > ordered[0]]
        return above[0], True
    return raw, False


def oracle_classify(profiles_oracle, rule="promote"):
    productions = [p["production"] for p in profiles_oracle.values()]
    focuses = [p["focus"] for p in profiles_oracle.values()]
    if min(productions) == max(productions) or min(focuses) == max(focuses):
        return None  # degenerate: pipeline must abort
    p_cut, _ = oracle_cutoff(productions, rule)
    f_cut, _ = oracle_cutoff(focuses, rule)

    def high(value, cut):
        return value > cut if rule == "strict" else value >= cut

    groups = {}
    for a, p in profiles_oracle.items():
        hp, hf = high(p["production"], p_cut), high(p["focus"], f_cut)
        if hp and hf:
            groups[a] = "specialist"
        elif hf:
            groups[a] = "interested"
        elif hp:
            groups[a] = "casual"
        else:
            groups[a] = "incidental"
    return {"production_cutoff": p_cut, "focus_cutoff": f_cut, "groups": groups}


# --- overlay oracle -------------------------------------------------------------


def oracle_overlay(pubs, careers, clusters, topic, horizon, window):
    y0, y1 = horizon
    eligible_end = y1 - window
    prof = oracle_profiles(pubs, careers, topic, horizon)

    def on_topic(p):
        return topic in p["topics"] and y0 <= p["year"] <= y1

    def is_stayer(a):
        entry = prof[a]["entry"]
        if entry + window > y1:
            return False
        for p in pubs:
            if on_topic(p) and entry < p["year"] <= entry + window and a in p["authors"]:
                return True
        return False

    rows = {}
    for cid in sorted(clusters):
        members = set()
        for p in pubs:
            if on_topic(p) and p["cluster_id"] == cid:
                members.update(a for a in p["authors"] if a in prof)
        if not members:
            continue
        total = clusters[cid]["total"]
        n = len(members)
        eligible = [a for a in members if prof[a]["entry"] <= eligible_end]
        stayed = [a for a in eligible if is_stayer(a)]
        mean = lambda xs: sum(xs, Fraction(0)) / len(xs) if xs else None
        rows[cid] = {
            "n": n,
            "p_au": Fraction(100 * n, total) if total else None,
            "p_stay": Fraction(100 * len(stayed), len(eligible)) if eligible else None,
            "mean_yfp": mean([Fraction(prof[a]["yfp"]) for a in members]),
            "mean_entry": mean([Fraction(prof[a]["entry"]) for a in members]),
            "mean_production": mean([Fraction(prof[a]["production"]) for a in members]),
            "mean_focus": mean([prof[a]["focus"] for a in members]),
            "members": members,
        }
    return rows


def oracle_area_rollup(pubs, careers, clusters, topic, horizon, window):
    overlay = oracle_overlay(pubs, careers, clusters, topic, horizon, window)
    prof = oracle_profiles(pubs, careers, topic, horizon)
    y0, y1 = horizon
    eligible_end = y1 - window

    def on_topic(p):
        return topic in p["topics"] and y0 <= p["year"] <= y1

    def is_stayer(a):
        entry = prof[a]["entry"]
        if entry + window > y1:
            return False
        for p in pubs:
            if on_topic(p) and entry < p["year"] <= entry + window and a in p["authors"]:
                return True
        return False

    areas = {}
    for cid, row in overlay.items():
        area = clusters[cid]["area"]
        areas.setdefault(area, {"cids": [], "authors": set()})
        areas[area]["cids"].append(cid)
        areas[area]["authors"].update(row["members"])
    out = {}
    for area in sorted(areas):
        cids = areas[area]["cids"]
        authors = areas[area]["authors"]
        p_aus = [overlay[c]["p_au"] for c in cids if overlay[c]["p_au"] is not None]
        p_stays = [overlay[c]["p_stay"] for c in cids if overlay[c]["p_stay"] is not None]
        eligible = [a for a in authors if prof[a]["entry"] <= eligible_end]
        stayed = [a for a in eligible if is_stayer(a)]
        mean = lambda xs: sum(xs, Fraction(0)) / len(xs) if xs else None
        out[area] = {
            "n_clusters": len(cids),
            "n_authors": len(authors),
            "n_full": sum(overlay[c]["n"] for c in cids),
            "avg_p_au": mean(p_aus),
            "avg_p_stay": mean(p_stays),
            "pooled_p_stay": Fraction(100 * len(stayed), len(eligible)) if eligible else None,
            "mean_lag": mean([Fraction(prof[a]["lag"]) for a in authors]),
        }
    return out


# --- random corpus generation ---------------------------------------------------


def random_raw_corpus(rng: random.Random, max_pubs=80, horizon=(2008, 2017), clustered=True):
    """Random corpus material as loose tuples for make_corpus."""
    y0, y1 = horizon
    n_pubs = rng.randint(1, max_pubs)
    n_authors = rng.randint(1, max(2, n_pubs))
    author_pool = [f"w{i:03d}" for i in range(n_authors)]
    topics = ["alpha", "beta"]
    cluster_ids = [f"k{i}" for i in range(rng.randint(1, 6))] if clustered else []
    pubs = []
    for i in range(n_pubs):
        year = rng.randint(y0, y1)
        team = rng.sample(author_pool, k=min(len(author_pool), rng.randint(1, 4)))
        flags = [t for t in topics if rng.random() < 0.45]
        cid = rng.choice(cluster_ids) if cluster_ids and rng.random() < 0.7 else None
        pubs.append((f"p{i:04d}", year, team, flags, cid))

    # Careers: supersets of the observed stream with occasional earlier starts.
    observed: dict[str, dict[int, int]] = {}
    for pub_id, year, team, flags, cid in pubs:
        for a in team:
            observed.setdefault(a, {})
            observed[a][year] = observed[a].get(year, 0) + 1
    careers = {}
    for a, counts in observed.items():
        counts = dict(counts)
        first = min(counts)
        if rng.random() < 0.4:
            first = first - rng.randint(1, 6)
            counts[first] = counts.get(first, 0) + 1
        for y in list(counts):
            if rng.random() < 0.5:
                counts[y] += rng.randint(1, 3)
        careers[a] = (first, counts)

    clusters = None
    if clustered and cluster_ids:
        clusters = {}
        for i, cid in enumerate(cluster_ids):
            total = rng.choice([0, 5, 20, 100, 400])
            clusters[cid] = (
                f"cluster {cid}",
                AREAS[i % len(AREAS)],
                total,
                round(rng.uniform(-50, 50), 3),
                round(rng.uniform(-50, 50), 3),
            )
    return pubs, careers, clusters
