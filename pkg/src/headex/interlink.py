"""Cross-source and cross-time links between extracted events.

Two events describe the same happening when they share the event class, come
from different publishers, lie within a configurable time window of each
other, and their participant sets agree by Jaccard similarity.  A weaker,
directed "related" link connects an earlier event to a later one that shares
at least one participant within a horizon, unless the pair is already a
same-event pair.

Pair search is windowed: entries are sorted by time (per class for the
same-event pass) and only pairs inside the window are compared, which keeps
the scan near-linear on realistic feeds while producing exactly the pairs a
quadratic scan would.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from typing import Iterable

from .rdf import OWL_SAME_AS, RDF_TYPE, SKOS_RELATED, Literal, Triple, TripleSet, local_name
from .triplify import BODY, EXTRACTED_ON, HAS_SOURCE, SINGLETON_PROPERTY_OF, IriPolicy


class InterlinkError(ValueError):
    """Raised when the graph lacks the provenance needed for linking."""


@dataclass(frozen=True)
class EventIndexEntry:
    instance_iri: str
    class_iri: str
    participants: frozenset[str]
    timestamp: datetime
    publisher: str


def _timestamp(lexical: str) -> datetime:
    # extractedOn carries a date; midnight UTC makes windows well-defined.
    day = date.fromisoformat(lexical)
    return datetime(day.year, day.month, day.day, tzinfo=timezone.utc)


def build_event_index(graph: TripleSet, policy: IriPolicy) -> list[EventIndexEntry]:
    """Collect one entry per statement IRI, sorted by (time, IRI).

    Participants are the IRI-valued arguments of the statement: objects of
    its role properties plus both ends of its main triple, minus text-role
    nodes (recognized by their body literal) and provenance targets.
    """
    sp_of = policy.property_iri(SINGLETON_PROPERTY_OF)
    has_source = policy.property_iri(HAS_SOURCE)
    extracted_on = policy.property_iri(EXTRACTED_ON)
    body = policy.property_iri(BODY)

    classes: dict[str, str] = {}
    text_nodes: set[str] = set()
    for triple in graph:
        if triple.predicate == sp_of and isinstance(triple.object, str):
            classes[triple.subject] = triple.object
        elif triple.predicate == body:
            text_nodes.add(triple.subject)

    sources: dict[str, str] = {}
    dates: dict[str, datetime] = {}
    participants: dict[str, set[str]] = {iri: set() for iri in classes}
    skip_predicates = {sp_of, has_source, extracted_on, RDF_TYPE}

    source_prefix = f"{policy.base_iri}source/"
    for triple in graph:
        sp = triple.subject
        if sp in classes:
            if triple.predicate == has_source and isinstance(triple.object, str):
                target = triple.object
                sources[sp] = (
                    target[len(source_prefix) :]
                    if target.startswith(source_prefix)
                    else local_name(target)
                )
                continue
            if triple.predicate == extracted_on and isinstance(triple.object, Literal):
                dates[sp] = _timestamp(triple.object.lexical)
                continue
            if triple.predicate not in skip_predicates and isinstance(triple.object, str):
                if triple.object not in text_nodes:
                    participants[sp].add(triple.object)
        if triple.predicate in classes:
            bucket = participants[triple.predicate]
            if triple.subject not in text_nodes:
                bucket.add(triple.subject)
            if isinstance(triple.object, str) and triple.object not in text_nodes:
                bucket.add(triple.object)

    entries = []
    for iri in classes:
        if iri not in sources or iri not in dates:
            raise InterlinkError(f"statement {iri} lacks source or extraction date")
        entries.append(
            EventIndexEntry(
                instance_iri=iri,
                class_iri=classes[iri],
                participants=frozenset(participants[iri]),
                timestamp=dates[iri],
                publisher=sources[iri],
            )
        )
    entries.sort(key=lambda e: (e.timestamp, e.instance_iri))
    return entries


def jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    union = a | b
    if not union:
        return 0.0
    return len(a & b) / len(union)


def find_same_events(
    entries: Iterable[EventIndexEntry],
    window_hours: float = 48.0,
    jaccard_min: float = 0.5,
) -> list[tuple[str, str]]:
    """Unordered same-event pairs, each returned once as (smaller, larger IRI)."""
    window = timedelta(hours=window_hours)
    by_class: dict[str, list[EventIndexEntry]] = {}
    for entry in entries:
        by_class.setdefault(entry.class_iri, []).append(entry)

    pairs: set[tuple[str, str]] = set()
    for group in by_class.values():
        group.sort(key=lambda e: (e.timestamp, e.instance_iri))
        left = 0
        for j, later in enumerate(group):
            while later.timestamp - group[left].timestamp > window:
                left += 1
            for i in range(left, j):
                earlier = group[i]
                if earlier.publisher == later.publisher:
                    continue
                if jaccard(earlier.participants, later.participants) < jaccard_min:
                    continue
                pairs.add(tuple(sorted((earlier.instance_iri, later.instance_iri))))
    return sorted(pairs)


def find_related_events(
    entries: Iterable[EventIndexEntry],
    horizon_days: float = 7.0,
    exclude: Iterable[tuple[str, str]] = (),
) -> list[tuple[str, str]]:
    """Directed (earlier, later) pairs sharing a participant within the horizon.

    Simultaneous events are never related (the direction would be arbitrary),
    and pairs listed in ``exclude`` (same-event links, in any order) are
    skipped.
    """
    horizon = timedelta(days=horizon_days)
    excluded = {tuple(sorted(pair)) for pair in exclude}
    ordered = sorted(entries, key=lambda e: (e.timestamp, e.instance_iri))

    pairs: list[tuple[str, str]] = []
    left = 0
    for j, later in enumerate(ordered):
        while later.timestamp - ordered[left].timestamp > horizon:
            left += 1
        for i in range(left, j):
            earlier = ordered[i]
            if not earlier.timestamp < later.timestamp:
                continue
            if not earlier.participants & later.participants:
                continue
            key = tuple(sorted((earlier.instance_iri, later.instance_iri)))
            if key in excluded:
                continue
            pairs.append((earlier.instance_iri, later.instance_iri))
    return sorted(pairs)


def interlink_graph(
    graph: TripleSet,
    policy: IriPolicy,
    window_hours: float = 48.0,
    jaccard_min: float = 0.5,
    horizon_days: float = 7.0,
) -> tuple[TripleSet, int, int]:
    """Run both passes over a graph; returns (link triples, same count, related count)."""
    entries = build_event_index(graph, policy)
    same = find_same_events(entries, window_hours=window_hours, jaccard_min=jaccard_min)
    related = find_related_events(entries, horizon_days=horizon_days, exclude=same)
    links = TripleSet()
    for a, b in same:
        links.add(Triple(a, OWL_SAME_AS, b))
    for earlier, later in related:
        links.add(Triple(earlier, SKOS_RELATED, later))
    return links, len(same), len(related)
