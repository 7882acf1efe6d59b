"""Event index construction and same-event / related-event linking."""

from __future__ import annotations

import itertools
import random
from datetime import datetime, timedelta, timezone

import pytest

from headex.ingest import read_records
from headex.interlink import (
    EventIndexEntry,
    InterlinkError,
    build_event_index,
    find_related_events,
    find_same_events,
    interlink_graph,
    jaccard,
)
from headex.pipeline import extract_corpus
from headex.rdf import OWL_SAME_AS, SKOS_RELATED, Triple, TripleSet

BASE = "http://example.org/news/"
UTC = timezone.utc


def entry(
    iri: str,
    *,
    class_iri: str = "http://x/Meet",
    participants: frozenset[str] = frozenset(),
    hours: float = 0.0,
    publisher: str = "alpha",
) -> EventIndexEntry:
    return EventIndexEntry(
        instance_iri=iri,
        class_iri=class_iri,
        participants=participants,
        timestamp=datetime(2016, 3, 1, tzinfo=UTC) + timedelta(hours=hours),
        publisher=publisher,
    )


def brute_same(entries, window_hours=48.0, jaccard_min=0.5):
    window = timedelta(hours=window_hours)
    out = set()
    for a, b in itertools.combinations(entries, 2):
        if a.class_iri != b.class_iri or a.publisher == b.publisher:
            continue
        if abs(a.timestamp - b.timestamp) > window:
            continue
        if jaccard(a.participants, b.participants) < jaccard_min:
            continue
        out.add(tuple(sorted((a.instance_iri, b.instance_iri))))
    return sorted(out)


def brute_related(entries, horizon_days=7.0, exclude=()):
    horizon = timedelta(days=horizon_days)
    excluded = {tuple(sorted(p)) for p in exclude}
    out = []
    for a, b in itertools.permutations(entries, 2):
        if not a.timestamp < b.timestamp:
            continue
        if b.timestamp - a.timestamp > horizon:
            continue
        if not (a.participants & b.participants):
            continue
        if tuple(sorted((a.instance_iri, b.instance_iri))) in excluded:
            continue
        out.append((a.instance_iri, b.instance_iri))
    return sorted(out)


def random_entries(rng: random.Random, size: int) -> list[EventIndexEntry]:
    classes = [f"http://x/C{k}" for k in range(3)]
    publishers = ("alpha", "beta", "gamma")
    pool = [f"http://x/e{k}" for k in range(8)]
    out = []
    for i in range(size):
        out.append(
            EventIndexEntry(
                instance_iri=f"http://x/E{i}",
                class_iri=rng.choice(classes),
                participants=frozenset(rng.sample(pool, rng.randint(0, 4))),
                timestamp=datetime(2016, 3, 1, tzinfo=UTC)
                + timedelta(hours=rng.randrange(0, 24 * 12)),
                publisher=rng.choice(publishers),
            )
        )
    return out


class TestJaccard:
    def test_cases(self):
        a = frozenset({"x", "y"})
        assert jaccard(frozenset(), frozenset()) == 0.0
        assert jaccard(a, frozenset()) == 0.0
        assert jaccard(a, a) == 1.0
        assert jaccard(a, frozenset({"y", "z"})) == pytest.approx(1 / 3)


class TestEventIndex:
    def test_nine_corpus_index(self, nine_result, policy):
        entries = build_event_index(nine_result.graph, policy)
        assert len(entries) == 9
        assert [e.timestamp for e in entries] == sorted(e.timestamp for e in entries)
        by_iri = {e.instance_iri: e for e in entries}

        no2 = by_iri[f"{BASE}Meet_no2"]
        assert no2.class_iri == f"{BASE}Meet"
        assert no2.publisher == "cnn"
        assert no2.timestamp == datetime(2016, 2, 26, tzinfo=UTC)
        assert no2.participants == frozenset(
            {"http://dbpedia.org/resource/Kevin_Systrom", f"{BASE}entity/pontifex"}
        )

    def test_text_nodes_are_not_participants(self, nine_result, policy):
        by_iri = {e.instance_iri: e for e in build_event_index(nine_result.graph, policy)}
        # no3's cause and count live in text nodes; only the location remains.
        assert by_iri[f"{BASE}Murder_no3"].participants == frozenset(
            {"http://dbpedia.org/resource/Bangkok"}
        )
        # no4's only IRI argument is the main-triple subject.
        assert by_iri[f"{BASE}Communication_no4"].participants == frozenset(
            {"http://dbpedia.org/resource/Angela_Merkel"}
        )

    def test_location_and_involved_entities_count(self, nine_result, policy):
        by_iri = {e.instance_iri: e for e in build_event_index(nine_result.graph, policy)}
        assert by_iri[f"{BASE}Murder_no9"].participants == frozenset(
            {
                "http://dbpedia.org/resource/Yemen",
                "http://dbpedia.org/resource/United_Arab_Emirates",
            }
        )

    def test_missing_provenance_is_an_error(self, policy):
        graph = TripleSet([Triple(f"{BASE}Meet_x", f"{BASE}singletonPropertyOf", f"{BASE}Meet")])
        with pytest.raises(InterlinkError):
            build_event_index(graph, policy)


class TestSameEvents:
    def test_requires_all_four_conditions(self):
        people = frozenset({"http://x/p"})
        a = entry("http://x/a", participants=people, publisher="alpha")
        same = entry("http://x/b", participants=people, publisher="beta", hours=24)
        same_pub = entry("http://x/c", participants=people, publisher="alpha", hours=24)
        other_class = entry(
            "http://x/d", class_iri="http://x/Murder", participants=people, publisher="beta"
        )
        low_overlap = entry(
            "http://x/e",
            participants=frozenset({"http://x/p", "http://x/q", "http://x/r"}),
            publisher="beta",
            hours=24,
        )
        late = entry("http://x/f", participants=people, publisher="beta", hours=49)
        # Each decoy breaks exactly one condition against `a`.
        assert find_same_events([a, same]) == [("http://x/a", "http://x/b")]
        assert find_same_events([a, same_pub]) == []
        assert find_same_events([a, other_class]) == []
        assert find_same_events([a, low_overlap]) == []
        assert find_same_events([a, late]) == []

    def test_window_boundary_is_inclusive(self):
        people = frozenset({"http://x/p"})
        a = entry("http://x/a", participants=people, publisher="alpha")
        b = entry("http://x/b", participants=people, publisher="beta", hours=48)
        assert find_same_events([a, b]) == [("http://x/a", "http://x/b")]
        c = entry("http://x/c", participants=people, publisher="beta", hours=48.5)
        assert find_same_events([a, c]) == []

    def test_pair_reported_once_and_sorted(self):
        people = frozenset({"http://x/p"})
        b = entry("http://x/b", participants=people, publisher="beta")
        a = entry("http://x/a", participants=people, publisher="alpha", hours=1)
        assert find_same_events([b, a]) == [("http://x/a", "http://x/b")]


class TestRelatedEvents:
    def test_directed_earlier_to_later(self):
        shared = frozenset({"http://x/p"})
        early = entry("http://x/later-name", participants=shared, hours=0)
        late = entry("http://x/earlier-name", participants=shared, hours=24)
        assert find_related_events([late, early]) == [
            ("http://x/later-name", "http://x/earlier-name")
        ]

    def test_simultaneous_events_not_related(self):
        shared = frozenset({"http://x/p"})
        a = entry("http://x/a", participants=shared)
        b = entry("http://x/b", participants=shared, publisher="beta")
        assert find_related_events([a, b]) == []

    def test_excluded_pairs_skipped(self):
        shared = frozenset({"http://x/p"})
        a = entry("http://x/a", participants=shared)
        b = entry("http://x/b", participants=shared, hours=24)
        assert find_related_events([a, b]) == [("http://x/a", "http://x/b")]
        assert find_related_events([a, b], exclude=[("http://x/b", "http://x/a")]) == []

    def test_horizon_boundary_is_inclusive(self):
        shared = frozenset({"http://x/p"})
        a = entry("http://x/a", participants=shared)
        b = entry("http://x/b", participants=shared, hours=7 * 24)
        c = entry("http://x/c", participants=shared, hours=7 * 24 + 1)
        assert find_related_events([a, b, c]) == [
            ("http://x/a", "http://x/b"),
            ("http://x/b", "http://x/c"),
        ]

    def test_empty_participants_never_link(self):
        bare = [entry(f"http://x/{i}", hours=i, publisher=p) for i, p in enumerate("abcd")]
        assert find_same_events(bare) == []
        assert find_related_events(bare) == []


class TestWindowedEqualsBruteForce:
    @pytest.mark.parametrize("seed", range(25))
    def test_random_corpora(self, seed):
        rng = random.Random(seed)
        entries = random_entries(rng, rng.randint(0, 60))
        same = find_same_events(entries)
        assert same == brute_same(entries)
        assert find_related_events(entries, exclude=same) == brute_related(
            entries, exclude=same
        )

    @pytest.mark.parametrize("seed", range(5))
    def test_growing_a_corpus_never_drops_links(self, seed):
        # Both link predicates are pairwise, so new events only ever add.
        rng = random.Random(1000 + seed)
        entries = random_entries(rng, 40)
        for cut in range(len(entries)):
            smaller, bigger = entries[:cut], entries[: cut + 1]
            assert set(find_same_events(smaller)) <= set(find_same_events(bigger))
            small_same = find_same_events(smaller)
            big_same = find_same_events(bigger)
            small_related = set(find_related_events(smaller, exclude=small_same))
            big_related = set(find_related_events(bigger, exclude=big_same))
            assert small_related <= big_related


class TestEndToEnd:
    def test_duplicates_fixture(self, fixtures_dir, lexicon, catalog, policy):
        records, failures = read_records(fixtures_dir / "duplicates.tsv")
        assert not failures
        result = extract_corpus(records, lexicon, catalog, policy)
        assert not result.skipped
        links, same_count, related_count = interlink_graph(result.graph, policy)
        assert (same_count, related_count) == (1, 2)
        assert Triple(f"{BASE}Meet_d1", OWL_SAME_AS, f"{BASE}Meet_d2") in links
        assert Triple(f"{BASE}Meet_d1", SKOS_RELATED, f"{BASE}Communication_d3") in links
        assert Triple(f"{BASE}Meet_d2", SKOS_RELATED, f"{BASE}Communication_d3") in links
        assert len(links) == 3

    def test_nine_corpus_produces_no_links(self, nine_result, policy):
        # Shared participants exist (no5/no8 share the Pope) but same-day
        # publication blocks "related" and participant overlap stays below
        # the same-event threshold.
        links, same_count, related_count = interlink_graph(nine_result.graph, policy)
        assert (same_count, related_count) == (0, 0)
        assert len(links) == 0
