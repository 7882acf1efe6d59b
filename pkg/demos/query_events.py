"""Filter an extracted event graph in memory.

Extraction leaves behind a plain triple set, so simple questions (what did
CNN report, which killings happened where, what landed in a date window) are
answered by indexing the graph once and filtering the index.  The same
filters back the ``headex query`` subcommand.

Run from the repository root:

    python3 demos/query_events.py
"""

from __future__ import annotations

from datetime import date
from pathlib import Path

from headex.catalog import default_catalog_path, load_catalog
from headex.ingest import read_records
from headex.interlink import build_event_index
from headex.lexicon import default_lexicon_path, load_lexicon_file
from headex.pipeline import extract_corpus
from headex.rdf import local_name
from headex.triplify import IriPolicy

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def show(entries) -> None:
    for entry in entries:
        day = entry.timestamp.date().isoformat()
        print(f"  {local_name(entry.instance_iri):<20} {entry.publisher:<5} {day}")
    if not entries:
        print("  (none)")


def main() -> None:
    lexicon = load_lexicon_file(default_lexicon_path())
    catalog = load_catalog(default_catalog_path())
    policy = IriPolicy()
    records, failures = read_records(FIXTURES / "headlines9.tsv")
    assert not failures
    graph = extract_corpus(records, lexicon, catalog, policy).graph

    entries = build_event_index(graph, policy)
    print(f"indexed {len(entries)} events\n")

    print("killings, any publisher:")
    show([e for e in entries if local_name(e.class_iri) == "Murder"])

    print("\neverything CNN published:")
    show([e for e in entries if e.publisher == "cnn"])

    print("\nevents from 2016-03-10 through 2016-03-14:")
    window = [
        e for e in entries if date(2016, 3, 10) <= e.timestamp.date() <= date(2016, 3, 14)
    ]
    show(window)

    print("\nevents located in Yemen:")
    located = {
        triple.subject
        for triple in graph
        if triple.predicate == policy.role_property_iri("location")
        and isinstance(triple.object, str)
        and local_name(triple.object) == "Yemen"
    }
    show([e for e in entries if e.instance_iri in located])


if __name__ == "__main__":
    main()
