"""Command line front end.

Four subcommands cover the pipeline end to end: ``extract`` turns a TSV of
records into canonical N-Triples plus skip/audit reports, ``interlink``
connects events across an existing graph, ``validate`` checks data model
descriptors against the four representation requirements, and ``query``
filters extracted events by publisher, class, date range, or location.

Exit codes: 0 success, 1 fatal error, and for ``extract`` 2 when the run
finished but some records were skipped.
"""

from __future__ import annotations

import argparse
import sys
from datetime import date
from pathlib import Path

from .catalog import CatalogError, default_catalog_path, load_catalog
from .datamodel import DescriptorError, Verdict, load_descriptor, validate_data_model
from .interlink import InterlinkError, build_event_index, interlink_graph
from .lexicon import LexiconError, default_lexicon_path, load_lexicon_file
from .pipeline import extract_corpus
from .rdf import (
    NTriplesParseError,
    TripleSet,
    local_name,
    parse_ntriples,
    serialize_ntriples,
    serialize_turtle,
)
from .triplify import IriPolicy, PolicyError, load_policy, slugify

_DEFAULT_BASE = IriPolicy().base_iri


class _Fatal(Exception):
    pass


def _policy_from(args: argparse.Namespace) -> IriPolicy:
    try:
        if args.policy is not None:
            return load_policy(args.policy)
        return IriPolicy(base_iri=args.base)
    except (OSError, ValueError) as exc:
        raise _Fatal(f"cannot load IRI policy: {exc}") from exc


def _add_policy_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--base", default=_DEFAULT_BASE, help="base IRI for minted names")
    parser.add_argument("--policy", default=None, help="JSON file with IRI policy settings")


def _read_graph(path: str) -> TripleSet:
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_ntriples(handle.read())
    except OSError as exc:
        raise _Fatal(f"cannot read graph: {exc}") from exc
    except NTriplesParseError as exc:
        raise _Fatal(f"cannot parse graph {path}: {exc}") from exc


def _cmd_extract(args: argparse.Namespace) -> int:
    from .ingest import read_records

    policy = _policy_from(args)
    try:
        lexicon = load_lexicon_file(args.lexicon or default_lexicon_path())
        catalog = load_catalog(args.catalog or default_catalog_path())
        records, failures = read_records(args.input)
    except (OSError, LexiconError, CatalogError) as exc:
        raise _Fatal(str(exc)) from exc

    result = extract_corpus(records, lexicon, catalog, policy)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "events.nt").write_text(serialize_ntriples(result.graph), encoding="utf-8")
    if args.turtle:
        (out / "events.ttl").write_text(
            serialize_turtle(result.graph, policy.base_iri), encoding="utf-8"
        )

    skipped_lines = [f"{label}\t{reason}" for label, reason in failures]
    skipped_lines += [f"{s.record_id}\t{s.reason}" for s in result.skipped]
    (out / "skipped.tsv").write_text(
        "".join(line + "\n" for line in skipped_lines), encoding="utf-8"
    )

    audit_rows = ["record_id\tsurface\tchosen\trunner_up\tscores"]
    for audit in result.audits:
        scores = ";".join(
            f"{iri}={exact},{overlap},{recency:.4f}" for iri, exact, overlap, recency in audit.scores
        )
        audit_rows.append(
            f"{audit.record_id}\t{audit.surface}\t{audit.chosen_iri}"
            f"\t{audit.runner_up_iri or '-'}\t{scores}"
        )
    (out / "audits.tsv").write_text("".join(r + "\n" for r in audit_rows), encoding="utf-8")

    for instance_id, warning in result.warnings:
        print(f"warning: {instance_id}: {warning}", file=sys.stderr)

    total = len(records) + len(failures)
    skipped = len(result.skipped) + len(failures)
    print(f"records={total} events={len(result.instances)} skipped={skipped}")
    return 2 if skipped else 0


def _cmd_interlink(args: argparse.Namespace) -> int:
    policy = _policy_from(args)
    graph = _read_graph(args.graph)
    try:
        links, same, related = interlink_graph(
            graph,
            policy,
            window_hours=args.same_window_hours,
            jaccard_min=args.same_jaccard,
            horizon_days=args.related_horizon_days,
        )
    except InterlinkError as exc:
        raise _Fatal(str(exc)) from exc
    Path(args.out).write_text(serialize_ntriples(links), encoding="utf-8")
    print(f"sameas={same} related={related}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    reports = []
    for path in args.models:
        try:
            descriptor = load_descriptor(path)
        except (OSError, DescriptorError, ValueError) as exc:
            raise _Fatal(f"{path}: {exc}") from exc
        reports.append(validate_data_model(descriptor))

    width = max(len("model"), *(len(r.model_name) for r in reports))
    requirement_ids = [res.requirement for res in reports[0].results]
    header = "model".ljust(width) + "".join(f"  {rid:<12}" for rid in requirement_ids)
    print(header)
    all_pass = True
    for report in reports:
        row = report.model_name.ljust(width)
        for res in report.results:
            row += f"  {res.verdict.value:<12}"
            if res.verdict is not Verdict.PASS:
                all_pass = False
        print(row)
    for report in reports:
        for res in report.results:
            if res.verdict is not Verdict.PASS and res.note:
                print(f"  {report.model_name} {res.requirement}: {res.note}")
    return 0 if all_pass else 1


def _cmd_query(args: argparse.Namespace) -> int:
    policy = _policy_from(args)
    graph = _read_graph(args.graph)
    try:
        entries = build_event_index(graph, policy)
    except InterlinkError as exc:
        raise _Fatal(str(exc)) from exc

    locations: dict[str, set[str]] = {}
    location_property = policy.role_property_iri("location")
    for triple in graph:
        if triple.predicate == location_property and isinstance(triple.object, str):
            locations.setdefault(triple.subject, set()).add(triple.object)

    def parse_day(text: str | None) -> date | None:
        return date.fromisoformat(text) if text else None

    try:
        since, until = parse_day(args.since), parse_day(args.until)
    except ValueError as exc:
        raise _Fatal(f"bad date filter: {exc}") from exc

    wanted_publishers = {slugify(p) for p in args.publisher}
    rows = []
    for entry in entries:
        if wanted_publishers and entry.publisher not in wanted_publishers:
            continue
        if args.event_class and args.event_class not in (
            entry.class_iri,
            local_name(entry.class_iri),
        ):
            continue
        day = entry.timestamp.date()
        if since and day < since:
            continue
        if until and day > until:
            continue
        if args.location:
            spots = locations.get(entry.instance_iri, set())
            if not any(args.location in (iri, local_name(iri)) for iri in spots):
                continue
        rows.append(
            f"{entry.instance_iri}\t{local_name(entry.class_iri)}"
            f"\t{entry.publisher}\t{day.isoformat()}"
        )
    for row in sorted(rows):
        print(row)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="headex",
        description="Extract typed, source-annotated events from news headlines into RDF.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="records TSV -> events.nt + reports")
    p_extract.add_argument("input", help="TSV file: id, publisher, timestamp, text")
    p_extract.add_argument("--out", default=".", help="output directory")
    p_extract.add_argument("--lexicon", default=None, help="verb lexicon TSV (default: bundled)")
    p_extract.add_argument("--catalog", default=None, help="entity catalog JSON (default: bundled)")
    p_extract.add_argument("--turtle", action="store_true", help="also write events.ttl")
    _add_policy_options(p_extract)
    p_extract.set_defaults(func=_cmd_extract)

    p_link = sub.add_parser("interlink", help="find same/related event links in a graph")
    p_link.add_argument("graph", help="N-Triples file produced by extract")
    p_link.add_argument("--out", default="links.nt", help="output N-Triples file")
    p_link.add_argument("--same-window-hours", type=float, default=48.0)
    p_link.add_argument("--same-jaccard", type=float, default=0.5)
    p_link.add_argument("--related-horizon-days", type=float, default=7.0)
    _add_policy_options(p_link)
    p_link.set_defaults(func=_cmd_interlink)

    p_validate = sub.add_parser("validate", help="check data model descriptors")
    p_validate.add_argument("models", nargs="+", help="descriptor JSON files")
    p_validate.set_defaults(func=_cmd_validate)

    p_query = sub.add_parser("query", help="filter extracted events")
    p_query.add_argument("graph", help="N-Triples file produced by extract")
    p_query.add_argument(
        "--publisher", action="append", default=[], help="publisher slug; repeat to OR"
    )
    p_query.add_argument("--class", dest="event_class", default=None, help="event class name")
    p_query.add_argument("--from", dest="since", default=None, help="earliest date, inclusive")
    p_query.add_argument("--to", dest="until", default=None, help="latest date, inclusive")
    p_query.add_argument("--location", default=None, help="location IRI or local name")
    _add_policy_options(p_query)
    p_query.set_defaults(func=_cmd_query)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Fatal as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PolicyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
