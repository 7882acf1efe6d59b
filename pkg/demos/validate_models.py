"""Check event data model descriptors against the four representation needs.

A knowledge graph of news events has to (R1) offer a generic event type so
uncategorized happenings still land somewhere, (R2) carry provenance for
every statement, (R3) type its entities, ideally at fine granularity, and
(R4) actually connect events to those entities.  This script grades the five
bundled descriptors and explains every verdict below pass.

Run from the repository root:

    python3 demos/validate_models.py
"""

from __future__ import annotations

from pathlib import Path

from headex.datamodel import Verdict, load_descriptor, validate_data_model

DESCRIPTORS = sorted((Path(__file__).resolve().parent.parent / "fixtures" / "datamodels").glob("*.json"))


def main() -> None:
    reports = [validate_data_model(load_descriptor(path)) for path in DESCRIPTORS]
    width = max(len(report.model_name) for report in reports)
    for report in reports:
        verdicts = "  ".join(
            f"{res.requirement}={res.verdict.value}" for res in report.results
        )
        print(f"{report.model_name:<{width}}  {verdicts}")
        for res in report.results:
            if res.verdict is not Verdict.PASS and res.note:
                print(f"{'':<{width}}    {res.requirement}: {res.note}")
    passing = [r.model_name for r in reports if r.all_pass]
    print(f"\nmodels meeting all four requirements: {', '.join(passing) or 'none'}")


if __name__ == "__main__":
    main()
