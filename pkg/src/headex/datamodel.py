"""Checks event data models against four representational requirements.

A model is described by a small declarative descriptor (see
``fixtures/datamodels/`` for the shipped ones) and checked for:

R1  a generic event class exists;
R2  events can carry publisher-bearing provenance;
R3  entities are typed (pass_loosely when only coarse types exist);
R4  every entity type is connected to events by some property.

Verdicts are pass / pass_loosely / fail, with a one-line note each.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

COARSE = "coarse"
FINE = "fine"
_GRANULARITIES = (COARSE, FINE)

REQUIREMENT_IDS = ("R1", "R2", "R3", "R4")

# Property-name fragments that identify who published a statement.
_PUBLISHER_MARKERS = ("publisher", "source")


class DescriptorError(ValueError):
    """Raised for malformed data-model descriptors."""


class Verdict(Enum):
    PASS = "pass"
    PASS_LOOSELY = "pass_loosely"
    FAIL = "fail"


@dataclass(frozen=True)
class EntityType:
    name: str
    granularity: str

    def __post_init__(self) -> None:
        if not self.name:
            raise DescriptorError("entity type name must be nonempty")
        if self.granularity not in _GRANULARITIES:
            raise DescriptorError(
                f"entity type {self.name!r}: granularity must be one of {_GRANULARITIES}"
            )


@dataclass(frozen=True)
class EventEntityProperty:
    name: str
    domain: str
    range: str

    def __post_init__(self) -> None:
        if not (self.name and self.domain and self.range):
            raise DescriptorError("event-entity property needs name, domain, and range")


@dataclass(frozen=True)
class DataModelDescriptor:
    name: str
    has_generic_event: bool
    has_specific_event_types: bool
    provenance_properties: tuple[str, ...]
    entity_types: tuple[EntityType, ...]
    event_entity_properties: tuple[EventEntityProperty, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise DescriptorError("descriptor name must be nonempty")
        names = [t.name for t in self.entity_types]
        if len(names) != len(set(names)):
            raise DescriptorError(f"{self.name}: duplicate entity type names")


@dataclass(frozen=True)
class RequirementResult:
    requirement: str
    verdict: Verdict
    note: str


@dataclass(frozen=True)
class RequirementReport:
    model_name: str
    results: tuple[RequirementResult, ...]

    def __post_init__(self) -> None:
        ids = tuple(r.requirement for r in self.results)
        if ids != REQUIREMENT_IDS:
            raise DescriptorError(f"report must cover {REQUIREMENT_IDS} in order, got {ids}")

    def result(self, requirement: str) -> RequirementResult:
        for r in self.results:
            if r.requirement == requirement:
                return r
        raise KeyError(requirement)

    @property
    def all_pass(self) -> bool:
        return all(r.verdict is Verdict.PASS for r in self.results)


def _is_publisher_bearing(property_name: str) -> bool:
    lowered = property_name.lower()
    return any(marker in lowered for marker in _PUBLISHER_MARKERS)


def validate_data_model(descriptor: DataModelDescriptor) -> RequirementReport:
    """Evaluate all four requirements; total and deterministic on any descriptor."""
    results = []

    if descriptor.has_generic_event:
        r1 = RequirementResult("R1", Verdict.PASS, "declares a generic event class")
    else:
        r1 = RequirementResult("R1", Verdict.FAIL, "no generic event class")
    results.append(r1)

    publisher_props = [p for p in descriptor.provenance_properties if _is_publisher_bearing(p)]
    if publisher_props:
        r2 = RequirementResult(
            "R2", Verdict.PASS, f"publisher-bearing provenance via {publisher_props[0]}"
        )
    else:
        r2 = RequirementResult("R2", Verdict.FAIL, "no publisher-bearing provenance property")
    results.append(r2)

    if not descriptor.entity_types:
        r3 = RequirementResult("R3", Verdict.FAIL, "entities are untyped")
    elif all(t.granularity == COARSE for t in descriptor.entity_types):
        r3 = RequirementResult("R3", Verdict.PASS_LOOSELY, "only coarse entity types")
    else:
        r3 = RequirementResult("R3", Verdict.PASS, "fine-grained entity types available")
    results.append(r3)

    if not descriptor.entity_types:
        r4 = RequirementResult("R4", Verdict.FAIL, "no entity types to connect")
    else:
        connected = set()
        for prop in descriptor.event_entity_properties:
            connected.add(prop.domain)
            connected.add(prop.range)
        missing = [t.name for t in descriptor.entity_types if t.name not in connected]
        if missing:
            r4 = RequirementResult(
                "R4", Verdict.FAIL, f"entity types not linked to events: {', '.join(missing)}"
            )
        else:
            r4 = RequirementResult("R4", Verdict.PASS, "every entity type linked to events")
    results.append(r4)

    return RequirementReport(descriptor.name, tuple(results))


def load_descriptor(path: str | Path) -> DataModelDescriptor:
    """Load a descriptor from its JSON file; see the shipped fixtures for the schema."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise DescriptorError(f"{path}: descriptor must be a JSON object")
    try:
        entity_types = tuple(
            EntityType(t["name"], t["granularity"]) for t in payload.get("entity_types", [])
        )
        properties = tuple(
            EventEntityProperty(p["property"], p["domain"], p["range"])
            for p in payload.get("event_entity_properties", [])
        )
        return DataModelDescriptor(
            name=payload["name"],
            has_generic_event=bool(payload["has_generic_event"]),
            has_specific_event_types=bool(payload.get("has_specific_event_types", False)),
            provenance_properties=tuple(payload.get("provenance_properties", [])),
            entity_types=entity_types,
            event_entity_properties=properties,
        )
    except KeyError as exc:
        raise DescriptorError(f"{path}: missing descriptor field {exc}") from exc
    except TypeError as exc:
        raise DescriptorError(f"{path}: malformed descriptor ({exc})") from exc
