"""Turn event instances into provenance-annotated triples.

Each event instance becomes a statement IRI that is simultaneously used as a
predicate: the statement is declared a singleton property of its generic
event class, the two most salient participants are joined through it, and
every other role hangs off the statement IRI directly.  Text-valued roles
become small typed nodes (type + body literal) so the graph stays free of
untyped literals in argument position.  Source and extraction date are
attached to the statement IRI, never to the participants, so the same
real-world entities can take part in many differently-sourced events.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .model import (
    COMMUNICATION,
    MEET,
    MURDER,
    ROLE_CAUSE,
    ROLE_COUNT,
    ROLE_GIVER,
    ROLE_MESSAGE,
    ROLE_PARTICIPANT,
    ROLE_PERPETRATOR,
    ROLE_RECIPIENT,
    ROLE_TOPIC,
    ROLE_VICTIM,
    EntityRef,
    EventInstance,
    RoleFiller,
    TextFiller,
)
from .rdf import RDF_TYPE, XSD_DATE, XSD_INTEGER, Literal, Triple, TripleSet, is_absolute_iri

SINGLETON_PROPERTY_OF = "singletonPropertyOf"
HAS_SOURCE = "hasSource"
EXTRACTED_ON = "extractedOn"
ABOUT = "about"
BODY = "body"


class EmissionError(ValueError):
    """Raised when an event instance has nothing to say (no role fillers)."""


class PolicyError(ValueError):
    """Raised for unusable IRI policy configuration."""


def slugify(text: str) -> str:
    out = []
    last_sep = True
    for ch in text.casefold():
        if ch.isalnum():
            out.append(ch)
            last_sep = False
        elif not last_sep:
            out.append("_")
            last_sep = True
    slug = "".join(out).strip("_")
    if not slug:
        raise PolicyError(f"cannot derive an IRI slug from {text!r}")
    return slug


@dataclass(frozen=True)
class IriPolicy:
    """How every minted IRI is spelled.  One namespace, deterministic names."""

    base_iri: str = "http://example.org/news/"

    def __post_init__(self) -> None:
        if not is_absolute_iri(self.base_iri) or not self.base_iri.endswith(("/", "#")):
            raise PolicyError(f"base IRI must be absolute and end with / or #: {self.base_iri!r}")

    def instance_iri(self, event_class_name: str, record_id: str) -> str:
        return f"{self.base_iri}{event_class_name}_{record_id}"

    def class_iri(self, name: str) -> str:
        return f"{self.base_iri}{name}"

    def property_iri(self, name: str) -> str:
        return f"{self.base_iri}{name}"

    def role_property_iri(self, role: str) -> str:
        if role == ROLE_TOPIC:
            return self.property_iri(ABOUT)
        return self.property_iri(role[:1].lower() + role[1:])

    def entity_iri(self, slug: str) -> str:
        return f"{self.base_iri}entity/{slug}"

    def source_iri(self, publisher: str) -> str:
        return f"{self.base_iri}source/{slugify(publisher)}"

    def role_node_iri(self, role: str, record_id: str, ordinal: int) -> str:
        suffix = "" if ordinal == 1 else f"_{ordinal}"
        return f"{self.base_iri}{role.lower()}/{record_id}{suffix}"

    def role_type_iri(self, role: str) -> str:
        return self.class_iri(role[:1].upper() + role[1:])


def load_policy(path: str | Path) -> IriPolicy:
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise PolicyError("policy file must hold a JSON object")
    base = data.get("base_iri")
    if not isinstance(base, str):
        raise PolicyError("policy file needs a string 'base_iri'")
    return IriPolicy(base_iri=base)


def _count_literal(text: str) -> Literal:
    if text.isdigit():
        return Literal(text, datatype=XSD_INTEGER)
    return Literal(text)


def emit_event_triples(instance: EventInstance, policy: IriPolicy) -> TripleSet:
    """Emit the full triple bundle for one event instance."""
    if not instance.roles:
        raise EmissionError(f"event {instance.instance_id} has no role fillers")

    sp = policy.instance_iri(instance.event_class.name, instance.instance_id)
    graph = TripleSet()
    graph.add(
        Triple(sp, policy.property_iri(SINGLETON_PROPERTY_OF), policy.class_iri(instance.event_class.name))
    )

    # Materialize text fillers as typed nodes up front, in role order.
    ordinals: dict[str, int] = {}
    objects: list[tuple[str, str]] = []  # (role, object IRI) in original order
    node_triples = TripleSet()
    for role, filler in instance.roles:
        if isinstance(filler, EntityRef):
            objects.append((role, filler.iri))
            continue
        ordinals[role] = ordinals.get(role, 0) + 1
        node = policy.role_node_iri(role, instance.instance_id, ordinals[role])
        node_triples.add(Triple(node, RDF_TYPE, policy.role_type_iri(role)))
        body = _count_literal(filler.text) if role == ROLE_COUNT else Literal(filler.text)
        node_triples.add(Triple(node, policy.property_iri(BODY), body))
        objects.append((role, node))

    def pick(role: str, entity_only: bool = False) -> int | None:
        for i, ((r, obj), (_, filler)) in enumerate(zip(objects, instance.roles)):
            if r != role:
                continue
            if entity_only and not isinstance(filler, EntityRef):
                continue
            return i
        return None

    main_subject: int | None = None
    main_object: int | None = None
    name = instance.event_class.name
    if name == MEET:
        entity_participants = [
            i
            for i, ((r, _), (_, filler)) in enumerate(zip(objects, instance.roles))
            if r == ROLE_PARTICIPANT and isinstance(filler, EntityRef)
        ]
        if len(entity_participants) >= 2:
            main_subject, main_object = entity_participants[0], entity_participants[1]
    elif name == COMMUNICATION:
        main_subject = pick(ROLE_GIVER, entity_only=True)
        main_object = pick(ROLE_RECIPIENT, entity_only=True)
        if main_object is None:
            main_object = pick(ROLE_MESSAGE)
    elif name == MURDER:
        main_subject = pick(ROLE_PERPETRATOR, entity_only=True)
        if main_subject is None:
            main_subject = pick(ROLE_CAUSE)
        main_object = pick(ROLE_VICTIM)
        if main_object is None:
            main_object = pick(ROLE_COUNT)

    consumed: set[int] = set()
    if main_subject is not None and main_object is not None:
        graph.add(Triple(objects[main_subject][1], sp, objects[main_object][1]))
        consumed = {main_subject, main_object}

    for i, (role, obj) in enumerate(objects):
        if i in consumed:
            continue
        graph.add(Triple(sp, policy.role_property_iri(role), obj))

    graph.update(node_triples)
    graph.add(Triple(sp, policy.property_iri(HAS_SOURCE), policy.source_iri(instance.provenance.publisher)))
    graph.add(
        Triple(
            sp,
            policy.property_iri(EXTRACTED_ON),
            Literal(instance.provenance.extracted_on.isoformat(), datatype=XSD_DATE),
        )
    )
    return graph
