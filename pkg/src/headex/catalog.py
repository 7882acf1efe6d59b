"""Entity catalog: the closed gazetteer mentions are linked against.

The catalog file is JSON with a single ``entities`` list.  Each entity has an
IRI, a canonical label, a type (Person, Organisation, Place, Agent, ...), a
list of surface aliases, optional context keywords used for disambiguation,
and optional time-scoped position records:

    {"title": "CEO", "org": "Instagram", "from": "2010-10-06", "to": null}

Position records power implicit references like "Instagram CEO": the title
plus the organisation's alias resolve to whoever held the position on the
headline's date.  The shipped default catalog is ``data/catalog.json``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date
from importlib import resources
from pathlib import Path
from typing import Iterable

PERSON = "Person"
ORGANISATION = "Organisation"
PLACE = "Place"
AGENT = "Agent"


class CatalogError(ValueError):
    """Raised for malformed catalog files."""


@dataclass(frozen=True)
class PositionRecord:
    """One held position: title at an organisation over a validity interval."""

    title: str
    org: str
    valid_from: date
    valid_to: date | None = None

    def __post_init__(self) -> None:
        if not self.title or not self.org:
            raise CatalogError("position needs a title and an org")
        if self.valid_to is not None and self.valid_to < self.valid_from:
            raise CatalogError(f"position {self.title!r}: interval ends before it starts")

    def active_on(self, day: date) -> bool:
        return self.valid_from <= day and (self.valid_to is None or day <= self.valid_to)


@dataclass(frozen=True)
class CatalogEntity:
    iri: str
    label: str
    entity_type: str
    aliases: tuple[str, ...]
    keywords: tuple[str, ...] = ()
    positions: tuple[PositionRecord, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.iri or not self.label:
            raise CatalogError("entity needs an iri and a label")


class EntityCatalog:
    """Alias-indexed entity collection with position-based implicit lookup."""

    def __init__(self, entities: Iterable[CatalogEntity]) -> None:
        self._by_iri: dict[str, CatalogEntity] = {}
        self._by_alias: dict[str, list[str]] = {}
        for entity in entities:
            if entity.iri in self._by_iri:
                raise CatalogError(f"duplicate entity IRI {entity.iri}")
            self._by_iri[entity.iri] = entity
            for alias in (entity.label, *entity.aliases):
                key = alias.casefold()
                bucket = self._by_alias.setdefault(key, [])
                if entity.iri not in bucket:
                    bucket.append(entity.iri)
        for bucket in self._by_alias.values():
            bucket.sort()
        self._titles = {
            p.title.casefold() for e in self._by_iri.values() for p in e.positions
        }

    def __len__(self) -> int:
        return len(self._by_iri)

    def __contains__(self, iri: str) -> bool:
        return iri in self._by_iri

    def get(self, iri: str) -> CatalogEntity | None:
        return self._by_iri.get(iri)

    def entities(self) -> tuple[CatalogEntity, ...]:
        return tuple(self._by_iri.values())

    def candidates(self, surface: str) -> tuple[CatalogEntity, ...]:
        """Entities whose label or alias equals the surface, case-insensitively."""
        iris = self._by_alias.get(surface.casefold(), [])
        return tuple(self._by_iri[iri] for iri in iris)

    def is_alias(self, surface: str) -> bool:
        return surface.casefold() in self._by_alias

    def is_position_title(self, surface: str) -> bool:
        return surface.casefold() in self._titles

    def holders(self, title: str, org_iris: set[str], on: date) -> tuple[CatalogEntity, ...]:
        """Entities holding ``title`` at any of ``org_iris`` on the given day."""
        found = []
        for entity in self._by_iri.values():
            for position in entity.positions:
                if position.title.casefold() != title.casefold():
                    continue
                if not position.active_on(on):
                    continue
                org_candidates = {e.iri for e in self.candidates(position.org)}
                if org_candidates & org_iris:
                    found.append((position.valid_from, entity))
                    break
        # Most recently appointed holder first; ties break on the smaller IRI.
        found.sort(key=lambda pair: pair[1].iri)
        found.sort(key=lambda pair: pair[0], reverse=True)
        return tuple(entity for _, entity in found)


def default_catalog_path() -> Path:
    return Path(str(resources.files("headex").joinpath("data/catalog.json")))


def _parse_date(value: str, context: str) -> date:
    try:
        return date.fromisoformat(value)
    except (TypeError, ValueError) as exc:
        raise CatalogError(f"{context}: bad date {value!r}") from exc


def load_catalog(path: str | Path) -> EntityCatalog:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict) or not isinstance(payload.get("entities"), list):
        raise CatalogError(f"{path}: expected an object with an 'entities' list")
    entities = []
    for raw in payload["entities"]:
        try:
            positions = tuple(
                PositionRecord(
                    title=p["title"],
                    org=p["org"],
                    valid_from=_parse_date(p["from"], raw.get("iri", "?")),
                    valid_to=(
                        _parse_date(p["to"], raw.get("iri", "?"))
                        if p.get("to") is not None
                        else None
                    ),
                )
                for p in raw.get("roles", [])
            )
            entities.append(
                CatalogEntity(
                    iri=raw["iri"],
                    label=raw["label"],
                    entity_type=raw.get("type", AGENT),
                    aliases=tuple(raw.get("aliases", [])),
                    keywords=tuple(k.casefold() for k in raw.get("keywords", [])),
                    positions=positions,
                )
            )
        except KeyError as exc:
            raise CatalogError(f"{path}: entity missing field {exc}") from exc
        except TypeError as exc:
            raise CatalogError(f"{path}: malformed entity ({exc})") from exc
    return EntityCatalog(entities)
