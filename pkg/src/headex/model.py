"""Core data model: event classes, role frames, headline records, event instances.

Every extracted event belongs to an event class (Communication, Meet, Murder,
or a registered extension class) and carries a role frame describing which
semantic roles its arguments may fill.  Three generic roles (time, location,
involved) are valid for every class; `involved` is the catch-all for
arguments no class-specific rule claims.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime
from typing import TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover
    from .events import EventMention

COMMUNICATION = "Communication"
MEET = "Meet"
MURDER = "Murder"
BUILTIN_CLASS_NAMES = (COMMUNICATION, MEET, MURDER)

SUBGROUP_SAY = "SayVerbs"
SUBGROUP_TELL = "TellVerbs"

GENERIC_ROLES = ("time", "location", "involved")


class ModelError(ValueError):
    """Raised when a core-model value violates its invariants."""


class UnknownEventClassError(ModelError):
    """Raised when no role frame is registered for an event class."""


@dataclass(frozen=True)
class EventClass:
    """An event class name plus, for Communication, an optional verb subgroup."""

    name: str
    subgroup: str | None = None

    def __post_init__(self) -> None:
        if not self.name:
            raise ModelError("event class name must be nonempty")
        if self.subgroup is not None and self.name != COMMUNICATION:
            raise ModelError(f"subgroup is only valid for {COMMUNICATION}, got {self.name}")

    @property
    def is_builtin(self) -> bool:
        return self.name in BUILTIN_CLASS_NAMES


@dataclass(frozen=True)
class RoleSpec:
    name: str
    expected_type: str = "Any"
    required: bool = False
    repeatable: bool = False


@dataclass(frozen=True)
class RoleFrame:
    """The roles an event class may assign.

    Generic roles are appended automatically, so every frame accepts time,
    location, and involved fillers in addition to its own roles.
    """

    event_class_name: str
    roles: tuple[RoleSpec, ...]

    def __post_init__(self) -> None:
        names = [r.name for r in self.roles]
        if len(names) != len(set(names)):
            raise ModelError(f"duplicate role names in frame for {self.event_class_name}")

    @property
    def role_names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.roles) + GENERIC_ROLES

    @property
    def required_roles(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.roles if r.required)

    def get(self, role_name: str) -> RoleSpec | None:
        for spec in self.roles:
            if spec.name == role_name:
                return spec
        if role_name in GENERIC_ROLES:
            return RoleSpec(role_name, "Any", required=False, repeatable=True)
        return None


ROLE_PARTICIPANT = "Participant"
ROLE_TOPIC = "Topic"
ROLE_GIVER = "Giver"
ROLE_RECIPIENT = "Recipient"
ROLE_MESSAGE = "Message"
ROLE_VICTIM = "Victim"
ROLE_PERPETRATOR = "Perpetrator"
ROLE_CAUSE = "Cause"
ROLE_COUNT = "Count"

_BUILTIN_FRAMES = {
    MEET: RoleFrame(
        MEET,
        (
            RoleSpec(ROLE_PARTICIPANT, "Agent", required=True, repeatable=True),
            RoleSpec(ROLE_TOPIC, "Text"),
        ),
    ),
    COMMUNICATION: RoleFrame(
        COMMUNICATION,
        (
            RoleSpec(ROLE_GIVER, "Agent", required=True, repeatable=True),
            RoleSpec(ROLE_RECIPIENT, "Agent"),
            RoleSpec(ROLE_MESSAGE, "Text", required=True),
        ),
    ),
    MURDER: RoleFrame(
        MURDER,
        (
            RoleSpec(ROLE_VICTIM, "Agent", repeatable=True),
            RoleSpec(ROLE_PERPETRATOR, "Agent"),
            RoleSpec(ROLE_CAUSE, "Any"),
            RoleSpec(ROLE_COUNT, "Number"),
        ),
    ),
}

_EXTENSION_FRAMES: dict[str, RoleFrame] = {}


def register_frame(frame: RoleFrame) -> None:
    """Register a frame for an extension event class.

    Intended as load-time configuration; builtin frames cannot be replaced.
    """
    if frame.event_class_name in _BUILTIN_FRAMES:
        raise ModelError(f"cannot replace builtin frame {frame.event_class_name}")
    _EXTENSION_FRAMES[frame.event_class_name] = frame


def frame_for(event_class: EventClass | str) -> RoleFrame:
    """Role frame for an event class; raises UnknownEventClassError if unregistered."""
    name = event_class.name if isinstance(event_class, EventClass) else event_class
    frame = _BUILTIN_FRAMES.get(name) or _EXTENSION_FRAMES.get(name)
    if frame is None:
        raise UnknownEventClassError(f"no role frame registered for event class {name!r}")
    return frame


@dataclass(frozen=True)
class HeadlineRecord:
    """One input record: identifier, publisher, publication instant, headline text."""

    id: str
    publisher: str
    timestamp: datetime
    text: str

    def __post_init__(self) -> None:
        if not self.id.strip():
            raise ModelError("record id must be nonempty")
        if not self.publisher.strip():
            raise ModelError("record publisher must be nonempty")
        # ids and publishers pass through TSV unescaped, so no separators.
        for label, value in (("id", self.id), ("publisher", self.publisher)):
            if any(ch in value for ch in "\t\n\r"):
                raise ModelError(f"record {label} must not contain tabs or newlines")
        if not self.text.strip():
            raise ModelError(f"record {self.id}: text must be nonempty")
        if "\n" in self.text or "\r" in self.text:
            raise ModelError(f"record {self.id}: text must not contain newlines")


@dataclass(frozen=True)
class Provenance:
    publisher: str
    extracted_on: date

    def __post_init__(self) -> None:
        if not self.publisher.strip():
            raise ModelError("provenance publisher must be nonempty")
        if not isinstance(self.extracted_on, date):
            raise ModelError("provenance extracted_on must be a date")


@dataclass(frozen=True)
class EntityRef:
    """A role filler that resolved to an entity IRI."""

    iri: str

    def __post_init__(self) -> None:
        if not self.iri:
            raise ModelError("entity reference IRI must be nonempty")


@dataclass(frozen=True)
class TextFiller:
    """A role filler that stayed textual (topics, messages, counts, causes)."""

    text: str

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ModelError("text filler must be nonempty")


RoleFiller = EntityRef | TextFiller


@dataclass(frozen=True)
class EventInstance:
    """One extracted event: identity, class, trigger mention, roles, provenance."""

    instance_id: str
    event_class: EventClass
    mention: "EventMention"
    roles: tuple[tuple[str, RoleFiller], ...]
    provenance: Provenance
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.instance_id:
            raise ModelError("instance_id must be nonempty")
        frame = frame_for(self.event_class)
        allowed = set(frame.role_names)
        for role_name, filler in self.roles:
            if role_name not in allowed:
                raise ModelError(
                    f"{self.instance_id}: role {role_name!r} is not in the "
                    f"{self.event_class.name} frame"
                )
            if not isinstance(filler, (EntityRef, TextFiller)):
                raise ModelError(f"{self.instance_id}: bad filler for {role_name!r}")

    def fillers(self, role_name: str) -> tuple[RoleFiller, ...]:
        return tuple(f for name, f in self.roles if name == role_name)
