"""Argument chunking, entity mentions, linking, and semantic role assignment.

Chunking splits a headline around its head verb.  Post-verbal (and pre-verbal)
material is segmented at a fixed preposition set, at "to" (infinitive or
plain), at a colon (which swallows the rest of the headline, because it
introduces reported speech), and after each closing quote.  Quoted spans are
opaque: nothing inside one starts a segment.  The subject is the last
pre-verbal segment that no preposition introduced.

Entity mentions are found per chunk: @handles, quoted spans, position-based
references ("Instagram CEO", "leader of Russian Orthodox Church"), longest
alias matches against the catalog, and cardinal-count patterns ("eight
people").  A chunk that yields nothing becomes a single unresolved mention,
so no argument is silently lost.

Linking is closed-world: one candidate links, zero mints a deterministic IRI
from the surface form, several go through keyword/position scoring with a
lexicographic IRI tie-break, which makes the whole stage insensitive to
candidate order.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import date

from .catalog import AGENT, PERSON, PLACE, CatalogEntity, EntityCatalog
from .events import EventMention
from .ingest import HASHTAG, MENTION, NUMBER, PUNCT, WORD, Token, TokenSequence
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
    EventClass,
    RoleFiller,
    RoleFrame,
    TextFiller,
)

SPLIT_PREPOSITIONS = frozenset(("with", "in", "at", "on", "over", "for"))
LOCATIVE_PREPOSITIONS = frozenset(("in", "at", "on", "over"))
_MULTIWORD_GUARD = frozenset(("least", "most"))  # "at least three" stays together
_SUBORDINATORS = frozenset(("when", "after", "as", "by", "amid", "while", "during"))

PERSON_WORDS = frozenset(
    """people person persons pilots soldiers troops officers civilians victims
    men women children workers students protesters migrants dead injured
    wounded""".split()
)

KIND_NAMED = "named"
KIND_MENTION = "mention"
KIND_QUOTED = "quoted-topic"
KIND_NUMBER = "number"
KIND_OTHER = "other"

UNRESOLVED = "unresolved"
LINKED = "linked"
MINTED = "minted"

SUBJECT = "subject"
PRE = "pre"
POST = "post"

_QUOTE_CHARS = ('"', "“", "”")


class LinkingError(ValueError):
    """Raised when a minted IRI would collide with a catalog entity."""


@dataclass(frozen=True)
class Chunk:
    index: int
    position: str  # subject | pre | post
    intro: str | None
    intro_kind: str | None  # prep | to_infinitive | to_plain | colon | None
    tokens: tuple[Token, ...]
    text: str
    full_text: str

    @property
    def free_words(self) -> tuple[Token, ...]:
        """Content tokens outside quotes: what alias matching runs over."""
        return tuple(t for t in self.tokens if t.kind != PUNCT and not t.quoted)

    @property
    def has_quote(self) -> bool:
        return any(t.quoted for t in self.tokens)


def _looks_infinitive(token: Token | None) -> bool:
    # "to discuss" vs "to reporters": a following plural or capitalized word
    # reads as a noun phrase, a bare lowercase form as a verb.  -ss is not a
    # plural ending.
    if token is None or token.kind != WORD or token.quoted:
        return False
    lowered = token.surface.lower()
    return token.surface[:1].islower() and (
        not lowered.endswith("s") or lowered.endswith("ss")
    )


def chunk(tokens: TokenSequence, mention: EventMention) -> list[Chunk]:
    """Split a tokenized headline into subject and argument chunks."""
    head = mention.head_index
    closing_quotes = {span.last_token + 1 for span in tokens.quoted_spans}

    pre_end = head
    if mention.infinitive_head and head > 0 and tokens.tokens[head - 1].lower == "to":
        pre_end = head - 1

    def segment(indexes: range, position: str) -> list[dict]:
        segments: list[dict] = []
        current: dict | None = None
        colon_mode = False

        def open_segment(intro: Token | None, intro_kind: str | None) -> dict:
            seg = {"intro": intro, "intro_kind": intro_kind, "tokens": []}
            segments.append(seg)
            return seg

        i = indexes.start
        while i < indexes.stop:
            token = tokens.tokens[i]
            if not colon_mode and not token.quoted:
                if token.kind == WORD and token.lower in SPLIT_PREPOSITIONS:
                    nxt = tokens.tokens[i + 1] if i + 1 < indexes.stop else None
                    guarded = (
                        token.lower == "at" and nxt is not None and nxt.lower in _MULTIWORD_GUARD
                    )
                    if not guarded:
                        current = open_segment(token, "prep")
                        i += 1
                        continue
                elif token.kind == WORD and token.lower == "to":
                    nxt = tokens.tokens[i + 1] if i + 1 < indexes.stop else None
                    kind = "to_infinitive" if _looks_infinitive(nxt) else "to_plain"
                    current = open_segment(token, kind)
                    i += 1
                    continue
                elif token.kind == PUNCT and token.surface == ":":
                    current = open_segment(token, "colon")
                    colon_mode = True
                    i += 1
                    continue
            if current is None:
                current = open_segment(None, None)
            current["tokens"].append(token)
            if i in closing_quotes and not colon_mode:
                current = None  # material after a closing quote starts fresh
            i += 1
        return [s for s in segments if s["tokens"]]

    raw = tokens.raw
    built: list[Chunk] = []

    def build(seg: dict, position: str) -> None:
        content = seg["tokens"]
        start, end = content[0].start, content[-1].end
        intro_token = seg["intro"]
        full_start = intro_token.start if intro_token is not None else start
        built.append(
            Chunk(
                index=len(built),
                position=position,
                intro=intro_token.lower if intro_token is not None else None,
                intro_kind=seg["intro_kind"],
                tokens=tuple(content),
                text=raw[start:end],
                full_text=raw[full_start:end],
            )
        )

    pre_segments = segment(range(0, pre_end), PRE)
    subject_pick = None
    for seg in pre_segments:
        if seg["intro_kind"] is None:
            subject_pick = seg  # the last plain pre-verbal segment
    for seg in pre_segments:
        build(seg, SUBJECT if seg is subject_pick else PRE)
    for seg in segment(range(head + 1, len(tokens.tokens)), POST):
        build(seg, POST)
    return built


@dataclass(frozen=True)
class EntityMention:
    text: str
    span: tuple[int, int]
    kind: str
    chunk_index: int
    chunk_position: str
    chunk_intro: str | None
    chunk_intro_kind: str | None
    chunk_text: str
    status: str = UNRESOLVED
    iri: str | None = None
    entity_type: str | None = None
    implicit: bool = False
    count_value: str | None = None

    @property
    def is_entity(self) -> bool:
        return self.status in (LINKED, MINTED)


def strip_quotes(text: str) -> str:
    out = text
    for ch in _QUOTE_CHARS:
        out = out.replace(ch, "")
    return out.strip()


def _parse_position_reference(
    words: tuple[str, ...], catalog: EntityCatalog
) -> tuple[str, tuple[str, ...], int] | None:
    """Match "<org-alias> <title>" or "<title> of <org-alias>" against the catalog.

    Returns (title, org alias words, words consumed) or None.  The consumed
    count is less than ``len(words)`` when a name follows the reference in
    apposition ("German Chancellor Angela Merkel").
    """
    lowered = [w.lower() for w in words]
    if "of" in lowered:
        cut = lowered.index("of")
        title = " ".join(words[:cut])
        org = words[cut + 1 :]
        if title and org and catalog.is_position_title(title) and catalog.is_alias(" ".join(org)):
            return title, tuple(org), len(words)
    for org_len in range(len(words) - 1, 0, -1):
        org = words[:org_len]
        if not catalog.is_alias(" ".join(org)):
            continue
        for title_len in range(len(words) - org_len, 0, -1):
            title = " ".join(words[org_len : org_len + title_len])
            if catalog.is_position_title(title):
                return title, tuple(org), org_len + title_len
    return None


def recognize_entities(chunks: list[Chunk], catalog: EntityCatalog) -> list[EntityMention]:
    """Extract entity mentions from every chunk; each chunk yields at least one
    mention unless it contains nothing but punctuation."""
    mentions: list[EntityMention] = []
    for ch in chunks:
        base = dict(
            chunk_index=ch.index,
            chunk_position=ch.position,
            chunk_intro=ch.intro,
            chunk_intro_kind=ch.intro_kind,
            chunk_text=ch.full_text,
        )
        found_any = False

        chunk_start = ch.tokens[0].start
        for run in _quoted_runs(ch.tokens):
            inner = [t for t in run if t.kind != PUNCT or t.surface not in _QUOTE_CHARS]
            if not inner:
                continue
            mentions.append(
                EntityMention(
                    text=ch.text[inner[0].start - chunk_start : inner[-1].end - chunk_start],
                    span=(inner[0].start, inner[-1].end),
                    kind=KIND_QUOTED,
                    **base,
                )
            )
            found_any = True

        words = ch.free_words
        consumed = [False] * len(words)

        reference = _parse_position_reference(tuple(t.surface for t in words), catalog)
        if reference is not None:
            title, org_words, used = reference
            if used == len(words):
                mentions.append(
                    EntityMention(
                        text=" ".join(t.surface for t in words),
                        span=(words[0].start, words[-1].end),
                        kind=KIND_OTHER,
                        implicit=True,
                        **base,
                    )
                )
                found_any = True
                consumed = [True] * len(words)
            else:
                # Apposition: the trailing words must name the same referent.
                remainder = words[used:]
                if _alias_match_length(remainder, 0, catalog) == len(remainder):
                    consumed[:used] = [True] * used

        i = 0
        while i < len(words):
            if consumed[i]:
                i += 1
                continue
            token = words[i]
            if token.kind == MENTION:
                mentions.append(
                    EntityMention(
                        text=token.surface, span=(token.start, token.end), kind=KIND_MENTION, **base
                    )
                )
                found_any = True
                consumed[i] = True
                i += 1
                continue
            matched = _alias_match_length(words, i, catalog)
            if matched:
                span_tokens = words[i : i + matched]
                mentions.append(
                    EntityMention(
                        text=" ".join(t.surface for t in span_tokens),
                        span=(span_tokens[0].start, span_tokens[-1].end),
                        kind=KIND_NAMED,
                        **base,
                    )
                )
                found_any = True
                for j in range(i, i + matched):
                    consumed[j] = True
                i += matched
                continue
            if token.kind == NUMBER:
                last = i
                for j in range(i + 1, min(i + 4, len(words))):
                    if words[j].lower in PERSON_WORDS:
                        last = j
                        break
                span_tokens = words[i : last + 1]
                mentions.append(
                    EntityMention(
                        text=" ".join(t.surface for t in span_tokens),
                        span=(span_tokens[0].start, span_tokens[-1].end),
                        kind=KIND_NUMBER,
                        count_value=token.surface,
                        **base,
                    )
                )
                found_any = True
                for j in range(i, last + 1):
                    consumed[j] = True
                i = last + 1
                continue
            i += 1

        if not found_any and words:
            mentions.append(
                EntityMention(
                    text=ch.text,
                    span=(words[0].start, words[-1].end),
                    kind=KIND_OTHER,
                    **base,
                )
            )
    return mentions


def _quoted_runs(tokens: tuple[Token, ...]) -> list[list[Token]]:
    runs: list[list[Token]] = []
    current: list[Token] = []
    for token in tokens:
        if token.quoted:
            current.append(token)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


_MATCHABLE = (WORD, NUMBER, HASHTAG)


def _alias_match_length(words: tuple[Token, ...], start: int, catalog: EntityCatalog) -> int:
    """Longest n-gram at ``start`` that is a catalog alias; 0 when none is."""
    limit = min(len(words) - start, 5)
    for n in range(limit, 0, -1):
        span = words[start : start + n]
        if any(t.kind not in _MATCHABLE for t in span):
            continue
        if catalog.is_alias(" ".join(t.surface for t in span)):
            return n
    return 0


@dataclass(frozen=True)
class DisambiguationAudit:
    """Why one candidate won: full per-candidate scores, best first."""

    surface: str
    chosen_iri: str
    runner_up_iri: str | None
    scores: tuple[tuple[str, int, int, float], ...]  # (iri, exactness, overlap, recency)
    record_id: str = ""


def _score(
    entity: CatalogEntity, surface: str, context_words: frozenset[str], at: date | None
) -> tuple[int, int, float]:
    folded = surface.casefold()
    if folded == entity.label.casefold():
        exactness = 2
    elif any(folded == alias.casefold() for alias in entity.aliases):
        exactness = 1
    else:
        exactness = 0
    overlap = sum(1 for keyword in entity.keywords if keyword in context_words)
    recency = 0.0
    if at is not None:
        active = [p for p in entity.positions if p.active_on(at)]
        if active:
            newest = max(p.valid_from for p in active)
            recency = 1.0 / (1.0 + (at - newest).days / 365.25)
    return exactness, overlap, recency


def context_words(tokens: TokenSequence) -> frozenset[str]:
    out = set()
    for token in tokens.words():
        out.add(token.surface.lstrip("@#").casefold())
    return frozenset(out)


def disambiguate(
    mention: EntityMention,
    candidates: tuple[CatalogEntity, ...],
    context: frozenset[str],
    at: date | None = None,
) -> tuple[CatalogEntity, DisambiguationAudit]:
    """Pick among several candidates; always selects, never errors.

    Scoring is (alias exactness, context-keyword overlap, recency-weighted
    position validity), compared lexicographically; exhausted ties fall to
    the smallest IRI, so the choice is independent of candidate order.
    """
    if not candidates:
        raise ValueError("disambiguate requires at least one candidate")
    ranked = sorted(
        candidates,
        key=lambda e: (*(-c for c in _score(e, mention.text, context, at)), e.iri),
    )
    chosen = ranked[0]
    audit = DisambiguationAudit(
        surface=mention.text,
        chosen_iri=chosen.iri,
        runner_up_iri=ranked[1].iri if len(ranked) > 1 else None,
        scores=tuple((e.iri, *_score(e, mention.text, context, at)) for e in ranked),
    )
    return chosen, audit


def mint_slug(surface: str) -> str:
    cleaned = surface.lstrip("@#").casefold()
    out = []
    last_sep = True
    for ch in cleaned:
        if ch.isalnum():
            out.append(ch)
            last_sep = False
        elif not last_sep:
            out.append("_")
            last_sep = True
    return "".join(out).strip("_") or "entity"


def _minted_type(mention: EntityMention) -> str:
    if mention.kind == KIND_MENTION:
        return AGENT
    words = mention.text.split()
    if words and all(w[:1].isupper() for w in words):
        return PERSON
    return "Thing"


def link_entity(
    mention: EntityMention,
    catalog: EntityCatalog,
    context: frozenset[str],
    entity_iri_for: "callable",
    at: date | None = None,
) -> tuple[EntityMention, DisambiguationAudit | None]:
    """Resolve a named/@handle mention: link to the unique catalog candidate,
    disambiguate among several, or mint a deterministic IRI for none.

    ``entity_iri_for`` maps a slug to a minted IRI (normally
    ``IriPolicy.entity_iri``).  Returns the resolved mention and the
    disambiguation audit when scoring had to run.
    """
    candidates = catalog.candidates(mention.text)
    if not candidates and mention.kind == KIND_MENTION:
        candidates = catalog.candidates(mention.text.lstrip("@"))
    if not candidates:
        iri = entity_iri_for(mint_slug(mention.text))
        if iri in catalog:
            raise LinkingError(f"minted IRI collides with catalog entity: {iri}")
        return (
            replace(mention, status=MINTED, iri=iri, entity_type=_minted_type(mention)),
            None,
        )
    if len(candidates) == 1:
        chosen = candidates[0]
        return (
            replace(mention, status=LINKED, iri=chosen.iri, entity_type=chosen.entity_type),
            None,
        )
    chosen, audit = disambiguate(mention, candidates, context, at)
    return (
        replace(mention, status=LINKED, iri=chosen.iri, entity_type=chosen.entity_type),
        audit,
    )


def resolve_implicit(
    mention: EntityMention, catalog: EntityCatalog, at: date
) -> CatalogEntity | None:
    """Resolve a position-based reference to whoever held the position on ``at``.

    Returns None when the pattern does not parse, the organisation is unknown,
    or nobody held the position on that date.
    """
    words = tuple(mention.text.split())
    parsed = _parse_position_reference(words, catalog)
    if parsed is None:
        return None
    title, org_words, _ = parsed
    org_iris = {e.iri for e in catalog.candidates(" ".join(org_words))}
    if not org_iris:
        return None
    holders = catalog.holders(title, org_iris, at)
    return holders[0] if holders else None


def _filler(mention: EntityMention) -> RoleFiller:
    if mention.is_entity:
        return EntityRef(mention.iri or "")
    if mention.kind == KIND_NUMBER:
        return TextFiller(mention.count_value or mention.text)
    if mention.kind == KIND_QUOTED:
        return TextFiller(strip_quotes(mention.text))
    return TextFiller(mention.text)


def _is_passive(head: EventMention | None, mentions: list[EntityMention]) -> bool:
    if head is None or not head.surface.lower().endswith(("ed", "en", "ain")):
        return False
    post = [m for m in mentions if m.chunk_position == POST]
    if not post:
        return True
    first = min(post, key=lambda m: m.chunk_index)
    if first.chunk_intro_kind == "prep":
        return True
    leading = first.chunk_text.split()
    return bool(leading) and leading[0].lower() in _SUBORDINATORS


def assign_roles(
    mentions: list[EntityMention],
    event_class: EventClass,
    frame: RoleFrame,
    head: EventMention | None = None,
) -> tuple[list[tuple[str, RoleFiller]], list[str]]:
    """Map mentions to frame roles.

    Every mention lands in exactly one role (generic ``involved`` as the
    fallback) unless its text is already covered by a Topic or Message
    filler.  Returns the roles plus warnings for unfilled required roles.
    """
    roles: list[tuple[str, RoleFiller]] = []
    warnings: list[str] = []
    done: set[int] = set()

    def take(idx: int, role: str, filler: RoleFiller | None = None) -> None:
        roles.append((role, filler if filler is not None else _filler(mentions[idx])))
        done.add(idx)

    def drop(idx: int) -> None:
        done.add(idx)

    # Generic rule first: place entities inside locative prepositional chunks.
    for i, m in enumerate(mentions):
        if i in done:
            continue
        if (
            m.is_entity
            and m.entity_type == PLACE
            and m.chunk_intro_kind == "prep"
            and m.chunk_intro in LOCATIVE_PREPOSITIONS
        ):
            take(i, "location")

    subject_ids = [i for i, m in enumerate(mentions) if m.chunk_position == SUBJECT]

    if event_class.name == MEET:
        for i in subject_ids:
            if i not in done:
                take(i, ROLE_PARTICIPANT)
        topic_chunks: set[int] = set()
        for i, m in enumerate(mentions):
            if i in done:
                continue
            if m.chunk_intro_kind == "to_infinitive":
                if m.chunk_index not in topic_chunks:
                    topic_chunks.add(m.chunk_index)
                    roles.append((ROLE_TOPIC, TextFiller(strip_quotes(m.chunk_text))))
                if m.is_entity:
                    take(i, ROLE_PARTICIPANT)
                else:
                    drop(i)  # covered by the Topic text
        for i, m in enumerate(mentions):
            if i in done:
                continue
            if m.kind == KIND_QUOTED:
                take(i, ROLE_TOPIC)
            elif m.is_entity or m.kind == KIND_MENTION:
                take(i, ROLE_PARTICIPANT)

    elif event_class.name == COMMUNICATION:
        for i in subject_ids:
            if i not in done:
                take(i, ROLE_GIVER)
        message_found = False
        for i, m in enumerate(mentions):
            if i in done or not (m.is_entity or m.kind == KIND_MENTION):
                continue
            recipient_intro = m.chunk_intro_kind == "to_plain" or m.chunk_intro == "with"
            if recipient_intro and m.entity_type in (PERSON, AGENT):
                take(i, ROLE_RECIPIENT)
                break
        for i, m in enumerate(mentions):
            if i in done:
                continue
            if m.chunk_intro_kind == "colon":
                if not message_found:
                    roles.append((ROLE_MESSAGE, TextFiller(strip_quotes(m.chunk_text.lstrip(": ")))))
                    message_found = True
                drop(i)
        if not message_found:
            for i, m in enumerate(mentions):
                if i in done:
                    continue
                if m.kind == KIND_QUOTED:
                    take(i, ROLE_MESSAGE)
                    message_found = True
                    break
        if not message_found:
            post_chunks: dict[int, str] = {}
            for m in mentions:
                if m.chunk_position == POST:
                    post_chunks.setdefault(m.chunk_index, m.chunk_text)
            if post_chunks:
                text = strip_quotes(" ".join(post_chunks[k] for k in sorted(post_chunks)))
                roles.append((ROLE_MESSAGE, TextFiller(text)))
                message_found = True
                for i, m in enumerate(mentions):
                    if i in done or m.chunk_position != POST:
                        continue
                    if not m.is_entity:
                        drop(i)  # covered by the Message text
        if not any(r == ROLE_GIVER for r, _ in roles):
            warnings.append("required role Giver is unfilled")
        if not message_found:
            warnings.append("required role Message is unfilled")

    elif event_class.name == MURDER:
        passive = _is_passive(head, mentions)
        if passive:
            for i in subject_ids:
                if i in done:
                    continue
                m = mentions[i]
                if m.kind == KIND_NUMBER:
                    take(i, ROLE_COUNT)
                elif m.is_entity and m.entity_type == PERSON:
                    take(i, ROLE_VICTIM)
                elif not m.is_entity and m.kind == KIND_OTHER:
                    take(i, ROLE_VICTIM)
        else:
            for i in subject_ids:
                if i in done:
                    continue
                m = mentions[i]
                if m.is_entity and m.entity_type == PERSON:
                    take(i, ROLE_PERPETRATOR)
                else:
                    take(i, ROLE_CAUSE)
                break
            for i, m in enumerate(mentions):
                if i in done or m.chunk_position != POST:
                    continue
                if m.kind == KIND_NUMBER:
                    take(i, ROLE_COUNT)
                elif m.is_entity and m.entity_type == PERSON:
                    take(i, ROLE_VICTIM)
        for i, m in enumerate(mentions):
            if i in done or m.kind != KIND_NUMBER:
                continue
            take(i, ROLE_COUNT)

    for i, m in enumerate(mentions):
        if i not in done:
            take(i, "involved")

    for required in frame.required_roles:
        if required in (ROLE_GIVER, ROLE_MESSAGE):
            continue  # reported above with class-specific context
        if not any(r == required for r, _ in roles):
            warnings.append(f"required role {required} is unfilled")

    return roles, warnings
