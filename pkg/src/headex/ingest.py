"""Input parsing and headline tokenization.

Record format: UTF-8, newline-delimited, four tab-separated fields per line:

    id<TAB>publisher<TAB>date<TAB>text

The text field is last and may contain any character except newlines; literal
tabs and backslashes inside it are escaped as ``\\t`` and ``\\\\``.  Dates are
either ISO-8601 (date or datetime) or day-first ``D/M/YY`` / ``D/M/YYYY``;
two-digit years land in 2000-2099.

Tokenization is offset-sound: each token records the half-open character span
it was cut from, tokens never overlap, and every non-space character outside a
stripped URL belongs to exactly one token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator

from .model import HeadlineRecord, ModelError

WORD = "word"
MENTION = "mention"
HASHTAG = "hashtag"
NUMBER = "number"
PUNCT = "punct"

NUMBER_WORDS = frozenset(
    """one two three four five six seven eight nine ten eleven twelve thirteen
    fourteen fifteen sixteen seventeen eighteen nineteen twenty thirty forty
    fifty sixty seventy eighty ninety hundred thousand million billion dozen
    dozens""".split()
)

_QUOTE_CHARS = {'"', "“", "”"}


class RecordError(ValueError):
    """Raised for records that cannot be parsed; carries the input line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


_DAY_FIRST = re.compile(r"^(\d{1,2})/(\d{1,2})/(\d{2}|\d{4})$")


def parse_timestamp(text: str, line_no: int = 0) -> datetime:
    """Parse an ISO-8601 or day-first D/M/YY date into a UTC datetime."""
    text = text.strip()
    match = _DAY_FIRST.match(text)
    if match:
        day, month, year = (int(g) for g in match.groups())
        if year < 100:
            year += 2000
        try:
            return datetime(year, month, day, tzinfo=timezone.utc)
        except ValueError as exc:
            raise RecordError(line_no, f"invalid calendar date {text!r}") from exc
    try:
        parsed = datetime.fromisoformat(text.replace("Z", "+00:00"))
    except ValueError as exc:
        raise RecordError(line_no, f"unparseable date {text!r}") from exc
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def _unescape_text(text: str, line_no: int) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(text):
            raise RecordError(line_no, "dangling backslash in text field")
        nxt = text[i + 1]
        if nxt == "t":
            out.append("\t")
        elif nxt == "\\":
            out.append("\\")
        else:
            # Unknown escapes pass through untouched; headline text is noisy.
            out.append(ch)
            out.append(nxt)
        i += 2
    return "".join(out)


def _escape_text(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t")


def parse_record(line: str, line_no: int = 0) -> HeadlineRecord:
    """Parse one input line into a HeadlineRecord.

    Raises RecordError on wrong field count, bad dates, or empty fields.
    """
    stripped = line.rstrip("\n").rstrip("\r")
    fields = stripped.split("\t")
    if len(fields) != 4:
        raise RecordError(line_no, f"expected 4 tab-separated fields, got {len(fields)}")
    record_id, publisher, date_text, text = fields
    timestamp = parse_timestamp(date_text, line_no)
    try:
        return HeadlineRecord(
            id=record_id.strip(),
            publisher=publisher.strip(),
            timestamp=timestamp,
            text=_unescape_text(text, line_no).strip(),
        )
    except ModelError as exc:
        raise RecordError(line_no, str(exc)) from exc


def serialize_record(record: HeadlineRecord) -> str:
    """Inverse of parse_record: one tab-separated line without the newline."""
    ts = record.timestamp
    if (ts.hour, ts.minute, ts.second, ts.microsecond) == (0, 0, 0, 0):
        date_text = ts.date().isoformat()
    else:
        date_text = ts.isoformat()
    return "\t".join((record.id, record.publisher, date_text, _escape_text(record.text)))


def read_records(path: str | Path) -> tuple[list[HeadlineRecord], list[tuple[str, str]]]:
    """Read all records from a file.

    Returns (records, failures) where failures are (line label, reason) pairs;
    malformed lines and duplicate ids are reported, never raised, so one bad
    row cannot abort a batch.
    """
    records: list[HeadlineRecord] = []
    failures: list[tuple[str, str]] = []
    seen_ids: set[str] = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = parse_record(line, line_no)
            except RecordError as exc:
                failures.append((f"line{line_no}", str(exc)))
                continue
            if record.id in seen_ids:
                failures.append((record.id, f"line {line_no}: duplicate record id"))
                continue
            seen_ids.add(record.id)
            records.append(record)
    return records, failures


@dataclass(frozen=True)
class Token:
    surface: str
    kind: str
    start: int
    end: int
    quoted: bool = False

    @property
    def lower(self) -> str:
        return self.surface.lower()


@dataclass(frozen=True)
class QuotedSpan:
    """A double-quoted stretch of text, quote marks included in the char span."""

    start: int
    end: int
    first_token: int  # index into TokenSequence.tokens, first inner token
    last_token: int  # inclusive; first_token > last_token means an empty quote

    def inner_text(self, raw: str) -> str:
        return raw[self.start + 1 : self.end - 1]


@dataclass(frozen=True)
class TokenSequence:
    raw: str
    tokens: tuple[Token, ...]
    quoted_spans: tuple[QuotedSpan, ...] = ()
    urls: tuple[tuple[int, int], ...] = field(default=())

    def words(self) -> tuple[Token, ...]:
        """Tokens that can carry content: words, @mentions, hashtags, numbers."""
        return tuple(t for t in self.tokens if t.kind != PUNCT)


_TOKEN_RE = re.compile(
    r"""(?P<url>https?://[^\s]+)
      | (?P<mention>@\w+)
      | (?P<hashtag>\#\w+)
      | (?P<number>\d+(?:[.,]\d+)*)
      | (?P<word>[^\W\d_][\w'’\-]*)
      | (?P<punct>[^\w\s])
    """,
    re.VERBOSE | re.UNICODE,
)


def normalize(text: str) -> TokenSequence:
    """Tokenize one headline.

    URLs are stripped (spans recorded), @mentions and #hashtags are single
    tokens, digit strings and spelled-out cardinals are number tokens, and
    double-quoted spans are marked (inner tokens carry ``quoted=True``).  An
    unbalanced quote disables quoted-span marking for the whole headline.
    Raises ValueError on empty input.
    """
    if not text or not text.strip():
        raise ValueError("cannot tokenize empty text")
    tokens: list[Token] = []
    urls: list[tuple[int, int]] = []
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup or PUNCT
        surface = match.group()
        if kind == "url":
            urls.append((match.start(), match.end()))
            continue
        if kind == WORD and surface.lower() in NUMBER_WORDS:
            kind = NUMBER
        tokens.append(Token(surface, kind, match.start(), match.end()))

    quote_positions = [i for i, t in enumerate(tokens) if t.surface in _QUOTE_CHARS]
    spans: list[QuotedSpan] = []
    if len(quote_positions) % 2 == 0:
        quoted_token_indexes: set[int] = set()
        for open_idx, close_idx in zip(quote_positions[::2], quote_positions[1::2]):
            spans.append(
                QuotedSpan(
                    start=tokens[open_idx].start,
                    end=tokens[close_idx].end,
                    first_token=open_idx + 1,
                    last_token=close_idx - 1,
                )
            )
            quoted_token_indexes.update(range(open_idx, close_idx + 1))
        if quoted_token_indexes:
            tokens = [
                Token(t.surface, t.kind, t.start, t.end, quoted=(i in quoted_token_indexes))
                for i, t in enumerate(tokens)
            ]
    return TokenSequence(
        raw=text, tokens=tuple(tokens), quoted_spans=tuple(spans), urls=tuple(urls)
    )


def record_date(record: HeadlineRecord) -> date:
    return record.timestamp.date()


def iter_lines(records: Iterable[HeadlineRecord]) -> Iterator[str]:
    for record in records:
        yield serialize_record(record) + "\n"
