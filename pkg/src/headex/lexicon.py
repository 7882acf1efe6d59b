"""Verb lexicon: maps verb lemmas to event classes, plus a rule lemmatizer.

The lexicon file format is UTF-8 TSV, one row per lemma:

    lemma<TAB>class[<TAB>subgroup][<TAB>flags]

Class is Communication, Meet, Murder, or ``Other:<Label>`` for extension
classes.  Subgroup is only meaningful for Communication (SayVerbs or
TellVerbs); leave it empty or write ``-`` for none.  Flags is a
comma-separated list; the only recognized flag is ``noun_ok``, which lets the
event recognizer accept -ing/noun surface forms of that lemma when a headline
has no finite verb hit.  Lines starting with ``#`` and blank lines are
ignored.  The shipped default lexicon is ``data/cevo_min.tsv``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import BinaryIO, Iterable

from .model import BUILTIN_CLASS_NAMES, COMMUNICATION, EventClass

_KNOWN_FLAGS = ("noun_ok",)
_KNOWN_SUBGROUPS = ("SayVerbs", "TellVerbs")


class LexiconError(ValueError):
    """Raised for malformed or conflicting lexicon rows."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class VerbEntry:
    lemma: str
    event_class: EventClass
    noun_ok: bool = False


class Lexicon:
    """Immutable lemma -> verb entry mapping."""

    def __init__(self, entries: Iterable[VerbEntry]) -> None:
        self._entries = {e.lemma: e for e in entries}

    def __contains__(self, lemma: str) -> bool:
        return lemma in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, lemma: str) -> VerbEntry | None:
        return self._entries.get(lemma)

    def lemmas(self) -> tuple[str, ...]:
        return tuple(self._entries)


def default_lexicon_path() -> Path:
    return Path(str(resources.files("headex").joinpath("data/cevo_min.tsv")))


def _parse_class(text: str, line_no: int) -> str:
    if text in BUILTIN_CLASS_NAMES:
        return text
    if text.startswith("Other:") and len(text) > len("Other:"):
        return text[len("Other:") :]
    raise LexiconError(line_no, f"unknown event class {text!r}")


def load_lexicon(source: BinaryIO | bytes) -> Lexicon:
    """Load a lexicon from a byte stream (or bytes).

    Raises LexiconError with a line number for wrong arity, unknown class
    names or flags, or a lemma mapped to two different classes.
    """
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    entries: dict[str, tuple[VerbEntry, int]] = {}
    for line_no, raw in enumerate(source.read().decode("utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 2 or len(fields) > 4:
            raise LexiconError(line_no, f"expected 2-4 tab-separated fields, got {len(fields)}")
        lemma = fields[0].strip().lower()
        if not lemma:
            raise LexiconError(line_no, "empty lemma")
        class_name = _parse_class(fields[1].strip(), line_no)
        subgroup = None
        if len(fields) >= 3:
            raw_subgroup = fields[2].strip()
            if raw_subgroup and raw_subgroup != "-":
                if raw_subgroup not in _KNOWN_SUBGROUPS:
                    raise LexiconError(line_no, f"unknown subgroup {raw_subgroup!r}")
                subgroup = raw_subgroup
        if subgroup is not None and class_name != COMMUNICATION:
            raise LexiconError(line_no, f"subgroup given for non-{COMMUNICATION} class")
        noun_ok = False
        if len(fields) == 4 and fields[3].strip():
            for flag in fields[3].strip().split(","):
                flag = flag.strip()
                if flag not in _KNOWN_FLAGS:
                    raise LexiconError(line_no, f"unknown flag {flag!r}")
                if flag == "noun_ok":
                    noun_ok = True
        entry = VerbEntry(lemma, EventClass(class_name, subgroup), noun_ok)
        if lemma in entries:
            previous, previous_line = entries[lemma]
            if previous.event_class != entry.event_class:
                raise LexiconError(
                    line_no,
                    f"lemma {lemma!r} already mapped to "
                    f"{previous.event_class.name} on line {previous_line}",
                )
            continue
        entries[lemma] = (entry, line_no)
    return Lexicon(entry for entry, _ in entries.values())


def load_lexicon_file(path: str | Path) -> Lexicon:
    with open(path, "rb") as handle:
        return load_lexicon(handle)


def classify_verb(lemma: str, lexicon: Lexicon) -> EventClass | None:
    """Event class (with subgroup, when any) for a lemma, or None if unlisted."""
    entry = lexicon.get(lemma)
    return entry.event_class if entry is not None else None


# Irregular inflections of verbs this pipeline is likely to meet in headlines.
# Unknown irregulars fall through to the suffix rules.
_IRREGULAR = {
    "met": "meet",
    "said": "say",
    "told": "tell",
    "fought": "fight",
    "wrote": "write",
    "written": "write",
    "taught": "teach",
    "slew": "slay",
    "slain": "slay",
    "shown": "show",
    "showed": "show",
    "writing": "write",
    "cited": "cite",
    "citing": "cite",
    "posed": "pose",
    "posing": "pose",
    "alleged": "allege",
    "alleging": "allege",
    "declared": "declare",
    "declaring": "declare",
    "am": "be",
    "is": "be",
    "are": "be",
    "was": "be",
    "were": "be",
    "been": "be",
    "has": "have",
    "had": "have",
    "did": "do",
    "does": "do",
    "done": "do",
    "goes": "go",
    "went": "go",
    "gone": "go",
}

_VOWELS = "aeiou"
# Final consonants that get doubled before -ed/-ing (stopped, planned).
_DOUBLING = "bdgmnprt"


def _restore_e(stem: str) -> str:
    # Undo e-dropping where the bare stem is clearly not a word ending.
    if stem.endswith(("c", "u", "v", "z")):
        return stem + "e"
    if len(stem) > 2 and stem.endswith("at") and stem[-3] not in _VOWELS:
        return stem + "e"
    if stem.endswith(("ut", "ot")):
        return stem + "e"
    if len(stem) > 2 and stem[-1] == "s" and stem[-2] in _VOWELS:
        return stem + "e"
    if len(stem) > 2 and stem[-1] in "lr" and stem[-2] not in _VOWELS and stem[-2] != stem[-1]:
        return stem + "e"
    return stem


def _strip_suffix(word: str, width: int) -> str:
    stem = word[:-width]
    if len(stem) > 2 and stem[-1] == stem[-2] and stem[-1] in _DOUBLING:
        return stem[:-1]
    return _restore_e(stem)


def _lemmatize_once(word: str) -> str:
    if word in _IRREGULAR:
        return _IRREGULAR[word]
    if len(word) > 4 and word.endswith(("ies", "ied")):
        return word[:-3] + "y"
    if len(word) > 3 and word.endswith("es") and word[:-2].endswith(("ss", "x", "z", "ch", "sh")):
        return word[:-2]
    if len(word) > 3 and word.endswith("s") and not word.endswith(("ss", "us", "is")):
        return word[:-1]
    if len(word) > 4 and word.endswith("ed"):
        return _strip_suffix(word, 2)
    if len(word) > 5 and word.endswith("ing"):
        return _strip_suffix(word, 3)
    return word


def lemmatize(token: str) -> str:
    """Lowercase dictionary form of a word token.

    Applies the irregular table, then suffix rules for -s/-es/-ies/-ed/-ing
    with consonant undoubling and e-restoration.  Rules are iterated to a
    fixed point, so the function is idempotent.
    """
    if not token or not token.strip():
        raise ValueError("cannot lemmatize an empty token")
    word = token.lower()
    for _ in range(5):
        reduced = _lemmatize_once(word)
        if reduced == word:
            return word
        word = reduced
    return word
