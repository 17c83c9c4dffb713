"""Text pre-processing: tokenization, stop-word removal, POS tagging, candidate filtering.

Turns raw idea text into the noun/adjective candidates that feed the
co-occurrence graph, while keeping original token positions so multi-word
keyphrases can be reassembled later from adjacency in the source text.

All functions here are pure; the bundled stop-word list and tag lexicon are
loaded once and treated as read-only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path


class Tag(Enum):
    NOUN = "NOUN"
    ADJECTIVE = "ADJ"
    VERB = "VERB"
    OTHER = "OTHER"


class LexiconUnavailable(Exception):
    """Raised when the bundled tag lexicon file is missing or corrupt."""


@dataclass(frozen=True)
class Token:
    """One token of the source text.

    position indexes the emitted token stream (0-based, contiguous across
    words, numbers and punctuation alike), so position arithmetic reflects
    adjacency in the original text.
    """

    surface: str
    norm: str
    position: int
    is_word: bool = True


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: Tag


@dataclass
class Candidate:
    """A keyword candidate: one normalized word plus every position it occupies."""

    norm: str
    positions: list[int] = field(default_factory=list)


# Letter runs are words; digit runs and punctuation runs are kept as
# non-word tokens so positions still reflect the original text layout.
_TOKEN_RE = re.compile(r"[^\W\d_]+|\d+|_+|[^\w\s]+", re.UNICODE)

# Suffix fallback for words missing from the lexicon, checked in order.
# Gerund-like "-ing" forms are treated as nominal; unmatched words are OTHER.
_SUFFIX_RULES: tuple[tuple[str, Tag], ...] = (
    ("ness", Tag.NOUN),
    ("ment", Tag.NOUN),
    ("tion", Tag.NOUN),
    ("sion", Tag.NOUN),
    ("ship", Tag.NOUN),
    ("ance", Tag.NOUN),
    ("ence", Tag.NOUN),
    ("ity", Tag.NOUN),
    ("ism", Tag.NOUN),
    ("ing", Tag.NOUN),
    ("ous", Tag.ADJECTIVE),
    ("ful", Tag.ADJECTIVE),
    ("less", Tag.ADJECTIVE),
    ("able", Tag.ADJECTIVE),
    ("ible", Tag.ADJECTIVE),
    ("ive", Tag.ADJECTIVE),
    ("ish", Tag.ADJECTIVE),
    ("ize", Tag.VERB),
    ("ise", Tag.VERB),
    ("ify", Tag.VERB),
)

_DATA_PACKAGE = "idealize.data"
DEFAULT_STOPWORDS_RESOURCE = "stopwords_en.txt"
DEFAULT_LEXICON_RESOURCE = "pos_lexicon.tsv"


def _read_resource(name: str) -> str:
    return resources.files(_DATA_PACKAGE).joinpath(name).read_text(encoding="utf-8")


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Load a stop-word list: one lowercase word per line, UTF-8.

    Without a path the bundled English list is used.
    """
    if path is None:
        text = _read_resource(DEFAULT_STOPWORDS_RESOURCE)
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


class TagLexicon:
    """Word -> most-frequent-tag table with deterministic suffix fallback.

    The backing file is tab-separated ``word<TAB>tag`` with tags in
    {NOUN, ADJ, VERB, OTHER}. Lookup is by normalized (lowercased) form.
    """

    def __init__(self, entries: dict[str, Tag]):
        self._entries = entries

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, norm: str) -> bool:
        return norm in self._entries

    def lookup(self, norm: str) -> Tag | None:
        return self._entries.get(norm)

    def tag(self, norm: str) -> Tag:
        known = self._entries.get(norm)
        if known is not None:
            return known
        for suffix, tag in _SUFFIX_RULES:
            if len(norm) >= len(suffix) + 2 and norm.endswith(suffix):
                return tag
        return Tag.OTHER

    @classmethod
    def load(cls, path: str | Path | None = None) -> "TagLexicon":
        """Load the lexicon file; raises LexiconUnavailable if missing or corrupt."""
        try:
            if path is None:
                text = _read_resource(DEFAULT_LEXICON_RESOURCE)
            else:
                text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise LexiconUnavailable(f"cannot read tag lexicon: {exc}") from exc

        entries: dict[str, Tag] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise LexiconUnavailable(
                    f"malformed lexicon line {lineno}: expected 'word<TAB>tag'"
                )
            word, raw_tag = parts[0].strip(), parts[1].strip()
            try:
                entries[word] = Tag(raw_tag)
            except ValueError as exc:
                raise LexiconUnavailable(
                    f"unknown tag {raw_tag!r} on lexicon line {lineno}"
                ) from exc
        if not entries:
            raise LexiconUnavailable("tag lexicon is empty")
        return cls(entries)


def tokenize(text: str) -> list[Token]:
    """Split text on whitespace and punctuation boundaries.

    Letter runs become word tokens; digit runs and punctuation runs are
    emitted too but flagged is_word=False. Positions are 0-based and
    contiguous over all emitted tokens.
    """
    tokens: list[Token] = []
    for position, match in enumerate(_TOKEN_RE.finditer(text)):
        surface = match.group(0)
        is_word = surface[0].isalpha()
        tokens.append(
            Token(surface=surface, norm=surface.lower(), position=position, is_word=is_word)
        )
    return tokens


def filter_stopwords(tokens: list[Token], stoplist: frozenset[str] | set[str]) -> list[Token]:
    """Drop tokens whose normalized form is in the (case-folded) stoplist.

    Survivors keep their original positions, so gaps mark removed words.
    """
    return [t for t in tokens if t.norm not in stoplist]


def pos_tag(tokens: list[Token], lexicon: TagLexicon) -> list[TaggedToken]:
    """Tag each word token by lexicon lookup with suffix fallback; total and deterministic."""
    return [TaggedToken(token=t, tag=lexicon.tag(t.norm)) for t in tokens]


def candidate_filter(tagged: list[TaggedToken]) -> list[Candidate]:
    """Keep noun/adjective tokens and merge equal forms into position-bearing candidates.

    Output is ordered by first occurrence.
    """
    by_norm: dict[str, Candidate] = {}
    for item in tagged:
        if item.tag not in (Tag.NOUN, Tag.ADJECTIVE):
            continue
        cand = by_norm.get(item.token.norm)
        if cand is None:
            by_norm[item.token.norm] = Candidate(
                norm=item.token.norm, positions=[item.token.position]
            )
        else:
            cand.positions.append(item.token.position)
    candidates = list(by_norm.values())
    for cand in candidates:
        cand.positions.sort()
    candidates.sort(key=lambda c: c.positions[0])
    return candidates
