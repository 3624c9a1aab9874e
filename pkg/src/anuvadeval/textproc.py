"""Text normalization, tokenization, Hindi stemming, and match resources.

Everything downstream (BLEU, the staged METEOR matchers) operates on token
sequences produced here. All resources are immutable after loading and all
functions are pure, so they are safe to share across workers.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Iterable

from .errors import ParseError

TokenSequence = tuple[str, ...]


def normalize(text: str) -> str:
    """Canonicalize a raw string: Unicode NFC, whitespace runs collapsed.

    Total function: any str input yields a normalized str. Idempotent.
    """
    text = unicodedata.normalize("NFC", text)
    return " ".join(text.split())


def tokenize(text: str, lowercase: bool = True) -> TokenSequence:
    """Split normalized text into tokens.

    Whitespace separates tokens; every punctuation character (Unicode
    category P*, which covers Latin punctuation and the Devanagari danda
    and double danda) becomes its own token. Digit runs stay whole.
    Lowercasing only affects cased scripts; Devanagari is untouched.
    """
    if lowercase:
        text = text.lower()
    tokens: list[str] = []
    word: list[str] = []
    for ch in text:
        if ch.isspace():
            if word:
                tokens.append("".join(word))
                word = []
        elif unicodedata.category(ch).startswith("P"):
            if word:
                tokens.append("".join(word))
                word = []
            tokens.append(ch)
        else:
            word.append(ch)
    if word:
        tokens.append("".join(word))
    return tuple(tokens)


def prepare(text: str, lowercase: bool = True) -> TokenSequence:
    """normalize + tokenize in one step, for raw corpus lines."""
    return tokenize(normalize(text), lowercase=lowercase)


@dataclass(frozen=True)
class SuffixInventory:
    """Suffix list for one-pass longest-suffix stripping.

    `suffixes` is kept sorted by descending length (ties alphabetical) so
    the first match during a scan is the longest one.
    """

    suffixes: tuple[str, ...]
    min_stem_len: int = 1

    @classmethod
    def from_suffixes(cls, suffixes: Iterable[str],
                      min_stem_len: int = 1) -> "SuffixInventory":
        unique = sorted(set(suffixes), key=lambda s: (-len(s), s))
        if any(not s for s in unique):
            raise ValueError("empty suffix not allowed")
        if min_stem_len < 0:
            raise ValueError("min_stem_len must be >= 0")
        return cls(suffixes=tuple(unique), min_stem_len=min_stem_len)


def stem(token: str, inventory: SuffixInventory) -> str:
    """Strip the single longest inventory suffix, once.

    The surviving stem must keep at least `min_stem_len` characters;
    otherwise shorter suffixes are tried, and if none qualifies the token
    is returned unchanged. The result is always a prefix of the input.
    No recursion: this is deliberately a one-pass lightweight stemmer.
    """
    if not token:
        raise ValueError("token must be non-empty")
    for suffix in inventory.suffixes:
        if len(token) - len(suffix) >= inventory.min_stem_len and \
                token.endswith(suffix):
            return token[: len(token) - len(suffix)]
    return token


def load_suffix_inventory(path: str | Path,
                          min_stem_len: int = 1) -> SuffixInventory:
    """Read a suffix file: one suffix per line, '#' comments, blanks skipped."""
    suffixes = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        suffixes.append(normalize(line))
    return SuffixInventory.from_suffixes(suffixes, min_stem_len=min_stem_len)


def default_suffix_inventory(min_stem_len: int = 1) -> SuffixInventory:
    """The packaged Hindi inflectional suffix list."""
    ref = importlib_resources.files("anuvadeval.data") / "hindi_suffixes.txt"
    suffixes = []
    for raw in ref.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        suffixes.append(normalize(line))
    return SuffixInventory.from_suffixes(suffixes, min_stem_len=min_stem_len)


@dataclass(frozen=True)
class SynonymLexicon:
    """Token -> synset-id membership map.

    Two tokens count as synonyms iff their synset-id sets intersect, which
    makes the relation symmetric by construction.
    """

    membership: dict[str, frozenset[str]]

    def synsets(self, token: str) -> frozenset[str]:
        return self.membership.get(token, frozenset())

    def __len__(self) -> int:
        return len(self.membership)


def synonyms_match(a: str, b: str, lexicon: SynonymLexicon) -> bool:
    """True iff a and b are distinct tokens sharing at least one synset."""
    if a == b:
        return False
    return bool(lexicon.synsets(a) & lexicon.synsets(b))


def load_synonym_lexicon(path: str | Path) -> SynonymLexicon:
    """Parse `synset_id<TAB>token<TAB>token...` lines into a lexicon.

    Tokens are normalized and lowercased so lookups agree with tokenizer
    output. Blank lines are skipped; a non-blank line without at least one
    member token is a ParseError.
    """
    membership: dict[str, set[str]] = {}
    path = Path(path)
    for line_no, raw in enumerate(
            path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        fields = raw.rstrip("\n").split("\t")
        if len(fields) < 2:
            raise ParseError("expected `id<TAB>token...`",
                             path=str(path), line_no=line_no)
        synset_id = fields[0].strip()
        if not synset_id:
            raise ParseError("empty synset id", path=str(path),
                             line_no=line_no)
        for member in fields[1:]:
            token = normalize(member).lower()
            if not token:
                raise ParseError("empty member token", path=str(path),
                                 line_no=line_no)
            membership.setdefault(token, set()).add(synset_id)
    return SynonymLexicon(
        membership={t: frozenset(ids) for t, ids in membership.items()})


Phrase = tuple[str, ...]


@dataclass(frozen=True)
class ParaphraseTable:
    """Phrase equivalences for the multi-word matcher stage.

    Both directions of every listed pair are stored, so lookup is
    symmetric regardless of how the file listed a pair.
    """

    equivalents_map: dict[Phrase, frozenset[Phrase]]

    def contains(self, phrase: Phrase) -> bool:
        return phrase in self.equivalents_map

    def equivalents(self, phrase: Phrase) -> frozenset[Phrase]:
        return self.equivalents_map.get(phrase, frozenset())

    def matches(self, a: Phrase, b: Phrase) -> bool:
        return b in self.equivalents(a)

    @property
    def max_phrase_len(self) -> int:
        if not self.equivalents_map:
            return 0
        return max(len(p) for p in self.equivalents_map)

    def __len__(self) -> int:
        return len(self.equivalents_map)


def _parse_phrase(text: str, path: str, line_no: int) -> Phrase:
    tokens = tuple(normalize(text).lower().split(" "))
    if tokens == ("",):
        raise ParseError("empty phrase", path=path, line_no=line_no)
    return tokens


def load_paraphrase_table(path: str | Path) -> ParaphraseTable:
    """Parse `phrase<TAB>phrase` lines (tokens space-separated in a phrase).

    Duplicate pairs are tolerated (set semantics). Blank lines are skipped.
    """
    table: dict[Phrase, set[Phrase]] = {}
    path = Path(path)
    for line_no, raw in enumerate(
            path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        fields = raw.rstrip("\n").split("\t")
        if len(fields) != 2:
            raise ParseError("expected `phrase<TAB>phrase`",
                             path=str(path), line_no=line_no)
        a = _parse_phrase(fields[0], str(path), line_no)
        b = _parse_phrase(fields[1], str(path), line_no)
        table.setdefault(a, set()).add(b)
        table.setdefault(b, set()).add(a)
    return ParaphraseTable(
        equivalents_map={p: frozenset(eq) for p, eq in table.items()})


def empty_synonym_lexicon() -> SynonymLexicon:
    return SynonymLexicon(membership={})


def empty_paraphrase_table() -> ParaphraseTable:
    return ParaphraseTable(equivalents_map={})
