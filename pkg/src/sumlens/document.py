"""Documents, segmentation, tokenization and lexicon-based concept annotation."""

from __future__ import annotations

import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple

from sumlens.errors import DocumentParseError, EmptyDocument

_TOKEN_RE = re.compile(r"[^\W_]+")

# Sentence terminator, optionally followed by closing quotes/brackets.
_TERMINATOR_RE = re.compile(r"[.!?]+[\"'”’)\]]*")

ABBREVIATIONS = frozenset(
    {
        "al.", "approx.", "ca.", "cf.", "dr.", "e.g.", "eq.", "eqs.", "fig.",
        "figs.", "i.e.", "jr.", "mr.", "mrs.", "ms.", "no.", "nos.", "prof.",
        "ref.", "refs.", "resp.", "sec.", "sr.", "st.", "tab.", "vol.", "vs.",
    }
)

ABSTRACT_SEPARATOR = "---"


def tokenize(text: str) -> list[str]:
    """Lowercased runs of Unicode letters and digits; hyphens and underscores split."""
    return [t.lower() for t in _TOKEN_RE.findall(text)]


def _is_abbreviation(text: str, end: int) -> bool:
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    word = text[start:end].lower().lstrip("(\"'[")
    return word in ABBREVIATIONS


def segment_sentences(paragraph_text: str) -> list[str]:
    """Split a paragraph into sentences.

    A break happens after ``.``, ``!`` or ``?`` when followed by whitespace and an
    uppercase letter, or by the end of the text. Known abbreviations never end a
    sentence, and a decimal point is never followed by whitespace so ``0.3`` is
    safe.

    >>> segment_sentences("Risk is 0.3. See Fig. 2 for details.")
    ['Risk is 0.3.', 'See Fig. 2 for details.']
    """
    text = paragraph_text
    sentences = []
    start = 0
    for m in _TERMINATOR_RE.finditer(text):
        end = m.end()
        rest = text[end:]
        stripped = rest.lstrip()
        if stripped:
            if len(stripped) == len(rest) or not stripped[0].isupper():
                continue
        if "." in m.group() and m.group()[0] == "." and _is_abbreviation(text, m.start() + 1):
            continue
        piece = text[start:end].strip()
        if piece:
            sentences.append(piece)
        start = end
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Document:
    id: str
    body_sentences: tuple[Sentence, ...]
    paragraphs: tuple[tuple[int, int], ...]
    title: str | None = None
    abstract_sentences: tuple[Sentence, ...] | None = None

    def __post_init__(self):
        if not self.body_sentences:
            raise EmptyDocument(f"document {self.id!r} has no body sentences")
        expected = 0
        for lo, hi in self.paragraphs:
            if lo != expected or hi <= lo:
                raise ValueError(f"paragraph ranges do not partition the body: {self.paragraphs}")
            expected = hi
        if expected != len(self.body_sentences):
            raise ValueError("paragraph ranges do not cover every body sentence")

    def __len__(self):
        return len(self.body_sentences)

    @cached_property
    def paragraph_of(self) -> tuple[int, ...]:
        """Paragraph index for each body sentence."""
        out = []
        for p, (lo, hi) in enumerate(self.paragraphs):
            out.extend([p] * (hi - lo))
        return tuple(out)

    @property
    def has_abstract(self) -> bool:
        return bool(self.abstract_sentences)

    @property
    def abstract_text(self) -> str:
        return "\n".join(s.text for s in self.abstract_sentences or ())


def _sentences_from_blocks(blocks: Iterable[str]) -> tuple[list[Sentence], list[tuple[int, int]]]:
    sentences: list[Sentence] = []
    paragraphs: list[tuple[int, int]] = []
    for block in blocks:
        texts = []
        for piece in segment_sentences(block):
            if tokenize(piece):
                texts.append(piece)
            elif texts:
                # token-less fragment ("...") glues onto the previous sentence
                texts[-1] = f"{texts[-1]} {piece}"
        if not texts:
            continue
        lo = len(sentences)
        for t in texts:
            sentences.append(Sentence(len(sentences), t, tuple(tokenize(t))))
        paragraphs.append((lo, len(sentences)))
    return sentences, paragraphs


def _split_blank_lines(text: str) -> list[str]:
    blocks = re.split(r"\n\s*\n", text)
    return [" ".join(line.strip() for line in b.splitlines() if line.strip()) for b in blocks]


def _decode(raw: bytes) -> str:
    try:
        return raw.decode("utf-8-sig") if raw.startswith(b"\xef\xbb\xbf") else raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DocumentParseError("input is not valid UTF-8", offset=exc.start) from None


def _parse_plain(text: str, doc_id: str) -> Document:
    abstract = None
    lines = text.splitlines()
    for i, line in enumerate(lines):
        if line.strip() == ABSTRACT_SEPARATOR:
            abstract_sents, _ = _sentences_from_blocks(_split_blank_lines("\n".join(lines[:i])))
            abstract = tuple(abstract_sents) or None
            text = "\n".join(lines[i + 1 :])
            break
    sentences, paragraphs = _sentences_from_blocks(_split_blank_lines(text))
    if not sentences:
        raise EmptyDocument(f"document {doc_id!r} has an empty body")
    return Document(doc_id, tuple(sentences), tuple(paragraphs), None, abstract)


def _parse_json(text: str, raw: bytes, doc_id: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise DocumentParseError(f"malformed JSON: {exc.msg}", offset=offset) from None
    if not isinstance(data, dict):
        raise DocumentParseError("JSON document must be an object", offset=0)
    sections = data.get("sections")
    if not isinstance(sections, list):
        raise DocumentParseError("JSON document needs a 'sections' list", offset=0)
    blocks = []
    for section in sections:
        paragraphs = section.get("paragraphs", []) if isinstance(section, dict) else None
        if not isinstance(paragraphs, list) or not all(isinstance(p, str) for p in paragraphs):
            raise DocumentParseError("each section needs a 'paragraphs' list of strings", offset=0)
        blocks.extend(" ".join(p.split()) for p in paragraphs)
    sentences, ranges = _sentences_from_blocks(blocks)
    doc_id = str(data.get("id", doc_id))
    if not sentences:
        raise EmptyDocument(f"document {doc_id!r} has an empty body")
    abstract = None
    if isinstance(data.get("abstract"), str):
        abstract_sents, _ = _sentences_from_blocks(_split_blank_lines(data["abstract"]))
        abstract = tuple(abstract_sents) or None
    title = data.get("title")
    return Document(doc_id, tuple(sentences), tuple(ranges), title, abstract)


def parse_document(raw: bytes | str, format: str = "plain", doc_id: str = "doc") -> Document:
    """Parse UTF-8 input in ``"plain"`` or ``"json"`` format into a :class:`Document`.

    Plain text: an optional abstract block terminated by a line holding only
    ``---``, then body paragraphs separated by blank lines.
    """
    if isinstance(raw, str):
        raw = raw.encode("utf-8")
    text = _decode(raw)
    if format == "plain":
        return _parse_plain(text, doc_id)
    if format == "json":
        return _parse_json(text, raw, doc_id)
    raise ValueError(f"unknown document format {format!r}")


def read_document(path: str | Path) -> Document:
    """Load a document file, picking the format from its suffix."""
    path = Path(path)
    fmt = "json" if path.suffix.lower() == ".json" else "plain"
    return parse_document(path.read_bytes(), fmt, doc_id=path.stem)


# -- lexicon -----------------------------------------------------------------


class ConceptEntry(NamedTuple):
    concept_id: str
    concept_name: str
    semantic_type: str


def normalize_phrase(surface: str) -> str:
    return " ".join(tokenize(surface))


def _default_generic_types() -> frozenset[str]:
    return load_stoplist(resources.files("sumlens.data").joinpath("generic_semantic_types.txt"))


@dataclass(frozen=True)
class Lexicon:
    """Surface phrase to concept mapping.

    A phrase may map to several concepts; every mapping is kept.
    """

    entries: dict[str, tuple[ConceptEntry, ...]]
    generic_semantic_types: frozenset[str] = field(default_factory=_default_generic_types)

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[str, str, str, str]], generic_semantic_types=None) -> "Lexicon":
        entries: dict[str, list[ConceptEntry]] = defaultdict(list)
        for surface, cid, name, stype in rows:
            key = normalize_phrase(surface)
            if not key:
                continue
            entry = ConceptEntry(cid, name, stype)
            if entry not in entries[key]:
                entries[key].append(entry)
        frozen = {k: tuple(v) for k, v in entries.items()}
        if generic_semantic_types is None:
            return cls(frozen)
        return cls(frozen, frozenset(generic_semantic_types))

    def __len__(self):
        return len(self.entries)

    @cached_property
    def _phrases(self) -> dict[tuple[str, ...], tuple[ConceptEntry, ...]]:
        return {tuple(k.split(" ")): v for k, v in self.entries.items()}

    @cached_property
    def max_phrase_length(self) -> int:
        return max((len(k) for k in self._phrases), default=0)

    def match(self, tokens: tuple[str, ...]) -> list[tuple[int, int, tuple[ConceptEntry, ...]]]:
        """Greedy left-to-right longest match; matched tokens are consumed."""
        phrases = self._phrases
        out = []
        i, n = 0, len(tokens)
        while i < n:
            for length in range(min(self.max_phrase_length, n - i), 0, -1):
                hit = phrases.get(tokens[i : i + length])
                if hit:
                    out.append((i, i + length, hit))
                    i += length
                    break
            else:
                i += 1
        return out


def _read_text(path) -> str:
    # str paths, pathlib paths and importlib resource handles
    if isinstance(path, str):
        path = Path(path)
    return path.read_text(encoding="utf-8")


def load_stoplist(path) -> frozenset[str]:
    """One semantic type per line; blank and ``#`` lines ignored."""
    text = _read_text(path)
    return frozenset(
        line.strip() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")
    )


def load_lexicon(path=None, stoplist_path=None) -> Lexicon:
    """Read a TSV lexicon (surface_form, concept_id, concept_name, semantic_type).

    With no path, the bundled demonstration lexicon is used.
    """
    if path is None:
        path = resources.files("sumlens.data").joinpath("demo_lexicon.tsv")
    text = _read_text(path)
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.rstrip("\n\r").split("\t")
        if len(cols) != 4:
            raise ValueError(f"lexicon line {lineno}: expected 4 tab-separated columns, got {len(cols)}")
        rows.append(tuple(c.strip() for c in cols))
    generic = load_stoplist(stoplist_path) if stoplist_path is not None else None
    return Lexicon.from_rows(rows, generic)


# -- annotations -------------------------------------------------------------


class Occurrence(NamedTuple):
    sentence_index: int
    paragraph_index: int
    concept_id: str
    semantic_type: str
    start: int
    end: int


class ConceptStats(NamedTuple):
    sentence_count: int
    occurrence_count: int
    per_paragraph_counts: dict[int, int]


class FrequencyRow(NamedTuple):
    concept_id: str
    sentence_count: int
    occurrence_count: int


@dataclass(frozen=True)
class ConceptAnnotations:
    """Concept occurrences over ``num_sentences`` sentences.

    "Frequency" of a concept throughout the package means its sentence count;
    occurrence counts are kept separately.
    """

    occurrences: tuple[Occurrence, ...]
    num_sentences: int
    num_paragraphs: int
    concept_names: dict[str, str] = field(default_factory=dict, compare=False)

    @cached_property
    def stats(self) -> dict[str, ConceptStats]:
        sentences: dict[str, set[int]] = defaultdict(set)
        paragraphs: dict[str, Counter] = defaultdict(Counter)
        for occ in self.occurrences:
            sentences[occ.concept_id].add(occ.sentence_index)
            paragraphs[occ.concept_id][occ.paragraph_index] += 1
        return {
            cid: ConceptStats(len(sentences[cid]), sum(paragraphs[cid].values()), dict(paragraphs[cid]))
            for cid in sentences
        }

    @property
    def concepts(self) -> list[str]:
        return sorted(self.stats)

    @cached_property
    def sentence_concepts(self) -> tuple[frozenset[str], ...]:
        """The set of concept ids present in each sentence."""
        per: list[set[str]] = [set() for _ in range(self.num_sentences)]
        for occ in self.occurrences:
            per[occ.sentence_index].add(occ.concept_id)
        return tuple(frozenset(s) for s in per)

    @cached_property
    def paragraph_totals(self) -> dict[int, int]:
        return dict(Counter(occ.paragraph_index for occ in self.occurrences))

    def without_semantic_types(self, stoplist: Iterable[str]) -> "ConceptAnnotations":
        drop = {s.casefold() for s in stoplist}
        if not drop:
            return self
        kept = tuple(o for o in self.occurrences if o.semantic_type.casefold() not in drop)
        return ConceptAnnotations(kept, self.num_sentences, self.num_paragraphs, self.concept_names)


def extract_concepts(doc: Document, lexicon: Lexicon, source: str = "body") -> ConceptAnnotations:
    """Annotate every sentence of ``doc`` with lexicon concepts.

    ``source`` selects the body (default) or the abstract. For the abstract all
    sentences count as paragraph 0.
    """
    if not lexicon.entries:
        raise ValueError("lexicon is empty")
    if source == "body":
        sentences, para_of, n_paras = doc.body_sentences, doc.paragraph_of, len(doc.paragraphs)
    elif source == "abstract":
        sentences = doc.abstract_sentences or ()
        para_of, n_paras = (0,) * len(sentences), 1 if sentences else 0
    else:
        raise ValueError(f"unknown source {source!r}")
    occurrences = []
    names = {}
    for sent in sentences:
        for start, end, entries in lexicon.match(sent.tokens):
            for e in entries:
                occurrences.append(
                    Occurrence(sent.index, para_of[sent.index], e.concept_id, e.semantic_type, start, end)
                )
                names.setdefault(e.concept_id, e.concept_name)
    return ConceptAnnotations(tuple(occurrences), len(sentences), n_paras, names)


def frequency_table(ann: ConceptAnnotations) -> list[FrequencyRow]:
    """Per-concept counts sorted by descending sentence count, then concept id."""
    rows = [FrequencyRow(cid, s.sentence_count, s.occurrence_count) for cid, s in ann.stats.items()]
    rows.sort(key=lambda r: (-r.sentence_count, r.concept_id))
    return rows
