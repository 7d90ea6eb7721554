"""Synthetic documents over an artificial lexicon, for property and scale tests."""

from __future__ import annotations

import random

from sumlens.document import Lexicon, parse_document

GENERIC = "Qualitative Concept"
FILLER = ["the", "results", "were", "observed", "in", "this", "cohort", "with", "and", "of", "across", "samples"]
OPENERS = ["We", "These", "Our", "Further", "Such", "Both", "Several", "Most"]


def concept_word(i: int) -> str:
    return f"conc{i:03d}"


def make_lexicon(n_concepts: int = 40, generic_every: int = 7) -> Lexicon:
    rows = []
    for i in range(n_concepts):
        stype = GENERIC if i % generic_every == generic_every - 1 else "Disease or Syndrome"
        rows.append((concept_word(i), f"C{i:03d}", f"Concept {i}", stype))
    return Lexicon.from_rows(rows)


def _zipf_pick(rng: random.Random, n: int) -> int:
    weights = [1 / (r + 1) for r in range(n)]
    return rng.choices(range(n), weights)[0]


def sentence(rng: random.Random, concepts: list[int]) -> str:
    words = [rng.choice(OPENERS)]
    for c in concepts:
        words.extend(rng.sample(FILLER, 2))
        words.append(concept_word(c))
    words.extend(rng.sample(FILLER, 2))
    return " ".join(words) + "."


def make_text(
    seed: int,
    n_sentences: int = 40,
    n_concepts: int = 40,
    n_paragraphs: int = 5,
    max_per_sentence: int = 3,
    duplicate_pairs: int = 0,
    abstract_sentences: int = 0,
) -> str:
    rng = random.Random(seed)
    sentences = []
    for _ in range(n_sentences - duplicate_pairs):
        k = rng.randint(0, max_per_sentence)
        sentences.append(sentence(rng, [_zipf_pick(rng, n_concepts) for _ in range(k)]))
    for _ in range(duplicate_pairs):
        # a near copy of a sentence built from the most frequent concepts
        s = sentence(rng, [0, 1, 2][: rng.randint(2, 3)])
        pos = rng.randrange(len(sentences) + 1)
        sentences.insert(pos, s)
    paras = [[] for _ in range(n_paragraphs)]
    for i, s in enumerate(sentences):
        paras[min(i * n_paragraphs // len(sentences), n_paragraphs - 1)].append(s)
    body = "\n\n".join(" ".join(p) for p in paras if p)
    if abstract_sentences:
        abstract = " ".join(sentence(rng, [_zipf_pick(rng, n_concepts)]) for _ in range(abstract_sentences))
        return f"{abstract}\n---\n{body}"
    return body


def make_document(seed: int, doc_id: str | None = None, **kwargs):
    return parse_document(make_text(seed, **kwargs), "plain", doc_id or f"synth{seed:03d}")


def write_lexicon(path, n_concepts: int = 40, generic_every: int = 7) -> str:
    lexicon = make_lexicon(n_concepts, generic_every)
    lines = [f"{phrase}\t{e.concept_id}\t{e.concept_name}\t{e.semantic_type}" for phrase, es in lexicon.entries.items() for e in es]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def write_corpus(directory, n_docs: int, seed: int = 0, **kwargs) -> str:
    directory.mkdir(parents=True, exist_ok=True)
    kwargs.setdefault("abstract_sentences", 4)
    for i in range(n_docs):
        (directory / f"doc{i:03d}.txt").write_text(make_text(seed + i, **kwargs), encoding="utf-8")
    return str(directory)
