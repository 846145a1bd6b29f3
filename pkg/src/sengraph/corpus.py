"""Corpus ingestion, sentence segmentation, tokenization and vocabulary.

Two input formats are supported:

* ``jsonl``: one JSON record per line with fields ``doc_id``, ``label``
  (may be null or absent) and ``text``. The text is segmented with a
  simple heuristic: sentence boundaries are '.', '!' or '?' followed by
  whitespace.
* ``dir``: a directory of plain-text files. Each ``*.txt`` file is one
  document (``doc_id`` = file name without extension), pre-segmented one
  sentence per line. An optional ``labels.tsv`` sidecar in the same
  directory maps ``doc_id<TAB>label``.

Tokenization is deterministic: lowercase, split on Unicode whitespace,
strip leading/trailing punctuation, keep internal hyphens/apostrophes.
No stemming and no stop-word removal happen here.
"""

from __future__ import annotations

import json
import math
import re
import sys
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyCorpusError, EmptyVocabError, InputError

_SENT_BOUNDARY = re.compile(r"(?<=[.!?])\s+")


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _strip_punct(token: str) -> str:
    start, end = 0, len(token)
    while start < end and _is_punct(token[start]):
        start += 1
    while end > start and _is_punct(token[end - 1]):
        end -= 1
    return token[start:end]


def tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace, strip edge punctuation."""
    out = []
    for raw in text.lower().split():
        tok = _strip_punct(raw)
        if tok:
            out.append(tok)
    return out


def segment(text: str) -> list[str]:
    """Split raw text into sentence strings; blank segments are dropped."""
    return [seg for seg in (s.strip() for s in _SENT_BOUNDARY.split(text)) if seg]


@dataclass
class Sentence:
    """One sentence: raw text, string tokens and (after vocab build) ids.

    ``tokens`` holds vocabulary indices and is populated by
    :func:`build_vocab`; words filtered out by ``min_count`` do not
    appear in it, so it may be shorter than ``words`` (or empty when
    every word was rare).
    """

    sent_id: int
    doc_id: str
    text: str
    words: list[str]
    tokens: list[int] = field(default_factory=list)

    def n_words(self) -> int:
        return len(self.words)


@dataclass
class Document:
    doc_id: str
    label: str | None
    sentence_ids: list[int]


@dataclass
class Vocab:
    """Retained words ordered by descending frequency (ties lexicographic)."""

    words: list[str]
    counts: list[int]
    total_tokens: int
    index: dict[str, int]

    def __len__(self) -> int:
        return len(self.words)

    def frequency(self, word_id: int) -> float:
        """Corpus frequency of a word as a fraction of all tokens."""
        return self.counts[word_id] / self.total_tokens


class Corpus:
    """Documents plus the flat sentence table; immutable once built."""

    def __init__(self, documents: list[Document], sentences: list[Sentence]):
        if not documents:
            raise EmptyCorpusError("corpus contains no documents")
        seen = set()
        for doc in documents:
            if doc.doc_id in seen:
                raise InputError(f"duplicate doc_id {doc.doc_id!r}")
            seen.add(doc.doc_id)
        self.documents = documents
        self.sentences = sentences
        self.doc_index = {d.doc_id: d for d in documents}
        self.vocab: Vocab | None = None

    @property
    def n_sentences(self) -> int:
        return len(self.sentences)

    def labelled_documents(self) -> list[Document]:
        return [d for d in self.documents if d.label is not None]

    def word_counts(self) -> Counter:
        counts: Counter = Counter()
        for sent in self.sentences:
            counts.update(sent.words)
        return counts

    def total_words(self) -> int:
        return sum(len(s.words) for s in self.sentences)


def _add_document(documents, sentences, doc_id, label, sent_texts):
    sent_ids = []
    for text in sent_texts:
        words = tokenize(text)
        if not words:
            continue
        sid = len(sentences)
        sentences.append(Sentence(sent_id=sid, doc_id=doc_id, text=text, words=words))
        sent_ids.append(sid)
    if sent_ids:
        documents.append(Document(doc_id=doc_id, label=label, sentence_ids=sent_ids))


def _ingest_jsonl(path: Path) -> tuple[list[Document], list[Sentence]]:
    documents: list[Document] = []
    sentences: list[Sentence] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}:{lineno}: invalid JSON ({exc})") from exc
            if "doc_id" not in record or "text" not in record:
                raise InputError(f"{path}:{lineno}: record needs doc_id and text fields")
            _add_document(
                documents,
                sentences,
                str(record["doc_id"]),
                record.get("label"),
                segment(str(record["text"])),
            )
    return documents, sentences


def _ingest_dir(path: Path) -> tuple[list[Document], list[Sentence]]:
    labels: dict[str, str] = {}
    label_file = path / "labels.tsv"
    if label_file.exists():
        with label_file.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                parts = line.rstrip("\n").split("\t")
                if len(parts) != 2:
                    raise InputError(f"{label_file}:{lineno}: expected doc_id<TAB>label")
                labels[parts[0]] = parts[1]
    documents: list[Document] = []
    sentences: list[Sentence] = []
    for txt in sorted(path.glob("*.txt")):
        doc_id = txt.stem
        lines = [ln for ln in txt.read_text(encoding="utf-8").splitlines() if ln.strip()]
        _add_document(documents, sentences, doc_id, labels.get(doc_id), lines)
    return documents, sentences


def ingest(path: str | Path, fmt: str = "jsonl") -> Corpus:
    """Read a corpus from disk. Deterministic for fixed input bytes."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"corpus path does not exist: {path}")
    if fmt == "jsonl":
        documents, sentences = _ingest_jsonl(path)
    elif fmt == "dir":
        if not path.is_dir():
            raise InputError(f"format 'dir' needs a directory, got {path}")
        documents, sentences = _ingest_dir(path)
    else:
        raise InputError(f"unknown corpus format {fmt!r} (expected 'jsonl' or 'dir')")
    if not documents:
        raise EmptyCorpusError(f"no documents found in {path}")
    return Corpus(documents, sentences)


def build_vocab(corpus: Corpus, min_count: int = 5) -> Vocab:
    """Build the vocabulary and encode every sentence in place.

    Indices are assigned in descending frequency order, ties broken
    lexicographically. Words with frequency below ``min_count`` are
    excluded; their occurrences are dropped from ``Sentence.tokens`` but
    still counted in ``total_tokens``.
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    counts = corpus.word_counts()
    total = sum(counts.values())
    kept = sorted(
        ((w, c) for w, c in counts.items() if c >= min_count),
        key=lambda wc: (-wc[1], wc[0]),
    )
    if not kept:
        raise EmptyVocabError(f"min_count={min_count} removed every word")
    vocab = Vocab(
        words=[w for w, _ in kept],
        counts=[c for _, c in kept],
        total_tokens=total,
        index={w: i for i, (w, _) in enumerate(kept)},
    )
    for sent in corpus.sentences:
        sent.tokens = [vocab.index[w] for w in sent.words if w in vocab.index]
    corpus.vocab = vocab
    return vocab


def subsample_keep_prob(word_freq: float, t: float) -> float:
    """Keep probability for a word occurring with corpus frequency ``word_freq``.

    min(1, sqrt(t/f) + t/f): non-increasing in f, exactly 1 for f <= ~t.
    """
    if word_freq <= 0 or word_freq > 1:
        raise ValueError(f"word_freq must be in (0, 1], got {word_freq}")
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    return min(1.0, math.sqrt(t / word_freq) + t / word_freq)


def write_labels(path: str | Path, labels: dict[int, str]) -> None:
    """Write a sentence label table, one ``sent_id<TAB>label`` per line."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for sid in sorted(labels):
            fh.write(f"{sid}\t{labels[sid]}\n")


def read_labels(path: str | Path) -> dict[int, str]:
    labels: dict[int, str] = {}
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 2:
                raise InputError(f"{path}:{lineno}: expected sent_id<TAB>label")
            labels[int(parts[0])] = parts[1]
    return labels


def warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)
