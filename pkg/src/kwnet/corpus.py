"""Loading, validating and partitioning JSON Lines document corpora."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple


class CorpusError(ValueError):
    """Raised for unreadable or invalid corpus input."""


class SentimentLabel(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    author_id: str | None = None

    def to_json(self) -> str:
        return json.dumps(
            {"id": self.id, "author_id": self.author_id, "text": self.text},
            ensure_ascii=False,
        )


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    source_label: str = ""
    skipped: int = 0
    _ids: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self):
        ids = set()
        for doc in self.documents:
            if not doc.id:
                raise CorpusError("document id must be non-empty")
            if doc.id in ids:
                raise CorpusError(f"duplicate document id {doc.id!r}")
            ids.add(doc.id)
        object.__setattr__(self, "_ids", frozenset(ids))

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def __contains__(self, doc_id) -> bool:
        return doc_id in self._ids

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]

    def subset(self, keep: Iterable[str]) -> "Corpus":
        keep = set(keep)
        return Corpus(
            tuple(d for d in self.documents if d.id in keep),
            source_label=self.source_label,
        )


def _parse_record(line: str, lineno: int) -> Document:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"line {lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(obj, dict):
        raise CorpusError(f"line {lineno}: expected a JSON object")
    for key in ("id", "text"):
        if key not in obj:
            raise CorpusError(f"line {lineno}: missing {key!r} key")
        if not isinstance(obj[key], str):
            raise CorpusError(f"line {lineno}: {key!r} must be a string")
    if not obj["id"]:
        raise CorpusError(f"line {lineno}: empty 'id'")
    author = obj.get("author_id")
    if author is not None and not isinstance(author, str):
        raise CorpusError(f"line {lineno}: 'author_id' must be a string or null")
    return Document(id=obj["id"], text=obj["text"], author_id=author)


def load_corpus(path, strict: bool = False, source_label: str = "") -> Corpus:
    """Read a JSON Lines corpus.

    Blank lines are ignored. Malformed records abort in strict mode and are
    skipped (and counted in ``Corpus.skipped``) otherwise. Duplicate ids are
    always fatal.
    """
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"corpus file not found: {path}")
    docs: list[Document] = []
    seen: dict[str, int] = {}
    skipped = 0
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                doc = _parse_record(line, lineno)
            except CorpusError:
                if strict:
                    raise
                skipped += 1
                continue
            if doc.id in seen:
                raise CorpusError(
                    f"line {lineno}: duplicate id {doc.id!r} (first seen on line {seen[doc.id]})"
                )
            seen[doc.id] = lineno
            docs.append(doc)
    return Corpus(tuple(docs), source_label=source_label, skipped=skipped)


def dump_corpus(corpus: Corpus | Iterable[Document], path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for doc in corpus:
            fh.write(doc.to_json())
            fh.write("\n")


class SentimentPartition(NamedTuple):
    positive: Corpus
    negative: Corpus
    neutral: Corpus
    all: Corpus


def partition_by_sentiment(corpus: Corpus, labels: Mapping[str, SentimentLabel]) -> SentimentPartition:
    buckets = {label: [] for label in SentimentLabel}
    for doc in corpus:
        try:
            label = SentimentLabel(labels[doc.id])
        except KeyError:
            raise CorpusError(f"no sentiment label for document {doc.id!r}") from None
        buckets[label].append(doc)

    def make(label):
        return Corpus(tuple(buckets[label]), source_label=corpus.source_label)

    return SentimentPartition(
        positive=make(SentimentLabel.POSITIVE),
        negative=make(SentimentLabel.NEGATIVE),
        neutral=make(SentimentLabel.NEUTRAL),
        all=corpus,
    )
