"""Per-document RAKE keyword extraction under a keyword length setting.

Text is case-folded, cut at phrase delimiters, and split on whitespace.
Every maximal run of non-stopword tokens is a candidate phrase; candidates
whose token count falls outside the length setting are dropped whole.
Words are scored deg(w)/freq(w) over the retained candidates of the same
document and a phrase scores the sum of its word scores.
"""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Iterable

from .corpus import Document, SentimentLabel

PHRASE_DELIMITERS = '.,;:!?()[]"—\n\r'
_DELIM_RE = re.compile("[" + re.escape(PHRASE_DELIMITERS) + "]")

PAPER_LENGTH_SETTINGS = ("1-1", "1-2", "1-3", "2-2", "2-3", "3-3")


@dataclass(frozen=True, order=True)
class LengthSetting:
    min_len: int
    max_len: int

    def __post_init__(self):
        if not (1 <= self.min_len <= self.max_len):
            raise ValueError(f"invalid length setting {self.min_len}-{self.max_len}")

    @classmethod
    def parse(cls, value) -> "LengthSetting":
        if isinstance(value, LengthSetting):
            return value
        if isinstance(value, (tuple, list)):
            return cls(int(value[0]), int(value[1]))
        lo, sep, hi = str(value).partition("-")
        if not sep:
            raise ValueError(f"length setting must look like 'a-b', got {value!r}")
        return cls(int(lo), int(hi))

    def __str__(self):
        return f"{self.min_len}-{self.max_len}"


@dataclass(frozen=True)
class CandidatePhrase:
    tokens: tuple[str, ...]

    @property
    def keyword_text(self) -> str:
        return " ".join(self.tokens)

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class ExtractedKeyword:
    keyword_text: str
    length: int
    relevance: float
    occurrences: int = 1

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self.keyword_text.split(" "))


@dataclass(frozen=True)
class ExtractedDoc:
    id: str
    author_id: str | None
    keywords: tuple[ExtractedKeyword, ...]
    sentiment: SentimentLabel | None = None

    def with_sentiment(self, label) -> "ExtractedDoc":
        return replace(self, sentiment=None if label is None else SentimentLabel(label))

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "author_id": self.author_id,
            "sentiment": None if self.sentiment is None else self.sentiment.value,
            "keywords": [
                [k.keyword_text, k.relevance, k.occurrences] for k in self.keywords
            ],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ExtractedDoc":
        keywords = tuple(
            ExtractedKeyword(text, len(text.split(" ")), float(rel), int(occ))
            for text, rel, occ in obj["keywords"]
        )
        sentiment = obj.get("sentiment")
        return cls(
            id=obj["id"],
            author_id=obj.get("author_id"),
            keywords=keywords,
            sentiment=None if sentiment is None else SentimentLabel(sentiment),
        )


def read_word_list(path) -> frozenset[str]:
    """One token per line, '#' starts a comment. Tokens are case-folded."""
    words = set()
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                words.add(line.casefold())
    return frozenset(words)


def default_stopwords_path() -> Path:
    return Path(str(resources.files("kwnet") / "data" / "stopwords_en.txt"))


def load_stopwords(path=None) -> frozenset[str]:
    return read_word_list(path if path is not None else default_stopwords_path())


def tokenize_fragments(text: str) -> list[list[str]]:
    """Case-fold ``text`` and return its delimiter-separated fragments as token lists."""
    return [frag.split() for frag in _DELIM_RE.split(text.casefold())]


def segment_candidates(text: str, stopwords, setting: LengthSetting) -> list[CandidatePhrase]:
    lo, hi = setting.min_len, setting.max_len
    out = []
    for tokens in tokenize_fragments(text):
        run: list[str] = []
        for tok in tokens:
            if tok in stopwords:
                if lo <= len(run) <= hi:
                    out.append(CandidatePhrase(tuple(run)))
                run = []
            else:
                run.append(tok)
        if run and lo <= len(run) <= hi:
            out.append(CandidatePhrase(tuple(run)))
    return out


def score_candidates(candidates: Iterable[CandidatePhrase]) -> list[ExtractedKeyword]:
    candidates = list(candidates)
    freq: dict[str, int] = defaultdict(int)
    deg: dict[str, int] = defaultdict(int)
    for cand in candidates:
        n = len(cand.tokens)
        for w in cand.tokens:
            freq[w] += 1
            deg[w] += n

    merged: dict[str, list] = {}
    for cand in candidates:
        text = cand.keyword_text
        if text in merged:
            merged[text][1] += 1
            continue
        score = 0.0
        for w in cand.tokens:
            score += deg[w] / freq[w]
        merged[text] = [score, 1, len(cand.tokens)]
    return [ExtractedKeyword(text, n, score, occ) for text, (score, occ, n) in merged.items()]


def extract_document(doc: Document, stopwords, setting: LengthSetting) -> ExtractedDoc:
    keywords = score_candidates(segment_candidates(doc.text, stopwords, setting))
    return ExtractedDoc(id=doc.id, author_id=doc.author_id, keywords=tuple(keywords))


def extract_corpus(docs: Iterable[Document], stopwords, setting: LengthSetting) -> list[ExtractedDoc]:
    return [extract_document(d, stopwords, setting) for d in docs]


def write_extracted(docs: Iterable[ExtractedDoc], path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for doc in docs:
            fh.write(json.dumps(doc.to_dict(), ensure_ascii=False))
            fh.write("\n")


def read_extracted(path) -> list[ExtractedDoc]:
    with Path(path).open(encoding="utf-8") as fh:
        return [ExtractedDoc.from_dict(json.loads(line)) for line in fh if line.strip()]
