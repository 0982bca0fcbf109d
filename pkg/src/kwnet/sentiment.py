"""Lexicon-based compound sentiment scoring with the +/-0.05 classification rule.

This is a deliberately small scorer: valences of lexicon tokens are summed
and squashed into (-1, 1) with ``s / sqrt(s**2 + alpha)``. Negation,
intensifiers and emoji handling are left to the lexicon file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .corpus import Document, SentimentLabel

ALPHA = 15.0
POSITIVE_THRESHOLD = 0.05
NEGATIVE_THRESHOLD = -0.05

_STRIP = "\"'.,;:!?()[]{}<>*_~`—-"


@dataclass(frozen=True)
class SentimentScores:
    positive: float
    negative: float
    neutral: float
    compound: float


def default_lexicon_path() -> Path:
    return Path(str(resources.files("kwnet") / "data" / "lexicon_en.tsv"))


def load_lexicon(path=None) -> dict[str, float]:
    """Read a ``token<TAB>valence`` file. Extra columns are ignored."""
    path = Path(path) if path is not None else default_lexicon_path()
    lexicon = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) < 2:
                raise ValueError(f"{path}:{lineno}: expected token<TAB>valence")
            value = float(parts[1])
            if not math.isfinite(value):
                raise ValueError(f"{path}:{lineno}: valence must be finite")
            lexicon[parts[0].casefold()] = value
    return lexicon


def sentiment_tokens(text: str) -> list[str]:
    toks = (t.strip(_STRIP) for t in text.casefold().split())
    return [t for t in toks if t]


def normalize(total: float, alpha: float = ALPHA) -> float:
    return total / math.sqrt(total * total + alpha)


def score_text(text: str, lexicon: Mapping[str, float]) -> SentimentScores:
    tokens = sentiment_tokens(text)
    if not tokens:
        return SentimentScores(0.0, 0.0, 1.0, 0.0)
    total = 0.0
    n_pos = n_neg = 0
    for tok in tokens:
        value = lexicon.get(tok)
        if value is None:
            continue
        total += value
        if value > 0:
            n_pos += 1
        elif value < 0:
            n_neg += 1
    n = len(tokens)
    pos, neg = n_pos / n, n_neg / n
    return SentimentScores(
        positive=pos,
        negative=neg,
        neutral=(n - n_pos - n_neg) / n,
        compound=normalize(total),
    )


def classify(scores: SentimentScores | float) -> SentimentLabel:
    compound = scores.compound if isinstance(scores, SentimentScores) else float(scores)
    if compound > POSITIVE_THRESHOLD:
        return SentimentLabel.POSITIVE
    if compound < NEGATIVE_THRESHOLD:
        return SentimentLabel.NEGATIVE
    return SentimentLabel.NEUTRAL


def label_documents(
    docs: Iterable[Document], lexicon: Mapping[str, float]
) -> dict[str, tuple[float, SentimentLabel]]:
    """Map each document id to ``(compound, label)``, preserving input order."""
    out = {}
    for doc in docs:
        scores = score_text(doc.text, lexicon)
        out[doc.id] = (scores.compound, classify(scores))
    return out
