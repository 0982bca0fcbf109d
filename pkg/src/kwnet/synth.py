"""Seeded generator for tweet-like synthetic corpora.

Documents mix topical single words and fixed multi-word terms joined by
stopwords, with occasional sentiment words and platform artifacts, so every
stage of the pipeline (length settings, subsumption, artifact stripping,
sentiment subsets, communities) has something to act on.
"""

from __future__ import annotations

import random

from .corpus import Document

_ONSETS = ["b", "k", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "kr", "st", "tr", "pl", "sh"]
_VOWELS = ["a", "e", "i", "o", "u", "ai", "eo", "ou"]
_CODAS = ["", "", "n", "r", "s", "l", "x", "m"]

CONNECTORS = ["of", "and", "the", "in", "for", "with", "to", "is", "on", "about", "of the", "and the", "in the"]
POSITIVE_WORDS = ["good", "great", "hope", "love", "support", "progress", "success", "amazing", "proud", "thanks"]
NEGATIVE_WORDS = ["bad", "crisis", "fear", "disaster", "fail", "worst", "angry", "threat", "damage", "fake"]
ARTIFACTS = ["rt", "amp", "https"]


def _pseudo_words(rng: random.Random, count: int, taken: set) -> list[str]:
    words = []
    while len(words) < count:
        syllables = rng.choice((2, 2, 3))
        w = "".join(rng.choice(_ONSETS) + rng.choice(_VOWELS) for _ in range(syllables)) + rng.choice(_CODAS)
        if w not in taken:
            taken.add(w)
            words.append(w)
    return words


def generate_corpus(n_docs: int = 500, n_authors: int = 30, seed: int = 0, n_topics: int = 6) -> list[Document]:
    rng = random.Random(seed)
    taken = set(CONNECTORS) | set(POSITIVE_WORDS) | set(NEGATIVE_WORDS) | set(ARTIFACTS)
    general = _pseudo_words(rng, 80, taken)
    topics = []
    for _ in range(n_topics):
        words = _pseudo_words(rng, 50, taken)
        bigrams = [f"{a} {b}" for a, b in zip(rng.sample(words, 12), rng.sample(words, 12)) if a != b]
        trigrams = [" ".join(rng.sample(words, 3)) for _ in range(5)]
        topics.append((words, bigrams, trigrams))

    zipf = [1.0 / (r + 1) for r in range(50)]
    authors = [f"u{j:03d}" for j in range(n_authors)]
    author_weight = [1.0 / (j + 1) ** 0.7 for j in range(n_authors)]
    author_topic = {a: rng.randrange(n_topics) for a in authors}
    author_mood = {a: rng.choice(("positive", "negative", "neutral")) for a in authors}

    docs = []
    for i in range(n_docs):
        author = rng.choices(authors, weights=author_weight)[0]
        topic = author_topic[author] if rng.random() < 0.75 else rng.randrange(n_topics)
        words, bigrams, trigrams = topics[topic]
        mood = author_mood[author] if rng.random() < 0.6 else rng.choice(("positive", "negative", "neutral"))

        phrases = []
        for _ in range(rng.randint(3, 7)):
            r = rng.random()
            if r < 0.08:
                # long tail: words (and phrases) that are mostly seen only once
                rare = _pseudo_words(rng, rng.choice((1, 1, 2, 3)), taken)
                phrases.append(" ".join(rare))
            elif r < 0.45:
                phrases.append(rng.choices(words, weights=zipf)[0])
            elif r < 0.70:
                phrases.append(rng.choice(bigrams))
            elif r < 0.82:
                phrases.append(rng.choice(trigrams))
            elif r < 0.90:
                phrases.append(rng.choice(general))
            else:
                phrases.append(f"{rng.randint(1, 9)} ° c")
        if mood == "positive":
            phrases.insert(rng.randrange(len(phrases) + 1), rng.choice(POSITIVE_WORDS))
        elif mood == "negative":
            phrases.insert(rng.randrange(len(phrases) + 1), rng.choice(NEGATIVE_WORDS))

        parts = [phrases[0]]
        for ph in phrases[1:]:
            sep = rng.random()
            if sep < 0.15:
                parts.append(", " + ph)
            elif sep < 0.22:
                parts.append(". " + ph.capitalize())
            else:
                parts.append(f" {rng.choice(CONNECTORS)} {ph}")
        text = "".join(parts)
        if rng.random() < 0.25:
            text = "RT: " + text
        if rng.random() < 0.15:
            text = text + ", amp"
        if rng.random() < 0.3:
            text = text + ". https"
        docs.append(Document(id=f"d{i:05d}", text=text, author_id=author))
    return docs
