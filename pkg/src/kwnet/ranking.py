"""Node rankings and rank-biased overlap between them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

EXTRAPOLATED = "ext"
MINIMUM = "min"


def rank_nodes(values: Mapping[str, float]) -> list[str]:
    """Labels by value descending; equal values in ascending label order."""
    return [label for label, _ in sorted(values.items(), key=lambda kv: (-kv[1], kv[0]))]


@dataclass(frozen=True)
class RboParams:
    p: float = 0.9
    variant: str = EXTRAPOLATED

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"RBO persistence must lie in (0, 1), got {self.p}")
        if self.variant not in (EXTRAPOLATED, MINIMUM):
            raise ValueError(f"unknown RBO variant {self.variant!r}")


def _overlaps(a: Sequence, b: Sequence, depth: int) -> list[int]:
    """X_d for d = 1..depth: size of the intersection of the two depth-d prefixes."""
    seen_a, seen_b = set(), set()
    x, out = 0, []
    for d in range(depth):
        ia, ib = a[d], b[d]
        if ia == ib:
            x += 1
        else:
            if ia in seen_b:
                x += 1
            if ib in seen_a:
                x += 1
            seen_a.add(ia)
            seen_b.add(ib)
        out.append(x)
    return out


def rbo(list_a: Sequence, list_b: Sequence, params: RboParams | float = RboParams()) -> float:
    """Rank-biased overlap of two rankings evaluated to the shorter length.

    The extrapolated form assumes the agreement seen at the evaluation depth
    continues below it; the minimum form assumes no further agreement.
    """
    if not isinstance(params, RboParams):
        params = RboParams(float(params))
    if not list_a or not list_b:
        raise ValueError("RBO is undefined for an empty ranking")
    if list(list_a) == list(list_b):
        return 1.0
    p = params.p
    k = min(len(list_a), len(list_b))
    xs = _overlaps(list_a, list_b, k)
    if params.variant == EXTRAPOLATED:
        acc, pd = 0.0, 1.0
        for d, x in enumerate(xs, start=1):
            pd *= p
            acc += x / d * pd
        score = xs[-1] / k * p**k + (1.0 - p) / p * acc
    else:
        xk = xs[-1]
        acc, pd = 0.0, 1.0
        for d, x in enumerate(xs, start=1):
            pd *= p
            acc += (x - xk) / d * pd
        score = (1.0 - p) / p * (acc - xk * math.log(1.0 - p))
    return min(1.0, max(0.0, score))


def rank_weight(p: float, depth: int) -> float:
    """Share of the total RBO weight carried by the top ``depth`` ranks."""
    if depth <= 0:
        return 0.0
    tail = sum(p**i / i for i in range(1, depth))
    return 1.0 - p ** (depth - 1) + (1.0 - p) / p * depth * (math.log(1.0 / (1.0 - p)) - tail)


def rbo_matrix(lists: Mapping[str, Sequence], params: RboParams | float = RboParams()) -> tuple[list[str], list[list[float]]]:
    labels = list(lists)
    if len(labels) < 2:
        raise ValueError("an RBO matrix needs at least two rankings")
    n = len(labels)
    mat = [[1.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a, b = lists[labels[i]], lists[labels[j]]
            if a and b:
                mat[i][j] = mat[j][i] = rbo(a, b, params)
            elif a or b:
                mat[i][j] = mat[j][i] = 0.0
    return labels, mat
