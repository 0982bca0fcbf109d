"""Small helpers for byte-stable text output."""

from __future__ import annotations

import csv
import hashlib
import json
import math
from pathlib import Path

FLOAT_DIGITS = 12


def fmt_num(x) -> str:
    """Format a number for CSV output.

    Integers (and integral floats) print without a decimal point; other
    floats keep 12 significant digits, enough to survive summation-order
    noise between two correct implementations while staying exact for the
    values produced here.
    """
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    if math.isfinite(x) and x == int(x) and abs(x) < 1e15:
        return str(int(x))
    out = format(x, f".{FLOAT_DIGITS}g")
    return "0" if out == "-0" else out


def round_float(x: float) -> float:
    return float(format(x, f".{FLOAT_DIGITS}g"))


def write_csv(path, header, rows) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt_num(v) if isinstance(v, (int, float)) or v is None else v for v in row])


def read_csv(path) -> list[dict]:
    with Path(path).open(encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def write_json(path, obj) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()
