from __future__ import annotations

import re
from pathlib import Path
from typing import List

from .errors import ParseError
from .modular import MAX_MODULUS, MIN_MODULUS

_RANGE = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$")


def atomic_write(path: Path, data: str) -> None:
    """Write text atomically to disk."""

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_suffix(path.suffix + ".tmp")
    tmp_path.write_text(data, encoding="utf-8")
    tmp_path.replace(path)


def parse_n_range(text: str) -> List[int]:
    """``"6"`` -> [6], ``"3..16"`` -> [3, ..., 16] (inclusive)."""

    match = _RANGE.match(text)
    if match is None:
        raise ParseError(f"Expected N or A..B, got {text!r}")
    start = int(match.group(1))
    stop = int(match.group(2)) if match.group(2) else start
    if start > stop:
        raise ParseError(f"Empty range {text!r}")
    if start < MIN_MODULUS or stop > MAX_MODULUS:
        raise ParseError(f"N must lie in [{MIN_MODULUS}, {MAX_MODULUS}], got {text!r}")
    return list(range(start, stop + 1))
