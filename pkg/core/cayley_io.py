"""
Cayley File Module
Reading and writing the plain-text Cayley table format

Format:
    # comment lines and trailing comments are ignored
    3                  <- order n
    0 0 0              <- n rows of n 0-based indices (row = left factor)
    0 1 1
    0 1 2
    labels: 0 a b      <- optional trailer naming the elements
"""

import logging
import os
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .errors import CayleyFormatError
from .semigroup import Semigroup


logger = logging.getLogger(__name__)

LABELS_PREFIX = "labels:"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """Non-blank lines with comments stripped, paired with 1-based line numbers"""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def _parse_int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise CayleyFormatError(f"non-numeric token {token!r}", line=line)


def parse_cayley(text: str) -> Semigroup:
    """
    Parse Cayley table text into a validated Semigroup

    Args:
        text: File contents

    Returns:
        Semigroup

    Raises:
        CayleyFormatError: on a non-numeric token, a wrong row length, a
            missing row or an index out of range (with the line number)
        AssociativityError: if the table is not associative
    """
    lines = _content_lines(text)
    if not lines:
        raise CayleyFormatError("empty input")

    number, header = lines[0]
    tokens = header.split()
    if len(tokens) != 1:
        raise CayleyFormatError("first line must hold only the order", line=number)
    n = _parse_int(tokens[0], number)
    if n < 1:
        raise CayleyFormatError(f"order must be positive, got {n}", line=number)

    labels: Optional[List[str]] = None
    rows = []
    for number, line in lines[1:]:
        if line.lower().startswith(LABELS_PREFIX):
            if labels is not None:
                raise CayleyFormatError("labels given twice", line=number)
            labels = line[len(LABELS_PREFIX):].split()
            if len(labels) != n:
                raise CayleyFormatError(f"expected {n} labels, got {len(labels)}", line=number)
            if len(set(labels)) != n:
                raise CayleyFormatError("labels must be distinct", line=number)
            continue
        if labels is not None:
            raise CayleyFormatError("table rows after the labels line", line=number)
        if len(rows) == n:
            raise CayleyFormatError(f"more than {n} rows", line=number)
        row = [_parse_int(token, number) for token in line.split()]
        if len(row) != n:
            raise CayleyFormatError(f"row has {len(row)} entries, expected {n}", line=number)
        for value in row:
            if not 0 <= value < n:
                raise CayleyFormatError(f"index {value} out of range [0, {n})", line=number)
        rows.append(row)

    if len(rows) != n:
        raise CayleyFormatError(f"expected {n} rows, got {len(rows)}")
    return Semigroup(rows, labels)


def render_cayley(S: Semigroup, comment: Optional[str] = None) -> str:
    """Text form of S that parse_cayley reads back to an equal semigroup"""
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    lines.append(str(S.order))
    width = len(str(S.order - 1))
    lines.extend(" ".join(str(v).rjust(width) for v in row) for row in S.rows())
    if S.labels != tuple(str(i) for i in range(S.order)):
        lines.append(f"{LABELS_PREFIX} {' '.join(S.labels)}")
    return "\n".join(lines) + "\n"


def load_semigroup(path: Union[str, os.PathLike]) -> Semigroup:
    """
    Read a Cayley file

    Raises:
        OSError: if the file cannot be read
        CayleyFormatError: if its contents are malformed
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    S = parse_cayley(text)
    logger.info(f"Loaded semigroup of order {S.order} from {path}")
    return S


def save_semigroup(S: Semigroup, path: Union[str, os.PathLike], comment: Optional[str] = None) -> Path:
    path = Path(path)
    path.write_text(render_cayley(S, comment), encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path
