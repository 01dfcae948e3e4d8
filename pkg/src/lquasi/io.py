"""LQT text format.

::

    # optional comments
    3
    0 2 1
    2 1 0
    1 0 2

Row ``a`` lists the images of L_a.  The ``rig`` variant has the same layout
with 1-based entries (matrices exported from GAP's RIG library).  Several
algebras in one stream are separated by blank lines.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from .algebra import FiniteLeftQuasigroup, from_table
from .errors import InputError, LQError

FORMATS = ("lqt", "rig")


class LQTParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


def _blocks(lines: list[tuple[int, str]]):
    block: list[tuple[int, str]] = []
    for lineno, raw in lines:
        text = raw.strip()
        if not text:
            if block:
                yield block
                block = []
            continue
        block.append((lineno, text))
    if block:
        yield block


def _parse_block(block, fmt: str, transpose: bool, name: Optional[str]) -> FiniteLeftQuasigroup:
    body = [(ln, t) for ln, t in block if not t.startswith("#")]
    comments = [t.lstrip("#").strip() for _, t in block if t.startswith("#")]
    if name is None:
        for c in comments:
            if c.lower().startswith("name:"):
                name = c.split(":", 1)[1].strip()
    if not body:
        raise LQTParseError("missing order line", block[0][0] if block else None)
    ln0, first = body[0]
    try:
        n = int(first)
    except ValueError:
        raise LQTParseError(f"expected the order, got {first!r}", ln0) from None
    if n < 1:
        raise LQTParseError("order must be positive", ln0)
    rows = body[1:]
    if len(rows) != n:
        raise LQTParseError(f"expected {n} rows, found {len(rows)}", rows[-1][0] if rows else ln0)
    table = []
    offset = 1 if fmt == "rig" else 0
    for ln, text in rows:
        try:
            vals = [int(tok) - offset for tok in text.replace(",", " ").split()]
        except ValueError:
            raise LQTParseError(f"non-integer entry in {text!r}", ln) from None
        if len(vals) != n:
            raise LQTParseError(f"expected {n} entries, found {len(vals)}", ln)
        if any(v < 0 or v >= n for v in vals):
            lo, hi = offset, n - 1 + offset
            raise LQTParseError(f"entries must lie in {lo}..{hi}", ln)
        table.append(vals)
    if transpose:
        table = [list(col) for col in zip(*table)]
    try:
        return from_table(table, name)
    except LQError as exc:
        raise LQTParseError(str(exc), rows[getattr(exc, "row", 0)][0]) from exc


def parse_lqt_stream(text: str, fmt: str = "lqt", transpose: bool = False) -> Iterator[FiniteLeftQuasigroup]:
    if fmt not in FORMATS:
        raise InputError(f"unknown format {fmt!r}")
    lines = list(enumerate(text.splitlines(), start=1))
    for block in _blocks(lines):
        if all(t.startswith("#") for _, t in block):
            continue
        yield _parse_block(block, fmt, transpose, None)


def parse_lqt(text: str, fmt: str = "lqt", transpose: bool = False, name: Optional[str] = None) -> FiniteLeftQuasigroup:
    """Parse exactly one algebra; comment-only blocks are ignored."""
    lines = list(enumerate(text.splitlines(), start=1))
    blocks = [b for b in _blocks(lines) if not all(t.startswith("#") for _, t in b)]
    if fmt not in FORMATS:
        raise InputError(f"unknown format {fmt!r}")
    if len(blocks) != 1:
        # allow blank lines between rows of a single table
        merged = [item for b in blocks for item in b]
        if not merged:
            raise LQTParseError("no table found")
        blocks = [merged]
    return _parse_block(blocks[0], fmt, transpose, name)


def read_lqt(path, fmt: str = "lqt", transpose: bool = False) -> FiniteLeftQuasigroup:
    path = Path(path)
    Q = parse_lqt(path.read_text(), fmt, transpose)
    if Q.name is None:
        Q.name = path.stem
    return Q


def format_lqt(Q: FiniteLeftQuasigroup, fmt: str = "lqt", comment: Optional[str] = None) -> str:
    offset = 1 if fmt == "rig" else 0
    width = len(str(Q.order - 1 + offset))
    lines = []
    if Q.name:
        lines.append(f"# name: {Q.name}")
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(str(Q.order))
    for row in np.asarray(Q.mul) + offset:
        lines.append(" ".join(str(int(v)).rjust(width) for v in row))
    return "\n".join(lines) + "\n"


def write_lqt(Q: FiniteLeftQuasigroup, path, fmt: str = "lqt") -> None:
    Path(path).write_text(format_lqt(Q, fmt))
