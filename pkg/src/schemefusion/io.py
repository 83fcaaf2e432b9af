"""Text formats for relation tables (.scheme) and eigenmatrices (.eigen)."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .exact import RatMatrix
from .scheme import RelationTable


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")]


def parse_scheme(text: str) -> RelationTable:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty scheme file")
    try:
        v, d = map(int, lines[0].split())
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}, expected 'v d'") from exc
    rows = lines[1:]
    if len(rows) != v:
        raise ParseError(f"expected {v} table rows, found {len(rows)}")
    cells = []
    for n, ln in enumerate(rows):
        try:
            row = [int(x) for x in ln.split()]
        except ValueError as exc:
            raise ParseError(f"row {n}: non-integer entry") from exc
        if len(row) != v:
            raise ParseError(f"row {n}: expected {v} entries, found {len(row)}")
        if any(x < 0 or x > d for x in row):
            raise ParseError(f"row {n}: entry outside 0..{d}")
        cells.append(row)
    return RelationTable(cells, d=d)


def format_scheme(table: RelationTable, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {ln}" for ln in comment.splitlines())
    out.append(f"{table.v} {table.d}")
    out.extend(" ".join(str(int(x)) for x in row) for row in table.cells)
    return "\n".join(out) + "\n"


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_eigen(text: str) -> RatMatrix:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty eigenmatrix file")
    try:
        d = int(lines[0])
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}, expected 'd'") from exc
    rows = lines[1:]
    if len(rows) != d + 1:
        raise ParseError(f"expected {d + 1} rows, found {len(rows)}")
    grid = []
    for n, ln in enumerate(rows):
        toks = ln.split()
        if len(toks) != d + 1:
            raise ParseError(f"row {n}: expected {d + 1} entries, found {len(toks)}")
        try:
            grid.append([Fraction(t) for t in toks])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"row {n}: bad rational entry") from exc
    return RatMatrix(grid)


def format_eigen(M: RatMatrix, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {ln}" for ln in comment.splitlines())
    out.append(str(M.nrows - 1))
    out.extend(" ".join(format_rational(x) for x in row) for row in M.rows())
    return "\n".join(out) + "\n"


def load(path) -> RelationTable | RatMatrix:
    """Read a .scheme file (RelationTable) or a .eigen file (RatMatrix P)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    if path.suffix == ".eigen":
        return parse_eigen(text)
    return parse_scheme(text)
