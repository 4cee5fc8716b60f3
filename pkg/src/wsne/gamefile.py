"""Plain-text game and profile formats with bit-exact round-trips.

Game format::

    wsne-game v1
    <rows> <cols>
    <cols entries of R per row, whitespace separated>
    ...
    ---
    <cols entries of C per row>
    ...

Entries are exact rationals: "p/q", integers, or decimal literals (decimals
convert with their exact decimal value).  Lines starting with ``#`` and blank
lines are ignored.  ``parse_game(serialize_game(g))`` reproduces ``g``
bit-exactly.

A profile file is two payload lines: the row strategy then the column
strategy, same entry syntax.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import GameFormatError
from .game import BimatrixGame, MixedStrategy, NormalizedGame, Profile, normalize_game

HEADER = "wsne-game v1"


def _payload_lines(text: str):
    """(line_number, stripped_text) for every non-comment, non-blank line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield number, stripped


def _parse_entry(token: str, line: int, column: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise GameFormatError(f"bad rational entry {token!r}", line, column) from None


def _parse_row(text: str, line: int, expected: int | None = None) -> list[Fraction]:
    values = []
    column = 1
    for token in text.split():
        position = text.index(token, column - 1) + 1
        values.append(_parse_entry(token, line, position))
        column = position + len(token)
    if expected is not None and len(values) != expected:
        raise GameFormatError(
            f"expected {expected} entries, found {len(values)}", line)
    return values


def parse_game(text: str, normalize: bool = False) -> BimatrixGame:
    """Parse the text format; entries validated to [0, 1] unless normalizing."""
    if normalize:
        return parse_game_normalized(text).game
    lines = list(_payload_lines(text))
    r_raw, c_raw = _parse_blocks(lines)
    first_line = lines[0][0] if lines else 1
    for name, block in (("R", r_raw), ("C", c_raw)):
        for line_no, row in block:
            for v in row:
                if not 0 <= v <= 1:
                    raise GameFormatError(
                        f"{name} entry {v} outside [0, 1]; pass --normalize "
                        "to rescale", line_no)
    try:
        return BimatrixGame.from_payoffs([row for _, row in r_raw],
                                         [row for _, row in c_raw])
    except ValueError as exc:
        raise GameFormatError(str(exc), first_line) from None


def parse_game_normalized(text: str) -> NormalizedGame:
    """Parse and affinely rescale each matrix onto [0, 1]."""
    lines = list(_payload_lines(text))
    r_raw, c_raw = _parse_blocks(lines)
    return normalize_game([row for _, row in r_raw], [row for _, row in c_raw])


def _parse_blocks(lines):
    if not lines:
        raise GameFormatError("empty game file", 1)
    if lines[0][1] != HEADER:
        raise GameFormatError(f"missing header {HEADER!r}", lines[0][0])
    if len(lines) < 2:
        raise GameFormatError("missing dimension line", lines[0][0])
    dim_line, dim_text = lines[1]
    parts = dim_text.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise GameFormatError("dimension line must be '<rows> <cols>'", dim_line)
    rows, cols = int(parts[0]), int(parts[1])
    if rows < 1 or cols < 1:
        raise GameFormatError("dimensions must be positive", dim_line)

    body = lines[2:]
    expected = 2 * rows + 1
    if len(body) != expected:
        raise GameFormatError(
            f"expected {rows} R rows, '---', and {rows} C rows "
            f"({expected} lines), found {len(body)}",
            body[-1][0] if body else dim_line)
    sep_line, sep_text = body[rows]
    if sep_text != "---":
        raise GameFormatError("missing '---' separator between R and C", sep_line)
    r_raw = [(n, _parse_row(t, n, cols)) for n, t in body[:rows]]
    c_raw = [(n, _parse_row(t, n, cols)) for n, t in body[rows + 1:]]
    return r_raw, c_raw


def _format_entry(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def serialize_game(game: BimatrixGame) -> str:
    lines = [HEADER, f"{game.rows} {game.cols}"]
    for row in game.row_payoffs:
        lines.append(" ".join(_format_entry(v) for v in row))
    lines.append("---")
    for row in game.col_payoffs:
        lines.append(" ".join(_format_entry(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_strategy(text: str, size: int, line: int = 1) -> MixedStrategy:
    values = _parse_row(text.replace(",", " "), line)
    if len(values) != size:
        raise GameFormatError(
            f"strategy needs {size} entries, found {len(values)}", line)
    try:
        return MixedStrategy(tuple(values))
    except ValueError as exc:
        raise GameFormatError(str(exc), line) from None


def parse_profile(text: str, game: BimatrixGame) -> Profile:
    lines = list(_payload_lines(text))
    if len(lines) != 2:
        raise GameFormatError(
            f"profile file needs exactly 2 payload lines, found {len(lines)}",
            lines[0][0] if lines else 1)
    row = parse_strategy(lines[0][1], game.rows, lines[0][0])
    col = parse_strategy(lines[1][1], game.cols, lines[1][0])
    return Profile(row, col)
