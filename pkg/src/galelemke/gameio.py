"""Text formats for games and equilibrium profiles.

".bgame": line 1 "m n"; m rows of n rationals (A); blank line; m rows of n
rationals (B).  ".uvg": line 1 "m n"; line 2 the n labels; m rows of n
rationals (B).  Rationals are written "p" or "p/q".
"""

from __future__ import annotations

from fractions import Fraction

from .errors import GameFormatError
from .game import BimatrixGame, MixedProfile, UnitVectorGame, matrix_from


def _parse_rational(token: str, line: int, column: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise GameFormatError(f"bad rational {token!r}", line, column) from None


def _parse_int(token: str, line: int, column: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GameFormatError(f"bad integer {token!r}", line, column) from None


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.index = 0

    @property
    def line_no(self) -> int:
        return self.index  # 1-based number of the line just consumed

    def next_line(self, expect: str):
        if self.index >= len(self.lines):
            raise GameFormatError(f"unexpected end of file, expected {expect}", len(self.lines) + 1)
        line = self.lines[self.index]
        self.index += 1
        return line

    def tokens(self, expect: str, count: int | None = None) -> list[tuple[str, int]]:
        line = self.next_line(expect)
        toks = []
        col = 1
        for piece in line.split():
            col = line.index(piece, col - 1) + 1
            toks.append((piece, col))
            col += len(piece)
        if not toks:
            raise GameFormatError(f"expected {expect}, got a blank line", self.line_no)
        if count is not None and len(toks) != count:
            raise GameFormatError(
                f"expected {count} values for {expect}, got {len(toks)}", self.line_no
            )
        return toks

    def blank_line(self):
        line = self.next_line("a blank line")
        if line.strip():
            raise GameFormatError("expected a blank line between A and B", self.line_no)


def _read_header(reader: _Reader) -> tuple[int, int]:
    toks = reader.tokens('the header "m n"', 2)
    m = _parse_int(toks[0][0], reader.line_no, toks[0][1])
    n = _parse_int(toks[1][0], reader.line_no, toks[1][1])
    if m < 1 or n < 1:
        raise GameFormatError("m and n must be positive", reader.line_no)
    return m, n


def _read_matrix(reader: _Reader, m: int, n: int, name: str):
    rows = []
    for _ in range(m):
        toks = reader.tokens(f"a row of {name}", n)
        rows.append([_parse_rational(t, reader.line_no, c) for t, c in toks])
    return rows


def read_bgame(text: str) -> BimatrixGame:
    reader = _Reader(text)
    m, n = _read_header(reader)
    a = _read_matrix(reader, m, n, "A")
    reader.blank_line()
    b = _read_matrix(reader, m, n, "B")
    return BimatrixGame.from_rows(a, b)


def write_bgame(game: BimatrixGame) -> str:
    lines = [f"{game.m} {game.n}"]
    lines += [" ".join(str(v) for v in row) for row in game.a]
    lines.append("")
    lines += [" ".join(str(v) for v in row) for row in game.b]
    return "\n".join(lines) + "\n"


def read_uvg(text: str) -> UnitVectorGame:
    reader = _Reader(text)
    m, n = _read_header(reader)
    toks = reader.tokens("the label string", n)
    ell = []
    for t, c in toks:
        lab = _parse_int(t, reader.line_no, c)
        if not 1 <= lab <= m:
            raise GameFormatError(f"label {lab} out of range 1..{m}", reader.line_no, c)
        ell.append(lab)
    b = _read_matrix(reader, m, n, "B")
    return UnitVectorGame(m, tuple(ell), matrix_from(b))


def write_uvg(u: UnitVectorGame) -> str:
    lines = [f"{u.m} {u.n}", " ".join(str(v) for v in u.ell)]
    lines += [" ".join(str(v) for v in row) for row in u.b]
    return "\n".join(lines) + "\n"


def load_game(path: str):
    """Read a game file; ".uvg" yields a UnitVectorGame, anything else a
    BimatrixGame."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    if str(path).endswith(".uvg"):
        return read_uvg(text)
    return read_bgame(text)


def save_game(path: str, game) -> None:
    text = write_uvg(game) if isinstance(game, UnitVectorGame) else write_bgame(game)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def format_profile(profile: MixedProfile) -> str:
    """Equilibrium output form: "x... ; y..." with exact rationals."""
    return (
        " ".join(str(v) for v in profile.x)
        + " ; "
        + " ".join(str(v) for v in profile.y)
    )


def parse_profile(text: str, m: int, n: int) -> MixedProfile:
    """Parse the "x... ; y..." form (tolerates "x=", "y=" prefixes)."""
    cleaned = text.replace("x=", " ").replace("y=", " ").strip()
    parts = cleaned.split(";")
    if len(parts) != 2:
        raise GameFormatError('expected "x... ; y..." with a single ";"', 1)
    xs = parts[0].split()
    ys = parts[1].split()
    if len(xs) != m or len(ys) != n:
        raise GameFormatError(
            f"expected {m} + {n} rationals, got {len(xs)} + {len(ys)}", 1
        )
    x = [_parse_rational(t, 1, 1) for t in xs]
    y = [_parse_rational(t, 1, 1) for t in ys]
    try:
        return MixedProfile.of(x, y)
    except ValueError as exc:
        raise GameFormatError(str(exc), 1) from None


def format_label_string(ell) -> str:
    """Digit run when all labels are single-digit, else comma-separated."""
    if all(1 <= v <= 9 for v in ell):
        return "".join(str(v) for v in ell)
    return ",".join(str(v) for v in ell)
