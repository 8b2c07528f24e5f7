"""Latin squares (quasigroups): validation, lookup/division, construction, text I/O.

A Latin square of order n is an n x n table over the symbols 1..n in which
every symbol occurs exactly once per row and once per column.  Symbols are
1-based everywhere in the public API; storage is 0-based.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 65536


class LatinSquareError(ValueError):
    """Base class for Latin square validation and parse failures."""


class NotSquare(LatinSquareError):
    pass


class SymbolOutOfRange(LatinSquareError):
    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        super().__init__(message)
        self.row = row
        self.col = col


class DuplicateInRow(LatinSquareError):
    def __init__(self, row: int):
        super().__init__(f"row {row} repeats a symbol")
        self.row = row


class DuplicateInColumn(LatinSquareError):
    def __init__(self, col: int):
        super().__init__(f"column {col} repeats a symbol")
        self.col = col


class OrderTooSmall(LatinSquareError):
    pass


class ParseError(LatinSquareError):
    def __init__(self, message: str, line: int, col: int | None = None):
        where = f"line {line}" if col is None else f"line {line}, token {col}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.col = col


def _dtype_for(order: int):
    return np.uint8 if order <= 256 else np.uint16


class LatinSquare:
    """Immutable order-n Latin square.

    `table0` is the read-only numpy grid holding symbol-1 values, so an
    order-256 square occupies exactly 256*256 one-byte cells.  Use
    :func:`validate` or :func:`random_latin_square` to construct one.
    """

    __slots__ = ("order", "table0")

    def __init__(self, table0: np.ndarray):
        n = table0.shape[0]
        if table0.shape != (n, n):
            raise NotSquare(f"grid is {table0.shape[0]}x{table0.shape[1]}, not square")
        if n > MAX_ORDER:
            raise LatinSquareError(f"order {n} exceeds supported maximum {MAX_ORDER}")
        table0 = np.ascontiguousarray(table0, dtype=_dtype_for(n))
        table0.flags.writeable = False
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "table0", table0)

    def __setattr__(self, name, value):
        raise AttributeError("LatinSquare is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, LatinSquare)
            and self.order == other.order
            and bool(np.array_equal(self.table0, other.table0))
        )

    def __hash__(self):
        return hash((self.order, self.table0.tobytes()))

    def __repr__(self):
        return f"LatinSquare(order={self.order})"

    def rows(self) -> list[list[int]]:
        """The table as 1-based row lists."""
        return (self.table0.astype(np.int64) + 1).tolist()

    def _check_symbol(self, value: int, name: str) -> int:
        if not 1 <= value <= self.order:
            raise SymbolOutOfRange(f"{name}={value} outside 1..{self.order}")
        return value

    def lookup(self, x: int, y: int) -> int:
        """Table lookup: the symbol in row x, column y (both 1-based)."""
        self._check_symbol(x, "x")
        self._check_symbol(y, "y")
        return int(self.table0[x - 1, y - 1]) + 1

    def left_divide(self, x: int, z: int) -> int:
        """The unique y with lookup(x, y) == z."""
        self._check_symbol(x, "x")
        self._check_symbol(z, "z")
        return int(np.nonzero(self.table0[x - 1] == z - 1)[0][0]) + 1

    def right_divide(self, z: int, y: int) -> int:
        """The unique x with lookup(x, y) == z."""
        self._check_symbol(z, "z")
        self._check_symbol(y, "y")
        return int(np.nonzero(self.table0[:, y - 1] == z - 1)[0][0]) + 1


def validate(grid: Iterable[Sequence[int]]) -> LatinSquare:
    """Check the Latin property and wrap the grid.

    Reports the first violation found scanning rows top-to-bottom (symbol
    range cell by cell, then row duplicates), then columns left-to-right.
    """
    rows = [list(r) for r in grid]
    n = len(rows)
    if n == 0:
        raise NotSquare("empty grid")
    for i, row in enumerate(rows, start=1):
        if len(row) != n:
            raise NotSquare(f"row {i} has {len(row)} entries, expected {n}")
    for i, row in enumerate(rows, start=1):
        for j, v in enumerate(row, start=1):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
                raise SymbolOutOfRange(f"entry at ({i},{j}) is not an integer", i, j)
            if not 1 <= v <= n:
                raise SymbolOutOfRange(f"entry {v} at ({i},{j}) outside 1..{n}", i, j)
        if len(set(row)) != n:
            raise DuplicateInRow(i)
    for j in range(1, n + 1):
        if len({row[j - 1] for row in rows}) != n:
            raise DuplicateInColumn(j)
    return LatinSquare(np.array(rows, dtype=np.int64) - 1)


_MASK64 = (1 << 64) - 1


class _Mix64:
    """Fixed 64-bit mixing generator (splitmix64) used to expand square seeds.

    The exact constants are part of the on-disk reproducibility contract:
    the same (order, seed) always yields the same square.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_word(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        # rejection sampling keeps the draw exactly uniform
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            v = self.next_word()
            if v < limit:
                return v % bound

    def permutation(self, n: int) -> list[int]:
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm


def random_latin_square(n: int, seed: int) -> LatinSquare:
    """Deterministic pseudorandom Latin square of order n.

    Starts from the cyclic table ((i + j) mod n) + 1 and applies seed-derived
    row, column, and symbol permutations.  Always valid, O(n^2), but samples
    only the isotopy class of the cyclic group, not all Latin squares.
    """
    if n < 2:
        raise OrderTooSmall(f"order {n} < 2")
    if n > MAX_ORDER:
        raise LatinSquareError(f"order {n} exceeds supported maximum {MAX_ORDER}")
    mix = _Mix64(seed)
    row_perm = np.array(mix.permutation(n), dtype=np.int64)
    col_perm = np.array(mix.permutation(n), dtype=np.int64)
    sym_perm = np.array(mix.permutation(n), dtype=np.int64)
    cyclic = (row_perm[:, None] + col_perm[None, :]) % n
    return LatinSquare(sym_perm[cyclic])


def to_text(square: LatinSquare) -> str:
    """Serialize: order on the first line, then one space-separated row per line."""
    lines = [str(square.order)]
    lines.extend(" ".join(str(v) for v in row) for row in square.rows())
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> LatinSquare:
    """Parse the text format produced by :func:`to_text`.

    Blank lines and lines starting with '#' are ignored.  The grid is
    validated, so Latin-property errors surface as their own exception types.
    """
    order: int | None = None
    rows: list[list[int]] = []
    lineno = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if order is None:
            if len(tokens) != 1:
                raise ParseError("expected a single order value", lineno)
            try:
                order = int(tokens[0])
            except ValueError:
                raise ParseError(f"order {tokens[0]!r} is not an integer", lineno, 1) from None
            if order < 1:
                raise ParseError(f"order must be positive, got {order}", lineno, 1)
            continue
        if len(rows) == order:
            raise ParseError("unexpected content after the last row", lineno)
        if len(tokens) != order:
            raise ParseError(f"expected {order} symbols, got {len(tokens)}", lineno)
        row = []
        for colno, tok in enumerate(tokens, start=1):
            try:
                row.append(int(tok))
            except ValueError:
                raise ParseError(f"symbol {tok!r} is not an integer", lineno, colno) from None
        rows.append(row)
    if order is None:
        raise ParseError("empty input", 1)
    if len(rows) != order:
        raise ParseError(f"expected {order} rows, got {len(rows)}", lineno)
    return validate(rows)
