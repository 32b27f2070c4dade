"""Rectangular column-strict tableaux with classical and affine crystal operators.

A tableau with entries in {1..n} carries raising and lowering operators
e_i, f_i for 1 <= i <= n-1 through the signature rule on its cells, and the
index-0 operators through conjugation by promotion, the cyclic symmetry of
the rank-n alphabet.  Undefined operator results are returned as None.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .signature import fold_stats, lowering_index, raising_index


class RectShape(NamedTuple):
    rows: int
    cols: int

    def __str__(self):
        return "%dx%d" % (self.rows, self.cols)

    @classmethod
    def parse(cls, text: str) -> "RectShape":
        parts = text.lower().split("x")
        if len(parts) != 2:
            raise ValueError("shape must look like KxL, got %r" % text)
        k, l = int(parts[0]), int(parts[1])
        if k < 1 or l < 1:
            raise ValueError("shape dimensions must be positive, got %r" % text)
        return cls(k, l)


@dataclass(frozen=True)
class Tableau:
    """Column-strict filling of a k x l rectangle with entries in {1..n}.

    Rows weakly increase left to right, columns strictly increase top to
    bottom.  Instances are immutable and hashable.
    """

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if self.n < 2:
            raise ValueError("rank must be at least 2")
        if not self.rows or not self.rows[0]:
            raise ValueError("tableau must be nonempty")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("tableau is not rectangular")
        if len(self.rows) >= self.n:
            raise ValueError("height %d must be below the rank %d" % (len(self.rows), self.n))
        for r in self.rows:
            for x in r:
                if not 1 <= x <= self.n:
                    raise ValueError("entry %d outside 1..%d" % (x, self.n))
            if any(r[c] > r[c + 1] for c in range(width - 1)):
                raise ValueError("row not weakly increasing: %s" % (r,))
        for up, down in zip(self.rows, self.rows[1:]):
            if any(a >= b for a, b in zip(up, down)):
                raise ValueError("column not strictly increasing")

    @property
    def shape(self) -> RectShape:
        return RectShape(len(self.rows), len(self.rows[0]))

    def content(self) -> tuple[int, ...]:
        """Coordinate m counts the entries equal to m."""
        counts = [0] * self.n
        for r in self.rows:
            for x in r:
                counts[x - 1] += 1
        return tuple(counts)

    def cells(self) -> tuple[int, ...]:
        """Cell word, bottom row to top row, each row left to right.

        This is the factor order (leftmost tensor factor first) under which
        the signature rule reproduces the standard crystal structure of the
        rectangle.
        """
        return tuple(x for row in reversed(self.rows) for x in row)

    def __str__(self):
        return format_tableau(self)


def format_tableau(t: Tableau) -> str:
    return "/".join(",".join(str(x) for x in row) for row in t.rows)


def parse_tableau(text: str, n: int) -> Tableau:
    rows = tuple(tuple(int(x) for x in part.split(",")) for part in text.split("/"))
    return Tableau(n, rows)


def highest_weight_tableau(shape: RectShape, n: int) -> Tableau:
    """Row r filled with the letter r: the classical highest weight element."""
    return Tableau(n, tuple((r + 1,) * shape.cols for r in range(shape.rows)))


@functools.lru_cache(maxsize=None)
def enumerate_tableaux(shape: RectShape, n: int) -> tuple[Tableau, ...]:
    """All column-strict fillings of the rectangle, in row-word lexicographic order."""
    shape = RectShape(*shape)
    if shape.rows >= n:
        raise ValueError("height %d must be below the rank %d" % (shape.rows, n))
    k, l = shape
    grid = [[0] * l for _ in range(k)]
    out = []

    def fill(pos: int):
        if pos == k * l:
            out.append(Tableau(n, tuple(tuple(r) for r in grid)))
            return
        r, c = divmod(pos, l)
        lo = 1
        if c > 0:
            lo = max(lo, grid[r][c - 1])
        if r > 0:
            lo = max(lo, grid[r - 1][c] + 1)
        for x in range(lo, n + 1):
            grid[r][c] = x
            fill(pos + 1)
        grid[r][c] = 0

    fill(0)
    return tuple(out)


# ---------------------------------------------------------------------------
# classical operators via the signature rule on the cell word


def _cell_stats(x: int, i: int) -> tuple[int, int]:
    return (1 if x == i + 1 else 0, 1 if x == i else 0)


def _replace_cell(t: Tableau, index: int, value: int) -> Tableau:
    k, l = t.shape
    r = k - 1 - index // l
    c = index % l
    rows = [list(row) for row in t.rows]
    rows[r][c] = value
    return Tableau(t.n, tuple(tuple(row) for row in rows))


def _check_classical(i: int, n: int):
    if not 1 <= i <= n - 1:
        raise ValueError("classical operator index out of range: %d" % i)


@functools.lru_cache(maxsize=None)
def _classical_eps_phi(t: Tableau, i: int) -> tuple[int, int]:
    return fold_stats([_cell_stats(x, i) for x in t.cells()])


@functools.lru_cache(maxsize=None)
def _classical_e(t: Tableau, i: int) -> Optional[Tableau]:
    stats = [_cell_stats(x, i) for x in t.cells()]
    pos = raising_index(stats)
    if pos is None:
        return None
    assert t.cells()[pos] == i + 1
    return _replace_cell(t, pos, i)


@functools.lru_cache(maxsize=None)
def _classical_f(t: Tableau, i: int) -> Optional[Tableau]:
    stats = [_cell_stats(x, i) for x in t.cells()]
    pos = lowering_index(stats)
    if pos is None:
        return None
    assert t.cells()[pos] == i
    return _replace_cell(t, pos, i + 1)


# ---------------------------------------------------------------------------
# promotion: remove the largest letter, slide, increment, refill with 1


@functools.lru_cache(maxsize=None)
def promotion(t: Tableau) -> Tableau:
    """Cyclic shift of the crystal: content rotates one step and
    promotion o f_i = f_{i+1 mod n} o promotion.

    The maximal letters sit at the bottom of their columns in a suffix of
    the last row.  Each vacated cell slides toward the top-left corner,
    pulling in the larger of its upper and left neighbors (ties pull from
    above, as column strictness requires); parked holes act as walls.  The
    holes end as a prefix of the first row, every remaining entry gains one,
    and the holes are filled with the letter 1.
    """
    n = t.n
    k, l = t.shape
    grid: list[list[Optional[int]]] = [list(row) for row in t.rows]
    holes = [c for c in range(l) if grid[k - 1][c] == n]
    assert all(
        grid[r][c] != n for r in range(k - 1) for c in range(l)
    ), "maximal letters must lie in the bottom row of a rectangle"
    for c in holes:
        grid[k - 1][c] = None
    for c in holes:
        r, col = k - 1, c
        while True:
            above = grid[r - 1][col] if r > 0 else None
            left = grid[r][col - 1] if col > 0 else None
            if above is None and left is None:
                break
            if left is None or (above is not None and above >= left):
                grid[r][col] = above
                r -= 1
            else:
                grid[r][col] = left
                col -= 1
            grid[r][col] = None
    parked = sum(1 for c in range(l) if grid[0][c] is None)
    assert parked == len(holes) and all(
        grid[0][c] is None for c in range(len(holes))
    ), "holes must park as a prefix of the first row"
    rows = tuple(
        tuple(1 if x is None else x + 1 for x in row) for row in grid
    )
    return Tableau(n, rows)


@functools.lru_cache(maxsize=None)
def promotion_inverse(t: Tableau) -> Tableau:
    """Inverse cyclic shift; promotion has order n on rectangles."""
    out = t
    for _ in range(t.n - 1):
        out = promotion(out)
    return out


# ---------------------------------------------------------------------------
# full operator family over I = {0, 1, ..., n-1}


def eps(t: Tableau, i: int) -> int:
    if i == 0:
        return _classical_eps_phi(promotion(t), 1)[0]
    _check_classical(i, t.n)
    return _classical_eps_phi(t, i)[0]


def phi(t: Tableau, i: int) -> int:
    if i == 0:
        return _classical_eps_phi(promotion(t), 1)[1]
    _check_classical(i, t.n)
    return _classical_eps_phi(t, i)[1]


def e(t: Tableau, i: int) -> Optional[Tableau]:
    if i == 0:
        up = _classical_e(promotion(t), 1)
        return None if up is None else promotion_inverse(up)
    _check_classical(i, t.n)
    return _classical_e(t, i)


def f(t: Tableau, i: int) -> Optional[Tableau]:
    if i == 0:
        down = _classical_f(promotion(t), 1)
        return None if down is None else promotion_inverse(down)
    _check_classical(i, t.n)
    return _classical_f(t, i)


def reflect(t: Tableau, i: int) -> Tableau:
    """Crystal reflection: move to the mirror position on the i-string."""
    gap = phi(t, i) - eps(t, i)
    out: Optional[Tableau] = t
    if gap > 0:
        for _ in range(gap):
            out = f(out, i)
    elif gap < 0:
        for _ in range(-gap):
            out = e(out, i)
    assert out is not None
    return out
