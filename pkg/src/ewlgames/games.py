"""Exact-rational bimatrix games: construction, relabeling variants, and
strong-isomorphism search.

Payoffs are `fractions.Fraction` end to end.  Nothing here touches floats
unless an isomorphism search is explicitly given a tolerance, so all game
comparisons are exact by default.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Optional, Sequence

Payoff = tuple[Fraction, Fraction]


def rational(value: int | float | str | Fraction) -> Fraction:
    """Coerce a payoff entry to an exact Fraction.

    Strings may be integers ("3"), fractions ("-2/7") or decimals ("2.25"),
    all read exactly.  Floats keep their exact binary value.
    """
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


class VariantKind(Enum):
    """The three relabelings of a 2x2 game used as isomorphic presentations."""

    ROW_SWAP = "rows"
    COL_SWAP = "columns"
    ROW_COL_SWAP = "rows+columns"


@dataclass(frozen=True)
class BimatrixGame:
    """A two-player strategic-form game as a row-major grid of payoff pairs.

    Rows belong to player 1, columns to player 2; ``payoffs[i][j]`` is the
    pair (player 1's payoff, player 2's payoff) at that position.
    """

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    payoffs: tuple[tuple[Payoff, ...], ...]

    def __post_init__(self) -> None:
        if not self.row_labels or not self.col_labels:
            raise ValueError("games need at least one strategy per player")
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError(f"duplicate row label in {self.row_labels!r}")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError(f"duplicate column label in {self.col_labels!r}")
        if len(self.payoffs) != len(self.row_labels):
            raise ValueError("payoff grid does not match the number of row labels")
        for row in self.payoffs:
            if len(row) != len(self.col_labels):
                raise ValueError("payoff grid does not match the number of column labels")

    @property
    def n_rows(self) -> int:
        return len(self.row_labels)

    @property
    def n_cols(self) -> int:
        return len(self.col_labels)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def payoff(self, row: int, col: int) -> Payoff:
        return self.payoffs[row][col]

    def player_values(self, player: int) -> list[Fraction]:
        """All payoffs of one player (0 = row player, 1 = column player)."""
        return [cell[player] for row in self.payoffs for cell in row]


def make_game(
    rows: Sequence[str],
    cols: Sequence[str],
    payoffs: Sequence[Sequence[Iterable]],
) -> BimatrixGame:
    """Build a validated game; payoff entries are coerced with `rational`."""
    grid = []
    for row in payoffs:
        cells = []
        for cell in row:
            pair = tuple(rational(v) for v in cell)
            if len(pair) != 2:
                raise ValueError(f"payoff cell {cell!r} is not a pair")
            cells.append(pair)
        grid.append(tuple(cells))
    return BimatrixGame(tuple(str(r) for r in rows), tuple(str(c) for c in cols), tuple(grid))


def variant(game: BimatrixGame, kind: VariantKind) -> BimatrixGame:
    """An isomorphic presentation of a 2x2 game with rows/columns reordered.

    Labels travel with their strategies, so the variant is the same game
    written down differently, not a new game.
    """
    if game.shape != (2, 2):
        raise ValueError(f"variants are defined for 2x2 games, got {game.shape}")
    rows, cols = game.row_labels, game.col_labels
    grid = game.payoffs
    if kind in (VariantKind.ROW_SWAP, VariantKind.ROW_COL_SWAP):
        rows = rows[::-1]
        grid = grid[::-1]
    if kind in (VariantKind.COL_SWAP, VariantKind.ROW_COL_SWAP):
        cols = cols[::-1]
        grid = tuple(row[::-1] for row in grid)
    return BimatrixGame(rows, cols, grid)


@dataclass(frozen=True)
class StrategyBijection:
    """A pair of strategy bijections witnessing a strong isomorphism.

    ``row_perm[i]`` is the row of the target game that row ``i`` of the
    source game maps to (likewise for columns); the label maps spell the
    same bijections out by strategy name.
    """

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    row_map: tuple[tuple[str, str], ...]
    col_map: tuple[tuple[str, str], ...]

    @property
    def is_identity(self) -> bool:
        return self.row_perm == tuple(range(len(self.row_perm))) and self.col_perm == tuple(
            range(len(self.col_perm))
        )


def _pairs_close(x: Payoff, y: Payoff, tol: float) -> bool:
    return abs(x[0] - y[0]) <= tol and abs(x[1] - y[1]) <= tol


def find_isomorphism(
    a: BimatrixGame, b: BimatrixGame, tol: float = 0.0
) -> Optional[StrategyBijection]:
    """Search for a strong isomorphism from ``a`` to ``b``.

    Tries all n!*m! bijection pairs in lexicographic order and returns the
    first pair under which every cell of ``a`` carries the same payoffs as
    its image in ``b`` (for both players), or None if no pair works.  With
    ``tol`` > 0 payoffs are compared within that absolute tolerance, which
    is what float-built games need.
    """
    if a.shape != b.shape:
        return None
    n, m = a.shape
    pa, pb = a.payoffs, b.payoffs
    for row_perm in permutations(range(n)):
        # Precompute b's rows in source order for this row bijection.
        rows_b = tuple(pb[row_perm[i]] for i in range(n))
        for col_perm in permutations(range(m)):
            if tol == 0.0:
                ok = all(
                    pa[i][j] == rows_b[i][col_perm[j]] for i in range(n) for j in range(m)
                )
            else:
                ok = all(
                    _pairs_close(pa[i][j], rows_b[i][col_perm[j]], tol)
                    for i in range(n)
                    for j in range(m)
                )
            if ok:
                return StrategyBijection(
                    row_perm=row_perm,
                    col_perm=col_perm,
                    row_map=tuple(
                        (a.row_labels[i], b.row_labels[row_perm[i]]) for i in range(n)
                    ),
                    col_map=tuple(
                        (a.col_labels[j], b.col_labels[col_perm[j]]) for j in range(m)
                    ),
                )
    return None


def is_generic(game: BimatrixGame) -> bool:
    """True iff each player's payoffs are pairwise distinct across all cells."""
    size = game.n_rows * game.n_cols
    return all(len(set(game.player_values(p))) == size for p in (0, 1))


def random_generic_game(
    rng,
    rows: int = 2,
    cols: int = 2,
    value_limit: int = 40,
    denominator_limit: int = 12,
) -> BimatrixGame:
    """A random rational game whose per-player payoffs are pairwise distinct.

    ``rng`` is a `random.Random`; distinct numerators over one denominator
    per player make the game generic by construction.
    """
    size = rows * cols
    values = []
    for _ in (0, 1):
        nums = rng.sample(range(-value_limit, value_limit + 1), size)
        den = rng.randint(1, denominator_limit)
        values.append([Fraction(n, den) for n in nums])
    grid = tuple(
        tuple((values[0][i * cols + j], values[1][i * cols + j]) for j in range(cols))
        for i in range(rows)
    )
    return BimatrixGame(
        tuple(f"r{i}" for i in range(rows)),
        tuple(f"c{j}" for j in range(cols)),
        grid,
    )


def snapped(game: BimatrixGame, max_denominator: int = 10**9) -> BimatrixGame:
    """Payoffs re-approximated with bounded denominators.

    Used before solving float-built games so that coincidences holding to
    within the float tolerance become exact ties.
    """
    grid = tuple(
        tuple(
            (c[0].limit_denominator(max_denominator), c[1].limit_denominator(max_denominator))
            for c in row
        )
        for row in game.payoffs
    )
    return BimatrixGame(game.row_labels, game.col_labels, grid)


def game_to_json_dict(game: BimatrixGame) -> dict:
    """Game as a JSON-ready dict; payoffs become exact "p/q" strings."""
    return {
        "rows": list(game.row_labels),
        "cols": list(game.col_labels),
        "payoffs": [[[str(c[0]), str(c[1])] for c in row] for row in game.payoffs],
    }


def game_from_json_dict(data: dict) -> BimatrixGame:
    """Parse the dict form produced by `game_to_json_dict`."""
    try:
        rows = data["rows"]
        cols = data["cols"]
        payoffs = data["payoffs"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"game JSON is missing field: {exc}") from exc
    return make_game(rows, cols, payoffs)
