"""Pure and mixed Nash equilibria of small bimatrix games.

Mixed equilibria come from support enumeration: for every pair of nonempty
supports the opponent-indifference conditions plus normalization form an
exact linear system over the rationals.  Every candidate that solves its
system with nonnegative probabilities and survives the best-response check
is an equilibrium.  On 2x2 and 3x3 games the enumeration is complete, so a
report containing a single equilibrium is a uniqueness proof by exhaustion.

Degenerate games (where some indifference system is underdetermined and a
whole face of profiles is in equilibrium) cannot be listed finitely; the
report then carries the vertex solutions and a ``degenerate`` flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .games import BimatrixGame, Payoff

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class MixedProfile:
    """A pair of probability vectors, one per player."""

    p1: tuple[Fraction, ...]
    p2: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        for vec in (self.p1, self.p2):
            if any(p < 0 for p in vec):
                raise ValueError(f"negative probability in {vec}")
            if sum(vec) != 1:
                raise ValueError(f"probabilities {vec} do not sum to 1")

    @property
    def support1(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.p1) if p > 0)

    @property
    def support2(self) -> tuple[int, ...]:
        return tuple(j for j, p in enumerate(self.p2) if p > 0)

    @property
    def is_pure(self) -> bool:
        return len(self.support1) == 1 and len(self.support2) == 1


@dataclass(frozen=True)
class EquilibriumReport:
    """All equilibria found, split into pure positions and mixed profiles.

    A pure equilibrium appears only in ``pure``; ``degenerate`` warns that
    some support admitted a continuum of solutions, of which only vertices
    are listed.
    """

    pure: tuple[tuple[int, int, Payoff], ...]
    mixed: tuple[tuple[MixedProfile, Payoff], ...]
    degenerate: bool

    def __len__(self) -> int:
        return len(self.pure) + len(self.mixed)


def solve_rational_system(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> tuple[list[Fraction] | None, list[list[Fraction]]]:
    """Exact Gauss-Jordan elimination.

    Returns (particular, nullspace): one solution with all free variables
    set to zero (None if the system is inconsistent) and a basis of the
    homogeneous solutions.  An empty nullspace means the solution, when it
    exists, is unique.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    a = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(rows, rhs)]

    pivot_cols: list[int] = []
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [v * inv for v in a[rank]]
        for r in range(n_rows):
            if r != rank and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[rank])]
        pivot_cols.append(col)
        rank += 1

    if any(a[r][n_cols] != 0 for r in range(rank, n_rows)):
        return None, []

    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    particular = [_ZERO] * n_cols
    for r, col in enumerate(pivot_cols):
        particular[col] = a[r][n_cols]

    nullspace = []
    for free in free_cols:
        vec = [_ZERO] * n_cols
        vec[free] = _ONE
        for r, col in enumerate(pivot_cols):
            vec[col] = -a[r][free]
        nullspace.append(vec)
    return particular, nullspace


def pure_equilibria(game: BimatrixGame) -> list[tuple[int, int, Payoff]]:
    """All positions (i, j) where both payoffs are weakly best responses."""
    found = []
    for i in range(game.n_rows):
        for j in range(game.n_cols):
            a_ij, b_ij = game.payoff(i, j)
            if all(a_ij >= game.payoff(k, j)[0] for k in range(game.n_rows)) and all(
                b_ij >= game.payoff(i, l)[1] for l in range(game.n_cols)
            ):
                found.append((i, j, game.payoff(i, j)))
    return found


def mixed_payoff(game: BimatrixGame, profile: MixedProfile) -> Payoff:
    """Exact expected payoff pair under a mixed profile."""
    if len(profile.p1) != game.n_rows or len(profile.p2) != game.n_cols:
        raise ValueError(
            f"profile shape ({len(profile.p1)}, {len(profile.p2)}) "
            f"does not match game shape {game.shape}"
        )
    u1 = _ZERO
    u2 = _ZERO
    for i, pi in enumerate(profile.p1):
        if pi == 0:
            continue
        for j, qj in enumerate(profile.p2):
            if qj == 0:
                continue
            a, b = game.payoff(i, j)
            u1 += pi * qj * a
            u2 += pi * qj * b
    return (u1, u2)


def _row_values(game: BimatrixGame, p2: tuple[Fraction, ...]) -> list[Fraction]:
    """Player 1's expected payoff for each pure row against p2."""
    return [
        sum((qj * game.payoff(i, j)[0] for j, qj in enumerate(p2) if qj != 0), _ZERO)
        for i in range(game.n_rows)
    ]


def _col_values(game: BimatrixGame, p1: tuple[Fraction, ...]) -> list[Fraction]:
    """Player 2's expected payoff for each pure column against p1."""
    return [
        sum((pi * game.payoff(i, j)[1] for i, pi in enumerate(p1) if pi != 0), _ZERO)
        for j in range(game.n_cols)
    ]


def verify_equilibrium(game: BimatrixGame, profile: MixedProfile) -> bool:
    """True iff neither player has a pure deviation that strictly gains."""
    u1, u2 = mixed_payoff(game, profile)
    if any(v > u1 for v in _row_values(game, profile.p2)):
        return False
    if any(v > u2 for v in _col_values(game, profile.p1)):
        return False
    return True


def _indifference_candidates(
    values: list[list[Fraction]],
    own_support: tuple[int, ...],
    opp_support: tuple[int, ...],
    size: int,
) -> tuple[list[tuple[Fraction, ...]], bool]:
    """Solve for one player's mixture that equalizes the opponent on-support.

    ``values[k][x]`` is the opponent's payoff for pure strategy k when this
    player plays x.  Unknowns are the probabilities on ``own_support``;
    equations make every opponent strategy in ``opp_support`` worth the same,
    plus normalization.  Returns nonnegative full-length candidate vectors
    and whether the system was underdetermined (a continuum of solutions).
    For underdetermined systems the candidates are the vertices of the
    feasible polytope: basic solutions with respect to nonnegativity and the
    opponent's off-support best-response constraints.
    """
    base = opp_support[0]
    eq_rows = [
        [values[base][x] - values[k][x] for x in own_support] for k in opp_support[1:]
    ]
    eq_rows.append([_ONE] * len(own_support))
    rhs = [_ZERO] * (len(opp_support) - 1) + [_ONE]

    particular, nullspace = solve_rational_system(eq_rows, rhs)
    if particular is None:
        return [], False
    if not nullspace:
        vec = _embed(particular, own_support, size)
        if any(v < 0 for v in vec):
            return [], False
        return [vec], False

    # Underdetermined: enumerate vertices of the solution polytope.  Extra
    # tight constraints come from nonnegativity and from the opponent's
    # off-support strategies being weakly worse than on-support ones.
    ineqs: list[list[Fraction]] = []
    for pos in range(len(own_support)):
        row = [_ZERO] * len(own_support)
        row[pos] = _ONE
        ineqs.append(row)
    n_opp = len(values)
    for k in range(n_opp):
        if k in opp_support:
            continue
        ineqs.append([values[base][x] - values[k][x] for x in own_support])

    dim = len(nullspace)
    seen: set[tuple[Fraction, ...]] = set()
    vertices: list[tuple[Fraction, ...]] = []
    for tight in combinations(ineqs, dim):
        solution, null2 = solve_rational_system(eq_rows + [list(t) for t in tight],
                                                rhs + [_ZERO] * dim)
        if solution is None or null2:
            continue
        if any(sum(c * x for c, x in zip(row, solution)) < 0 for row in ineqs):
            continue
        vec = _embed(solution, own_support, size)
        if vec not in seen:
            seen.add(vec)
            vertices.append(vec)
    return vertices, True


def _embed(
    solution: list[Fraction], support: tuple[int, ...], size: int
) -> tuple[Fraction, ...]:
    vec = [_ZERO] * size
    for pos, idx in enumerate(support):
        vec[idx] = solution[pos]
    return tuple(vec)


def _nonempty_supports(n: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for size in range(1, n + 1):
        out.extend(combinations(range(n), size))
    return out


def support_enumeration(game: BimatrixGame) -> EquilibriumReport:
    """All Nash equilibria of the game by exhaustive support enumeration.

    Complete for games up to 3x3 (49 support pairs); larger games are
    accepted but the combinatorics grow factorially.
    """
    n, m = game.shape
    a_by_row = [[game.payoff(i, j)[0] for j in range(m)] for i in range(n)]
    b_by_col = [[game.payoff(i, j)[1] for i in range(n)] for j in range(m)]

    equilibria: dict[tuple, MixedProfile] = {}
    degenerate = False
    for s1 in _nonempty_supports(n):
        for s2 in _nonempty_supports(m):
            # p2 equalizes player 1 across s1; p1 equalizes player 2 across s2.
            cands2, under2 = _indifference_candidates(a_by_row, s2, s1, m)
            if not cands2:
                continue
            cands1, under1 = _indifference_candidates(b_by_col, s1, s2, n)
            if not cands1:
                continue
            verified1: set[tuple[Fraction, ...]] = set()
            verified2: set[tuple[Fraction, ...]] = set()
            for p1 in cands1:
                for p2 in cands2:
                    profile = MixedProfile(p1, p2)
                    if not verify_equilibrium(game, profile):
                        continue
                    verified1.add(p1)
                    verified2.add(p2)
                    equilibria.setdefault((p1, p2), profile)
            # A continuum needs an underdetermined side with at least two
            # distinct equilibrium vertices.
            if (under1 and len(verified1) > 1) or (under2 and len(verified2) > 1):
                degenerate = True

    pure: list[tuple[int, int, Payoff]] = []
    mixed: list[tuple[MixedProfile, Payoff]] = []
    for profile in equilibria.values():
        if profile.is_pure:
            i, j = profile.support1[0], profile.support2[0]
            pure.append((i, j, game.payoff(i, j)))
        else:
            mixed.append((profile, mixed_payoff(game, profile)))
    pure.sort(key=lambda e: (e[0], e[1]))
    mixed.sort(key=lambda e: (e[0].p1, e[0].p2))
    return EquilibriumReport(tuple(pure), tuple(mixed), degenerate)


def report_to_json_dict(report: EquilibriumReport, game: BimatrixGame) -> dict:
    """Equilibrium report as a JSON-ready dict with exact fraction strings."""
    return {
        "pure": [
            {
                "row": game.row_labels[i],
                "col": game.col_labels[j],
                "payoff": [str(pay[0]), str(pay[1])],
            }
            for i, j, pay in report.pure
        ],
        "mixed": [
            {
                "p1": [str(p) for p in prof.p1],
                "p2": [str(p) for p in prof.p2],
                "payoff": [str(pay[0]), str(pay[1])],
            }
            for prof, pay in report.mixed
        ],
        "degenerate": report.degenerate,
    }
