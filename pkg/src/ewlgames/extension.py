"""Extending a 2x2 game with one shared unitary strategy.

The extended 3x3 game keeps the two classical strategies (played as I and
iX) in its top-left block and adds one row and column for the unitary
strategy U(theta, alpha, beta).  Whether the result is invariant under
relabelings of the classical game depends only on the angles: at
theta = pi/2 with alpha and beta on the quarter-pi grid (minus a parity
exclusion) there are exactly 24 invariant operators, falling into three
families whose payoff matrices are rational in the input payoffs:

  * family I  : the new row/column averages the classical ones pairwise,
                so the extension collapses to classical mixing;
  * family II : the same averages with the pairs crossed over;
  * family III: every new cell is the average of all four classical cells.

Any other operator produces extensions that depend on how the classical
game is written down; `empirical_invariance` demonstrates this directly by
extending all relabeled presentations and searching for isomorphisms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from .ewl import I_OP, IX_OP, UnitaryParams, closed_form_payoff, format_angle
from .games import (
    BimatrixGame,
    Payoff,
    VariantKind,
    find_isomorphism,
    game_to_json_dict,
    is_generic,
    variant,
)

EXT_LABELS = ("I", "iX", "U")

_HALF_PI = math.pi / 2.0


class InvarianceKind(Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"
    NON_INVARIANT = "NonInvariant"


@dataclass(frozen=True)
class ExtensionClass:
    """Invariance family of an operator, with the grid witness when invariant.

    ``witness`` holds the integers (k, l) with alpha - beta = k*pi/2 and
    alpha + beta = l*pi/2.
    """

    kind: InvarianceKind
    witness: tuple[int, int] | None = None

    @property
    def invariant(self) -> bool:
        return self.kind is not InvarianceKind.NON_INVARIANT


@dataclass(frozen=True)
class ExtendedGame:
    """A 3x3 extension together with its provenance.

    ``exact`` is True when every payoff was computed in rational arithmetic;
    float-built extensions carry their payoffs as exact binary rationals but
    should only be fed to the equilibrium solver deliberately.
    """

    game: BimatrixGame
    source: BimatrixGame
    params: UnitaryParams
    exact: bool


def _cos_pi(r: Fraction) -> Fraction | None:
    """cos(r*pi) when it is rational, else None.

    By Niven's theorem the rational values of cosine at rational multiples
    of pi are exactly 0, +-1/2 and +-1, reached at denominators 1, 2, 3.
    """
    r = r % 2
    if r.denominator == 1:
        return Fraction(1) if r == 0 else Fraction(-1)
    if r.denominator == 2:
        return Fraction(0)
    if r.denominator == 3:
        return Fraction(1, 2) if r.numerator % 6 in (1, 5) else Fraction(-1, 2)
    return None


def _sin_pi(r: Fraction) -> Fraction | None:
    return _cos_pi(Fraction(1, 2) - r)


def classify(params: UnitaryParams, tol: float = 1e-9) -> ExtensionClass:
    """Invariance family of an operator.

    Exact parameters are classified by rational arithmetic on the pi
    multiples; float parameters snap to the grid within ``tol`` (measured as
    a distance in radians), since the invariant set has measure zero.
    """
    if params.is_exact:
        t, a, b = params.pi_multiples
        if t != Fraction(1, 2):
            return ExtensionClass(InvarianceKind.NON_INVARIANT)
        kinds = {1: InvarianceKind.TYPE_I, 2: InvarianceKind.TYPE_II, 4: InvarianceKind.TYPE_III}
        kind = kinds.get(a.denominator) if a.denominator == b.denominator else None
        if kind is None:
            return ExtensionClass(InvarianceKind.NON_INVARIANT)
        k, l = 2 * (a - b), 2 * (a + b)
        if k.denominator != 1:
            return ExtensionClass(InvarianceKind.NON_INVARIANT)
        return ExtensionClass(kind, (int(k), int(l)))

    if abs(params.theta - _HALF_PI) > tol:
        return ExtensionClass(InvarianceKind.NON_INVARIANT)
    diff, total = params.alpha - params.beta, params.alpha + params.beta
    k = round(diff / _HALF_PI)
    l = round(total / _HALF_PI)
    if abs(diff - k * _HALF_PI) > tol or abs(total - l * _HALF_PI) > tol:
        return ExtensionClass(InvarianceKind.NON_INVARIANT)
    if k % 2 == 1 and l % 2 == 1:
        return ExtensionClass(InvarianceKind.NON_INVARIANT)
    n, m = (l + k) % 8, (l - k) % 8
    if n in (0, 4) and m in (0, 4):
        kind = InvarianceKind.TYPE_I
    elif n in (2, 6) and m in (2, 6):
        kind = InvarianceKind.TYPE_II
    elif n % 2 == 1 and m % 2 == 1:
        kind = InvarianceKind.TYPE_III
    else:
        return ExtensionClass(InvarianceKind.NON_INVARIANT)
    return ExtensionClass(kind, (k, l))


def _mean(*cells: Payoff) -> Payoff:
    n = len(cells)
    return (
        sum((c[0] for c in cells), Fraction(0)) / n,
        sum((c[1] for c in cells), Fraction(0)) / n,
    )


_REPRESENTATIVE = {
    InvarianceKind.TYPE_I: UnitaryParams.exact_pi(Fraction(1, 2), 0, 0),
    InvarianceKind.TYPE_II: UnitaryParams.exact_pi(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    InvarianceKind.TYPE_III: UnitaryParams.exact_pi(Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
}


def build_type_matrix(game: BimatrixGame, kind: InvarianceKind) -> ExtendedGame:
    """The exact 3x3 matrix of one invariant family, built symbolically."""
    if game.shape != (2, 2):
        raise ValueError(f"extensions need a 2x2 game, got {game.shape}")
    if kind is InvarianceKind.NON_INVARIANT:
        raise ValueError("non-invariant operators have no family matrix")
    d00, d01 = game.payoff(0, 0), game.payoff(0, 1)
    d10, d11 = game.payoff(1, 0), game.payoff(1, 1)
    avg4 = _mean(d00, d01, d10, d11)
    if kind is InvarianceKind.TYPE_I:
        col = (_mean(d00, d01), _mean(d10, d11))
        row = (_mean(d00, d10), _mean(d01, d11))
    elif kind is InvarianceKind.TYPE_II:
        col = (_mean(d10, d11), _mean(d00, d01))
        row = (_mean(d01, d11), _mean(d00, d10))
    else:
        col = (avg4, avg4)
        row = (avg4, avg4)
    grid = (
        (d00, d01, col[0]),
        (d10, d11, col[1]),
        (row[0], row[1], avg4),
    )
    return ExtendedGame(
        game=BimatrixGame(EXT_LABELS, EXT_LABELS, grid),
        source=game,
        params=_REPRESENTATIVE[kind],
        exact=True,
    )


def _exact_cells(game: BimatrixGame, params: UnitaryParams):
    """The five non-classical cells in exact rational arithmetic, or None.

    Possible whenever cos(theta) and the sines/cosines of 2*alpha, 2*beta
    and 2*(alpha - beta) are all rational, which covers every operator on
    the quarter-pi grid (in particular I, iX and Q) at theta in
    {0, pi/3, pi/2, 2pi/3, pi}.
    """
    t, a, b = params.pi_multiples
    cos_t = _cos_pi(t)
    c2a, s2a = _cos_pi(2 * a), _sin_pi(2 * a)
    c2b, s2b = _cos_pi(2 * b), _sin_pi(2 * b)
    s2ab = _sin_pi(2 * (a - b))
    parts = (cos_t, c2a, s2a, c2b, s2b, s2ab)
    if any(v is None for v in parts):
        return None

    c2h = (1 + cos_t) / 2  # cos^2(theta/2)
    s2h = (1 - cos_t) / 2
    ca2, sa2 = (1 + c2a) / 2, (1 - c2a) / 2  # cos^2(alpha), sin^2(alpha)
    cb2, sb2 = (1 + c2b) / 2, (1 - c2b) / 2

    d = [game.payoff(0, 0), game.payoff(0, 1), game.payoff(1, 0), game.payoff(1, 1)]

    def combo(w00, w01, w10, w11) -> Payoff:
        return (
            w00 * d[0][0] + w01 * d[1][0] + w10 * d[2][0] + w11 * d[3][0],
            w00 * d[0][1] + w01 * d[1][1] + w10 * d[2][1] + w11 * d[3][1],
        )

    u_ui = combo(ca2 * c2h, sb2 * s2h, cb2 * s2h, sa2 * c2h)
    u_uix = combo(sb2 * s2h, ca2 * c2h, sa2 * c2h, cb2 * s2h)
    u_iu = combo(ca2 * c2h, cb2 * s2h, sb2 * s2h, sa2 * c2h)
    u_ixu = combo(sb2 * s2h, sa2 * c2h, ca2 * c2h, cb2 * s2h)

    w_corner_00 = (c2a * c2h + s2b * s2h) ** 2
    w_corner_mid = (1 + s2ab) * c2h * s2h  # = (cos+sin)^2(a-b) * sin^2(theta) / 4
    w_corner_11 = (s2a * c2h - c2b * s2h) ** 2
    u_uu = combo(w_corner_00, w_corner_mid, w_corner_mid, w_corner_11)
    return u_iu, u_ixu, u_ui, u_uix, u_uu


def _float_cells(game: BimatrixGame, params: UnitaryParams):
    """The five non-classical cells by substituting into the payoff formula."""
    to_pair = lambda xy: (Fraction(xy[0]), Fraction(xy[1]))
    return (
        to_pair(closed_form_payoff(I_OP, params, game)),
        to_pair(closed_form_payoff(IX_OP, params, game)),
        to_pair(closed_form_payoff(params, I_OP, game)),
        to_pair(closed_form_payoff(params, IX_OP, game)),
        to_pair(closed_form_payoff(params, params, game)),
    )


def build_extension(game: BimatrixGame, params: UnitaryParams) -> ExtendedGame:
    """The 3x3 extension of a 2x2 game by the strategy U(theta, alpha, beta).

    The classical block is always embedded exactly.  The five new cells are
    rational whenever the angles allow exact evaluation (invariant operators
    delegate to their family matrix; other special angles evaluate the cell
    formulas in rational arithmetic); otherwise they are computed in floats
    and the result is marked ``exact=False``.
    """
    if game.shape != (2, 2):
        raise ValueError(f"extensions need a 2x2 game, got {game.shape}")
    exact = False
    cells = None
    if params.is_exact:
        cls = classify(params)
        if cls.invariant:
            return replace(build_type_matrix(game, cls.kind), params=params)
        cells = _exact_cells(game, params)
        exact = cells is not None
    if cells is None:
        cells = _float_cells(game, params)
    u_iu, u_ixu, u_ui, u_uix, u_uu = cells
    grid = (
        (game.payoff(0, 0), game.payoff(0, 1), u_iu),
        (game.payoff(1, 0), game.payoff(1, 1), u_ixu),
        (u_ui, u_uix, u_uu),
    )
    return ExtendedGame(
        game=BimatrixGame(EXT_LABELS, EXT_LABELS, grid),
        source=game,
        params=params,
        exact=exact,
    )


def empirical_invariance(game: BimatrixGame, params: UnitaryParams) -> bool:
    """Check invariance directly: extend every presentation and compare.

    Builds the extension of the game and of its three relabeled variants and
    returns True iff each variant's extension is strongly isomorphic to the
    base one.  Float-built extensions are compared within 1e-9.  On
    non-generic games the verdict can be an accident of payoff ties, so a
    warning is emitted.
    """
    if not is_generic(game):
        warnings.warn(
            "empirical invariance checked on a non-generic game; "
            "payoff ties can make the verdict accidental",
            stacklevel=2,
        )
    base = build_extension(game, params)
    tol = 0.0 if base.exact else 1e-9
    for kind in VariantKind:
        other = build_extension(variant(game, kind), params)
        if find_isomorphism(base.game, other.game, tol=tol) is None:
            return False
    return True


def extended_to_json_dict(ext: ExtendedGame) -> dict:
    """Extended game as a JSON-ready dict: the game plus params/class/exact."""
    data = game_to_json_dict(ext.game)
    if ext.params.is_exact:
        t, a, b = ext.params.pi_multiples
        angles = {"theta": format_angle(t), "alpha": format_angle(a), "beta": format_angle(b)}
    else:
        angles = {
            "theta": ext.params.theta,
            "alpha": ext.params.alpha,
            "beta": ext.params.beta,
        }
    data["params"] = angles
    data["class"] = classify(ext.params).kind.value
    data["exact"] = ext.exact
    return data
