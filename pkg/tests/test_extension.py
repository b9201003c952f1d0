"""The 3x3 extension builder, invariance classifier, and family matrices."""

import math
import random
from fractions import Fraction as F

import pytest

from ewlgames import (
    EXT_LABELS,
    InvarianceKind,
    Q_OP,
    UnitaryParams,
    VariantKind,
    build_extension,
    build_type_matrix,
    classify,
    closed_form_payoff,
    empirical_invariance,
    extended_to_json_dict,
    find_isomorphism,
    make_game,
    random_generic_game,
    variant,
)

HALF = F(1, 2)


def cells(grid):
    return tuple(tuple((F(a), F(b)) for a, b in row) for row in grid)


# Tabulated Q-extensions of the four presentations of the dilemma.
PD3_BASE = cells([[(3, 3), (0, 5), (1, 1)], [(5, 0), (1, 1), (0, 5)], [(1, 1), (5, 0), (3, 3)]])
PD3_ROWS = cells([[(5, 0), (1, 1), (0, 5)], [(3, 3), (0, 5), (1, 1)], [(0, 5), (3, 3), (5, 0)]])
PD3_COLS = cells([[(0, 5), (3, 3), (5, 0)], [(1, 1), (5, 0), (3, 3)], [(5, 0), (1, 1), (0, 5)]])
PD3_BOTH = cells([[(1, 1), (5, 0), (3, 3)], [(0, 5), (3, 3), (5, 0)], [(3, 3), (0, 5), (1, 1)]])

TYPE_II_OP = UnitaryParams.exact_pi(HALF, HALF, HALF)


def grid_operator(i, j):
    return UnitaryParams.exact_pi(HALF, F(i, 4), F(j, 4))


def invariant_grid_operators():
    return [
        grid_operator(i, j)
        for i in range(8)
        for j in range(8)
        if classify(grid_operator(i, j)).invariant
    ]


# --- the Q-extension and its presentations -----------------------------------


@pytest.mark.parametrize(
    "kind, expected",
    [
        (None, PD3_BASE),
        (VariantKind.ROW_SWAP, PD3_ROWS),
        (VariantKind.COL_SWAP, PD3_COLS),
        (VariantKind.ROW_COL_SWAP, PD3_BOTH),
    ],
)
def test_q_extension_matches_tabulated_matrices(pd, kind, expected):
    source = pd if kind is None else variant(pd, kind)
    ext = build_extension(source, Q_OP)
    assert ext.exact
    assert ext.game.payoffs == expected
    assert ext.game.row_labels == EXT_LABELS and ext.game.col_labels == EXT_LABELS
    assert ext.source == source


def test_extension_rejects_non_2x2():
    g = make_game(("A",), ("B",), [[(0, 0)]])
    with pytest.raises(ValueError):
        build_extension(g, Q_OP)


def test_crossed_average_extension_cells(pd):
    # Substituting (R, S, T, P) = (3, 0, 5, 1) into the crossed-average family.
    ext = build_extension(pd, TYPE_II_OP)
    assert ext.exact
    assert ext.game.payoff(0, 2) == (F(3), F(1, 2))
    assert ext.game.payoff(1, 2) == (F(3, 2), F(4))
    assert ext.game.payoff(2, 0) == (F(1, 2), F(3))
    assert ext.game.payoff(2, 1) == (F(4), F(3, 2))
    assert ext.game.payoff(2, 2) == (F(9, 4), F(9, 4))
    assert ext.game.payoffs == build_type_matrix(pd, InvarianceKind.TYPE_II).game.payoffs


def test_classical_block_always_embedded_exactly(pd):
    rng = random.Random(77)
    for _ in range(10):
        g = random_generic_game(rng)
        p = UnitaryParams.from_radians(
            rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
        )
        ext = build_extension(g, p)
        assert not ext.exact
        for i in range(2):
            for j in range(2):
                assert ext.game.payoff(i, j) == g.payoff(i, j)


# --- classifier ---------------------------------------------------------------


@pytest.mark.parametrize(
    "params, kind, witness",
    [
        (UnitaryParams.exact_pi(HALF, 0, 0), InvarianceKind.TYPE_I, (0, 0)),
        (UnitaryParams.exact_pi(HALF, 1, 0), InvarianceKind.TYPE_I, (2, 2)),
        (TYPE_II_OP, InvarianceKind.TYPE_II, (0, 2)),
        (UnitaryParams.exact_pi(HALF, F(1, 4), F(3, 4)), InvarianceKind.TYPE_III, (-1, 2)),
        (UnitaryParams.exact_pi(HALF, F(7, 4), F(1, 4)), InvarianceKind.TYPE_III, (3, 4)),
    ],
)
def test_classify_invariant_operators(params, kind, witness):
    cls = classify(params)
    assert cls.kind is kind and cls.witness == witness


@pytest.mark.parametrize(
    "params",
    [
        Q_OP,  # theta = 0
        UnitaryParams.exact_pi(1, 0, 0),
        UnitaryParams.exact_pi(HALF, 0, HALF),  # parity exclusion
        UnitaryParams.exact_pi(HALF, F(1, 4), 0),  # off the half-pi lattice in one angle
        UnitaryParams.exact_pi(F(1, 4), F(1, 4), F(1, 4)),  # wrong theta
        UnitaryParams.exact_pi(HALF, F(1, 8), F(1, 8)),  # off the quarter-pi grid
    ],
)
def test_classify_non_invariant_operators(params):
    cls = classify(params)
    assert cls.kind is InvarianceKind.NON_INVARIANT and cls.witness is None


def test_census_of_quarter_pi_grid():
    counts = {kind: 0 for kind in InvarianceKind}
    for i in range(8):
        for j in range(8):
            counts[classify(grid_operator(i, j)).kind] += 1
    assert counts[InvarianceKind.TYPE_I] == 4
    assert counts[InvarianceKind.TYPE_II] == 4
    assert counts[InvarianceKind.TYPE_III] == 16
    assert counts[InvarianceKind.NON_INVARIANT] == 40


def test_classify_float_parameters_snap_to_grid():
    half_pi = math.pi / 2
    on_grid = UnitaryParams.from_radians(half_pi, half_pi, half_pi)
    assert classify(on_grid).kind is InvarianceKind.TYPE_II
    nudged = UnitaryParams.from_radians(half_pi + 4e-10, half_pi - 4e-10, half_pi)
    assert classify(nudged).kind is InvarianceKind.TYPE_II
    off = UnitaryParams.from_radians(half_pi, half_pi + 1e-5, half_pi)
    assert classify(off).kind is InvarianceKind.NON_INVARIANT


# --- family matrices -----------------------------------------------------------


def test_family_i_matrix(pd):
    ext = build_type_matrix(pd, InvarianceKind.TYPE_I)
    assert ext.game.payoffs == cells(
        [
            [(3, 3), (0, 5), ("3/2", 4)],
            [(5, 0), (1, 1), (3, "1/2")],
            [(4, "3/2"), ("1/2", 3), ("9/4", "9/4")],
        ]
    )


def test_family_iii_matrix_is_flat(pd):
    ext = build_type_matrix(pd, InvarianceKind.TYPE_III)
    avg = (F(9, 4), F(9, 4))
    for i, j in [(0, 2), (1, 2), (2, 0), (2, 1), (2, 2)]:
        assert ext.game.payoff(i, j) == avg


def test_family_matrices_of_zero_game():
    zero = make_game(("A", "B"), ("C", "D"), [[(0, 0), (0, 0)], [(0, 0), (0, 0)]])
    for kind in (InvarianceKind.TYPE_I, InvarianceKind.TYPE_II, InvarianceKind.TYPE_III):
        ext = build_type_matrix(zero, kind)
        assert all(c == (F(0), F(0)) for row in ext.game.payoffs for c in row)


def test_family_matrix_rejects_non_invariant(pd):
    with pytest.raises(ValueError):
        build_type_matrix(pd, InvarianceKind.NON_INVARIANT)


def test_family_i_is_classical_mixing():
    rng = random.Random(19)
    for _ in range(5):
        g = random_generic_game(rng)
        ext = build_type_matrix(g, InvarianceKind.TYPE_I).game
        for j in range(3):
            left, right = ext.payoff(0, j), ext.payoff(1, j)
            mix = ((left[0] + right[0]) / 2, (left[1] + right[1]) / 2)
            assert ext.payoff(2, j) == mix
        for i in range(3):
            top, bottom = ext.payoff(i, 0), ext.payoff(i, 1)
            mix = ((top[0] + bottom[0]) / 2, (top[1] + bottom[1]) / 2)
            assert ext.payoff(i, 2) == mix


# --- exact evaluation against the float route -----------------------------------


def test_all_24_invariant_operators_collapse_to_their_family(pd):
    ops = invariant_grid_operators()
    assert len(ops) == 24
    for p in ops:
        kind = classify(p).kind
        assert build_extension(pd, p).game.payoffs == (
            build_type_matrix(pd, kind).game.payoffs
        )


def test_float_route_agrees_with_exact_route_on_grid(pd):
    rng = random.Random(55)
    games = [pd, random_generic_game(rng)]
    for g in games:
        for p in invariant_grid_operators():
            exact = build_extension(g, p)
            as_float = build_extension(
                g, UnitaryParams.from_radians(p.theta, p.alpha, p.beta)
            )
            assert exact.exact and not as_float.exact
            for i in range(3):
                for j in range(3):
                    want, got = exact.game.payoff(i, j), as_float.game.payoff(i, j)
                    assert abs(float(want[0]) - float(got[0])) <= 1e-12
                    assert abs(float(want[1]) - float(got[1])) <= 1e-12


@pytest.mark.parametrize(
    "theta, alpha, beta",
    [
        (F(1, 3), F(1, 4), F(7, 4)),  # theta = pi/3: exact off the invariant grid
        (F(2, 3), F(3, 2), F(1, 2)),
        (0, F(1, 2), 0),
        (1, F(3, 4), F(5, 4)),
        (HALF, F(1, 2), 0),  # non-invariant but exactly evaluable
    ],
)
def test_exact_cells_match_closed_form(pd, theta, alpha, beta):
    p = UnitaryParams.exact_pi(theta, alpha, beta)
    ext = build_extension(pd, p)
    assert ext.exact
    checks = [
        ((0, 2), closed_form_payoff(UnitaryParams.exact_pi(0, 0, 0), p, pd)),
        ((1, 2), closed_form_payoff(UnitaryParams.exact_pi(1, 0, 0), p, pd)),
        ((2, 0), closed_form_payoff(p, UnitaryParams.exact_pi(0, 0, 0), pd)),
        ((2, 1), closed_form_payoff(p, UnitaryParams.exact_pi(1, 0, 0), pd)),
        ((2, 2), closed_form_payoff(p, p, pd)),
    ]
    for (i, j), want in checks:
        got = ext.game.payoff(i, j)
        assert abs(float(got[0]) - want[0]) <= 1e-12
        assert abs(float(got[1]) - want[1]) <= 1e-12


def test_irrational_angles_fall_back_to_float(pd):
    p = UnitaryParams.exact_pi(F(1, 4), F(1, 8), 0)
    ext = build_extension(pd, p)
    assert not ext.exact


# --- empirical invariance --------------------------------------------------------


def test_q_extension_is_not_invariant(pd):
    assert empirical_invariance(pd, Q_OP) is False


def test_family_operators_are_invariant(pd):
    rng = random.Random(91)
    games = [pd, random_generic_game(rng), random_generic_game(rng)]
    for g in games:
        for p in invariant_grid_operators():
            assert empirical_invariance(g, p) is True


def test_classifier_matches_empirical_check_on_eighth_pi_grid(pd):
    # Denser sweep than the quarter-pi census: theta in {pi/4, pi/2},
    # alpha and beta anywhere on the eighth-pi lattice.
    rng = random.Random(15)
    games = [pd, random_generic_game(rng)]
    thetas = (F(1, 4), HALF)
    for g in games:
        for t in thetas:
            for i in range(16):
                for j in range(16):
                    p = UnitaryParams.exact_pi(t, F(i, 8), F(j, 8))
                    assert classify(p).invariant == empirical_invariance(g, p)


def test_invariance_check_warns_on_non_generic_game():
    tied = make_game(("A", "B"), ("C", "D"), [[(1, 1), (1, 2)], [(2, 1), (2, 2)]])
    with pytest.warns(UserWarning, match="non-generic"):
        empirical_invariance(tied, TYPE_II_OP)


def test_invariant_isomorphisms_fix_the_new_strategy(pd):
    for p in invariant_grid_operators():
        base = build_extension(pd, p)
        for kind in VariantKind:
            other = build_extension(variant(pd, kind), p)
            bij = find_isomorphism(base.game, other.game)
            assert bij is not None
            assert bij.row_perm[2] == 2 and bij.col_perm[2] == 2


# --- serialization ----------------------------------------------------------------


def test_extended_json_dict(pd):
    data = extended_to_json_dict(build_extension(pd, TYPE_II_OP))
    assert data["class"] == "TypeII"
    assert data["exact"] is True
    assert data["params"] == {"theta": "1/2pi", "alpha": "1/2pi", "beta": "1/2pi"}
    assert data["rows"] == ["I", "iX", "U"]
    assert data["payoffs"][2][2] == ["9/4", "9/4"]


def test_extended_json_dict_float(pd):
    p = UnitaryParams.from_radians(0.3, 0.7, 0.1)
    data = extended_to_json_dict(build_extension(pd, p))
    assert data["class"] == "NonInvariant"
    assert data["exact"] is False
    assert data["params"]["theta"] == pytest.approx(0.3)
