"""Two-qubit quantization machinery in the Eisert-Wilkens-Lewenstein style.

Strategies are SU(2) matrices

    U(theta, alpha, beta) = [[ e^{i a} cos(t/2),   i e^{i b} sin(t/2)],
                             [ i e^{-i b} sin(t/2), e^{-i a} cos(t/2)]]

acting on the maximally entangled state J|00>, with J = (I(x)I + i X(x)X)/sqrt(2).
Payoffs are expectations of diagonal observables in the final state
J^dag (U1 (x) U2) J |00>.  The module carries two independent payoff routes:
the statevector pipeline and a closed-form trigonometric formula, each
serving as an oracle for the other.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .games import BimatrixGame

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class UnitaryParams:
    """Strategy parameters (theta, alpha, beta) in radians.

    ``pi_multiples`` is set when the angles are exact rational multiples of
    pi, which is what lets the extension builder recognize special operators
    without float comparisons.  theta lies in [0, pi]; alpha and beta are
    reduced modulo 2*pi.
    """

    theta: float
    alpha: float
    beta: float
    pi_multiples: tuple[Fraction, Fraction, Fraction] | None = None

    @classmethod
    def exact_pi(cls, theta, alpha, beta) -> "UnitaryParams":
        """Build from rational multiples of pi, e.g. exact_pi(0, Fraction(1, 2), 0)."""
        t, a, b = Fraction(theta), Fraction(alpha), Fraction(beta)
        if not 0 <= t <= 1:
            raise ValueError(f"theta = {t}*pi outside [0, pi]")
        a %= 2
        b %= 2
        return cls(
            theta=float(t) * math.pi,
            alpha=float(a) * math.pi,
            beta=float(b) * math.pi,
            pi_multiples=(t, a, b),
        )

    @classmethod
    def from_radians(cls, theta: float, alpha: float, beta: float) -> "UnitaryParams":
        if not -1e-12 <= theta <= math.pi + 1e-12:
            raise ValueError(f"theta = {theta} outside [0, pi]")
        return cls(
            theta=min(max(theta, 0.0), math.pi),
            alpha=alpha % _TWO_PI,
            beta=beta % _TWO_PI,
        )

    @property
    def is_exact(self) -> bool:
        return self.pi_multiples is not None


def parse_angle(token: str) -> Fraction | float:
    """Parse an angle written either as a rational multiple of pi or in radians.

    "1/2pi", "pi", "3/4pi", "2pi" and plain "0" are exact (a Fraction giving
    the multiple of pi); any other decimal is float radians.
    """
    token = token.strip().lower().replace(" ", "")
    match = re.fullmatch(r"([+-]?\d+(?:/\d+)?)?pi", token)
    if match:
        return Fraction(match.group(1)) if match.group(1) else Fraction(1)
    try:
        value = float(token)
    except ValueError:
        raise ValueError(f"cannot parse angle {token!r}") from None
    if value == 0.0:
        return Fraction(0)
    return value


def format_angle(value: Fraction | float) -> str | float:
    """Inverse of `parse_angle` for reports: Fractions render as "k/npi"."""
    if isinstance(value, Fraction):
        if value == 0:
            return "0"
        if value == 1:
            return "pi"
        return f"{value}pi"
    return value


def params_from_angles(theta, alpha, beta) -> UnitaryParams:
    """Build UnitaryParams from `parse_angle` outputs, exact when all are."""
    angles = (theta, alpha, beta)
    if all(isinstance(v, Fraction) for v in angles):
        return UnitaryParams.exact_pi(theta, alpha, beta)
    as_float = [float(v) * math.pi if isinstance(v, Fraction) else v for v in angles]
    return UnitaryParams.from_radians(*as_float)


# Named operators: the two classical strategies and the commonly studied Q.
I_OP = UnitaryParams.exact_pi(0, 0, 0)
IX_OP = UnitaryParams.exact_pi(1, 0, 0)
Q_OP = UnitaryParams.exact_pi(0, Fraction(1, 2), 0)

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)

# Maximal entangler J and its inverse; fixed for the whole library.
ENTANGLER = (np.eye(4, dtype=complex) + 1j * np.kron(_SIGMA_X, _SIGMA_X)) / math.sqrt(2)
_ENTANGLER_DAG = ENTANGLER.conj().T

_KET00 = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)


def unitary_matrix(params: UnitaryParams) -> np.ndarray:
    """The 2x2 strategy matrix U(theta, alpha, beta)."""
    half = params.theta / 2.0
    c, s = math.cos(half), math.sin(half)
    return np.array(
        [
            [cmath.exp(1j * params.alpha) * c, 1j * cmath.exp(1j * params.beta) * s],
            [1j * cmath.exp(-1j * params.beta) * s, cmath.exp(-1j * params.alpha) * c],
        ],
        dtype=complex,
    )


def final_state(p1: UnitaryParams, p2: UnitaryParams) -> np.ndarray:
    """Statevector J^dag (U1 (x) U2) J |00> over the basis |00>,|01>,|10>,|11>."""
    u = np.kron(unitary_matrix(p1), unitary_matrix(p2))
    return _ENTANGLER_DAG @ (u @ (ENTANGLER @ _KET00))


def states_equal(a: np.ndarray, b: np.ndarray, tol: float = 1e-12) -> bool:
    """Equality of unit statevectors up to a global phase."""
    return abs(abs(np.vdot(a, b)) - 1.0) <= tol


@dataclass(frozen=True)
class MeasurementPair:
    """Diagonal payoff observables for the two players.

    Weights are ordered like the state basis |00>,|01>,|10>,|11> and are the
    game's payoffs converted to floats.
    """

    m1: tuple[float, float, float, float]
    m2: tuple[float, float, float, float]

    @classmethod
    def from_game(cls, game: BimatrixGame) -> "MeasurementPair":
        if game.shape != (2, 2):
            raise ValueError(f"measurements need a 2x2 game, got {game.shape}")
        cells = [game.payoff(i, j) for i in (0, 1) for j in (0, 1)]
        return cls(
            m1=tuple(float(c[0]) for c in cells),
            m2=tuple(float(c[1]) for c in cells),
        )


def payoff_from_state(state: np.ndarray, pair: MeasurementPair) -> tuple[float, float]:
    """Expectation of both players' observables in ``state``."""
    probs = np.abs(np.asarray(state, dtype=complex)) ** 2
    if abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError(f"state is not normalized (norm^2 = {probs.sum()})")
    return (float(probs @ np.array(pair.m1)), float(probs @ np.array(pair.m2)))


def closed_form_payoff(
    p1: UnitaryParams, p2: UnitaryParams, game: BimatrixGame
) -> tuple[float, float]:
    """Payoff pair from the closed-form trigonometric expression.

    The four weights below are the outcome probabilities |<ij|Psi>|^2 written
    out explicitly; they are algebraically equal to the statevector route and
    the two are cross-checked to 1e-12 in the test suite.
    """
    if game.shape != (2, 2):
        raise ValueError(f"the closed form needs a 2x2 game, got {game.shape}")
    c1, s1 = math.cos(p1.theta / 2.0), math.sin(p1.theta / 2.0)
    c2, s2 = math.cos(p2.theta / 2.0), math.sin(p2.theta / 2.0)
    a1, b1, a2, b2 = p1.alpha, p1.beta, p2.alpha, p2.beta

    w00 = (math.cos(a1 + a2) * c1 * c2 + math.sin(b1 + b2) * s1 * s2) ** 2
    w01 = (math.cos(a1 - b2) * c1 * s2 + math.sin(a2 - b1) * s1 * c2) ** 2
    w10 = (math.sin(a1 - b2) * c1 * s2 + math.cos(a2 - b1) * s1 * c2) ** 2
    w11 = (math.sin(a1 + a2) * c1 * c2 - math.cos(b1 + b2) * s1 * s2) ** 2

    weights = (w00, w01, w10, w11)
    cells = [game.payoff(i, j) for i in (0, 1) for j in (0, 1)]
    u1 = sum(w * float(c[0]) for w, c in zip(weights, cells))
    u2 = sum(w * float(c[1]) for w, c in zip(weights, cells))
    return (u1, u2)
