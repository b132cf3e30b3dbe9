"""2x2 bimatrix games and the named presets used throughout the package.

Entries follow the layout

    (alpha1, alpha2)  (beta1, beta2)
    (gamma1, gamma2)  (sigma1, sigma2)

where the first number of each pair goes to the row player (Alice) and
the row/column index 0 is the first pure strategy (C, or O).
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .errors import DomainError, ValidationError


@dataclass(frozen=True)
class PayoffBimatrix:
    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    gamma1: float
    gamma2: float
    sigma1: float
    sigma2: float

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool) or not isinstance(v, (int, float, np.floating, np.integer)):
                raise ValidationError(f"payoff entry {f.name} must be a real number, got {v!r}")
            if not math.isfinite(v):
                raise ValidationError(f"payoff entry {f.name} is not finite")

    @classmethod
    def from_pairs(cls, rows) -> "PayoffBimatrix":
        """Build from [[(a1, a2), (b1, b2)], [(g1, g2), (s1, s2)]]."""
        try:
            (a, b), (g, s) = rows
            return cls(a[0], a[1], b[0], b[1], g[0], g[1], s[0], s[1])
        except (TypeError, ValueError, IndexError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"bimatrix must be 2x2 of payoff pairs: {exc}") from None

    def to_pairs(self) -> list:
        return [
            [[self.alpha1, self.alpha2], [self.beta1, self.beta2]],
            [[self.gamma1, self.gamma2], [self.sigma1, self.sigma2]],
        ]

    @property
    def row_matrix(self) -> np.ndarray:
        return np.array([[self.alpha1, self.beta1], [self.gamma1, self.sigma1]], dtype=float)

    @property
    def col_matrix(self) -> np.ndarray:
        return np.array([[self.alpha2, self.beta2], [self.gamma2, self.sigma2]], dtype=float)

    @property
    def row_payoffs(self) -> np.ndarray:
        """Row-player payoffs ordered as the basis |00>, |01>, |10>, |11>."""
        return self.row_matrix.reshape(4)

    @property
    def col_payoffs(self) -> np.ndarray:
        return self.col_matrix.reshape(4)

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.col_matrix, self.row_matrix.T))

    def entries(self) -> tuple:
        return astuple(self)


def classical_expectation(m: PayoffBimatrix, p: float, q: float) -> tuple[float, float]:
    """Mixed-strategy payoffs when row plays strategy 0 w.p. p and column w.p. q."""
    x = np.array([p, 1 - p])
    y = np.array([q, 1 - q])
    return float(x @ m.row_matrix @ y), float(x @ m.col_matrix @ y)


def battle_of_sexes(alpha: float = 3.0, beta: float = 2.0, gamma: float = 1.0) -> PayoffBimatrix:
    if not alpha > beta > gamma:
        raise DomainError(f"Battle of the Sexes needs alpha > beta > gamma, got {alpha}, {beta}, {gamma}")
    return PayoffBimatrix(alpha, beta, gamma, gamma, gamma, gamma, beta, alpha)


PRISONERS_DILEMMA = PayoffBimatrix.from_pairs([[(3, 3), (0, 5)], [(5, 0), (1, 1)]])
# ESS of the unentangled game that loses its strictness under entanglement
GAME_28 = PayoffBimatrix.from_pairs([[(1, 1), (1, 2)], [(2, 1), (3, 2)]])
# (0, 0) becomes an ESS only once the initial state is entangled
GAME_29 = PayoffBimatrix.from_pairs([[(2, 1), (1, 0)], [(1, 0), (1, 0)]])

PRESETS = {
    "pd": PRISONERS_DILEMMA,
    "bos": battle_of_sexes(3, 2, 1),
    "game28": GAME_28,
    "game29": GAME_29,
}


def preset(name: str) -> PayoffBimatrix:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValidationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
