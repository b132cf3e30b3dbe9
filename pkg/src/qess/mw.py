"""Marinatto-Weber quantization: tactics mixing identity and spin flip on an
entangled initial state.

The row player applies I with probability ``p`` (sigma_x otherwise), the
column player with probability ``q``.  The initial state is either
aligned, a|00> + b|11>, or crossed, a|01> + b|10>.  A crossed state is the
aligned one with the column qubit flipped, so the crossed game at (p, q)
equals the aligned game at (p, 1 - q).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import quantum
from .bimatrix import PayoffBimatrix
from .errors import DomainError, ValidationError

ALIGNED = "aligned"
CROSSED = "crossed"
PAIRINGS = (ALIGNED, CROSSED)


def _check_prob(x, name: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float, np.floating, np.integer)):
        raise ValidationError(f"{name} must be a real number, got {x!r}")
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"{name}={x!r} outside [0, 1]")
    return float(x)


@dataclass(frozen=True)
class EntangledInitialState:
    a: complex
    b: complex
    pairing: str = ALIGNED

    def __post_init__(self):
        if self.pairing not in PAIRINGS:
            raise ValidationError(f"pairing must be one of {PAIRINGS}, got {self.pairing!r}")
        a, b = complex(self.a), complex(self.b)
        if not (cmath.isfinite(a) and cmath.isfinite(b)):
            raise ValidationError("amplitudes must be finite")
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"|a|^2 + |b|^2 = {norm!r}, expected 1")

    @classmethod
    def from_b2(cls, b2: float, pairing: str = ALIGNED) -> "EntangledInitialState":
        b2 = _check_prob(b2, "|b|^2")
        return cls(math.sqrt(1.0 - b2), math.sqrt(b2), pairing)

    @property
    def a2(self) -> float:
        return abs(complex(self.a)) ** 2

    @property
    def b2(self) -> float:
        return abs(complex(self.b)) ** 2

    def vector(self) -> np.ndarray:
        psi = np.zeros(4, dtype=complex)
        if self.pairing == ALIGNED:
            psi[0], psi[3] = self.a, self.b
        else:
            psi[1], psi[2] = self.a, self.b
        return psi


@dataclass(frozen=True)
class TacticProfile:
    """Probabilities with which the row (p) and column (q) player apply the identity."""

    p: float
    q: float

    def __post_init__(self):
        _check_prob(self.p, "p")
        _check_prob(self.q, "q")

    def astuple(self) -> tuple[float, float]:
        return (self.p, self.q)


def mw_final_density(init: EntangledInitialState, t: TacticProfile) -> np.ndarray:
    rho = quantum.pure_density(init.vector())
    out = np.zeros((4, 4), dtype=complex)
    for wa, opa in ((t.p, quantum.IDENTITY2), (1 - t.p, quantum.SIGMA_X)):
        for wb, opb in ((t.q, quantum.IDENTITY2), (1 - t.q, quantum.SIGMA_X)):
            if wa * wb == 0.0:
                continue
            k = quantum.kron2(opa, opb)
            out += wa * wb * (k @ rho @ k.conj().T)
    return out


def mw_payoffs(m: PayoffBimatrix, init: EntangledInitialState, t: TacticProfile) -> tuple[float, float]:
    """Expected payoffs from a computational-basis measurement of the final state."""
    if not isinstance(m, PayoffBimatrix):
        raise ValidationError("m must be a PayoffBimatrix")
    probs = quantum.measure_probabilities(mw_final_density(init, t))
    return float(probs @ m.row_payoffs), float(probs @ m.col_payoffs)


def corner_payoffs(m: PayoffBimatrix, init: EntangledInitialState) -> tuple[np.ndarray, np.ndarray]:
    """Payoff tables at pure tactics; index 0 is identity, 1 is spin flip.

    The final density is linear in the tactic weights, so
    P(p, q) = [p, 1-p] @ T @ [q, 1-q] exactly.
    """
    ta = np.empty((2, 2))
    tb = np.empty((2, 2))
    for i, p in enumerate((1.0, 0.0)):
        for j, q in enumerate((1.0, 0.0)):
            ta[i, j], tb[i, j] = mw_payoffs(m, init, TacticProfile(p, q))
    return ta, tb


def bilinear(table: np.ndarray, p, q) -> np.ndarray:
    """Evaluate [p, 1-p] @ table @ [q, 1-q], broadcasting over p and q."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return (
        p * q * table[0, 0]
        + p * (1 - q) * table[0, 1]
        + (1 - p) * q * table[1, 0]
        + (1 - p) * (1 - q) * table[1, 1]
    )


def mw_payoffs_closed_form(m: PayoffBimatrix, b2: float, p: float, q: float, pairing: str = ALIGNED) -> tuple[float, float]:
    """Literal expansion for the aligned state; crossed uses q -> 1 - q."""
    if pairing == CROSSED:
        q = 1.0 - q
    elif pairing != ALIGNED:
        raise ValidationError(f"unknown pairing {pairing!r}")
    A, B = 1.0 - b2, b2
    same_o = p * q * A + (1 - p) * (1 - q) * B
    row_o = p * (1 - q) * A + q * (1 - p) * B
    row_t = p * (1 - q) * B + q * (1 - p) * A
    same_t = p * q * B + (1 - p) * (1 - q) * A
    pa = m.alpha1 * same_o + m.beta1 * row_o + m.gamma1 * row_t + m.sigma1 * same_t
    pb = m.alpha2 * same_o + m.beta2 * row_o + m.gamma2 * row_t + m.sigma2 * same_t
    return pa, pb


def pd_payoffs_closed_form(b2: float, p: float, q: float) -> tuple[float, float]:
    """Prisoner's Dilemma on a|CC> + b|DD>, written out term by term."""
    A, B = 1.0 - b2, b2
    pa = (3 * (p * q * A + (1 - p) * (1 - q) * B)
          + 5 * (p * (1 - q) * B + q * (1 - p) * A)
          + (p * q * B + (1 - p) * (1 - q) * A))
    pb = (3 * (p * q * A + (1 - p) * (1 - q) * B)
          + 5 * (p * (1 - q) * A + q * (1 - p) * B)
          + (p * q * B + (1 - p) * (1 - q) * A))
    return pa, pb


def pd_symmetric_payoff(t_self: float, t_opp: float, b2: float) -> float:
    """Payoff to a PD player using I w.p. ``t_self`` against one using it w.p. ``t_opp``."""
    p = _check_prob(t_self, "t_self")
    q = _check_prob(t_opp, "t_opp")
    B = _check_prob(b2, "b2")
    A = 1.0 - B
    return (3 * (p * q * A + (1 - p) * (1 - q) * B)
            + 5 * (p * (1 - q) * B + q * (1 - p) * A)
            + (p * q * B + (1 - p) * (1 - q) * A))


def bos_crossed_payoffs_closed_form(alpha: float, beta: float, gamma: float, b2: float, p: float, q: float) -> tuple[float, float]:
    """Battle of the Sexes on a|OT> + b|TO>, reference closed form.

    The row payoff agrees with the measured one.  The reference column
    payoff has |a|^2 and |b|^2 exchanged: measured minus reference equals
    (alpha - beta)(|a|^2 - |b|^2)(q - p).
    """
    A, B = 1.0 - b2, b2
    s = alpha + beta - 2 * gamma
    pa = p * (-q * s + alpha * A + beta * B - gamma) + q * (alpha * B + beta * A - gamma) + gamma
    pb = q * (-p * s + beta * A + alpha * B - gamma) + p * (beta * B + alpha * A - gamma) + gamma
    return pa, pb
