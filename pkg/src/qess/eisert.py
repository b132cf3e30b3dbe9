"""Eisert-style quantized 2x2 games with one- and two-parameter unitary strategies.

Pipeline: |CC> -> J -> U_A (x) U_B -> measure against the entangled basis
J|xy>, which is the same as undoing J before a computational-basis
measurement.  The closed forms for the three invasion scenarios
(classical ESS D against one- and two-parameter mutants, and the quantum
ESS Q against two-parameter mutants) are kept as separate, literal
functions so they can be checked against the pipeline.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import quantum
from .bimatrix import PRISONERS_DILEMMA, PayoffBimatrix
from .errors import DomainError, ValidationError

MAX_ENTANGLEMENT = math.pi / 2
ONE_PARAMETER = "one-parameter"
TWO_PARAMETER = "two-parameter"


def _check_theta(theta: float) -> float:
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta={theta!r} outside [0, pi]")
    return float(theta)


def _check_phi(phi: float) -> float:
    if not (0.0 <= phi <= math.pi / 2):
        raise DomainError(f"phi={phi!r} outside [0, pi/2]")
    return float(phi)


@dataclass(frozen=True)
class QuantumStrategy:
    """U(theta) when ``phi`` is None, otherwise U(theta, phi)."""

    theta: float
    phi: float | None = None

    def __post_init__(self):
        _check_theta(self.theta)
        if self.phi is not None:
            _check_phi(self.phi)

    @classmethod
    def one(cls, theta: float) -> "QuantumStrategy":
        return cls(theta)

    @classmethod
    def two(cls, theta: float, phi: float) -> "QuantumStrategy":
        return cls(theta, phi)

    @property
    def kind(self) -> str:
        return ONE_PARAMETER if self.phi is None else TWO_PARAMETER

    def unitary(self) -> np.ndarray:
        return strategy_unitary(self)

    def same_operator(self, other: "QuantumStrategy", atol: float = 1e-12) -> bool:
        """True when both strategies realize the same unitary (e.g. U(pi, phi) == D)."""
        return bool(np.allclose(self.unitary(), other.unitary(), rtol=0, atol=atol))


def strategy_unitary(s: QuantumStrategy) -> np.ndarray:
    theta = _check_theta(s.theta)
    phi = 0.0 if s.phi is None else _check_phi(s.phi)
    c, sn = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[np.exp(1j * phi) * c, sn], [-sn, np.exp(-1j * phi) * c]],
        dtype=complex,
    )


C1 = QuantumStrategy.one(0.0)
D1 = QuantumStrategy.one(math.pi)
C = QuantumStrategy.two(0.0, 0.0)
D = QuantumStrategy.two(math.pi, 0.0)
Q = QuantumStrategy.two(0.0, math.pi / 2)
ALIASES = {"C": C, "D": D, "Q": Q}


def _check_gamma(gamma: float) -> float:
    if not (0.0 <= gamma <= MAX_ENTANGLEMENT):
        raise DomainError(f"gamma={gamma!r} outside [0, pi/2]")
    return float(gamma)


def _as_strategy(s, name: str) -> QuantumStrategy:
    if not isinstance(s, QuantumStrategy):
        raise ValidationError(f"{name} must be a QuantumStrategy, got {type(s).__name__}")
    return s


def eisert_probabilities(sA: QuantumStrategy, sB: QuantumStrategy, gamma: float = MAX_ENTANGLEMENT) -> np.ndarray:
    """Outcome distribution over CC, CD, DC, DD via the density-matrix route."""
    J = quantum.entangler(_check_gamma(gamma))
    UA = strategy_unitary(_as_strategy(sA, "sA"))
    UB = strategy_unitary(_as_strategy(sB, "sB"))
    rho = quantum.pure_density(J[:, 0])
    K = quantum.tensor(UA, UB)
    sigma = K @ rho @ K.conj().T
    # columns of J are the measurement kets J|xy>
    return quantum.measure_probabilities(sigma, J)


def eisert_payoffs(
    m: PayoffBimatrix,
    sA: QuantumStrategy,
    sB: QuantumStrategy,
    gamma: float = MAX_ENTANGLEMENT,
) -> tuple[float, float]:
    if not isinstance(m, PayoffBimatrix):
        raise ValidationError("m must be a PayoffBimatrix")
    probs = eisert_probabilities(sA, sB, gamma)
    return float(probs @ m.row_payoffs), float(probs @ m.col_payoffs)


def eisert_payoffs_amplitude(
    m: PayoffBimatrix,
    sA: QuantumStrategy,
    sB: QuantumStrategy,
    gamma: float = MAX_ENTANGLEMENT,
) -> tuple[float, float]:
    """Same payoffs from |<xy| J^dagger (U_A (x) U_B) J |CC>|^2."""
    J = quantum.entangler(_check_gamma(gamma))
    K = quantum.kron2(strategy_unitary(sA), strategy_unitary(sB))
    amps = J.conj().T @ K @ J[:, 0]
    probs = np.abs(amps) ** 2
    return float(probs @ m.row_payoffs), float(probs @ m.col_payoffs)


class CaseA(NamedTuple):
    theta_d: float
    theta_theta: float
    d_theta: float
    d_d: float


class CaseB(NamedTuple):
    d_d: float
    d_u: float
    u_d: float
    u_u: float


class CaseC(NamedTuple):
    q_q: float
    u_q: float
    q_u: float


def closed_form_case_a(theta: float) -> CaseA:
    """One-parameter mutant U(theta) against D, maximally entangled PD, reference closed form."""
    _check_theta(theta)
    c2 = math.cos(theta / 2) ** 2
    s2 = math.sin(theta / 2) ** 2
    return CaseA(
        theta_d=s2,
        theta_theta=2 * c2 + 5 * c2 * s2 + 1,
        d_theta=5 * c2 + s2,
        d_d=1.0,
    )


def closed_form_case_b(theta: float, phi: float) -> CaseB:
    """Two-parameter mutant U(theta, phi) against D, reference closed form."""
    _check_theta(theta)
    _check_phi(phi)
    c2 = math.cos(theta / 2) ** 2
    s2 = math.sin(theta / 2) ** 2
    u_u = (
        3 * abs(math.cos(2 * phi) * c2) ** 2
        + 5 * c2 * s2 * abs(math.sin(phi) - math.cos(phi)) ** 2
        + abs(math.sin(2 * phi) * c2 + s2) ** 2
    )
    return CaseB(
        d_d=1.0,
        d_u=5 * math.cos(phi) ** 2 * c2 + s2,
        u_d=5 * math.sin(phi) ** 2 * c2 + s2,
        u_u=u_u,
    )


def closed_form_case_c(theta: float, phi: float) -> CaseC:
    """Two-parameter mutant U(theta, phi) against Q = U(0, pi/2), reference closed form."""
    _check_theta(theta)
    _check_phi(phi)
    c2 = math.cos(theta / 2) ** 2
    s2 = math.sin(theta / 2) ** 2
    u_q = (3 - 2 * math.cos(phi) ** 2) * c2
    return CaseC(q_q=3.0, u_q=u_q, q_u=u_q + 5 * s2)


def pipeline_case_a(theta: float, m: PayoffBimatrix = PRISONERS_DILEMMA, gamma: float = MAX_ENTANGLEMENT) -> CaseA:
    u = QuantumStrategy.one(theta)
    pa = lambda x, y: eisert_payoffs(m, x, y, gamma)[0]  # noqa: E731
    return CaseA(pa(u, D1), pa(u, u), pa(D1, u), pa(D1, D1))


def pipeline_case_b(theta: float, phi: float, m: PayoffBimatrix = PRISONERS_DILEMMA, gamma: float = MAX_ENTANGLEMENT) -> CaseB:
    u = QuantumStrategy.two(theta, phi)
    pa = lambda x, y: eisert_payoffs(m, x, y, gamma)[0]  # noqa: E731
    return CaseB(pa(D, D), pa(D, u), pa(u, D), pa(u, u))


def pipeline_case_c(theta: float, phi: float, m: PayoffBimatrix = PRISONERS_DILEMMA, gamma: float = MAX_ENTANGLEMENT) -> CaseC:
    u = QuantumStrategy.two(theta, phi)
    pa = lambda x, y: eisert_payoffs(m, x, y, gamma)[0]  # noqa: E731
    return CaseC(pa(Q, Q), pa(u, Q), pa(Q, u))


def strategy_grid(n_theta: int = 21, n_phi: int = 11) -> tuple[np.ndarray, np.ndarray]:
    """Uniform grids over [0, pi] and [0, pi/2]; endpoints and midpoints are exact."""
    return np.linspace(0.0, math.pi, n_theta), np.linspace(0.0, math.pi / 2, n_phi)


@dataclass(frozen=True)
class OracleRow:
    case: str
    quantity: str
    theta: float
    phi: float
    pipeline: float
    closed_form: float

    @property
    def difference(self) -> float:
        return self.pipeline - self.closed_form

    def agrees(self, tol: float = 1e-9) -> bool:
        return abs(self.difference) <= tol


def oracle_comparison(n_theta: int = 21, n_phi: int = 11) -> list[OracleRow]:
    """Pipeline vs closed form for all three cases on the (theta, phi) grid.

    Case A has no phi dependence; its rows carry phi = 0.
    """
    thetas, phis = strategy_grid(n_theta, n_phi)
    rows: list[OracleRow] = []
    for t in thetas:
        pipe, lit = pipeline_case_a(t), closed_form_case_a(t)
        rows.extend(OracleRow("A", k, t, 0.0, getattr(pipe, k), getattr(lit, k)) for k in CaseA._fields)
    for t in thetas:
        for f in phis:
            pipe_b, lit_b = pipeline_case_b(t, f), closed_form_case_b(t, f)
            rows.extend(OracleRow("B", k, t, f, getattr(pipe_b, k), getattr(lit_b, k)) for k in CaseB._fields)
            pipe_c, lit_c = pipeline_case_c(t, f), closed_form_case_c(t, f)
            rows.extend(OracleRow("C", k, t, f, getattr(pipe_c, k), getattr(lit_c, k)) for k in CaseC._fields)
    return rows


def write_oracle_report(rows, path, tol: float = 1e-9, only_discrepancies: bool = True) -> int:
    """Write pipeline/closed-form pairs to CSV; returns the number of rows written."""
    selected = [r for r in rows if not (only_discrepancies and r.agrees(tol))]
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["case", "quantity", "theta", "phi", "pipeline", "closed_form", "difference"])
        for r in selected:
            w.writerow([r.case, r.quantity, f"{r.theta:.12g}", f"{r.phi:.12g}",
                        f"{r.pipeline:.12g}", f"{r.closed_form:.12g}", f"{r.difference:.6e}"])
    return len(selected)
