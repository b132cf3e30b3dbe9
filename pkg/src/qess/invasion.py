"""Fitness, invasion barriers and replicator dynamics for incumbent-vs-mutant contests."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bimatrix import PRISONERS_DILEMMA
from .eisert import (
    D,
    D1,
    ONE_PARAMETER,
    Q,
    TWO_PARAMETER,
    QuantumStrategy,
    closed_form_case_a,
    closed_form_case_b,
    closed_form_case_c,
    eisert_payoffs,
)
from .equilibrium import TIE_TOL, EquilibriumReport, symmetric_ess_check
from .errors import DomainError, NumericDegeneracyError, ValidationError

EXTINCT_BELOW = 1e-6
FIXATED_ABOVE = 1 - 1e-6
DEFAULT_STEPS = 200
DEFAULT_EPS = 0.01

RESISTS = "resists"
INVADED = "invaded"


@dataclass(frozen=True)
class ContestTable:
    """Pairwise payoffs between incumbent A and mutant B.

    ``ab`` is the payoff to A when meeting B, and so on.
    """

    aa: float
    ab: float
    ba: float
    bb: float

    def __post_init__(self):
        for name in ("aa", "ab", "ba", "bb"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"contest payoff {name} is not finite")

    def payoff(self, x: str, y: str) -> float:
        return getattr(self, (x + y).lower())

    def as_array(self) -> np.ndarray:
        return np.array([[self.aa, self.ab], [self.ba, self.bb]], dtype=float)


@dataclass(frozen=True)
class PopulationState:
    f_a: float
    f_b: float

    def __post_init__(self):
        for name in ("f_a", "f_b"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise DomainError(f"{name}={v!r} outside [0, 1]")
        if abs(self.f_a + self.f_b - 1.0) > 1e-12:
            raise ValidationError(f"frequencies sum to {self.f_a + self.f_b!r}")

    @classmethod
    def with_mutants(cls, eps: float) -> "PopulationState":
        return cls(1.0 - eps, eps)


def fitness(table: ContestTable, pop: PopulationState) -> tuple[float, float]:
    w_a = table.aa * pop.f_a + table.ab * pop.f_b
    w_b = table.ba * pop.f_a + table.bb * pop.f_b
    return w_a, w_b


def invasion_barrier(table: ContestTable, tol: float = TIE_TOL) -> float:
    """Largest eps0 such that A strictly outscores B against (1-eps)A + eps B on (0, eps0).

    The advantage of A is linear in eps, going from d0 = aa - ba at eps = 0
    to d1 = ab - bb at eps = 1, so eps0 is where that line crosses zero.
    """
    d0 = table.aa - table.ba
    d1 = table.ab - table.bb
    if abs(d0) <= tol:
        return 1.0 if d1 > tol else 0.0
    if d0 < 0:
        return 0.0
    if d1 >= 0:
        return 1.0
    return d0 / (d0 - d1)


def fitness_shift(table: ContestTable) -> float:
    lo = min(table.aa, table.ab, table.ba, table.bb)
    return 1.0 - lo if lo <= 0 else 0.0


def replicator_step(table: ContestTable, pop: PopulationState, shift: float = 0.0) -> PopulationState:
    w_a, w_b = fitness(table, pop)
    w_a += shift
    w_b += shift
    mean = pop.f_a * w_a + pop.f_b * w_b
    if not math.isfinite(mean) or mean <= 0:
        raise NumericDegeneracyError(f"mean fitness {mean!r} is not positive")
    f_b = pop.f_b * w_b / mean
    f_b = min(max(f_b, 0.0), 1.0)
    return PopulationState(1.0 - f_b, f_b)


def replicator_trajectory(table: ContestTable, eps_init: float = DEFAULT_EPS, steps: int = DEFAULT_STEPS) -> np.ndarray:
    """Mutant frequencies F_B(0..steps) under the discrete replicator map.

    Payoffs are shifted by 1 - min(entry) when some entry is <= 0 so both
    fitnesses stay positive; the shift does not change who is fitter.
    """
    if not (0.0 < eps_init < 1.0):
        raise DomainError(f"eps_init={eps_init!r} must lie in (0, 1)")
    if steps < 1:
        raise DomainError("steps must be >= 1")
    shift = fitness_shift(table)
    pop = PopulationState.with_mutants(eps_init)
    out = np.empty(steps + 1)
    out[0] = pop.f_b
    for k in range(1, steps + 1):
        pop = replicator_step(table, pop, shift)
        out[k] = pop.f_b
    return out


def trajectory_outcome(traj: np.ndarray) -> str:
    if traj[-1] < EXTINCT_BELOW:
        return "extinct"
    if traj[-1] > FIXATED_ABOVE:
        return "fixated"
    return "persists"


CASES = {
    # case -> (incumbent, required mutant kind)
    "A": (D1, ONE_PARAMETER),
    "B": (D, TWO_PARAMETER),
    "C": (Q, TWO_PARAMETER),
}


def _check_case(case: str, mutant: QuantumStrategy) -> QuantumStrategy:
    if case not in CASES:
        raise ValidationError(f"unknown case {case!r}; expected one of {sorted(CASES)}")
    if not isinstance(mutant, QuantumStrategy):
        raise ValidationError("mutant must be a QuantumStrategy")
    incumbent, kind = CASES[case]
    if mutant.kind != kind:
        raise ValidationError(f"case {case} needs a {kind} mutant, got {mutant.kind}")
    if mutant.same_operator(incumbent):
        raise ValidationError(f"mutant coincides with the case {case} incumbent and is ruled out")
    return incumbent


def case_table(case: str, mutant: QuantumStrategy, source: str = "pipeline") -> ContestTable:
    """Contest payoffs for one of the three Prisoner's Dilemma invasion scenarios.

    ``source="pipeline"`` evaluates the quantum game directly;
    ``source="closed_form"`` uses the reference closed forms (the mutant-vs-mutant
    entry for case C comes from the case B formula, which does not depend on
    the incumbent).
    """
    incumbent = _check_case(case, mutant)
    if source == "pipeline":
        pa = lambda x, y: eisert_payoffs(PRISONERS_DILEMMA, x, y)[0]  # noqa: E731
        return ContestTable(pa(incumbent, incumbent), pa(incumbent, mutant),
                            pa(mutant, incumbent), pa(mutant, mutant))
    if source != "closed_form":
        raise ValidationError(f"unknown payoff source {source!r}")
    t, f = mutant.theta, mutant.phi
    if case == "A":
        a = closed_form_case_a(t)
        return ContestTable(a.d_d, a.d_theta, a.theta_d, a.theta_theta)
    b = closed_form_case_b(t, f)
    if case == "B":
        return ContestTable(b.d_d, b.d_u, b.u_d, b.u_u)
    c = closed_form_case_c(t, f)
    return ContestTable(c.q_q, c.q_u, c.u_q, b.u_u)


@dataclass(frozen=True)
class CaseStudy:
    case: str
    mutant: QuantumStrategy
    table: ContestTable
    ess: EquilibriumReport
    barrier: float
    trajectory: np.ndarray
    outcome: str
    verdict: str


def contest_ess(table: ContestTable, tol: float = TIE_TOL) -> EquilibriumReport:
    """Symmetric ESS rule restricted to the two strategies of the contest."""
    return symmetric_ess_check(table.payoff, "A", ["B"], tol=tol)


def case_study(
    case: str,
    mutant: QuantumStrategy,
    *,
    eps_init: float = DEFAULT_EPS,
    steps: int = DEFAULT_STEPS,
    source: str = "pipeline",
    tol: float = TIE_TOL,
) -> CaseStudy:
    table = case_table(case, mutant, source)
    ess = contest_ess(table, tol)
    barrier = invasion_barrier(table, tol)
    traj = replicator_trajectory(table, eps_init, steps)
    return CaseStudy(
        case=case,
        mutant=mutant,
        table=table,
        ess=ess,
        barrier=barrier,
        trajectory=traj,
        outcome=trajectory_outcome(traj),
        verdict=RESISTS if ess.is_ess else INVADED,
    )


def verdict_flip(case: str, theta: float, lo: float, hi: float, tol: float = 1e-7, **kw) -> float:
    """Bisect on phi for the point where the case verdict changes.

    ``lo`` and ``hi`` must bracket a single change of verdict.
    """
    def verdict(phi):
        return case_study(case, QuantumStrategy.two(theta, phi), steps=1, **kw).verdict

    v_lo, v_hi = verdict(lo), verdict(hi)
    if v_lo == v_hi:
        raise DomainError(f"verdict is {v_lo!r} at both ends of [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if verdict(mid) == v_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
