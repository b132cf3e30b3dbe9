"""Nash equilibrium verification and ESS classification.

Two notions of evolutionary stability are used:

* symmetric games: A is stable against B if P(A,A) > P(B,A), or the two
  tie and P(A,B) > P(B,B);
* asymmetric games: a strategy pair is an ESS iff it is a strict NE.

Ties are decided with an absolute tolerance (``TIE_TOL``).
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .bimatrix import PRISONERS_DILEMMA, PayoffBimatrix, battle_of_sexes
from .errors import DomainError, ValidationError
from .mw import (
    ALIGNED,
    CROSSED,
    EntangledInitialState,
    TacticProfile,
    bilinear,
    corner_payoffs,
    mw_payoffs,
)

TIE_TOL = 1e-9
MIN_RESOLUTION = 101

ESS = "ESS"
NE_NOT_ESS = "NE-not-ESS"
NOT_NE = "not-NE"


@dataclass(frozen=True)
class Witness:
    label: str
    deviation: object
    difference: float


@dataclass(frozen=True)
class EquilibriumReport:
    candidate: object
    is_nash: bool
    is_strict: bool
    is_ess: bool
    witnesses: tuple[Witness, ...] = ()
    context: dict = field(default_factory=dict)
    tol: float = TIE_TOL

    def __post_init__(self):
        if self.is_ess and not self.is_nash:
            raise ValidationError("inconsistent report: ESS but not NE")
        if self.is_nash and any(w.difference < -self.tol for w in self.witnesses if w.label in ("A", "B", "first")):
            raise ValidationError("inconsistent report: negative payoff difference on a NE")

    @property
    def verdict(self) -> str:
        if self.is_ess:
            return ESS
        return NE_NOT_ESS if self.is_nash else NOT_NE

    def witness(self, label: str) -> Witness | None:
        return next((w for w in self.witnesses if w.label == label), None)


@dataclass(frozen=True)
class NEFamily:
    """An analytic NE family parametrized by |b|^2."""

    name: str
    description: str
    condition: Callable[[float], bool]
    profile: Callable[[float], float]

    def holds(self, b2: float) -> bool:
        return bool(self.condition(b2))

    def at(self, b2: float) -> TacticProfile:
        x = self.profile(b2)
        return TacticProfile(x, x)


def ne_payoff_differences(
    m: PayoffBimatrix,
    init: EntangledInitialState,
    star: TacticProfile,
    dev: TacticProfile,
) -> tuple[float, float]:
    """(P_A(p*,q*) - P_A(p,q*), P_B(p*,q*) - P_B(p*,q)) from measured payoffs."""
    pa_star, pb_star = mw_payoffs(m, init, star)
    pa_dev = mw_payoffs(m, init, TacticProfile(dev.p, star.q))[0]
    pb_dev = mw_payoffs(m, init, TacticProfile(star.p, dev.q))[1]
    return pa_star - pa_dev, pb_star - pb_dev


def ne_bracket_differences(
    m: PayoffBimatrix,
    init: EntangledInitialState,
    star: TacticProfile,
    dev: TacticProfile,
) -> tuple[float, float]:
    """Same differences in factored form, (p* - p) * slope_A(q*) and (q* - q) * slope_B(p*).

    The factorization is written for the aligned state; a crossed state is
    handled by mirroring the column player's tactic.
    """
    A, B = init.a2, init.b2
    q_star, q_dev = star.q, dev.q
    if init.pairing == CROSSED:
        q_star, q_dev = 1.0 - q_star, 1.0 - q_dev
    da1, dg1 = m.beta1 - m.sigma1, m.gamma1 - m.alpha1
    dg2, db2 = m.gamma2 - m.sigma2, m.beta2 - m.alpha2
    delta_a = (star.p - dev.p) * (A * da1 + B * dg1 - q_star * (da1 + dg1))
    delta_b = (q_star - q_dev) * (A * dg2 + B * db2 - star.p * (dg2 + db2))
    return delta_a, delta_b


def deviation_grid(resolution: int) -> np.ndarray:
    if resolution < MIN_RESOLUTION:
        raise DomainError(f"grid resolution {resolution} below minimum {MIN_RESOLUTION}")
    return np.unique(np.concatenate([np.linspace(0.0, 1.0, resolution), [0.0, 1.0]]))


def _min_excluding(deltas: np.ndarray, devs: np.ndarray, star: float) -> tuple[float, float]:
    mask = np.abs(devs - star) > 1e-12
    if not mask.any():
        return math.inf, star
    idx = np.argmin(np.where(mask, deltas, np.inf))
    return float(deltas[idx]), float(devs[idx])


def verify_nash(
    m: PayoffBimatrix,
    init: EntangledInitialState,
    star: TacticProfile,
    grid_resolution: int = 1001,
    tol: float = TIE_TOL,
) -> EquilibriumReport:
    """Grid check of all unilateral deviations; ESS here means strict NE."""
    devs = deviation_grid(grid_resolution)
    ta, tb = corner_payoffs(m, init)
    pa_star = float(bilinear(ta, star.p, star.q))
    pb_star = float(bilinear(tb, star.p, star.q))
    delta_a = pa_star - bilinear(ta, devs, star.q)
    delta_b = pb_star - bilinear(tb, star.p, devs)
    is_nash = bool(delta_a.min() >= -tol and delta_b.min() >= -tol)
    min_a, arg_a = _min_excluding(delta_a, devs, star.p)
    min_b, arg_b = _min_excluding(delta_b, devs, star.q)
    is_strict = bool(min_a > tol and min_b > tol)
    return EquilibriumReport(
        candidate=star,
        is_nash=is_nash,
        is_strict=is_strict,
        is_ess=is_nash and is_strict,
        witnesses=(Witness("A", arg_a, min_a), Witness("B", arg_b, min_b)),
        context={"b2": init.b2, "pairing": init.pairing, "grid_resolution": grid_resolution},
        tol=tol,
    )


def _default_same(x, y) -> bool:
    if isinstance(x, (int, float, np.floating)) and isinstance(y, (int, float, np.floating)):
        return abs(x - y) <= 1e-12
    return x == y


def symmetric_ess_check(
    payoff: Callable[[object, object], float],
    candidate,
    opponents: Iterable,
    tol: float = TIE_TOL,
    same: Callable[[object, object], bool] | None = None,
) -> EquilibriumReport:
    """Test a candidate against every listed opponent with the symmetric ESS rule.

    ``payoff(x, y)`` is the payoff to a player using ``x`` against one using ``y``.
    Opponents equal to the candidate (per ``same``) are skipped.
    """
    same = same or _default_same
    p_aa = payoff(candidate, candidate)
    first_min: tuple[float, object] = (math.inf, None)
    second_min: tuple[float, object] = (math.inf, None)
    failure = None
    is_nash = is_strict = is_ess = True
    n = 0
    for b in opponents:
        if same(b, candidate):
            continue
        n += 1
        first = p_aa - payoff(b, candidate)
        if first < first_min[0]:
            first_min = (first, b)
        is_nash &= first >= -tol
        is_strict &= first > tol
        if first > tol:
            continue
        stable = False
        if abs(first) <= tol:
            second = payoff(candidate, b) - payoff(b, b)
            if second < second_min[0]:
                second_min = (second, b)
            stable = second > tol
        if not stable:
            is_ess = False
            if failure is None:
                failure = b
    if n == 0:
        raise ValidationError("no opponents distinct from the candidate")
    witnesses = [Witness("first", first_min[1], first_min[0])]
    if second_min[1] is not None:
        witnesses.append(Witness("second", second_min[1], second_min[0]))
    return EquilibriumReport(
        candidate=candidate,
        is_nash=is_nash,
        is_strict=is_strict,
        is_ess=is_ess,
        witnesses=tuple(witnesses),
        context={"opponents": n, "first_failure": failure},
        tol=tol,
    )


_BOUNDARY_SLACK = 1e-12

PD_NE_FAMILIES = (
    NEFamily("defect", "p = q = 0 when 3|b|^2 <= 1",
             lambda b2: 3 * b2 <= 1 + _BOUNDARY_SLACK, lambda b2: 0.0),
    NEFamily("cooperate", "p = q = 1 when 3|b|^2 >= 2",
             lambda b2: 3 * b2 >= 2 - _BOUNDARY_SLACK, lambda b2: 1.0),
    NEFamily("interior", "p = q = 3|b|^2 - 1 when 1 < 3|b|^2 < 2",
             lambda b2: 1 + _BOUNDARY_SLACK < 3 * b2 < 2 - _BOUNDARY_SLACK, lambda b2: 3 * b2 - 1),
)


def mw_pd_symmetric_ne(b2: float) -> list[tuple[NEFamily, TacticProfile]]:
    """Symmetric NE of the entangled Prisoner's Dilemma valid at ``b2``."""
    if not (0.0 <= b2 <= 1.0):
        raise DomainError(f"b2={b2!r} outside [0, 1]")
    return [(fam, fam.at(b2)) for fam in PD_NE_FAMILIES if fam.holds(b2)]


def pd_symmetric_ess(b2: float, star: float, grid_resolution: int = 1001, tol: float = TIE_TOL) -> EquilibriumReport:
    """Symmetric ESS test of the tactic ``star`` in the entangled PD."""
    init = EntangledInitialState.from_b2(b2)
    ta, _ = corner_payoffs(PRISONERS_DILEMMA, init)
    return symmetric_ess_check(
        lambda x, y: float(bilinear(ta, x, y)), star, deviation_grid(grid_resolution), tol=tol
    )


def bos_interior_ne(alpha: float, beta: float, gamma: float, b2: float) -> TacticProfile:
    """Mixed NE of Battle of the Sexes on the aligned state a|OO> + b|TT>."""
    A, B = 1.0 - b2, b2
    s = alpha + beta - 2 * gamma
    return TacticProfile(((alpha - gamma) * A + (beta - gamma) * B) / s,
                         ((alpha - gamma) * B + (beta - gamma) * A) / s)


def bos_crossed_interior_ne(alpha: float, beta: float, gamma: float, b2: float) -> TacticProfile:
    """Mixed NE on the crossed state a|OT> + b|TO> (mirror of the aligned one)."""
    A, B = 1.0 - b2, b2
    x = (alpha * A + beta * B - gamma) / (alpha + beta - 2 * gamma)
    return TacticProfile(x, x)


def bos_crossed_reference_point(alpha: float, beta: float, gamma: float, b2: float) -> tuple[float, float]:
    """Reference mixed profile for the crossed state.

    Kept for comparison only: it is not an equilibrium of the crossed game
    except in special cases.
    """
    A, B = 1.0 - b2, b2
    d = alpha + beta - gamma
    return (beta * A + alpha * B - gamma) / d, (alpha * A + beta * B - gamma) / d


def bos_ne(
    alpha: float,
    beta: float,
    gamma: float,
    init: EntangledInitialState,
    grid_resolution: int = 1001,
    tol: float = TIE_TOL,
) -> list[EquilibriumReport]:
    """Equilibria of Battle of the Sexes from the analytic families, each grid-verified."""
    m = battle_of_sexes(alpha, beta, gamma)
    if init.pairing == ALIGNED:
        candidates = [("both-opera", TacticProfile(1.0, 1.0)),
                      ("both-television", TacticProfile(0.0, 0.0)),
                      ("mixed", bos_interior_ne(alpha, beta, gamma, init.b2))]
    else:
        candidates = [("row-identity", TacticProfile(1.0, 0.0)),
                      ("column-identity", TacticProfile(0.0, 1.0)),
                      ("mixed", bos_crossed_interior_ne(alpha, beta, gamma, init.b2))]
    out = []
    for name, star in candidates:
        rep = verify_nash(m, init, star, grid_resolution, tol)
        if rep.is_nash:
            out.append(_with_context(rep, family=name))
    return out


def _with_context(rep: EquilibriumReport, **extra) -> EquilibriumReport:
    return EquilibriumReport(rep.candidate, rep.is_nash, rep.is_strict, rep.is_ess,
                             rep.witnesses, {**rep.context, **extra}, rep.tol)


def candidate_profiles(m: PayoffBimatrix, init: EntangledInitialState) -> list[TacticProfile]:
    """Pure corners plus the profile where both players are indifferent, if it exists.

    Payoffs are bilinear in (p, q), so every isolated NE is one of these.
    Continua of equilibria (a slope vanishing identically) are only
    represented by their corners.
    """
    ta, tb = corner_payoffs(m, init)
    out = [TacticProfile(p, q) for p in (0.0, 1.0) for q in (0.0, 1.0)]
    # d P_A / dp = (ta01 - ta11) + q [(ta00 - ta10) - (ta01 - ta11)]
    a0, a1 = ta[0, 1] - ta[1, 1], (ta[0, 0] - ta[1, 0]) - (ta[0, 1] - ta[1, 1])
    # d P_B / dq = (tb10 - tb11) + p [(tb00 - tb01) - (tb10 - tb11)]
    b0, b1 = tb[1, 0] - tb[1, 1], (tb[0, 0] - tb[0, 1]) - (tb[1, 0] - tb[1, 1])
    if abs(a1) > 1e-12 and abs(b1) > 1e-12:
        q, p = -a0 / a1, -b0 / b1
        if 0.0 <= p <= 1.0 and 0.0 <= q <= 1.0:
            cand = TacticProfile(p, q)
            if not any(abs(c.p - p) <= 1e-12 and abs(c.q - q) <= 1e-12 for c in out):
                out.append(cand)
    return out


def mw_equilibria(
    m: PayoffBimatrix,
    init: EntangledInitialState,
    grid_resolution: int = 1001,
    tol: float = TIE_TOL,
) -> list[EquilibriumReport]:
    reports = (verify_nash(m, init, c, grid_resolution, tol) for c in candidate_profiles(m, init))
    return [r for r in reports if r.is_nash]


@dataclass(frozen=True)
class ScanPoint:
    b2: float
    verdict: str
    min_delta_a: float
    min_delta_b: float


@dataclass(frozen=True)
class ScanInterval:
    lo: float
    hi: float
    verdict: str


@dataclass(frozen=True)
class ScanResult:
    points: tuple[ScanPoint, ...]
    intervals: tuple[ScanInterval, ...]


def classify(
    m: PayoffBimatrix,
    init: EntangledInitialState,
    star: TacticProfile,
    grid_resolution: int = 1001,
    tol: float = TIE_TOL,
    symmetric: bool | None = None,
) -> tuple[str, EquilibriumReport]:
    """Verdict for one initial state.

    For a symmetric game and a symmetric candidate the symmetric ESS rule
    decides stability; otherwise ESS means strict NE.
    """
    rep = verify_nash(m, init, star, grid_resolution, tol)
    if symmetric is None:
        symmetric = m.is_symmetric and abs(star.p - star.q) <= 1e-12
    if not rep.is_nash:
        return NOT_NE, rep
    if rep.is_strict:
        return ESS, rep
    if symmetric:
        ta, _ = corner_payoffs(m, init)
        sym = symmetric_ess_check(lambda x, y: float(bilinear(ta, x, y)), star.p,
                                  deviation_grid(grid_resolution), tol=tol)
        if sym.is_ess:
            return ESS, rep
    return NE_NOT_ESS, rep


def ess_region_scan(
    m: PayoffBimatrix,
    star: TacticProfile,
    b2_grid: Sequence[float],
    pairing: str = ALIGNED,
    grid_resolution: int = 1001,
    tol: float = TIE_TOL,
    symmetric: bool | None = None,
) -> ScanResult:
    grid = [float(b) for b in b2_grid]
    if not grid:
        raise DomainError("empty b2 grid")
    if any(b < 0.0 or b > 1.0 for b in grid):
        raise DomainError("b2 grid must lie within [0, 1]")
    if any(x > y for x, y in zip(grid, grid[1:])):
        raise DomainError("b2 grid must be sorted ascending")

    points = []
    for b2 in grid:
        verdict, rep = classify(m, EntangledInitialState.from_b2(b2, pairing), star,
                                grid_resolution, tol, symmetric)
        points.append(ScanPoint(b2, verdict, rep.witness("A").difference, rep.witness("B").difference))

    intervals: list[ScanInterval] = []
    for pt in points:
        if intervals and intervals[-1].verdict == pt.verdict:
            intervals[-1] = ScanInterval(intervals[-1].lo, pt.b2, pt.verdict)
        else:
            intervals.append(ScanInterval(pt.b2, pt.b2, pt.verdict))
    return ScanResult(tuple(points), tuple(intervals))
