import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qess import quantum
from qess.bimatrix import GAME_28, GAME_29, PRISONERS_DILEMMA as PD
from qess.bimatrix import battle_of_sexes, classical_expectation
from qess.errors import DomainError, ValidationError
from qess.mw import (
    ALIGNED,
    CROSSED,
    EntangledInitialState,
    TacticProfile,
    bilinear,
    bos_crossed_payoffs_closed_form,
    corner_payoffs,
    mw_final_density,
    mw_payoffs,
    mw_payoffs_closed_form,
    pd_payoffs_closed_form,
    pd_symmetric_payoff,
)

BOS = battle_of_sexes(3, 2, 1)
GRID = np.linspace(0, 1, 11)
unit = st.floats(0, 1)


def test_identity_tactics_leave_state_alone():
    init = EntangledInitialState.from_b2(0.3)
    rho = quantum.pure_density(init.vector())
    np.testing.assert_allclose(mw_final_density(init, TacticProfile(1, 1)), rho, atol=1e-15)


def test_double_flip_swaps_weights():
    init = EntangledInitialState.from_b2(0.3)
    probs = quantum.measure_probabilities(mw_final_density(init, TacticProfile(0, 0)))
    np.testing.assert_allclose(probs, [0.3, 0, 0, 0.7], atol=1e-15)


def test_single_flip_moves_support_off_diagonal():
    init = EntangledInitialState.from_b2(0.3)
    probs = quantum.measure_probabilities(mw_final_density(init, TacticProfile(1, 0)))
    assert probs[0] == probs[3] == 0
    assert probs[1] == pytest.approx(0.7) and probs[2] == pytest.approx(0.3)


def test_crossed_state_vector():
    v = EntangledInitialState.from_b2(0.25, CROSSED).vector()
    np.testing.assert_allclose(v, [0, np.sqrt(0.75), 0.5, 0])


@pytest.mark.parametrize(
    "kw, exc",
    [
        (dict(a=1, b=1), ValidationError),
        (dict(a=1, b=0, pairing="diagonal"), ValidationError),
        (dict(a=float("nan"), b=0), ValidationError),
    ],
)
def test_initial_state_validation(kw, exc):
    with pytest.raises(exc):
        EntangledInitialState(**kw)


def test_b2_and_tactic_domains():
    with pytest.raises(DomainError):
        EntangledInitialState.from_b2(1.2)
    with pytest.raises(DomainError):
        TacticProfile(0.5, -0.1)
    with pytest.raises(ValidationError):
        TacticProfile("0.5", 0.5)


def test_complex_amplitudes_only_enter_through_moduli():
    z = EntangledInitialState(0.6j, -0.8)
    r = EntangledInitialState(0.6, 0.8)
    t = TacticProfile(0.3, 0.9)
    assert mw_payoffs(PD, z, t) == pytest.approx(mw_payoffs(PD, r, t), abs=1e-12)


def test_pd_examples():
    assert mw_payoffs(PD, EntangledInitialState.from_b2(0), TacticProfile(1, 1)) == pytest.approx((3, 3), abs=1e-12)
    assert mw_payoffs(PD, EntangledInitialState.from_b2(1), TacticProfile(1, 1)) == pytest.approx((1, 1), abs=1e-12)


@pytest.mark.parametrize("b2", [0.0, 0.3, 1.0])
def test_bos_crossed_row_payoffs(b2):
    init = EntangledInitialState.from_b2(b2, CROSSED)
    # both players flip: the state keeps its crossed support, row player sees gamma
    assert mw_payoffs(BOS, init, TacticProfile(0, 0))[0] == pytest.approx(1.0, abs=1e-12)
    # only the column player keeps identity
    assert mw_payoffs(BOS, init, TacticProfile(0, 1))[0] == pytest.approx(2 + b2, abs=1e-12)


@pytest.mark.parametrize("m", [PD, BOS, GAME_28, GAME_29], ids=["pd", "bos", "game28", "game29"])
@pytest.mark.parametrize("pairing", [ALIGNED, CROSSED])
def test_closed_form_equivalence_on_grid(m, pairing):
    for b2 in GRID:
        init = EntangledInitialState.from_b2(b2, pairing)
        ta, tb = corner_payoffs(m, init)
        for p, q in itertools.product(GRID, GRID):
            got = mw_payoffs(m, init, TacticProfile(p, q))
            assert got == pytest.approx(mw_payoffs_closed_form(m, b2, p, q, pairing), abs=1e-12)
            assert got == pytest.approx((bilinear(ta, p, q), bilinear(tb, p, q)), abs=1e-12)


def test_pd_literal_form():
    for b2, p, q in itertools.product(GRID, GRID, GRID):
        got = mw_payoffs(PD, EntangledInitialState.from_b2(b2), TacticProfile(p, q))
        assert got == pytest.approx(pd_payoffs_closed_form(b2, p, q), abs=1e-12)


@pytest.mark.parametrize("m", [PD, BOS, GAME_28, GAME_29], ids=["pd", "bos", "game28", "game29"])
def test_classical_reduction(m):
    init = EntangledInitialState.from_b2(0.0)
    for p, q in itertools.product(GRID, GRID):
        assert mw_payoffs(m, init, TacticProfile(p, q)) == pytest.approx(classical_expectation(m, p, q), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(unit, unit, unit)
def test_pd_stays_symmetric(b2, p, q):
    init = EntangledInitialState.from_b2(b2)
    pa, _ = mw_payoffs(PD, init, TacticProfile(p, q))
    _, pb = mw_payoffs(PD, init, TacticProfile(q, p))
    assert abs(pa - pb) <= 1e-12
    assert abs(pa - pd_symmetric_payoff(p, q, b2)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(unit, unit, unit, st.sampled_from([ALIGNED, CROSSED]))
def test_final_density_is_valid(b2, p, q, pairing):
    rho = mw_final_density(EntangledInitialState.from_b2(b2, pairing), TacticProfile(p, q))
    quantum.check_density(rho)
    assert abs(np.real(np.trace(rho)) - 1) <= 1e-9


@pytest.mark.parametrize("q", np.linspace(0, 1, 11))
def test_symmetric_pd_payoff_at_one_third(q):
    b2 = 1 / 3
    assert pd_symmetric_payoff(0, q, b2) == pytest.approx(5 / 3 * (q + 1), abs=1e-12)
    assert pd_symmetric_payoff(q, q, b2) == pytest.approx(-q * q + 5 / 3 * (q + 1), abs=1e-12)


def test_symmetric_pd_payoff_values_and_domain():
    assert pd_symmetric_payoff(1, 1, 0) == 3
    with pytest.raises(DomainError):
        pd_symmetric_payoff(1.5, 0, 0)
    with pytest.raises(DomainError):
        pd_symmetric_payoff(0, 0, -0.1)


def test_bos_crossed_reference_row_payoff_agrees():
    for b2, p, q in itertools.product(GRID, GRID, GRID):
        got = mw_payoffs(BOS, EntangledInitialState.from_b2(b2, CROSSED), TacticProfile(p, q))
        assert got[0] == pytest.approx(bos_crossed_payoffs_closed_form(3, 2, 1, b2, p, q)[0], abs=1e-12)


def test_bos_crossed_reference_column_payoff_offset():
    # the reference column payoff has the two weights exchanged
    for b2, p, q in itertools.product(GRID, GRID, GRID):
        got = mw_payoffs(BOS, EntangledInitialState.from_b2(b2, CROSSED), TacticProfile(p, q))[1]
        reference = bos_crossed_payoffs_closed_form(3, 2, 1, b2, p, q)[1]
        assert got - reference == pytest.approx((3 - 2) * ((1 - b2) - b2) * (q - p), abs=1e-12)


def test_bilinear_broadcasts():
    ta, _ = corner_payoffs(PD, EntangledInitialState.from_b2(0.4))
    out = bilinear(ta, GRID[:, None], GRID[None, :])
    assert out.shape == (11, 11)
    assert out[3, 7] == pytest.approx(bilinear(ta, GRID[3], GRID[7]))


def test_payoffs_reject_non_bimatrix():
    with pytest.raises(ValidationError):
        mw_payoffs([[3, 0], [5, 1]], EntangledInitialState.from_b2(0), TacticProfile(1, 1))
