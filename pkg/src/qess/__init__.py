"""Evolutionary stability in quantized 2x2 games.

Payoffs under the Eisert (unitary strategies) and Marinatto-Weber
(probabilistic identity/spin-flip tactics) schemes, Nash and ESS
classification, and mutant-invasion dynamics.
"""

__version__ = "0.1.0"

from .bimatrix import GAME_28, GAME_29, PRESETS, PRISONERS_DILEMMA, PayoffBimatrix, battle_of_sexes
from .eisert import C, D, Q, QuantumStrategy, eisert_payoffs
from .equilibrium import EquilibriumReport, bos_ne, ess_region_scan, mw_pd_symmetric_ne, symmetric_ess_check, verify_nash
from .errors import DomainError, NumericDegeneracyError, ValidationError
from .invasion import ContestTable, PopulationState, case_study, fitness, invasion_barrier, replicator_trajectory
from .mw import EntangledInitialState, TacticProfile, mw_payoffs

__all__ = [
    "C", "D", "Q", "GAME_28", "GAME_29", "PRESETS", "PRISONERS_DILEMMA",
    "ContestTable", "DomainError", "EntangledInitialState", "EquilibriumReport",
    "NumericDegeneracyError", "PayoffBimatrix", "PopulationState", "QuantumStrategy",
    "TacticProfile", "ValidationError", "battle_of_sexes", "bos_ne", "case_study",
    "eisert_payoffs", "ess_region_scan", "fitness", "invasion_barrier", "mw_payoffs",
    "mw_pd_symmetric_ne", "replicator_trajectory", "symmetric_ess_check", "verify_nash",
]
