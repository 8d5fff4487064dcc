"""Closed-form correlation measures and their definition-level oracles."""
from .closed import (
    LIMITS,
    RANGES,
    UNITS,
    MeasureId,
    MeasureValue,
    chsh_max_closed,
    closed_form,
    discord_mid_closed,
    evaluate,
    min_gqd_closed,
    negativity_closed,
    quantum_deficit_closed,
)
from .oracles import (
    chsh_direct,
    oracle_chsh,
    oracle_discord,
    oracle_mid,
    oracle_min_gqd,
    oracle_negativity,
    oracle_quantum_deficit,
)

__all__ = [
    "LIMITS",
    "RANGES",
    "UNITS",
    "MeasureId",
    "MeasureValue",
    "chsh_direct",
    "chsh_max_closed",
    "closed_form",
    "discord_mid_closed",
    "evaluate",
    "min_gqd_closed",
    "negativity_closed",
    "oracle_chsh",
    "oracle_discord",
    "oracle_mid",
    "oracle_min_gqd",
    "oracle_negativity",
    "oracle_quantum_deficit",
    "quantum_deficit_closed",
]
