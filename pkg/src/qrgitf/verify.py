"""Closed form vs oracle comparisons and the block-projection check, as one report."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures.closed import MeasureId, closed_form
from .measures.oracles import (
    chsh_direct,
    oracle_chsh,
    oracle_discord,
    oracle_mid,
    oracle_min_gqd,
    oracle_negativity,
    oracle_quantum_deficit,
)
from .rgflow import Coupling, ground_state, verify_effective_hamiltonian

DEFAULT_TOL = 1e-9
DISCORD_TOL = 1e-6
CHSH_DIRECT_TOL = 1e-4
PROJECTION_TOL = 1e-8
VERIFY_FIELDS = tuple(np.linspace(0.0, 2.5, 101))
PROJECTION_FIELDS = (0.25, 0.5, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class Check:
    name: str
    g: float
    expected: float
    got: float
    tol: float

    @property
    def delta(self):
        return abs(self.expected - self.got)

    @property
    def passed(self):
        return self.delta <= self.tol


def oracle_checks(fields=VERIFY_FIELDS, tol=None, direct_chsh=True):
    """Compare every closed form with its oracle on the ground state at each field.

    ``tol`` replaces all per-check tolerances when given.
    """
    checks = []
    for g in fields:
        g = float(g)
        rho = ground_state(g).rho
        mn, gq = oracle_min_gqd(rho)
        pairs = [
            (MeasureId.NEGATIVITY, oracle_negativity(rho), DEFAULT_TOL),
            (MeasureId.QD, oracle_discord(rho), DISCORD_TOL),
            (MeasureId.MID, oracle_mid(rho), DEFAULT_TOL),
            (MeasureId.MIN, mn, DEFAULT_TOL),
            (MeasureId.GQD, gq, DEFAULT_TOL),
            (MeasureId.QDEFICIT, oracle_quantum_deficit(rho), DEFAULT_TOL),
            (MeasureId.CHSH, oracle_chsh(rho), DEFAULT_TOL),
        ]
        for m, got, t in pairs:
            checks.append(Check(m.value, g, closed_form(m, g), got, tol if tol is not None else t))
        if direct_chsh:
            t = tol if tol is not None else CHSH_DIRECT_TOL
            checks.append(Check("chsh-direct", g, closed_form(MeasureId.CHSH, g), chsh_direct(rho), t))
    return checks


def projection_checks(fields=PROJECTION_FIELDS, tol=None, J=1.0):
    checks = []
    for g in fields:
        rep = verify_effective_hamiltonian(Coupling(J=J, g=float(g)), tol=tol if tol is not None else PROJECTION_TOL)
        got = rep.half_gap if rep.degenerate else float("nan")
        checks.append(Check("projection", float(g), rep.expected_half_gap, got, rep.tol))
    return checks


def run_all(tol=None):
    return oracle_checks(tol=tol) + projection_checks(tol=tol)
