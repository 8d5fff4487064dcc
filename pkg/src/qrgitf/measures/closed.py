"""Closed-form correlation measures of the block ground state.

Every function takes a bare field ``g`` (float or array) or a
``FlowedCoupling``. Internally everything is written in terms of
``ln g`` so that flowed fields up to ``exp(+-690)`` evaluate without
overflow; beyond that the saturated limits are returned.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..rgflow import FlowedCoupling

LN2 = math.log(2.0)


class MeasureId(str, enum.Enum):
    NEGATIVITY = "neg"
    QD = "qd"
    MID = "mid"
    MIN = "min"
    GQD = "gqd"
    QDEFICIT = "qde"
    CHSH = "chsh"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        for m in cls:
            if key in (m.value, m.name.lower()):
                return m
        aliases = {"negativity": cls.NEGATIVITY, "discord": cls.QD, "deficit": cls.QDEFICIT, "bell": cls.CHSH}
        if key in aliases:
            return aliases[key]
        raise DomainError(f"unknown measure {name!r}; expected one of {[m.value for m in cls]}")


UNITS = {
    MeasureId.NEGATIVITY: "dimensionless",
    MeasureId.QD: "bits",
    MeasureId.MID: "bits",
    MeasureId.MIN: "dimensionless",
    MeasureId.GQD: "dimensionless",
    MeasureId.QDEFICIT: "nats",
    MeasureId.CHSH: "dimensionless",
}

# (ordered limit g -> 0, disordered limit g -> inf)
LIMITS = {
    MeasureId.NEGATIVITY: (0.5, 0.0),
    MeasureId.QD: (1.0, 0.0),
    MeasureId.MID: (1.0, 0.0),
    MeasureId.MIN: (0.5, 0.0),
    MeasureId.GQD: (0.5, 0.0),
    MeasureId.QDEFICIT: (LN2, 0.0),
    MeasureId.CHSH: (2.0 * math.sqrt(2.0), 2.0),
}

# value ranges of the closed forms; on mixed states the MID and deficit
# oracles can exceed 1 bit and ln 2 nats (up to 2 bits and 2 ln 2)
RANGES = {
    MeasureId.NEGATIVITY: (0.0, 0.5),
    MeasureId.QD: (0.0, 1.0),
    MeasureId.MID: (0.0, 1.0),
    MeasureId.MIN: (0.0, 0.5),
    MeasureId.GQD: (0.0, 0.5),
    MeasureId.QDEFICIT: (0.0, LN2),
    MeasureId.CHSH: (0.0, 2.0 * math.sqrt(2.0)),
}


@dataclass(frozen=True)
class MeasureValue:
    value: float
    units: str


def _entanglement_nats(log_g):
    ln_s = np.arcsinh(np.exp(log_g))
    ln_norm = np.logaddexp(0.0, 2.0 * ln_s)
    ln_a2 = 2.0 * ln_s - ln_norm
    ln_b2 = -ln_norm
    return -(np.exp(ln_a2) * ln_a2 + np.exp(ln_b2) * ln_b2)


def _from_log(measure, log_g, code):
    """Measure values from ``ln g`` and saturation codes (-1 ordered, 1 disordered)."""
    log_g = np.asarray(log_g, dtype=float)
    code = np.asarray(code)
    safe = np.where(code == 0, log_g, 0.0)
    with np.errstate(over="ignore"):
        ln_1pg2 = np.logaddexp(0.0, 2.0 * safe)
        if measure is MeasureId.NEGATIVITY:
            out = 0.5 * np.exp(-0.5 * ln_1pg2)
        elif measure in (MeasureId.MIN, MeasureId.GQD):
            out = 0.5 * np.exp(-ln_1pg2)
        elif measure is MeasureId.CHSH:
            out = 2.0 * np.sqrt(1.0 + np.exp(-ln_1pg2))
        elif measure in (MeasureId.QD, MeasureId.MID):
            out = _entanglement_nats(safe) / LN2
        elif measure is MeasureId.QDEFICIT:
            out = _entanglement_nats(safe)
        else:  # pragma: no cover
            raise DomainError(measure)
    ordered, disordered = LIMITS[measure]
    out = np.where(code < 0, ordered, out)
    out = np.where(code > 0, disordered, out)
    return out


def _split(x):
    if isinstance(x, FlowedCoupling):
        return x.log_g, x.code, True
    g = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(g)) or np.any(g < 0.0):
        raise DomainError("field strength must be finite and >= 0")
    with np.errstate(divide="ignore"):
        log_g = np.log(g)
    return log_g, np.zeros(g.shape, dtype=np.int8), g.ndim == 0


def closed_form(measure, x):
    """Closed form of ``measure`` at a bare field (scalar or array) or a FlowedCoupling."""
    measure = MeasureId.parse(measure)
    log_g, code, scalar = _split(x)
    out = _from_log(measure, log_g, code)
    return float(out) if scalar else out


def negativity_closed(x):
    """Ne = 1 / (2 sqrt(1 + g^2))."""
    return closed_form(MeasureId.NEGATIVITY, x)


def discord_mid_closed(x):
    """Block entanglement entropy in bits; equals both QD and MID on a pure state."""
    return closed_form(MeasureId.QD, x)


def min_gqd_closed(x):
    """MIN = GQD = 1 / (2 (1 + g^2))."""
    return closed_form(MeasureId.MIN, x)


def quantum_deficit_closed(x):
    """Entanglement entropy in nats."""
    return closed_form(MeasureId.QDEFICIT, x)


def chsh_max_closed(x):
    """Maximal CHSH value 2 sqrt(1 + 1/(1 + g^2)).

    This is the Horodecki value from the correlation matrix
    diag(2ab, -2ab, 1); it runs from 2 sqrt 2 at g = 0 down to 2.
    """
    return closed_form(MeasureId.CHSH, x)


def evaluate(measure, x):
    measure = MeasureId.parse(measure)
    return MeasureValue(value=closed_form(measure, x), units=UNITS[measure])
