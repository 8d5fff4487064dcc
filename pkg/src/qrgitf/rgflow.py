"""Block ground state, coupling flow and a numerical check of the block projection.

The chain is cut into two-site blocks. Each block keeps its lowest doublet,
which turns the Ising chain in a transverse field back into an Ising chain
with couplings ``J' = J / sqrt(1 + g^2)`` and ``g' = g^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, StructuralError
from .linalg import jacobi_eigh
from .qcore import I2, PAULIS, SX, SZ

# |ln g| beyond this is treated as the n -> infinity limit; exp() of it is
# still representable, its square is not.
SATURATION_LOG = 690.0

NONE, ORDERED, DISORDERED = "none", "ordered", "disordered"
_SAT_CODE = {NONE: 0, ORDERED: -1, DISORDERED: 1}


def _check_field(g):
    g = float(g)
    if not math.isfinite(g) or g < 0.0:
        raise DomainError(f"field strength must be finite and >= 0, got {g!r}")
    return g


@dataclass(frozen=True)
class Coupling:
    J: float = 1.0
    g: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.J) and self.J > 0.0):
            raise DomainError(f"J must be finite and > 0, got {self.J!r}")
        _check_field(self.g)


@dataclass(frozen=True)
class FlowedCoupling:
    """Field after ``n`` RG steps, stored as ``log_g = 2**n * ln(g0)``.

    ``saturated`` is ``"ordered"`` or ``"disordered"`` once ``|log_g|``
    passes ``SATURATION_LOG``; measures then take their limiting values.
    ``log_g`` is ``-inf`` for a zero bare field.
    """

    log_g: float
    n: int = 0
    saturated: str = NONE

    @property
    def g(self):
        if self.saturated == DISORDERED:
            return math.inf
        if self.saturated == ORDERED:
            return 0.0
        return math.exp(self.log_g)

    @property
    def N(self):
        return 2 ** (self.n + 1)

    @property
    def code(self):
        return _SAT_CODE[self.saturated]


def flow(g0, n):
    """Iterate ``g -> g**2`` ``n`` times in log space."""
    g0 = _check_field(g0)
    n = int(n)
    if n < 0:
        raise DomainError(f"step count must be >= 0, got {n}")
    if g0 == 0.0:
        return FlowedCoupling(-math.inf, n, ORDERED if n >= 1 else NONE)
    if g0 == 1.0:
        return FlowedCoupling(0.0, n, NONE)
    ln_g0 = math.log(g0)
    try:
        log_g = math.ldexp(ln_g0, n)
    except OverflowError:
        log_g = math.copysign(math.inf, ln_g0)
    if abs(log_g) > SATURATION_LOG:
        return FlowedCoupling(log_g, n, ORDERED if log_g < 0 else DISORDERED)
    return FlowedCoupling(log_g, n, NONE)


def flow_array(g0, n):
    """Vectorized ``flow``: returns ``(log_g, code)`` arrays, code in {-1, 0, 1}."""
    g0 = np.asarray(g0, dtype=float)
    if np.any(~np.isfinite(g0)) or np.any(g0 < 0.0):
        raise DomainError("field strengths must be finite and >= 0")
    with np.errstate(divide="ignore", over="ignore"):
        log_g = np.ldexp(np.log(g0), int(n))
    code = np.zeros(g0.shape, dtype=np.int8)
    code[log_g > SATURATION_LOG] = 1
    code[log_g < -SATURATION_LOG] = -1
    code[g0 == 0.0] = -1 if n >= 1 else 0
    return log_g, code


def as_flowed(x):
    """Accept a bare field or a FlowedCoupling; return a FlowedCoupling."""
    if isinstance(x, FlowedCoupling):
        return x
    return flow(x, 0)


@dataclass(frozen=True)
class GroundState:
    """Block ground state ``alpha|00> + beta|11>`` and its density matrix.

    Matrix layout follows |00>, |01>, |10>, |11>: ``beta**2`` in the top-left,
    ``alpha**2`` in the bottom-right, ``alpha*beta`` on the corners.
    """

    alpha: float
    beta: float
    s: float
    rho: np.ndarray = field(repr=False)


def _amplitudes(fc):
    if fc.saturated == DISORDERED:
        return 1.0, 0.0, math.inf
    if fc.saturated == ORDERED or fc.log_g == -math.inf:
        return math.sqrt(0.5), math.sqrt(0.5), 1.0
    ln_s = math.asinh(math.exp(fc.log_g))
    ln_norm = np.logaddexp(0.0, 2.0 * ln_s)  # ln(1 + s^2)
    alpha = math.exp(ln_s - 0.5 * ln_norm)
    beta = math.exp(-0.5 * ln_norm)
    return alpha, beta, math.exp(ln_s)


def ground_state(g):
    """Lowest block eigenstate for a bare field ``g`` or a FlowedCoupling."""
    alpha, beta, s = _amplitudes(as_flowed(g))
    ab = alpha * beta
    rho = np.array(
        [[beta * beta, 0, 0, ab], [0, 0, 0, 0], [0, 0, 0, 0], [ab, 0, 0, alpha * alpha]],
        dtype=complex,
    )
    return GroundState(alpha=alpha, beta=beta, s=s, rho=rho)


def rg_map(c):
    """One RG step on (J, g)."""
    g = c.g
    s = math.hypot(g, 1.0) + g
    return Coupling(J=c.J * 2.0 * s / (1.0 + s * s), g=g * g)


@dataclass(frozen=True)
class ProjectionReport:
    coupling: Coupling
    renormalized: Coupling
    eigenvalues: np.ndarray
    half_gap: float
    expected_half_gap: float
    degenerate: bool
    pauli_coefficients: dict
    tol: float

    @property
    def passed(self):
        return self.degenerate and abs(self.half_gap - self.expected_half_gap) <= self.tol


def _kron(*ops):
    out = np.eye(1, dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def two_block_hamiltonian(c):
    """16x16 operator for sites 1-2 | 3-4: two block terms plus one bond between blocks."""
    J, g = c.J, c.g
    h_blocks = -J * (_kron(SZ, SZ, I2, I2) + g * _kron(SX, I2, I2, I2)) - J * (
        _kron(I2, I2, SZ, SZ) + g * _kron(I2, I2, SX, I2)
    )
    h_bond = -J * (_kron(I2, SZ, SZ, I2) + g * _kron(I2, SX, I2, I2))
    return h_blocks + h_bond


def block_hamiltonian(c):
    return -c.J * (np.kron(SZ, SZ) + c.g * np.kron(SX, I2))


def verify_effective_hamiltonian(c, tol=1e-8, degeneracy_tol=1e-10):
    """Project two blocks onto their ground doublets and compare with ``rg_map``.

    The check is on the spectrum only, so the arbitrary unitary mixing
    inside each degenerate doublet drops out. Pauli coefficients of the
    projected operator are reported as a diagnostic.
    """
    w, v = jacobi_eigh(block_hamiltonian(c))
    scale = max(1.0, abs(w[0]))
    if abs(w[1] - w[0]) > degeneracy_tol * scale or w[2] - w[1] <= degeneracy_tol * scale:
        raise StructuralError(f"block ground doublet not degenerate: {w}")
    p = v[:, :2]
    p0 = np.kron(p, p)
    h_eff = p0.conj().T @ two_block_hamiltonian(c) @ p0
    h_eff = 0.5 * (h_eff + h_eff.conj().T)
    e, _ = jacobi_eigh(h_eff, vectors=False)
    escale = max(1.0, float(np.max(np.abs(e))))
    degenerate = abs(e[1] - e[0]) <= 1e-9 * escale and abs(e[3] - e[2]) <= 1e-9 * escale
    half_gap = 0.5 * (e[3] - e[0])

    renorm = rg_map(c)
    expected = renorm.J * math.hypot(1.0, renorm.g)

    labels = ("I", "X", "Y", "Z")
    basis = (I2,) + PAULIS
    coeffs = {}
    for i, p_i in enumerate(basis):
        for j, p_j in enumerate(basis):
            val = np.trace(h_eff @ np.kron(p_i, p_j)).real / 4.0
            if abs(val) > 1e-12:
                coeffs[labels[i] + labels[j]] = float(val)
    return ProjectionReport(
        coupling=c,
        renormalized=renorm,
        eigenvalues=e,
        half_gap=float(half_gap),
        expected_half_gap=float(expected),
        degenerate=bool(degenerate),
        pauli_coefficients=coeffs,
        tol=tol,
    )
