"""Exact algebra on two-qubit density matrices.

Basis ordering is |00>, |01>, |10>, |11> with qubit A first. Entropies use
the convention 0 log 0 = 0. Eigenvalues within ``CLAMP_TOL`` below zero are
treated as rounding noise and clamped; anything more negative is rejected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .linalg import jacobi_eigh

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
CLAMP_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)
PAULI_PAIRS = np.array([[np.kron(p, q) for q in PAULIS] for p in PAULIS])
PAULI_A = np.array([np.kron(p, I2) for p in PAULIS])
PAULI_B = np.array([np.kron(I2, p) for p in PAULIS])


def _as_square(m, dims=(2, 4)):
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] not in dims:
        raise ValidationError(f"expected a square matrix of dimension in {dims}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("matrix has non-finite entries")
    return arr


def check_hermitian(m, tol=HERMITIAN_TOL, dims=(2, 3, 4, 16)):
    arr = _as_square(m, dims)
    dev = np.max(np.abs(arr - arr.conj().T))
    if dev > tol:
        raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return arr


def _density_and_spectrum(rho, dims=(2, 4)):
    arr = check_hermitian(rho, dims=dims)
    tr = np.trace(arr).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValidationError(f"trace is {tr!r}, expected 1")
    w, _ = jacobi_eigh(arr, vectors=False)
    if w[0] < -CLAMP_TOL:
        raise ValidationError(f"negative eigenvalue {w[0]:.3e}")
    return arr, np.clip(w[::-1], 0.0, 1.0)


def check_density_matrix(rho, dims=(2, 4)):
    """Validate a density matrix and return it as a complex ndarray.

    Raises ValidationError unless ``rho`` is Hermitian, has unit trace and
    no eigenvalue below ``-CLAMP_TOL``.
    """
    return _density_and_spectrum(rho, dims)[0]


def hermitian_eigenvalues(m):
    """Eigenvalues of a Hermitian matrix, sorted descending."""
    arr = check_hermitian(m)
    w, _ = jacobi_eigh(arr, vectors=False)
    return w[::-1].copy()


def _log(base):
    if base in ("bits", 2):
        return math.log2
    if base in ("nats", "e"):
        return math.log
    raise DomainError(f"unknown entropy base {base!r}")


def shannon_entropy(probs, base="bits"):
    """Shannon entropy of a probability vector, with 0 log 0 = 0."""
    log = _log(base)
    total = 0.0
    for p in probs:
        p = min(max(float(p), 0.0), 1.0)
        if p > 0.0:
            total -= p * log(p)
    return total


def spectrum(rho):
    """Eigenvalues of a density matrix clamped to [0, 1], sorted descending."""
    return _density_and_spectrum(rho)[1]


def von_neumann_entropy(rho, base="bits"):
    """S(rho) = -tr(rho log rho) for a 2- or 4-dimensional density matrix."""
    _log(base)
    return shannon_entropy(spectrum(rho), base)


def _ptrace(arr, keep):
    t = arr.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("jijk->ik", t)
    raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_trace(rho, keep="A"):
    """Reduced 2x2 state of subsystem ``keep`` ("A" or "B")."""
    return _ptrace(check_density_matrix(rho, dims=(4,)), keep)


def partial_transpose(rho, subsystem="A"):
    """Transpose the indices of one qubit. An exact involution (pure index shuffle)."""
    arr = _as_square(rho, (4,)).reshape(2, 2, 2, 2)
    if subsystem == "A":
        out = arr.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        out = arr.transpose(0, 3, 2, 1)
    else:
        raise DomainError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return out.reshape(4, 4)


def trace_norm(m):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m))))


def _marginal_entropy(arr, keep, base):
    return shannon_entropy(np.clip(jacobi_eigh(_ptrace(arr, keep), vectors=False)[0], 0.0, 1.0), base)


def _mutual_information(arr, w, base):
    value = _marginal_entropy(arr, "A", base) + _marginal_entropy(arr, "B", base) - shannon_entropy(w, base)
    return max(value, 0.0)


def mutual_information(rho, base="bits"):
    """I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB)."""
    _log(base)
    return _mutual_information(*_density_and_spectrum(rho, dims=(4,)), base)


def binary_entropy_sqrt(z):
    """h(z) = H2((1 + sqrt z) / 2) in bits, for z in [0, 1]."""
    z = float(z)
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"z must lie in [0, 1], got {z!r}")
    r = math.sqrt(z)
    return shannon_entropy(((1.0 + r) / 2.0, (1.0 - r) / 2.0), "bits")


@dataclass(frozen=True)
class BlochDecomposition:
    """rho = (I + a.s x I + I x b.s + sum_ij T_ij s_i x s_j) / 4."""

    a: np.ndarray
    b: np.ndarray
    T: np.ndarray

    def reconstruct(self):
        m = np.eye(4, dtype=complex)
        m = m + np.einsum("i,ikl->kl", self.a, PAULI_A) + np.einsum("i,ikl->kl", self.b, PAULI_B)
        m = m + np.einsum("ij,ijkl->kl", self.T, PAULI_PAIRS)
        return m / 4.0


def bloch_decompose(rho):
    return _bloch(check_density_matrix(rho, dims=(4,)))


def _bloch(rho):
    a = np.einsum("lk,ikl->i", rho, PAULI_A).real
    b = np.einsum("lk,ikl->i", rho, PAULI_B).real
    T = np.einsum("lk,ijkl->ij", rho, PAULI_PAIRS).real
    return BlochDecomposition(a=a, b=b, T=T)


@dataclass(frozen=True)
class MeasurementBasis:
    """Rank-one projector pair along the Bloch direction (theta, phi).

    The first ket points along the direction, the second against it.
    """

    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi) or not math.isfinite(self.phi):
            raise DomainError(f"invalid basis angles theta={self.theta}, phi={self.phi}")
        object.__setattr__(self, "phi", self.phi % (2.0 * math.pi))

    @classmethod
    def computational(cls):
        return cls(0.0, 0.0)

    @classmethod
    def from_vector(cls, n):
        n = np.asarray(n, dtype=float)
        norm = np.linalg.norm(n)
        if norm == 0.0:
            raise DomainError("zero vector has no direction")
        x, y, z = n / norm
        return cls(math.acos(min(1.0, max(-1.0, z))), math.atan2(y, x) % (2.0 * math.pi))

    def direction(self):
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def kets(self):
        c, s = math.cos(self.theta / 2.0), math.sin(self.theta / 2.0)
        e = complex(math.cos(self.phi), math.sin(self.phi))
        return np.array([c, e * s]), np.array([-s, e * c])

    def projectors(self):
        k0, k1 = self.kets()
        return np.outer(k0, k0.conj()), np.outer(k1, k1.conj())


def dephase_in_product_basis(rho, basis_a, basis_b):
    """Keep only the diagonal of rho in the product basis {|a_i b_j>}.

    Returns sum_ij (P_i x Q_j) rho (P_i x Q_j).
    """
    return _dephase(check_density_matrix(rho, dims=(4,)), basis_a, basis_b)


def _dephase(rho, basis_a, basis_b):
    out = np.zeros((4, 4), dtype=complex)
    for p in basis_a.projectors():
        for q in basis_b.projectors():
            proj = np.kron(p, q)
            out += proj @ rho @ proj
    return out


def marginal_eigenbasis(rho_1, tol=1e-12):
    """Eigenbasis of a single-qubit state; the computational basis when degenerate."""
    r = np.array([np.trace(rho_1 @ p).real for p in PAULIS])
    if np.linalg.norm(r) <= tol:
        return MeasurementBasis.computational()
    return MeasurementBasis.from_vector(r)
