"""Quantum renormalization group analysis of the Ising chain in a transverse field."""
from .measures import MeasureId, closed_form
from .rgflow import Coupling, FlowedCoupling, flow, ground_state, rg_map, verify_effective_hamiltonian

__version__ = "0.1.0"

__all__ = [
    "Coupling",
    "FlowedCoupling",
    "MeasureId",
    "closed_form",
    "flow",
    "ground_state",
    "rg_map",
    "verify_effective_hamiltonian",
]
