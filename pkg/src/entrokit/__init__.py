"""Entropy toolkit for stabilizer and Gaussian quantum states.

Computes exact entropy vectors of stabilizer states from their phase-space
subgroup description, cross-checks them against a dense Hilbert-space oracle
and the discrete Wigner function, verifies balanced information inequalities
by exact big-integer arithmetic, and implements the Gaussian Renyi-entropy
formulas with a Monte-Carlo oracle and an Ingleton-violation search.
"""

from .phasespace import PhaseSpace, SymplecticValue, symplectic_form
from .stabilizer import (
    CLASSICAL,
    QUANTUM,
    EntropyVector,
    ExactEntropy,
    StabilizerState,
    classical_entropy,
    entropy_vector,
    enumerate_isotropic,
    quantum_entropy,
    order_identity_check,
)
from .zmod import ModMatrix, Subgroup, kernel_mod, subgroup_from_generators

__all__ = [
    "CLASSICAL",
    "QUANTUM",
    "EntropyVector",
    "ExactEntropy",
    "ModMatrix",
    "PhaseSpace",
    "StabilizerState",
    "Subgroup",
    "SymplecticValue",
    "classical_entropy",
    "entropy_vector",
    "enumerate_isotropic",
    "kernel_mod",
    "quantum_entropy",
    "subgroup_from_generators",
    "symplectic_form",
    "order_identity_check",
]

__version__ = "0.1.0"
