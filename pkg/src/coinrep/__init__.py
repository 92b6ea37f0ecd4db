"""Qubit states, observables and dynamics written as probabilities of three classical coins."""
from .errors import CoinrepError
from .observable import DichotomicObservable
from .qubit import (
    bloch,
    eigenvalues,
    from_density,
    is_pure,
    is_quantum,
    to_density,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "CoinrepError",
    "DichotomicObservable",
    "bloch",
    "eigenvalues",
    "from_density",
    "is_pure",
    "is_quantum",
    "to_density",
    "von_neumann_entropy",
]
