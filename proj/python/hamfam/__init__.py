"""Exact verification, integration and symmetries of polynomial Hamiltonian families."""

from ._core import (
    apply_map,
    drift_convergence,
    hamiltonian,
    integrate,
    second_order_form,
    verify,
)

__all__ = [
    "apply_map",
    "drift_convergence",
    "hamiltonian",
    "integrate",
    "second_order_form",
    "verify",
]
