"""Exact star-product, Moyal and Nambu-bracket calculus."""

from ._nambu import (
    ExprSyntaxError,
    Model,
    NambuError,
    PhaseExpr,
    build_model,
    catalog_ids,
    check,
    expr,
    jordan,
    model_registry,
    moyal,
    nambu_jacobian,
    poisson,
    qnb,
    star,
    symplectic_trace,
)

__all__ = [
    "ExprSyntaxError",
    "Model",
    "NambuError",
    "PhaseExpr",
    "build_model",
    "catalog_ids",
    "check",
    "expr",
    "jordan",
    "model_registry",
    "moyal",
    "nambu_jacobian",
    "poisson",
    "qnb",
    "star",
    "symplectic_trace",
]
