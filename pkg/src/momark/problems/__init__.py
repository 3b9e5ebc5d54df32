"""Bound-constrained multi-objective test problems."""

from momark.problems.registry import (
    CORE_NAMES,
    REGISTRY,
    DimClass,
    Modality,
    ProblemInstance,
    ProblemMeta,
    Registry,
    Separability,
    category_filter,
    evaluate,
    register,
    registry_list,
    registry_lookup,
)

__all__ = [
    "CORE_NAMES",
    "REGISTRY",
    "DimClass",
    "Modality",
    "ProblemInstance",
    "ProblemMeta",
    "Registry",
    "Separability",
    "category_filter",
    "evaluate",
    "register",
    "registry_list",
    "registry_lookup",
]
