"""Solver descriptors, builtin baselines and the external-process protocol."""

from __future__ import annotations

import shlex
from collections.abc import Iterator
from dataclasses import dataclass

from momark.errors import ConfigurationError
from momark.problems import ProblemInstance
from momark.runtime import Evaluation, SolverKind
from momark.solvers.builtin import dominance_hillclimber, grid_sweep, halton, random_search
from momark.solvers.external import ExternalSession, external_solver_session

BUILTIN_KINDS = {
    "random_search": SolverKind.STOCHASTIC,
    "dominance_hillclimber": SolverKind.STOCHASTIC,
    "grid_sweep": SolverKind.DETERMINISTIC,
}


@dataclass(frozen=True)
class SolverDescriptor:
    name: str
    kind: SolverKind
    command: tuple[str, ...] | None = None  # None: builtin

    @property
    def builtin(self) -> bool:
        return self.command is None

    def spec(self) -> str:
        """Inverse of :func:`parse_solver_spec`."""
        if self.command is None:
            return f"{self.name}:{self.kind.value}"
        return f"{self.name}:{self.kind.value}:{shlex.join(self.command)}"


def builtin_descriptor(name: str) -> SolverDescriptor:
    if name not in BUILTIN_KINDS:
        raise ConfigurationError(f"unknown builtin solver {name!r}; builtins: {', '.join(sorted(BUILTIN_KINDS))}")
    return SolverDescriptor(name, BUILTIN_KINDS[name])


def parse_solver_spec(text: str) -> SolverDescriptor:
    """Parse ``name[:kind[:command]]``.

    Without a command the name must be a builtin, whose kind is fixed.
    """
    parts = text.strip().split(":", 2)
    name = parts[0].strip()
    if not name or any(c in name for c in ",/\\ "):
        raise ConfigurationError(f"bad solver name in {text!r}")
    kind = None
    if len(parts) > 1 and parts[1].strip():
        try:
            kind = SolverKind(parts[1].strip().lower())
        except ValueError:
            raise ConfigurationError(f"solver kind must be deterministic or stochastic, got {parts[1]!r}") from None
    command = parts[2].strip() if len(parts) > 2 else ""
    if not command:
        desc = builtin_descriptor(name)
        if kind is not None and kind is not desc.kind:
            raise ConfigurationError(f"builtin {name} is {desc.kind.value}, not {kind.value}")
        return desc
    if kind is None:
        raise ConfigurationError(f"external solver {name!r} needs an explicit kind")
    return SolverDescriptor(name, kind, tuple(shlex.split(command)))


def make_stream(
    descriptor: SolverDescriptor, problem: ProblemInstance, budget: int, seed: int, *, step_scale: float = 0.1
) -> Iterator[Evaluation]:
    if descriptor.command is not None:
        return external_solver_session(descriptor.command, problem, budget, seed)
    if descriptor.name == "random_search":
        return random_search(problem, budget, seed)
    if descriptor.name == "dominance_hillclimber":
        return dominance_hillclimber(problem, budget, seed, step_scale)
    if descriptor.name == "grid_sweep":
        return grid_sweep(problem, budget)
    raise ConfigurationError(f"unknown builtin solver {descriptor.name!r}")


__all__ = [
    "BUILTIN_KINDS",
    "ExternalSession",
    "SolverDescriptor",
    "SolverKind",
    "builtin_descriptor",
    "dominance_hillclimber",
    "external_solver_session",
    "grid_sweep",
    "halton",
    "make_stream",
    "parse_solver_spec",
    "random_search",
]
