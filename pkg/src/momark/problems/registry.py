"""Problem metadata, instances and the name registry."""

from __future__ import annotations

import difflib
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from enum import Enum
from functools import partial

import numpy as np

from momark.errors import DomainError, NotFoundError
from momark.problems import classic, wfg
from momark.problems import zdt_dtlz as zd


class DimClass(str, Enum):
    LOW = "L"
    HIGH = "H"


class Separability(str, Enum):
    SEPARABLE = "S"
    NONSEPARABLE = "NS"
    MIXED = "x"


class Modality(str, Enum):
    UNIMODAL = "U"
    MULTIMODAL = "M"
    MIXED = "x"


@dataclass(frozen=True)
class ProblemMeta:
    name: str
    n: int
    m: int
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    dim_class: DimClass
    separability: Separability
    modality: Modality

    def __post_init__(self):
        if self.n < 1 or self.m not in (2, 3, 4):
            raise ValueError(f"{self.name}: bad dimensions n={self.n}, m={self.m}")
        if len(self.lower) != self.n or len(self.upper) != self.n:
            raise ValueError(f"{self.name}: bounds must have length n={self.n}")
        if any(u < l for l, u in zip(self.lower, self.upper)):
            raise ValueError(f"{self.name}: upper bound below lower bound")

    def row(self) -> str:
        """Tab-separated listing line: name, n, m, D, S, M."""
        return "\t".join(
            [self.name, str(self.n), str(self.m), self.dim_class.value, self.separability.value, self.modality.value]
        )


@dataclass(frozen=True)
class ProblemInstance:
    meta: ProblemMeta
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    @property
    def name(self) -> str:
        return self.meta.name

    @property
    def lower(self) -> np.ndarray:
        return np.array(self.meta.lower)

    @property
    def upper(self) -> np.ndarray:
        return np.array(self.meta.upper)

    def check_domain(self, x) -> np.ndarray:
        """Return ``x`` as a float array, raising :class:`DomainError` if it is not a valid point."""
        x = np.array(x, dtype=np.float64).reshape(-1)
        meta = self.meta
        if x.shape[0] != meta.n:
            raise DomainError(f"{meta.name} expects n={meta.n} decision variables, got {x.shape[0]}")
        lo, hi = self._bounds
        # NaN fails both comparisons, so this also rejects non-finite input
        if (x >= lo).all() and (x <= hi).all():
            return x
        bad = np.flatnonzero(~((x >= lo) & (x <= hi)))
        i = int(bad[0])
        raise DomainError(f"{meta.name}: x[{i}]={x[i]!r} outside [{lo[i]!r}, {hi[i]!r}]")

    @property
    def _bounds(self):
        cached = self.__dict__.get("_bounds_cache")
        if cached is None:
            cached = (np.array(self.meta.lower), np.array(self.meta.upper))
            object.__setattr__(self, "_bounds_cache", cached)
        return cached

    def evaluate(self, x) -> np.ndarray:
        x = self.check_domain(x)
        return np.asarray(self.func(x), dtype=np.float64)

    __call__ = evaluate


class Registry:
    def __init__(self):
        self._problems: dict[str, ProblemInstance] = {}

    def register(self, instance: ProblemInstance, *, replace: bool = False) -> ProblemInstance:
        name = instance.meta.name
        if name in self._problems and not replace:
            raise ValueError(f"problem {name!r} already registered")
        self._problems[name] = instance
        return instance

    def __contains__(self, name: str) -> bool:
        return name in self._problems

    def __len__(self) -> int:
        return len(self._problems)

    def names(self) -> list[str]:
        return sorted(self._problems)

    def lookup(self, name: str) -> ProblemInstance:
        try:
            return self._problems[name]
        except KeyError:
            near = difflib.get_close_matches(name, list(self._problems), n=5, cutoff=0.5)
            ci = [k for k in self._problems if k.lower() == name.lower()]
            hints = list(dict.fromkeys(ci + near))
            msg = f"unknown problem {name!r}"
            if hints:
                msg += f"; did you mean: {', '.join(hints)}"
            raise NotFoundError(msg) from None

    def list(self, predicate: Callable[[ProblemMeta], bool] | None = None) -> list[ProblemMeta]:
        metas = [self._problems[k].meta for k in self.names()]
        if predicate is None:
            return metas
        return [meta for meta in metas if predicate(meta)]


def category_filter(
    *,
    dim_class: DimClass | str | None = None,
    separability: Separability | str | None = None,
    modality: Modality | str | None = None,
    m: int | None = None,
    names: Iterable[str] | None = None,
) -> Callable[[ProblemMeta], bool]:
    """Build a predicate over :class:`ProblemMeta`; unset criteria match everything."""
    d = DimClass(dim_class) if dim_class is not None else None
    s = Separability(separability) if separability is not None else None
    mo = Modality(modality) if modality is not None else None
    wanted = set(names) if names is not None else None

    def predicate(meta: ProblemMeta) -> bool:
        return (
            (d is None or meta.dim_class is d)
            and (s is None or meta.separability is s)
            and (mo is None or meta.modality is mo)
            and (m is None or meta.m == m)
            and (wanted is None or meta.name in wanted)
        )

    return predicate


# name, n, m, lower, upper, D, S, M, evaluator
def _box(lo, hi, n):
    return (float(lo),) * n, (float(hi),) * n


def _wfg_bounds(n):
    return (0.0,) * n, tuple(2.0 * (i + 1) for i in range(n))


_L, _H = DimClass.LOW, DimClass.HIGH
_S, _NS, _XS = Separability.SEPARABLE, Separability.NONSEPARABLE, Separability.MIXED
_U, _MM, _XM = Modality.UNIMODAL, Modality.MULTIMODAL, Modality.MIXED

_PI = float(np.pi)

CORE_TABLE = [
    ("BK1", 2, 2, _box(-5, 10, 2), _L, _S, _U, classic.bk1),
    ("DG01", 1, 2, _box(-10, 13, 1), _L, _XS, _MM, classic.dg01),
    ("DPAM1", 10, 2, _box(-0.3, 0.3, 10), _H, _NS, _XM, classic.dpam1),
    ("DTLZ1", 7, 3, _box(0, 1, 7), _H, _XS, _MM, partial(zd.dtlz1, m=3)),
    ("DTLZ1n2", 2, 2, _box(0, 1, 2), _L, _XS, _MM, partial(zd.dtlz1, m=2)),
    ("DTLZ2", 12, 3, _box(0, 1, 12), _H, _XS, _U, partial(zd.dtlz2, m=3)),
    ("DTLZ2n2", 2, 2, _box(0, 1, 2), _L, _XS, _U, partial(zd.dtlz2, m=2)),
    ("DTLZ3", 12, 3, _box(0, 1, 12), _H, _XS, _MM, partial(zd.dtlz3, m=3)),
    ("DTLZ4", 12, 3, _box(0, 1, 12), _H, _XS, _U, partial(zd.dtlz4, m=3)),
    ("DTLZ5", 12, 3, _box(0, 1, 12), _H, _XS, _U, partial(zd.dtlz5, m=3)),
    ("DTLZ6", 22, 3, _box(0, 1, 22), _H, _XS, _U, partial(zd.dtlz6, m=3)),
    ("Far1", 2, 2, _box(-1, 1, 2), _L, _NS, _MM, classic.far1),
    ("FES1", 10, 2, _box(0, 1, 10), _H, _S, _U, classic.fes1),
    ("FES2", 10, 3, _box(0, 1, 10), _H, _S, _U, classic.fes2),
    ("FES3", 10, 4, _box(0, 1, 10), _H, _S, _U, classic.fes3),
    ("Fonseca", 2, 2, _box(-4, 4, 2), _L, _S, _U, classic.fonseca),
    ("IKK1", 2, 3, _box(-50, 50, 2), _L, _XS, _U, classic.ikk1),
    ("IM1", 2, 2, ((1.0, 1.0), (4.0, 2.0)), _L, _XS, _U, classic.im1),
    ("Kursawe", 3, 2, _box(-5, 5, 3), _L, _XS, _XM, classic.kursawe),
    ("LRS1", 2, 2, _box(-50, 50, 2), _L, _S, _U, classic.lrs1),
    ("MHHM1", 1, 3, _box(0, 1, 1), _L, _XS, _U, classic.mhhm1),
    ("MHHM2", 2, 3, _box(0, 1, 2), _L, _S, _U, classic.mhhm2),
    ("MLF1", 1, 2, _box(0, 20, 1), _L, _XS, _MM, classic.mlf1),
    ("MLF2", 2, 2, _box(-2, 2, 2), _L, _NS, _MM, classic.mlf2),
    ("MOP1", 1, 2, _box(-1e5, 1e5, 1), _L, _S, _U, classic.mop1),
    ("MOP2", 4, 2, _box(-4, 4, 4), _L, _S, _U, classic.mop2),
    ("MOP3", 2, 2, _box(-_PI, _PI, 2), _L, _XS, _XM, classic.mop3),
    ("MOP4", 3, 2, _box(-5, 5, 3), _L, _S, _XM, classic.mop4),
    ("MOP5", 2, 3, _box(-30, 30, 2), _L, _NS, _XM, classic.mop5),
    ("MOP6", 2, 2, _box(0, 1, 2), _L, _S, _XM, classic.mop6),
    ("MOP7", 2, 3, _box(-400, 400, 2), _L, _XS, _U, classic.mop7),
    ("QV1", 10, 2, _box(-5.12, 5.12, 10), _H, _S, _MM, classic.qv1),
    ("Sch1", 1, 2, _box(0, 5, 1), _L, _XS, _XM, classic.sch1),
    ("SK1", 1, 2, _box(-10, 10, 1), _L, _S, _MM, classic.sk1),
    ("SK2", 4, 2, _box(-10, 10, 4), _L, _XS, _XM, classic.sk2),
    ("SP1", 2, 2, _box(-100, 100, 2), _L, _NS, _U, classic.sp1),
    ("SSFYY1", 2, 2, _box(-100, 100, 2), _L, _S, _U, classic.ssfyy1),
    ("SSFYY2", 1, 2, _box(-100, 100, 1), _L, _XS, _XM, classic.ssfyy2),
    ("VU1", 2, 2, _box(-3, 3, 2), _L, _S, _U, classic.vu1),
    ("VU2", 2, 2, _box(-3, 3, 2), _L, _S, _U, classic.vu2),
    ("WFG1", 8, 3, _wfg_bounds(8), _H, _S, _U, partial(wfg.wfg1, m=3, k=2)),
    ("WFG2", 8, 3, _wfg_bounds(8), _H, _NS, _XM, partial(wfg.wfg2, m=3, k=2)),
    ("WFG3", 8, 3, _wfg_bounds(8), _H, _NS, _U, partial(wfg.wfg3, m=3, k=2)),
    ("WFG4", 8, 3, _wfg_bounds(8), _H, _S, _MM, partial(wfg.wfg4, m=3, k=2)),
    ("WFG5", 8, 3, _wfg_bounds(8), _H, _S, _XM, partial(wfg.wfg5, m=3, k=2)),
    ("WFG6", 8, 3, _wfg_bounds(8), _H, _NS, _U, partial(wfg.wfg6, m=3, k=2)),
    ("WFG7", 8, 3, _wfg_bounds(8), _H, _S, _U, partial(wfg.wfg7, m=3, k=2)),
    ("WFG8", 8, 3, _wfg_bounds(8), _H, _NS, _U, partial(wfg.wfg8, m=3, k=2)),
    ("WFG9", 8, 3, _wfg_bounds(8), _H, _NS, _XM, partial(wfg.wfg9, m=3, k=2)),
    ("ZDT1", 30, 2, _box(0, 1, 30), _H, _S, _U, zd.zdt1),
    ("ZDT2", 30, 2, _box(0, 1, 30), _H, _S, _U, zd.zdt2),
    ("ZDT3", 30, 2, _box(0, 1, 30), _H, _S, _XM, zd.zdt3),
    ("ZDT4", 10, 2, ((0.0,) + (-5.0,) * 9, (1.0,) + (5.0,) * 9), _H, _S, _XM, zd.zdt4),
    ("ZDT6", 10, 2, _box(0, 1, 10), _H, _S, _MM, zd.zdt6),
    ("ZLT1", 10, 3, _box(-1000, 1000, 10), _H, _S, _U, partial(classic.zlt1, m=3)),
]

CORE_NAMES = tuple(row[0] for row in CORE_TABLE)


def _build_default() -> Registry:
    reg = Registry()
    for name, n, m, (lo, hi), d, s, mo, fn in CORE_TABLE:
        meta = ProblemMeta(name, n, m, tuple(lo), tuple(hi), d, s, mo)
        reg.register(ProblemInstance(meta, fn))
    return reg


REGISTRY = _build_default()


def register(instance: ProblemInstance, *, replace: bool = False) -> ProblemInstance:
    """Add an extension problem to the default registry."""
    return REGISTRY.register(instance, replace=replace)


def registry_lookup(name: str) -> ProblemInstance:
    return REGISTRY.lookup(name)


def registry_list(predicate: Callable[[ProblemMeta], bool] | None = None) -> list[ProblemMeta]:
    return REGISTRY.list(predicate)


def evaluate(problem: ProblemInstance | str, x) -> np.ndarray:
    if isinstance(problem, str):
        problem = REGISTRY.lookup(problem)
    return problem.evaluate(x)
