"""Degrees of irrationality by exact minimization over rational benchmarks.

The plain degree of a quasi-choice is its minimum distance to any member of
a benchmark family: either every rationalizable quasi-choice ("quasi") or
every choice generated by an asymmetric acyclic relation ("decisive"). The
weighted index scales each decisive candidate's localization distance by a
rank weight drawn from the desirability class of its generating relation,
then minimizes; all arithmetic is exact.

Benchmark tables, their localizations, and the desirability classes of the
decisive candidates are memoized per ground-set size, so batches of degree
queries pay the enumeration cost once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

import numpy as np

from . import _kernels
from .core import (
    BinaryRelation,
    ChoiceCorrespondence,
    GroundSet,
    QuasiChoice,
    RationalChoice,
    _decisive_benchmark,
    _quasi_benchmark_tables,
    _require_cap,
)
from .errors import DatasetError, InfeasibleWeightingMap, PreconditionViolated
from .metrics import RAT, MetricHandle
from .relations import desirability_class

RANKS = tuple(range(1, 10))


@dataclass(frozen=True)
class WeightingMap:
    """Rank weights w(1) .. w(9) with a declared average tolerance epsilon.

    Feasibility (checked by validate, not the constructor): every weight in
    the open interval (0, 2), weights nondecreasing in the rank, epsilon in
    [0, 1), and the mean weight within epsilon of 1.
    """

    weights: Mapping[int, Fraction]
    epsilon: Fraction

    def __post_init__(self) -> None:
        weights = {int(k): Fraction(v) for k, v in self.weights.items()}
        if sorted(weights) != list(RANKS):
            raise DatasetError("weighting map must assign ranks 1..9 exactly")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))

    def validate(self) -> str | None:
        """First violated feasibility clause, or None when feasible."""
        for rank in RANKS:
            w = self.weights[rank]
            if not 0 < w < 2:
                return f"w({rank}) = {w} is outside the open interval (0, 2)"
        for rank in RANKS[:-1]:
            if self.weights[rank] > self.weights[rank + 1]:
                return (
                    f"w({rank}) = {self.weights[rank]} > w({rank + 1}) = "
                    f"{self.weights[rank + 1]} breaks monotonicity"
                )
        if not 0 <= self.epsilon < 1:
            return f"epsilon = {self.epsilon} is outside [0, 1)"
        mean = sum(self.weights.values(), Fraction(0)) / 9
        if abs(mean - 1) > self.epsilon:
            return (
                f"mean weight {mean} deviates from 1 by {abs(mean - 1)}, "
                f"more than epsilon = {self.epsilon}"
            )
        return None


def validate_weighting_map(weighting: WeightingMap) -> str | None:
    return weighting.validate()


Minimizer = Union[QuasiChoice, RationalChoice]


@dataclass(frozen=True)
class DegreeReport:
    """Exact degree with every benchmark member attaining it.

    Minimizers are ordered by ascending table encoding; the first one is the
    canonical representative.
    """

    degree: Fraction
    minimizers: tuple[Minimizer, ...]
    benchmark_kind: str
    benchmark_size: int


_LOC_PAIRS: dict[int, tuple[np.ndarray, np.ndarray]] = {}
_LOC_BENCH: dict[tuple[int, str], np.ndarray] = {}
_BENCH_CLASSES: dict[int, list[int]] = {}


def _localization_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _LOC_PAIRS:
        _LOC_PAIRS[n] = _kernels.localization_pairs(n)
    return _LOC_PAIRS[n]


def _benchmark_tables(n: int, kind: str) -> np.ndarray:
    if kind == "quasi":
        return _quasi_benchmark_tables(n)
    if kind == "decisive":
        return _decisive_benchmark(n)[0]
    raise DatasetError(f"unknown benchmark kind {kind!r} (expected quasi or decisive)")


def _localized_benchmark(n: int, kind: str) -> np.ndarray:
    key = (n, kind)
    if key not in _LOC_BENCH:
        base, sub = _localization_pairs(n)
        loc = _kernels.localize_tables(_benchmark_tables(n, kind), base, sub)
        loc.setflags(write=False)
        _LOC_BENCH[key] = loc
    return _LOC_BENCH[key]


def _distance_vector(choice: QuasiChoice, kind: str, metric: MetricHandle) -> np.ndarray:
    """Distances from the choice to every benchmark table, benchmark order."""
    n = choice.ground.n
    query = np.array(choice.table, dtype=np.uint16)
    if metric.name == "delta":
        return _kernels.xor_popcount_sums(query, _benchmark_tables(n, kind))
    if metric.name == "rat":
        base, sub = _localization_pairs(n)
        at_base = query[base] & sub.astype(np.uint16)
        query_loc = np.where(at_base != 0, at_base, query[sub])
        return _kernels.xor_popcount_sums(query_loc, _localized_benchmark(n, kind))
    # generic fallback for third-party metric handles
    members = _materialize(choice.ground, kind)
    values = [metric.func(choice, member if isinstance(member, QuasiChoice) else member.choice)
              for member in members]
    return np.array(values, dtype=np.int64)


def _materialize(ground: GroundSet, kind: str) -> list:
    if kind == "quasi":
        tables = _quasi_benchmark_tables(ground.n)
        return [QuasiChoice(ground, tuple(int(v) for v in row)) for row in tables]
    tables, rel_pairs = _decisive_benchmark(ground.n)
    return [
        RationalChoice(
            ChoiceCorrespondence(ground, tuple(int(v) for v in row)),
            BinaryRelation(ground, frozenset(pairs)),
        )
        for row, pairs in zip(tables, rel_pairs)
    ]


def _pick(ground: GroundSet, kind: str, indices: np.ndarray) -> tuple[Minimizer, ...]:
    if kind == "quasi":
        tables = _quasi_benchmark_tables(ground.n)
        return tuple(
            QuasiChoice(ground, tuple(int(v) for v in tables[i])) for i in indices
        )
    tables, rel_pairs = _decisive_benchmark(ground.n)
    return tuple(
        RationalChoice(
            ChoiceCorrespondence(ground, tuple(int(v) for v in tables[i])),
            BinaryRelation(ground, frozenset(rel_pairs[i])),
        )
        for i in indices
    )


def irr_degree(
    choice: QuasiChoice,
    metric: MetricHandle = RAT,
    benchmark: str = "quasi",
) -> DegreeReport:
    """Minimum distance from the choice to the benchmark, with all argmins."""
    _require_cap(choice.ground.n)
    values = _distance_vector(choice, benchmark, metric)
    best = int(values.min())
    indices = np.flatnonzero(values == best)
    return DegreeReport(
        degree=Fraction(best),
        minimizers=_pick(choice.ground, benchmark, indices),
        benchmark_kind=benchmark,
        benchmark_size=int(values.shape[0]),
    )


def benchmark_classes(n: int) -> list[int]:
    """Desirability class index of each decisive benchmark member, in order."""
    if n not in _BENCH_CLASSES:
        ground = GroundSet(tuple(f"a{i}" for i in range(n)))
        _, rel_pairs = _decisive_benchmark(n)
        _BENCH_CLASSES[n] = [
            desirability_class(BinaryRelation(ground, frozenset(pairs))).class_index
            for pairs in rel_pairs
        ]
    return _BENCH_CLASSES[n]


def weighted_irr_degree(choice: QuasiChoice, weighting: WeightingMap) -> DegreeReport:
    """Minimum of w(class of candidate's relation) * localization distance.

    Only decisive choices qualify; candidates run over the decisive benchmark
    and the result is an exact rational.
    """
    if not choice.is_decisive:
        raise PreconditionViolated("the weighted degree requires a decisive choice")
    problem = weighting.validate()
    if problem is not None:
        raise InfeasibleWeightingMap(problem)
    n = choice.ground.n
    _require_cap(n)
    values = _distance_vector(choice, "decisive", RAT)
    classes = benchmark_classes(n)
    scores = [
        weighting.weights[cls] * int(value) for cls, value in zip(classes, values)
    ]
    best = min(scores)
    indices = np.array([i for i, score in enumerate(scores) if score == best])
    return DegreeReport(
        degree=best,
        minimizers=_pick(choice.ground, "decisive", indices),
        benchmark_kind="decisive",
        benchmark_size=len(scores),
    )
