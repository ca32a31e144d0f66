"""Best-allocation search: exact enumeration and a seeded genetic algorithm.

Exhaustive enumeration is the exact oracle for small spaces (the m^n space is
capped, overridable via the SCALL_EXHAUSTIVE_CAP environment variable); the
GA covers large spaces and is fully deterministic given its seed. Both rank
candidates feasible-first: any feasible allocation beats any infeasible one,
and infeasible ones are ordered by total relative budget overshoot so the GA
can climb out of tightly constrained regions instead of starving.
"""

from __future__ import annotations

import heapq
import itertools
import os
import random
import time
from dataclasses import dataclass, field, replace
from typing import Sequence

from .ahp import TradeoffVector
from .evaluator import EvaluationResult, evaluate
from .model import ArchitectureModel

DEFAULT_EXHAUSTIVE_CAP = 10_000_000
EXHAUSTIVE_CAP_ENV = "SCALL_EXHAUSTIVE_CAP"

_MASK64 = (1 << 64) - 1


class SearchError(Exception):
    code = "SEARCH_ERROR"


class SpaceTooLargeError(SearchError):
    code = "SPACE_TOO_LARGE"

    def __init__(self, space: int, cap: int):
        self.space = space
        self.cap = cap
        super().__init__(f"search space {space} exceeds the enumeration cap {cap}")


class NoFeasibleAllocationError(SearchError):
    code = "NO_FEASIBLE_ALLOCATION"

    def __init__(self, message: str = "no feasible allocation exists", diagnostics: dict | None = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


@dataclass
class GAConfig:
    """Genetic algorithm parameters; defaults suit desk-scale models.

    mutation_rate is a per-gene probability; None means 1/n for an n-component
    model. Runs are deterministic in (model, weights, seed).
    """

    population_size: int = 50
    generations: int = 200
    tournament_size: int = 2
    crossover_rate: float = 0.9  # single-point
    mutation_rate: float | None = None
    elitism: int = 1
    seed: int = 0
    stall_limit: int = 50

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.tournament_size < 1 or self.tournament_size > self.population_size:
            raise ValueError("tournament_size must be in 1..population_size")
        if not 0 <= self.crossover_rate <= 1:
            raise ValueError("crossover_rate must be in [0, 1]")
        if self.mutation_rate is not None and not 0 <= self.mutation_rate <= 1:
            raise ValueError("mutation_rate must be in [0, 1]")
        if self.elitism < 0 or self.elitism >= self.population_size:
            raise ValueError("elitism must be in 0..population_size-1")
        if self.generations < 1 or self.stall_limit < 1:
            raise ValueError("generations and stall_limit must be >= 1")

    _WIRE_KEYS = {
        "populationSize": "population_size",
        "generations": "generations",
        "tournamentSize": "tournament_size",
        "crossoverRate": "crossover_rate",
        "mutationRate": "mutation_rate",
        "elitism": "elitism",
        "seed": "seed",
        "stallLimit": "stall_limit",
    }

    @classmethod
    def from_dict(cls, raw: dict) -> "GAConfig":
        unknown = set(raw) - set(cls._WIRE_KEYS)
        if unknown:
            raise ValueError(f"unknown GA config keys: {sorted(unknown)}")
        return cls(**{cls._WIRE_KEYS[k]: v for k, v in raw.items()})

    def to_dict(self) -> dict:
        return {wire: getattr(self, attr) for wire, attr in self._WIRE_KEYS.items()}


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one search: best allocation, runner-ups and statistics."""

    best: tuple[int, ...]
    best_result: EvaluationResult
    alternatives: tuple[tuple[tuple[int, ...], EvaluationResult], ...]
    evaluated: int
    generations: int | None  # GA only
    exact: bool
    seed: int | None
    elapsed: float

    def to_dict(self, model: ArchitectureModel, include_timing: bool = True) -> dict:
        d = {
            "best": model.allocation_ids(self.best),
            "bestResult": self.best_result.to_dict(),
            "alternatives": [
                {"p": model.allocation_ids(p), "result": r.to_dict()} for p, r in self.alternatives
            ],
            "evaluated": self.evaluated,
            "generations": self.generations,
            "exact": self.exact,
            "seed": self.seed,
        }
        if include_timing:
            d["elapsed"] = self.elapsed
        return d


class _Kernel:
    """Fast scorer sharing the evaluator's exact accumulation order.

    score(p) returns (0, w) for feasible allocations and (1, violation) for
    infeasible ones, where violation is the summed relative overshoot of every
    exceeded resource and bandwidth budget (absolute overshoot for zero
    budgets). Tuples compare feasible-first, then by cost / violation.
    """

    def __init__(self, model: ArchitectureModel, F: TradeoffVector):
        if len(F.f) != model.l:
            raise ValueError(f"trade-off vector has {len(F.f)} resource weights, model has {model.l}")
        self.n = model.n
        self.m = model.m
        self.l = model.l
        self.T = model.T.tolist()
        self.R = model.R.tolist()
        self.C = model.C.tolist()
        self.B = model.B.tolist()
        self.f = list(F.f)
        self.fc = F.fc
        K = model.K
        self.pairs = [
            (i, j, float(K[i, j]))
            for i in range(model.n)
            for j in range(i + 1, model.n)
            if K[i, j]
        ]

    def score(self, p: Sequence[int]) -> tuple[int, float]:
        load = [[0.0] * self.l for _ in range(self.m)]
        for i, h in enumerate(p):
            row = self.T[i][h]
            dest = load[h]
            for k in range(self.l):
                dest[k] += row[k]

        violation = 0.0
        for h in range(self.m):
            budget = self.R[h]
            got = load[h]
            for k in range(self.l):
                excess = got[k] - budget[k]
                if excess > 0:
                    violation += excess / (budget[k] if budget[k] > 0 else 1.0)

        comm = 0.0
        traffic: dict[tuple[int, int], float] = {}
        for i, j, kij in self.pairs:
            g, h = p[i], p[j]
            if g != h:
                comm += kij * self.C[g][h]
                key = (g, h) if g < h else (h, g)
                traffic[key] = traffic.get(key, 0.0) + kij
        for (g, h), t in traffic.items():
            cap = self.B[g][h]
            excess = t - cap
            if excess > 0:
                violation += excess / (cap if cap > 0 else 1.0)

        if violation > 0:
            return 1, violation
        cost = 0.0
        for k in range(self.l):
            total = 0.0
            for h in range(self.m):
                total += load[h][k]
            cost += self.f[k] * total
        return 0, cost + self.fc * comm


def space_size(model: ArchitectureModel) -> int:
    return model.m ** model.n


def _resolve_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(EXHAUSTIVE_CAP_ENV)
    if env:
        return int(env)
    return DEFAULT_EXHAUSTIVE_CAP


def exhaustive_search(
    model: ArchitectureModel,
    F: TradeoffVector,
    top_k: int = 1,
    cap: int | None = None,
) -> SearchReport:
    """Enumerate every allocation (skipping allowed-unit violations).

    Returns the feasible minimum plus the top_k best distinct feasible
    allocations; ties resolve to the lexicographically smallest vector in
    unit-list order. Raises SpaceTooLargeError when m^n exceeds the cap and
    NoFeasibleAllocationError when every allocation violates a budget or
    constraint.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    started = time.perf_counter()
    cap = _resolve_cap(cap)
    space = space_size(model)
    if space > cap:
        raise SpaceTooLargeError(space, cap)

    kernel = _Kernel(model, F)
    # Max-heap of the top_k smallest (w, p); itertools.product yields vectors
    # in lexicographic order, so among equal-w entries smaller vectors win.
    heap: list[tuple[tuple[float, tuple[int, ...]], tuple[int, ...]]] = []
    evaluated = 0
    best_violation: float | None = None
    for p in itertools.product(*model.allowed_indices):
        evaluated += 1
        flag, value = kernel.score(p)
        if flag:
            if best_violation is None or value < best_violation:
                best_violation = value
            continue
        entry = ((-value, tuple(-g for g in p)), p)
        if len(heap) < top_k:
            heapq.heappush(heap, entry)
        elif entry[0] > heap[0][0]:
            heapq.heapreplace(heap, entry)

    if not heap:
        raise NoFeasibleAllocationError(
            "every allocation violates a budget or placement constraint",
            diagnostics={"evaluated": evaluated, "bestViolation": best_violation},
        )

    entries = [(p, evaluate(model, F, p)) for _, p in heap]
    entries.sort(key=lambda e: (e[1].w, e[0]))
    alternatives = tuple(entries)
    best_p, best_result = alternatives[0]
    return SearchReport(
        best=best_p,
        best_result=best_result,
        alternatives=alternatives,
        evaluated=evaluated,
        generations=None,
        exact=True,
        seed=None,
        elapsed=time.perf_counter() - started,
    )


def ga_search(model: ArchitectureModel, F: TradeoffVector, cfg: GAConfig | None = None) -> SearchReport:
    """Genetic search over allocation vectors (integer genes = unit indices).

    Every gene respects the component's allowed units at initialization and
    after mutation; crossover preserves per-position domains. The report
    carries the best feasible individual encountered across all generations.
    Deterministic given (model, F, cfg.seed).
    """
    cfg = cfg or GAConfig()
    started = time.perf_counter()
    kernel = _Kernel(model, F)
    rng = random.Random(cfg.seed)
    n = model.n
    domains = model.allowed_indices
    mutation_rate = cfg.mutation_rate if cfg.mutation_rate is not None else 1.0 / n

    def random_genome() -> tuple[int, ...]:
        return tuple(dom[rng.randrange(len(dom))] for dom in domains)

    def mutate(genome: tuple[int, ...]) -> tuple[int, ...]:
        genes = list(genome)
        for i in range(n):
            if rng.random() < mutation_rate:
                dom = domains[i]
                genes[i] = dom[rng.randrange(len(dom))]
        return tuple(genes)

    population = [random_genome() for _ in range(cfg.population_size)]
    keys = [kernel.score(p) for p in population]
    evaluated = len(population)

    best_key = min(keys)
    best_p = population[keys.index(best_key)]

    def tournament() -> tuple[int, ...]:
        winner = rng.randrange(cfg.population_size)
        for _ in range(cfg.tournament_size - 1):
            contender = rng.randrange(cfg.population_size)
            if (keys[contender], contender) < (keys[winner], winner):
                winner = contender
        return population[winner]

    stall = 0
    generations_run = 0
    for _ in range(cfg.generations):
        if stall >= cfg.stall_limit:
            break
        generations_run += 1

        elite_order = sorted(range(cfg.population_size), key=lambda i: (keys[i], i))
        next_pop = [population[i] for i in elite_order[: cfg.elitism]]
        next_keys = [keys[i] for i in elite_order[: cfg.elitism]]

        while len(next_pop) < cfg.population_size:
            parent_a = tournament()
            parent_b = tournament()
            if n >= 2 and rng.random() < cfg.crossover_rate:
                cut = rng.randrange(1, n)
                children = (parent_a[:cut] + parent_b[cut:], parent_b[:cut] + parent_a[cut:])
            else:
                children = (parent_a, parent_b)
            for child in children:
                if len(next_pop) >= cfg.population_size:
                    break
                child = mutate(child)
                next_pop.append(child)
                next_keys.append(kernel.score(child))
                evaluated += 1

        population = next_pop
        keys = next_keys
        generation_best = min(keys)
        if generation_best < best_key:
            best_key = generation_best
            best_p = population[keys.index(generation_best)]
            stall = 0
        else:
            stall += 1

    if best_key[0] != 0:
        raise NoFeasibleAllocationError(
            "no feasible individual was encountered",
            diagnostics={
                "evaluated": evaluated,
                "generations": generations_run,
                "bestViolation": best_key[1],
                "bestInfeasible": model.allocation_ids(best_p),
            },
        )

    return SearchReport(
        best=best_p,
        best_result=evaluate(model, F, best_p),
        alternatives=(),
        evaluated=evaluated,
        generations=generations_run,
        exact=False,
        seed=cfg.seed,
        elapsed=time.perf_counter() - started,
    )


def derived_seed(base: int, index: int) -> int:
    """Seed for run `index` of a multi-run batch: splitmix64 of base + index.

    Fixed mixing function so repeated batches are reproducible run by run.
    """
    z = (base + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def alternatives(
    model: ArchitectureModel,
    F: TradeoffVector,
    count: int,
    base_seed: int = 0,
    cfg: GAConfig | None = None,
) -> list[SearchReport]:
    """Re-run the GA `count` times with derived seeds.

    Returns reports de-duplicated by best allocation vector, sorted by
    ascending cost. Raises NoFeasibleAllocationError only if no run found a
    feasible allocation.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    cfg = cfg or GAConfig()
    reports: list[SearchReport] = []
    first_failure: NoFeasibleAllocationError | None = None
    for i in range(count):
        run_cfg = replace(cfg, seed=derived_seed(base_seed, i))
        try:
            reports.append(ga_search(model, F, run_cfg))
        except NoFeasibleAllocationError as e:
            if first_failure is None:
                first_failure = e
    if not reports:
        assert first_failure is not None
        raise first_failure
    reports.sort(key=lambda r: (r.best_result.w, r.best))
    seen: set[tuple[int, ...]] = set()
    unique = []
    for r in reports:
        if r.best not in seen:
            seen.add(r.best)
            unique.append(r)
    return unique
