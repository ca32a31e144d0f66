"""Random model generation and GA-vs-exact gap benchmarking.

Generation recipe (fixed so benchmark runs are reproducible): T entries
uniform in [1, 10]; each component pair communicates with probability
`density`, with intensity uniform in [1, 5]; platform communication cost
uniform in [1, 3] off-diagonal; per resource, every unit provides
`tightness` x (total average demand) / m; every link gets `tightness` x the
cross-unit traffic expected under a uniform random placement. tightness > 1
leaves slack, small values produce infeasible stress instances.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, replace
from typing import IO

import numpy as np

from .ahp import TradeoffVector
from .model import ArchitectureModel, validate_model
from .search import (
    DEFAULT_EXHAUSTIVE_CAP,
    GAConfig,
    NoFeasibleAllocationError,
    derived_seed,
    exhaustive_search,
    ga_search,
    space_size,
)

CSV_HEADER = ["index", "n", "m", "l", "space", "w_opt", "w_ga", "gap", "t_opt_ms", "t_ga_ms"]

_UNIT_KINDS = ("CPU", "GPU", "FPGA", "DSP")
_RESOURCE_UNITS = ("MB", "us", "W", "Mbps")


@dataclass(frozen=True)
class BenchSpec:
    """Instance-generation parameters; ranges are inclusive."""

    n_range: tuple[int, int]
    m_range: tuple[int, int]
    l_range: tuple[int, int]
    instances: int = 10
    seed: int = 0
    density: float = 0.5
    tightness: float = 1.5

    def __post_init__(self) -> None:
        for name in ("n_range", "m_range", "l_range"):
            lo, hi = getattr(self, name)
            if lo < 1 or hi < lo:
                raise ValueError(f"{name} must be a non-empty range of positive integers")
        if self.instances < 1:
            raise ValueError("instances must be >= 1")
        if not 0 <= self.density <= 1:
            raise ValueError("density must be in [0, 1]")
        if self.tightness <= 0:
            raise ValueError("tightness must be > 0")


@dataclass(frozen=True)
class InstanceRecord:
    index: int
    n: int
    m: int
    l: int
    space: int
    w_opt: float | None  # None when exhaustive was skipped or found nothing
    w_ga: float | None  # None when the GA found nothing feasible
    gap: float | None  # (w_ga - w_opt) / w_opt, None when either side is missing
    t_opt_ms: float | None
    t_ga_ms: float | None
    status: str  # "ok", "no_feasible", "exact_skipped"

    def csv_row(self) -> list:
        def fmt(v):
            return "" if v is None else v

        return [
            self.index, self.n, self.m, self.l, self.space,
            fmt(self.w_opt), fmt(self.w_ga), fmt(self.gap), fmt(self.t_opt_ms), fmt(self.t_ga_ms),
        ]


@dataclass(frozen=True)
class GapStats:
    per_instance: tuple[InstanceRecord, ...]
    mean_gap: float | None
    max_gap: float | None
    mean_t_ga_ms: float | None

    def summary_dict(self) -> dict:
        gaps = [r.gap for r in self.per_instance if r.gap is not None]
        return {
            "instances": len(self.per_instance),
            "withGap": len(gaps),
            "noFeasible": sum(1 for r in self.per_instance if r.status == "no_feasible"),
            "exactSkipped": sum(1 for r in self.per_instance if r.status == "exact_skipped"),
            "meanGap": self.mean_gap,
            "maxGap": self.max_gap,
            "meanTGaMs": self.mean_t_ga_ms,
            "exactMatches": sum(1 for g in gaps if g <= 1e-12),
        }

    def write_csv(self, out: IO[str]) -> None:
        writer = csv.writer(out)
        writer.writerow(CSV_HEADER)
        for record in self.per_instance:
            writer.writerow(record.csv_row())

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def generate_model(spec: BenchSpec, index: int) -> ArchitectureModel:
    """Deterministic random instance for (spec.seed, index); always validates."""
    rng = np.random.default_rng([abs(spec.seed) & ((1 << 63) - 1), index])
    n = int(rng.integers(spec.n_range[0], spec.n_range[1] + 1))
    m = int(rng.integers(spec.m_range[0], spec.m_range[1] + 1))
    l = int(rng.integers(spec.l_range[0], spec.l_range[1] + 1))

    T = rng.uniform(1.0, 10.0, size=(n, m, l))

    K = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < spec.density:
                K[i, j] = K[j, i] = rng.uniform(1.0, 5.0)

    C = np.zeros((m, m))
    for g in range(m):
        for h in range(g + 1, m):
            C[g, h] = C[h, g] = rng.uniform(1.0, 3.0)

    # Per resource, supply tightness x total average demand spread over the units.
    demand = T.mean(axis=1).sum(axis=0)  # (l,) total demand averaged over hosts
    R = np.tile(spec.tightness * demand / m, (m, 1))

    # Every link carries tightness x the total cross-unit traffic expected
    # under a uniform random placement; rho, not kappa, is the binding
    # constraint for tightness > 1, while small tightness chokes both.
    B = np.zeros((m, m))
    if m > 1:
        total_k = float(np.triu(K, k=1).sum())
        per_link = spec.tightness * total_k * (1.0 - 1.0 / m)
        B = np.full((m, m), per_link)
        np.fill_diagonal(B, 0.0)

    doc = {
        "resources": [
            {"id": f"r{k}", "name": f"Resource {k}", "unit": _RESOURCE_UNITS[k % len(_RESOURCE_UNITS)]}
            for k in range(l)
        ],
        "units": [
            {"id": f"u{h}", "name": f"Unit {h}", "kind": _UNIT_KINDS[h % len(_UNIT_KINDS)]}
            for h in range(m)
        ],
        "components": [
            {"id": f"c{i}", "name": f"Component {i}", "allowedUnits": []} for i in range(n)
        ],
        "T": T.tolist(),
        "R": R.tolist(),
        "K": K.tolist(),
        "C": C.tolist(),
        "B": B.tolist(),
    }
    return validate_model(doc)


def run_benchmark(
    spec: BenchSpec,
    ga_cfg: GAConfig | None = None,
    cap: int | None = None,
    F: TradeoffVector | None = None,
) -> GapStats:
    """Exact-vs-GA comparison over `spec.instances` generated models.

    Uses uniform weights unless F is given. Instances whose space exceeds the
    enumeration cap run the GA only (no gap); infeasible instances become
    records, not crashes.
    """
    ga_cfg = ga_cfg or GAConfig()
    records: list[InstanceRecord] = []
    for index in range(spec.instances):
        model = generate_model(spec, index)
        weights = F if F is not None else TradeoffVector.uniform(model.l)
        space = space_size(model)

        w_opt = t_opt = None
        status = "ok"
        effective_cap = cap if cap is not None else DEFAULT_EXHAUSTIVE_CAP
        if space <= effective_cap:
            t0 = time.perf_counter()
            try:
                w_opt = exhaustive_search(model, weights, top_k=1, cap=effective_cap).best_result.w
                t_opt = (time.perf_counter() - t0) * 1000.0
            except NoFeasibleAllocationError:
                status = "no_feasible"
        else:
            status = "exact_skipped"

        w_ga = t_ga = None
        if status != "no_feasible":
            run_cfg = replace(ga_cfg, seed=derived_seed(spec.seed, index))
            t0 = time.perf_counter()
            try:
                w_ga = ga_search(model, weights, run_cfg).best_result.w
                t_ga = (time.perf_counter() - t0) * 1000.0
            except NoFeasibleAllocationError:
                status = "no_feasible"

        gap = None
        if w_opt is not None and w_ga is not None and w_opt > 0:
            gap = (w_ga - w_opt) / w_opt
        records.append(
            InstanceRecord(
                index=index, n=model.n, m=model.m, l=model.l, space=space,
                w_opt=w_opt, w_ga=w_ga, gap=gap, t_opt_ms=t_opt, t_ga_ms=t_ga, status=status,
            )
        )

    gaps = [r.gap for r in records if r.gap is not None]
    ga_times = [r.t_ga_ms for r in records if r.t_ga_ms is not None]
    return GapStats(
        per_instance=tuple(records),
        mean_gap=sum(gaps) / len(gaps) if gaps else None,
        max_gap=max(gaps) if gaps else None,
        mean_t_ga_ms=sum(ga_times) / len(ga_times) if ga_times else None,
    )
