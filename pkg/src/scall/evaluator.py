"""Allocation cost with feasibility multipliers and load breakdowns.

The cost of placing components according to p is

    w = (sum_k f_k * sum_i T[i][p_i][k]  +  fc * sum_{i<j} K[i][j] * C[p_i][p_j]) * rho * kappa

where rho drops to 0 when any unit's aggregated demand exceeds its
availability and kappa drops to 0 when aggregated cross-unit traffic exceeds
the link bandwidth. Co-located pairs contribute nothing: C has a zero
diagonal and same-unit traffic is not counted against bandwidth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ahp import TradeoffVector
from .model import ArchitectureModel


@dataclass(frozen=True)
class EvaluationResult:
    """Cost value plus the feasibility flags and breakdowns that explain it.

    w is 0 whenever the allocation is infeasible (budget overrun or a
    placement outside a component's allowed units).
    """

    w: float
    rho: int
    kappa: int
    feasible: bool
    unit_load: np.ndarray  # (m, l) summed consumption per unit and resource
    pair_traffic: np.ndarray  # (m, m) symmetric cross-unit intensity, zero diagonal

    def to_dict(self) -> dict:
        return {
            "w": self.w,
            "rho": self.rho,
            "kappa": self.kappa,
            "feasible": self.feasible,
            "unitLoad": self.unit_load.tolist(),
            "pairTraffic": self.pair_traffic.tolist(),
        }


def resource_load(model: ArchitectureModel, p: Sequence[int]) -> np.ndarray:
    """Per-unit, per-resource consumption: load[h][k] = sum of T[i][h][k] over i with p[i] = h."""
    p = model.check_allocation(p)
    load = np.zeros((model.m, model.l))
    for i, h in enumerate(p):
        load[h] += model.T[i, h]
    return load


def comm_traffic(model: ArchitectureModel, p: Sequence[int]) -> np.ndarray:
    """Aggregated intensity per unit pair; co-located pairs are excluded."""
    p = model.check_allocation(p)
    traffic = np.zeros((model.m, model.m))
    K = model.K
    for i in range(model.n):
        g = p[i]
        for j in range(i + 1, model.n):
            h = p[j]
            k = K[i, j]
            if k and g != h:
                traffic[g, h] += k
                traffic[h, g] += k
    return traffic


def evaluate(model: ArchitectureModel, F: TradeoffVector, p: Sequence[int]) -> EvaluationResult:
    """Score one allocation. Infeasibility is data, not an error.

    Budget comparisons are strict (load > R, traffic > B) with no epsilon:
    the matrices are user-authored decimals and an epsilon would hide genuine
    over-budget inputs.
    """
    p = model.check_allocation(p)
    if len(F.f) != model.l:
        raise ValueError(f"trade-off vector has {len(F.f)} resource weights, model has {model.l}")

    load = resource_load(model, p)
    traffic = comm_traffic(model, p)
    rho = 0 if bool(np.any(load > model.R)) else 1
    kappa = 0 if bool(np.any(traffic > model.B)) else 1
    feasible = rho == 1 and kappa == 1 and model.allocation_satisfies_constraints(p)

    w = 0.0
    if feasible:
        totals = load.sum(axis=0)
        consumption = 0.0
        for k in range(model.l):
            consumption += F.f[k] * float(totals[k])
        comm = 0.0
        for g in range(model.m):
            for h in range(g + 1, model.m):
                comm += float(traffic[g, h]) * float(model.C[g, h])
        w = consumption + F.fc * comm
    return EvaluationResult(
        w=w, rho=rho, kappa=kappa, feasible=feasible, unit_load=load, pair_traffic=traffic
    )
