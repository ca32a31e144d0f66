"""Trade-off weight derivation from pairwise comparisons.

The comparison matrix covers all resources plus the communication criterion
(order l+1), so resource weights and the communication weight are jointly
normalized. Weights come from the principal eigenvector, computed by power
iteration; judgments are accepted only when the consistency ratio is below
the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Saaty random index per matrix order; orders 1 and 2 are always consistent.
RANDOM_INDEX = {1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49}
CR_THRESHOLD = 0.1

POWER_ITER_TOL = 1e-12
POWER_ITER_MAX = 10_000


class ConvergenceError(ArithmeticError):
    """Power iteration did not converge within the iteration cap."""


class InconsistentComparisonError(ValueError):
    """Judgments exceed the consistency-ratio threshold; carries the CR value."""

    def __init__(self, cr: float, threshold: float = CR_THRESHOLD):
        self.cr = cr
        self.threshold = threshold
        super().__init__(f"comparison judgments are inconsistent (CR = {cr:.4f} >= {threshold})")


@dataclass(frozen=True)
class TradeoffVector:
    """Per-resource weights plus the communication weight.

    Construction is unchecked so scaled (unnormalized) weight vectors can be
    formed for analysis; outputs of derive_tradeoff always satisfy check().
    """

    f: tuple[float, ...]
    fc: float

    @classmethod
    def uniform(cls, num_resources: int) -> "TradeoffVector":
        w = 1.0 / (num_resources + 1)
        return cls(f=(w,) * num_resources, fc=w)

    def scaled(self, alpha: float) -> "TradeoffVector":
        return TradeoffVector(f=tuple(alpha * v for v in self.f), fc=alpha * self.fc)

    def check(self, num_resources: int | None = None) -> None:
        if num_resources is not None and len(self.f) != num_resources:
            raise ValueError(f"expected {num_resources} resource weights, got {len(self.f)}")
        if any(v <= 0 for v in self.f) or self.fc <= 0:
            raise ValueError("all trade-off weights must be positive")
        total = sum(self.f) + self.fc
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"trade-off weights must sum to 1, got {total}")

    def to_dict(self) -> dict:
        return {"f": list(self.f), "fc": self.fc}


def validate_comparison_matrix(M: np.ndarray) -> None:
    """Structural rules: square, diagonal 1, reciprocal, judgment scale 1/9..9."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ValueError("comparison matrix must be square")
    q = M.shape[0]
    for a in range(q):
        if M[a, a] != 1:
            raise ValueError(f"diagonal entry [{a}][{a}] must be exactly 1")
        for b in range(q):
            v = M[a, b]
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"entry [{a}][{b}] must be a positive real")
            if not (1 / 9 - 1e-9 <= v <= 9 + 1e-9):
                raise ValueError(f"entry [{a}][{b}] = {v} is outside the 1/9..9 scale")
            if b > a:
                prod = M[a, b] * M[b, a]
                if abs(prod - 1.0) > 1e-9 * max(1.0, prod):
                    raise ValueError(f"entry [{b}][{a}] is not the reciprocal of [{a}][{b}]")


def principal_eigen(M: np.ndarray) -> tuple[float, np.ndarray]:
    """Dominant eigenpair by power iteration from the uniform start vector.

    Returns (lambda_max, w) with w normalized to sum 1. Deterministic; raises
    ConvergenceError after the iteration cap (pathological input).
    """
    M = np.asarray(M, dtype=float)
    q = M.shape[0]
    w = np.full(q, 1.0 / q)
    for _ in range(POWER_ITER_MAX):
        nxt = M @ w
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - w)) < POWER_ITER_TOL:
            w = nxt
            break
        w = nxt
    else:
        raise ConvergenceError(f"no convergence after {POWER_ITER_MAX} iterations")
    lam = float((M @ w).sum())
    return lam, w


def consistency_ratio(M: np.ndarray, lambda_max: float | None = None) -> float:
    """CR = ((lambda_max - q) / (q - 1)) / RI(q); defined as 0 for q <= 2."""
    M = np.asarray(M, dtype=float)
    q = M.shape[0]
    if q <= 2:
        return 0.0
    if q > max(RANDOM_INDEX):
        raise ValueError(f"random index table covers up to order {max(RANDOM_INDEX)}, got {q}")
    if lambda_max is None:
        lambda_max, _ = principal_eigen(M)
    ci = (lambda_max - q) / (q - 1)
    return max(ci / RANDOM_INDEX[q], 0.0)


def derive_tradeoff(M: np.ndarray, threshold: float = CR_THRESHOLD) -> TradeoffVector:
    """Weights from a comparison matrix; the last criterion is communication.

    Raises InconsistentComparisonError (carrying CR) when CR >= threshold so a
    caller can prompt for revised judgments.
    """
    M = np.asarray(M, dtype=float)
    validate_comparison_matrix(M)
    lam, w = principal_eigen(M)
    cr = consistency_ratio(M, lam)
    if cr >= threshold:
        raise InconsistentComparisonError(cr, threshold)
    return TradeoffVector(f=tuple(float(v) for v in w[:-1]), fc=float(w[-1]))
