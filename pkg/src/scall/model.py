"""Architecture model: domain types, validation and canonical JSON serialization.

The canonical document is a single JSON object::

    {
      "resources":  [{"id", "name", "unit"}, ...],          # length l
      "units":      [{"id", "name", "kind"}, ...],          # length m
      "components": [{"id", "name", "allowedUnits"}, ...],  # length n
      "T": [[[...]]],   # n x m x l consumption, [component][unit][resource]
      "R": [[...]],     # m x l availability per unit
      "K": [[...]],     # n x n communication intensity, symmetric, zero diagonal
      "C": [[...]],     # m x m platform communication cost, symmetric, zero diagonal
      "B": [[...]],     # m x m link bandwidth, symmetric, zero diagonal, 0 = no link
      "comparison": [[...]]   # optional (l+1) x (l+1) pairwise comparison matrix
    }

The same document is used for files on disk and for HTTP request bodies.
A top-level "layout" key (editor geometry) is tolerated and ignored.
External identifiers are strings; all computation uses dense 0-based indices
fixed by list order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Sequence

import numpy as np

# Machine-readable validation issue codes.
MISSING_FIELD = "MISSING_FIELD"
BAD_TYPE = "BAD_TYPE"
EMPTY_LIST = "EMPTY_LIST"
EMPTY_ID = "EMPTY_ID"
DUPLICATE_ID = "DUPLICATE_ID"
UNKNOWN_UNIT_REF = "UNKNOWN_UNIT_REF"
EMPTY_ALLOWED_SET = "EMPTY_ALLOWED_SET"
DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
NEGATIVE_ENTRY = "NEGATIVE_ENTRY"
NON_FINITE_ENTRY = "NON_FINITE_ENTRY"
ASYMMETRIC_K = "ASYMMETRIC_K"
ASYMMETRIC_C = "ASYMMETRIC_C"
ASYMMETRIC_B = "ASYMMETRIC_B"
NONZERO_DIAGONAL = "NONZERO_DIAGONAL"
BAD_COMPARISON = "BAD_COMPARISON"


@dataclass(frozen=True)
class ValidationIssue:
    """One violation found while validating a model document."""

    code: str
    message: str
    path: str = ""

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "path": self.path}


class ModelParseError(ValueError):
    """Raised when the input is not decodable JSON (distinct from validation)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ModelValidationError(ValueError):
    """Raised when a decodable document violates the model rules.

    Carries the full list of issues so callers can render a report.
    """

    def __init__(self, issues: Iterable[ValidationIssue]):
        self.issues = list(issues)
        summary = "; ".join(i.message for i in self.issues[:3])
        if len(self.issues) > 3:
            summary += f"; ... ({len(self.issues)} issues)"
        super().__init__(summary or "invalid model")

    @property
    def codes(self) -> list[str]:
        return [i.code for i in self.issues]

    def report(self) -> list[dict]:
        return [i.to_dict() for i in self.issues]


@dataclass(frozen=True)
class ResourceDef:
    id: str
    name: str
    unit: str  # free-text measurement-unit label, e.g. "MB"


@dataclass(frozen=True)
class ComputingUnit:
    id: str
    name: str
    kind: str  # free-text tag, e.g. CPU / GPU / FPGA


@dataclass(frozen=True)
class SoftwareComponent:
    id: str
    name: str
    allowed_units: frozenset[str] = frozenset()  # empty means "all units allowed"


@dataclass(frozen=True, eq=False)
class ArchitectureModel:
    """Validated, immutable system model.

    Matrices are read-only float64 arrays; instances are safe to share across
    threads. Build instances through :func:`validate_model` or :func:`load_model`,
    which enforce every structural invariant.
    """

    resources: tuple[ResourceDef, ...]
    components: tuple[SoftwareComponent, ...]
    units: tuple[ComputingUnit, ...]
    T: np.ndarray  # (n, m, l)
    R: np.ndarray  # (m, l)
    K: np.ndarray  # (n, n)
    C: np.ndarray  # (m, m)
    B: np.ndarray  # (m, m)
    comparison: np.ndarray | None = None  # (l+1, l+1)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def m(self) -> int:
        return len(self.units)

    @property
    def l(self) -> int:
        return len(self.resources)

    @cached_property
    def unit_index(self) -> dict[str, int]:
        return {u.id: h for h, u in enumerate(self.units)}

    @cached_property
    def allowed_indices(self) -> tuple[tuple[int, ...], ...]:
        """Per component, the sorted unit indices it may be placed on."""
        every = tuple(range(self.m))
        out = []
        for c in self.components:
            if c.allowed_units:
                out.append(tuple(h for h in every if self.units[h].id in c.allowed_units))
            else:
                out.append(every)
        return tuple(out)

    def check_allocation(self, p: Sequence[int]) -> tuple[int, ...]:
        """Validate an allocation vector (length, unit range, allowed units)."""
        p = tuple(int(x) for x in p)
        if len(p) != self.n:
            raise ValueError(f"allocation length {len(p)} != component count {self.n}")
        for i, h in enumerate(p):
            if not 0 <= h < self.m:
                raise ValueError(f"allocation[{i}] = {h} is not a unit index")
        return p

    def allocation_satisfies_constraints(self, p: Sequence[int]) -> bool:
        return all(h in self.allowed_indices[i] for i, h in enumerate(p))

    def allocation_ids(self, p: Sequence[int]) -> list[str]:
        """Translate internal indices to the external unit-id form."""
        return [self.units[int(h)].id for h in p]

    def allocation_from_ids(self, ids: Sequence[str]) -> tuple[int, ...]:
        try:
            return self.check_allocation([self.unit_index[i] for i in ids])
        except KeyError as e:
            raise ValueError(f"unknown unit id {e.args[0]!r}") from None

    def to_dict(self) -> dict:
        """Canonical document form (fixed key order, allowedUnits in unit order)."""
        unit_order = {u.id: h for h, u in enumerate(self.units)}
        doc: dict[str, Any] = {
            "resources": [{"id": r.id, "name": r.name, "unit": r.unit} for r in self.resources],
            "units": [{"id": u.id, "name": u.name, "kind": u.kind} for u in self.units],
            "components": [
                {
                    "id": c.id,
                    "name": c.name,
                    "allowedUnits": sorted(c.allowed_units, key=unit_order.__getitem__),
                }
                for c in self.components
            ],
            "T": self.T.tolist(),
            "R": self.R.tolist(),
            "K": self.K.tolist(),
            "C": self.C.tolist(),
            "B": self.B.tolist(),
        }
        if self.comparison is not None:
            doc["comparison"] = self.comparison.tolist()
        return doc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ArchitectureModel):
            return NotImplemented
        if (self.resources, self.components, self.units) != (
            other.resources,
            other.components,
            other.units,
        ):
            return False
        for name in ("T", "R", "K", "C", "B"):
            if not np.array_equal(getattr(self, name), getattr(other, name)):
                return False
        if (self.comparison is None) != (other.comparison is None):
            return False
        return self.comparison is None or np.array_equal(self.comparison, other.comparison)


def _is_number(v: Any) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def parse_comparison_entry(v: Any) -> float:
    """Accept a number, a numeric string, or a fraction string like "1/3"."""
    if _is_number(v):
        return float(v)
    if isinstance(v, str):
        parts = v.split("/")
        try:
            if len(parts) == 1:
                return float(parts[0])
            if len(parts) == 2:
                return float(parts[0]) / float(parts[1])
        except (ValueError, ZeroDivisionError):
            pass
    raise ValueError(f"not a comparison value: {v!r}")


def _check_id_block(raw: Any, key: str, fields: tuple[str, ...], issues: list[ValidationIssue]) -> list[dict]:
    """Shared structure check for the resources / units / components lists."""
    if not isinstance(raw, list):
        issues.append(ValidationIssue(BAD_TYPE, f"'{key}' must be a list", key))
        return []
    if not raw:
        issues.append(ValidationIssue(EMPTY_LIST, f"'{key}' must contain at least one entry", key))
        return []
    seen: set[str] = set()
    entries: list[dict] = []
    for i, entry in enumerate(raw):
        path = f"{key}[{i}]"
        if not isinstance(entry, dict):
            issues.append(ValidationIssue(BAD_TYPE, f"{path} must be an object", path))
            continue
        ok = True
        for f in fields:
            if f not in entry or not isinstance(entry[f], str):
                issues.append(ValidationIssue(BAD_TYPE, f"{path}.{f} must be a string", f"{path}.{f}"))
                ok = False
        if not ok:
            continue
        ident = entry["id"]
        if not ident:
            issues.append(ValidationIssue(EMPTY_ID, f"{path}.id must be non-empty", f"{path}.id"))
            continue
        if ident in seen:
            issues.append(ValidationIssue(DUPLICATE_ID, f"duplicate {key} id {ident!r}", f"{path}.id"))
            continue
        seen.add(ident)
        entries.append(entry)
    return entries


def _check_matrix(
    raw: Any, key: str, shape: tuple[int, ...], issues: list[ValidationIssue]
) -> np.ndarray | None:
    """Check a nested list against an exact shape with finite, non-negative entries."""

    def walk(node: Any, dims: tuple[int, ...], path: str) -> bool:
        if not dims:
            if not _is_number(node):
                issues.append(ValidationIssue(BAD_TYPE, f"{path} must be a number", path))
                return False
            if node != node or node in (float("inf"), float("-inf")):
                issues.append(ValidationIssue(NON_FINITE_ENTRY, f"{path} must be finite", path))
                return False
            if node < 0:
                issues.append(ValidationIssue(NEGATIVE_ENTRY, f"{path} must be >= 0", path))
                return False
            return True
        if not isinstance(node, list) or len(node) != dims[0]:
            got = len(node) if isinstance(node, list) else type(node).__name__
            issues.append(
                ValidationIssue(
                    DIMENSION_MISMATCH,
                    f"{path} must have length {dims[0]}, got {got}",
                    path,
                )
            )
            return False
        ok = True
        for i, child in enumerate(node):
            ok = walk(child, dims[1:], f"{path}[{i}]") and ok
        return ok

    if raw is None:
        issues.append(ValidationIssue(MISSING_FIELD, f"'{key}' is required", key))
        return None
    if walk(raw, shape, key):
        arr = np.asarray(raw, dtype=float)
        arr.flags.writeable = False
        return arr
    return None


def _check_symmetric(arr: np.ndarray, key: str, code: str, issues: list[ValidationIssue]) -> None:
    n = arr.shape[0]
    for i in range(n):
        if arr[i, i] != 0:
            issues.append(
                ValidationIssue(NONZERO_DIAGONAL, f"{key}[{i}][{i}] must be 0", f"{key}[{i}][{i}]")
            )
        for j in range(i + 1, n):
            if arr[i, j] != arr[j, i]:
                issues.append(
                    ValidationIssue(
                        code,
                        f"{key}[{i}][{j}] = {arr[i, j]} but {key}[{j}][{i}] = {arr[j, i]}",
                        f"{key}[{i}][{j}]",
                    )
                )


def _check_comparison(raw: Any, order: int, issues: list[ValidationIssue]) -> np.ndarray | None:
    path = "comparison"
    if not isinstance(raw, list) or len(raw) != order or any(
        not isinstance(row, list) or len(row) != order for row in raw
    ):
        issues.append(
            ValidationIssue(
                DIMENSION_MISMATCH,
                f"comparison must be a {order}x{order} matrix (resources plus communication)",
                path,
            )
        )
        return None
    mat = np.ones((order, order))
    ok = True
    for a in range(order):
        for b in range(order):
            try:
                mat[a, b] = parse_comparison_entry(raw[a][b])
            except ValueError as e:
                issues.append(ValidationIssue(BAD_COMPARISON, str(e), f"{path}[{a}][{b}]"))
                ok = False
    if not ok:
        return None
    for a in range(order):
        if mat[a, a] != 1:
            issues.append(
                ValidationIssue(BAD_COMPARISON, f"comparison[{a}][{a}] must be 1", f"{path}[{a}][{a}]")
            )
            ok = False
        for b in range(order):
            v = mat[a, b]
            if not (1 / 9 - 1e-9 <= v <= 9 + 1e-9):
                issues.append(
                    ValidationIssue(
                        BAD_COMPARISON,
                        f"comparison[{a}][{b}] = {v} is outside the 1/9..9 judgment scale",
                        f"{path}[{a}][{b}]",
                    )
                )
                ok = False
            if b > a and abs(mat[a, b] * mat[b, a] - 1.0) > 1e-9 * max(1.0, mat[a, b] * mat[b, a]):
                issues.append(
                    ValidationIssue(
                        BAD_COMPARISON,
                        f"comparison[{b}][{a}] is not the reciprocal of comparison[{a}][{b}]",
                        f"{path}[{b}][{a}]",
                    )
                )
                ok = False
    if not ok:
        return None
    mat.flags.writeable = False
    return mat


def collect_issues(raw: Any) -> tuple[ArchitectureModel | None, list[ValidationIssue]]:
    """Check a decoded document against every model rule.

    Returns the validated model and an empty list, or None and the full list
    of violations found (validation does not stop at the first problem).
    """
    issues: list[ValidationIssue] = []
    if not isinstance(raw, dict):
        issues.append(ValidationIssue(BAD_TYPE, "model document must be a JSON object", ""))
        return None, issues

    for key in ("resources", "units", "components", "T", "R", "K", "C", "B"):
        if key not in raw:
            issues.append(ValidationIssue(MISSING_FIELD, f"'{key}' is required", key))

    resources = _check_id_block(raw.get("resources"), "resources", ("id", "name", "unit"), issues)
    units = _check_id_block(raw.get("units"), "units", ("id", "name", "kind"), issues)
    components = _check_id_block(raw.get("components"), "components", ("id", "name"), issues)

    unit_ids = {u["id"] for u in units}
    comps: list[SoftwareComponent] = []
    for i, c in enumerate(components):
        allowed = c.get("allowedUnits", [])
        path = f"components[{i}].allowedUnits"
        if not isinstance(allowed, list) or any(not isinstance(a, str) for a in allowed):
            issues.append(ValidationIssue(BAD_TYPE, f"{path} must be a list of unit ids", path))
            allowed = []
        known = []
        for a in allowed:
            if a not in unit_ids:
                issues.append(
                    ValidationIssue(
                        UNKNOWN_UNIT_REF,
                        f"component {c['id']!r} allows unknown unit {a!r}",
                        path,
                    )
                )
            else:
                known.append(a)
        if allowed and not known:
            issues.append(
                ValidationIssue(
                    EMPTY_ALLOWED_SET,
                    f"component {c['id']!r} has no valid unit left in allowedUnits",
                    path,
                )
            )
        comps.append(SoftwareComponent(id=c["id"], name=c["name"], allowed_units=frozenset(allowed)))

    n, m, l = len(components), len(units), len(resources)
    # Shape checks only make sense once the id blocks are intact.
    structural_ok = n > 0 and m > 0 and l > 0 and not any(
        i.code in (BAD_TYPE, EMPTY_LIST, MISSING_FIELD, DUPLICATE_ID, EMPTY_ID) for i in issues
    )
    if not structural_ok:
        return None, issues

    T = _check_matrix(raw.get("T"), "T", (n, m, l), issues)
    R = _check_matrix(raw.get("R"), "R", (m, l), issues)
    K = _check_matrix(raw.get("K"), "K", (n, n), issues)
    C = _check_matrix(raw.get("C"), "C", (m, m), issues)
    B = _check_matrix(raw.get("B"), "B", (m, m), issues)

    if K is not None:
        _check_symmetric(K, "K", ASYMMETRIC_K, issues)
    if C is not None:
        _check_symmetric(C, "C", ASYMMETRIC_C, issues)
    if B is not None:
        _check_symmetric(B, "B", ASYMMETRIC_B, issues)

    comparison = None
    if raw.get("comparison") is not None:
        comparison = _check_comparison(raw["comparison"], l + 1, issues)

    if issues:
        return None, issues
    model = ArchitectureModel(
        resources=tuple(ResourceDef(r["id"], r["name"], r["unit"]) for r in resources),
        components=tuple(comps),
        units=tuple(ComputingUnit(u["id"], u["name"], u["kind"]) for u in units),
        T=T,
        R=R,
        K=K,
        C=C,
        B=B,
        comparison=comparison,
    )
    return model, []


def validate_model(raw: Any) -> ArchitectureModel:
    """Validate a decoded document; raises ModelValidationError with the report."""
    model, issues = collect_issues(raw)
    if issues:
        raise ModelValidationError(issues)
    assert model is not None
    return model


def load_model(data: bytes | str) -> ArchitectureModel:
    """Parse and validate a canonical JSON document.

    Raises ModelParseError for undecodable input (with line/column) and
    ModelValidationError for rule violations.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ModelParseError(f"not valid UTF-8: {e}") from None
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as e:
        raise ModelParseError(e.msg, e.lineno, e.colno) from None
    return validate_model(raw)


def save_model(model: ArchitectureModel) -> bytes:
    """Canonical serialization; load(save(model)) is the identity."""
    return (json.dumps(model.to_dict(), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
