"""Shared vocabulary and result container for the feature groups."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "GROUPS",
    "GROUP_CODES",
    "ALL_CODES",
    "STATUS_OK",
    "STATUS_INSUFFICIENT",
    "STATUS_DEGENERATE",
    "FeatureError",
    "InsufficientSamples",
    "DegenerateData",
    "ElaBudget",
    "FeatureVector",
]

GROUP_CODES = {
    "conv": ["f1", "f2", "f3", "f4"],
    "distr": ["f5", "f6", "f7"],
    "level": [f"f{i}" for i in range(8, 17)],
    "local": [f"f{i}" for i in range(17, 24)],
    "meta": [f"f{i}" for i in range(24, 33)],
    "nbc": [f"f{i}" for i in range(33, 38)],
}
GROUPS = tuple(GROUP_CODES)
ALL_CODES = [f"f{i}" for i in range(1, 38)]

STATUS_OK = "ok"
STATUS_INSUFFICIENT = "insufficient-samples"
STATUS_DEGENERATE = "degenerate-data"


class FeatureError(Exception):
    """Base for per-group failures; carries the undefined-reason status."""

    status = STATUS_DEGENERATE


class InsufficientSamples(FeatureError):
    status = STATUS_INSUFFICIENT


class DegenerateData(FeatureError):
    status = STATUS_DEGENERATE


@dataclass(frozen=True)
class ElaBudget:
    """Extra objective-evaluation budgets for the probing feature groups."""

    conv_pairs: int = 1000
    local_starts: int | None = None  # None -> min(50 * d, 400)
    local_max_evals: int = 1000
    level_folds: int = 10

    def __post_init__(self):
        for name in ("conv_pairs", "local_max_evals", "level_folds"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.local_starts is not None and self.local_starts <= 0:
            raise ValueError("local_starts must be positive")

    def starts_for(self, dim: int) -> int:
        if self.local_starts is not None:
            return self.local_starts
        return min(50 * dim, 400)


@dataclass
class FeatureVector:
    """Feature code -> value, with a per-code status and evaluation cost."""

    values: dict[str, float | None] = field(default_factory=dict)
    status: dict[str, str] = field(default_factory=dict)
    evals_used: int = 0

    def set(self, code: str, value: float):
        self.values[code] = float(value)
        self.status[code] = STATUS_OK

    def set_undefined(self, code: str, reason: str):
        self.values[code] = None
        self.status[code] = reason

    def update(self, other: "FeatureVector"):
        self.values.update(other.values)
        self.status.update(other.status)
        self.evals_used += other.evals_used

    def defined(self) -> dict[str, float]:
        return {c: v for c, v in self.values.items() if v is not None}

    def __getitem__(self, code: str) -> float | None:
        return self.values[code]
