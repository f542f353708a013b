"""Experiment configuration files (YAML, strict keys)."""

from __future__ import annotations

from pathlib import Path

import yaml

from .archive import OperatorConfig
from .features import ElaBudget
from .harness import ConfigError, ExperimentConfig

__all__ = ["load_config", "dump_config", "ConfigError"]

_TOP_KEYS = {
    "domain",
    "behaviour",
    "dim",
    "archive_size",
    "sampler",
    "budget",
    "batch",
    "runs",
    "base_seed",
    "checkpoints",
    "operator",
    "ela",
    "features",
}
_OPERATOR_KEYS = {"sigma", "sigma1", "sigma2"}
_ELA_KEYS = {"conv_pairs", "local_starts", "local_max_evals", "level_folds"}


def _check_keys(mapping: dict, allowed: set[str], where: str):
    unknown = sorted(set(mapping) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def load_config(path: str | Path) -> ExperimentConfig:
    """Parse and validate a config file; unknown keys are hard errors."""
    try:
        raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except yaml.YAMLError as err:
        raise ConfigError(f"{path}: {err}") from err
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a key-value document")
    _check_keys(raw, _TOP_KEYS, "config")

    kwargs = {k: v for k, v in raw.items() if k not in ("operator", "ela")}
    op = raw.get("operator") or {}
    if not isinstance(op, dict):
        raise ConfigError("operator section must be a mapping")
    _check_keys(op, _OPERATOR_KEYS, "operator")
    ela = raw.get("ela") or {}
    if not isinstance(ela, dict):
        raise ConfigError("ela section must be a mapping")
    _check_keys(ela, _ELA_KEYS, "ela")

    try:
        cfg = ExperimentConfig(
            **kwargs,
            operator=OperatorConfig(**op),
            ela=ElaBudget(**ela),
        )
    except (TypeError, ValueError) as err:
        raise ConfigError(str(err)) from err
    return cfg


def dump_config(cfg: ExperimentConfig) -> str:
    """Resolved configuration with every default materialised."""
    doc = {
        "domain": cfg.domain,
        "behaviour": cfg.behaviour,
        "dim": cfg.dim,
        "archive_size": cfg.archive_size,
        "sampler": cfg.sampler,
        "budget": cfg.budget,
        "batch": cfg.batch,
        "runs": cfg.runs,
        "base_seed": cfg.base_seed,
        "checkpoints": list(cfg.checkpoints),
        "operator": {
            "sigma": cfg.operator.sigma,
            "sigma1": cfg.operator.sigma1,
            "sigma2": cfg.operator.sigma2,
        },
        "ela": {
            "conv_pairs": cfg.ela.conv_pairs,
            "local_starts": cfg.ela.local_starts,
            "local_max_evals": cfg.ela.local_max_evals,
            "level_folds": cfg.ela.level_folds,
        },
        "features": list(cfg.features),
    }
    return yaml.safe_dump(doc, sort_keys=False)
