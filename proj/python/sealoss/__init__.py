"""Over-sea path-loss models and measurement analysis.

Functions taking ``config`` accept a dict in the campaign JSON layout, a path
to such a file, or None for the built-in defaults.
"""

import json
import os

from . import _core
from ._core import (
    SealossError,
    free_space_loss,
    great_circle_distance,
    mae,
    model_ids,
    rmse,
    two_ray_flat,
    wavelength,
)

__all__ = [
    "SealossError",
    "characteristic_distances",
    "compare_models",
    "curve",
    "fit_log_distance",
    "free_space_loss",
    "great_circle_distance",
    "mae",
    "max_range",
    "model_ids",
    "rmse",
    "run_analyze",
    "run_curves",
    "run_range",
    "two_ray_flat",
    "wavelength",
]


def _config_text(config):
    if config is None:
        return ""
    if isinstance(config, dict):
        return json.dumps(config)
    with open(os.fspath(config), encoding="utf-8") as fh:
        return fh.read()


def characteristic_distances(config=None):
    return _core.characteristic_distances(_config_text(config))


def curve(model, distances, config=None, threads=1):
    return _core.curve(model, list(distances), _config_text(config), threads)


def fit_log_distance(distances, losses, d0=100.0):
    return _core.fit_log_distance(list(distances), list(losses), d0)


def compare_models(distances, losses, models=(), config=None, bins=0):
    return _core.compare_models(list(distances), list(losses), list(models), _config_text(config), bins)


def max_range(model, config=None, cap=100_000.0):
    return _core.max_range(model, _config_text(config), cap)


run_curves = _core.run_curves
run_analyze = _core.run_analyze
run_range = _core.run_range
