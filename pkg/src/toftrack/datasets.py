"""Accessors for the trial datasets and rig config shipped with the package.

exp1 was recorded under artificial lighting, exp2 in the dark; both are
four positions by ten trials on the 1 m x 1 m frame. Copies also live in
the repository's data/ directory for direct command-line use.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .experiments import TrialTable, load_trials
from .sensor import AmbientCondition


def _data_path(name: str) -> Path:
    return Path(resources.files("toftrack").joinpath("data", name))


def exp1_path() -> Path:
    """Trial CSV of the artificial-lighting experiment."""
    return _data_path("exp1.csv")


def exp2_path() -> Path:
    """Trial CSV of the no-ambient-light experiment."""
    return _data_path("exp2.csv")


def rig_config_path() -> Path:
    """A ready-to-use rig configuration for the simulate command."""
    return _data_path("rig.cfg")


def load_exp1() -> TrialTable:
    return load_trials(exp1_path(), experiment_id="exp1",
                       lighting=AmbientCondition.ARTIFICIAL_LIGHT)


def load_exp2() -> TrialTable:
    return load_trials(exp2_path(), experiment_id="exp2",
                       lighting=AmbientCondition.DARK)
