"""Experiment harness: data generation, file formats, plots and the CLI."""

from .io import (InputError, MalformedHeaderError, MalformedModelError, NonNumericCellError,
                 RaggedRowError, UnknownLabelError, read_dataset, read_model, write_dataset,
                 write_model)
from .plot import Series, Table, emit_plot, render_svg
from .runners import (ExperimentConfig, gen_gaussian_dataset, run_bound_experiment,
                      run_curse_experiment, run_functional_experiment, run_scaling_experiment,
                      run_tuning_experiment)

__all__ = [
    "ExperimentConfig", "InputError", "MalformedHeaderError", "MalformedModelError",
    "NonNumericCellError", "RaggedRowError", "Series", "Table", "UnknownLabelError",
    "emit_plot", "gen_gaussian_dataset", "read_dataset", "read_model", "render_svg",
    "run_bound_experiment", "run_curse_experiment", "run_functional_experiment",
    "run_scaling_experiment", "run_tuning_experiment", "write_dataset", "write_model",
]
