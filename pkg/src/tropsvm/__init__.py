"""Tropical (max-plus) geometry and tropical support vector machines."""

from .hyperplane import (SectorResult, TropicalHyperplane, dist_to_hyperplane,
                         sector_of)
from .l2svm import EuclideanModel, predict_l2, train_l2
from .lp import LinearProgram, LpSolution, LPNumericalError, Status, solve
from .svm import (InseparableError, LabeledDataset, TrainedModel, build_lp,
                  margin_function, predict, support_vector_shift, train_hard,
                  train_heuristic)
from .tropical_core import (TropicalPolytope, normalize, tconv_contains,
                            trop_combine, trop_distance, trop_segment)

__version__ = "0.1.0"

__all__ = [
    "EuclideanModel", "InseparableError", "LabeledDataset", "LinearProgram", "LpSolution",
    "LPNumericalError", "SectorResult", "Status", "TrainedModel", "TropicalHyperplane",
    "TropicalPolytope", "build_lp", "dist_to_hyperplane", "margin_function", "normalize",
    "predict", "predict_l2", "sector_of", "solve", "support_vector_shift", "tconv_contains",
    "train_hard", "train_heuristic", "train_l2", "trop_combine", "trop_distance",
    "trop_segment",
]
