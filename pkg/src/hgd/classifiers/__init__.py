"""Five from-scratch classifier families with deterministic training."""

from .base import LabeledSet, TrainConfig, logreg_defaults, mlp_defaults
from .forest import ForestModel, TreeLeaf, TreeSplit, forest_fit, forest_predict, gini_impurity
from .gradcheck import finite_difference_grad
from .knn import KnnModel, knn_fit, knn_predict
from .linear import (
    LogRegModel,
    RidgeModel,
    logreg_fit,
    logreg_loss_and_grad,
    logreg_predict,
    logreg_proba,
    ridge_fit,
    ridge_normal_solve,
    ridge_predict,
)
from .mlp import MlpModel, init_params, mlp_fit, mlp_loss_and_grad, mlp_predict, mlp_proba
from .model_io import deserialize_model, load_model, save_model, serialize_model

__all__ = [
    "LabeledSet",
    "TrainConfig",
    "logreg_defaults",
    "mlp_defaults",
    "KnnModel",
    "knn_fit",
    "knn_predict",
    "LogRegModel",
    "RidgeModel",
    "logreg_fit",
    "logreg_loss_and_grad",
    "logreg_predict",
    "logreg_proba",
    "ridge_fit",
    "ridge_normal_solve",
    "ridge_predict",
    "MlpModel",
    "init_params",
    "mlp_fit",
    "mlp_loss_and_grad",
    "mlp_predict",
    "mlp_proba",
    "ForestModel",
    "TreeLeaf",
    "TreeSplit",
    "forest_fit",
    "forest_predict",
    "gini_impurity",
    "finite_difference_grad",
    "serialize_model",
    "deserialize_model",
    "save_model",
    "load_model",
]
