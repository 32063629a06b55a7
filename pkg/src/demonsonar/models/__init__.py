"""Feedforward networks and the two-stage cascade classifier."""

from .cascade import (
    CascadeFit,
    CascadeModel,
    Prediction,
    cascade_predict,
    cascade_predict_many,
    cascade_split,
    fit_cascade,
    train_cascade,
)
from .mlp import (
    Gradients,
    MlpModel,
    forward,
    init_mlp,
    loss_and_gradients,
    predict_classes,
    sgd_step,
    softmax,
)
from .persistence import MODEL_FORMAT_VERSION, dumps_model, load_model, save_model
from .rng import Xoshiro256StarStar
from .sampling import stratified_split, validation_count
from .trainer import FeatureSet, TrainHistory, accuracy, train

__all__ = [
    "CascadeFit",
    "CascadeModel",
    "FeatureSet",
    "Gradients",
    "MODEL_FORMAT_VERSION",
    "MlpModel",
    "Prediction",
    "TrainHistory",
    "Xoshiro256StarStar",
    "accuracy",
    "cascade_predict",
    "cascade_predict_many",
    "cascade_split",
    "dumps_model",
    "fit_cascade",
    "forward",
    "init_mlp",
    "load_model",
    "loss_and_gradients",
    "predict_classes",
    "save_model",
    "sgd_step",
    "softmax",
    "stratified_split",
    "train",
    "train_cascade",
    "validation_count",
]
