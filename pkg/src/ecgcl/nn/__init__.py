from .backend import backend_name
from .adam import Adam
from .layers import (
    BatchNorm1d,
    Conv1d,
    GlobalAvgPool,
    Linear,
    MaxPool1d,
    Param,
    ReLU,
)

__all__ = [
    "Adam",
    "BatchNorm1d",
    "Conv1d",
    "GlobalAvgPool",
    "Linear",
    "MaxPool1d",
    "Param",
    "ReLU",
    "backend_name",
]
