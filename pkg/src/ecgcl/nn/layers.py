"""Layer primitives with explicit forward/backward passes.

Each layer caches what its backward pass needs from the most recent forward
call; a bundle is therefore a single logical sequence (no concurrent
mutation), matching how the training loop drives it. Gradients accumulate
into ``Param.grad`` so multi-consumer graphs just call backward per consumer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import backend


@dataclass
class Param:
    name: str
    data: np.ndarray
    trainable: bool = True
    grad: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.grad = np.zeros_like(self.data)


def pad1d(x: np.ndarray, p: int, mode: str, fill: float = 0.0) -> np.ndarray:
    if p == 0:
        return x
    if mode == "zeros":
        out = np.full(
            (x.shape[0], x.shape[1], x.shape[2] + 2 * p), fill, dtype=x.dtype
        )
        out[:, :, p:-p] = x
        return out
    if mode == "circular":
        return np.concatenate([x[:, :, -p:], x, x[:, :, :p]], axis=2)
    raise ValueError(f"unknown padding mode {mode!r}")


def unpad_grad(gxpad: np.ndarray, p: int, mode: str) -> np.ndarray:
    if p == 0:
        return gxpad
    g = gxpad[:, :, p:-p]
    if mode == "circular":
        g[:, :, -p:] += gxpad[:, :, :p]
        g[:, :, :p] += gxpad[:, :, -p:]
    return g


class Conv1d:
    """Same-length 1-D convolution, stride 1, odd kernel, no bias."""

    def __init__(
        self,
        name: str,
        in_ch: int,
        out_ch: int,
        kernel: int,
        rng: np.random.Generator,
        dtype: np.dtype,
        padding: str = "zeros",
    ):
        if kernel % 2 == 0:
            raise ValueError(f"kernel length must be odd, got {kernel}")
        std = np.sqrt(2.0 / (in_ch * kernel))
        self.w = Param(f"{name}.w", rng.normal(0.0, std, (out_ch, in_ch, kernel)).astype(dtype))
        self.kernel = kernel
        self.pad = kernel // 2
        self.padding = padding
        self._xpad: Optional[np.ndarray] = None

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        if x.shape[1] != self.w.data.shape[1]:
            raise ValueError(
                f"{self.w.name}: expected {self.w.data.shape[1]} input channels, "
                f"got {x.shape[1]}"
            )
        self._xpad = pad1d(x, self.pad, self.padding)
        return backend.conv1d_forward(self._xpad, self.w.data)

    def backward(self, gy: np.ndarray) -> np.ndarray:
        xpad = self._xpad
        self.w.grad += backend.conv1d_backward_weights(gy, xpad, self.kernel)
        gxpad = backend.conv1d_backward_data(gy, self.w.data, xpad.shape[2])
        return unpad_grad(gxpad, self.pad, self.padding)

    def params(self) -> list[Param]:
        return [self.w]


class BatchNorm1d:
    """Per-channel batch norm over (batch, time); running stats at eval."""

    def __init__(
        self,
        name: str,
        ch: int,
        dtype: np.dtype,
        momentum: float = 0.1,
        eps: float = 1e-5,
    ):
        self.gamma = Param(f"{name}.gamma", np.ones(ch, dtype=dtype))
        self.beta = Param(f"{name}.beta", np.zeros(ch, dtype=dtype))
        self.running_mean = np.zeros(ch, dtype=dtype)
        self.running_var = np.ones(ch, dtype=dtype)
        self.name = name
        self.momentum = momentum
        self.eps = eps
        self._cache: Optional[tuple] = None

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        if train:
            mean = x.mean(axis=(0, 2))
            var = x.var(axis=(0, 2))
            self.running_mean += self.momentum * (mean - self.running_mean)
            self.running_var += self.momentum * (var - self.running_var)
        else:
            mean = self.running_mean
            var = self.running_var
        istd = 1.0 / np.sqrt(var + self.eps)
        xhat = (x - mean[None, :, None]) * istd[None, :, None]
        self._cache = (xhat, istd, train, x.shape[0] * x.shape[2])
        return self.gamma.data[None, :, None] * xhat + self.beta.data[None, :, None]

    def backward(self, gy: np.ndarray) -> np.ndarray:
        xhat, istd, train, m = self._cache
        self.gamma.grad += (gy * xhat).sum(axis=(0, 2))
        self.beta.grad += gy.sum(axis=(0, 2))
        gxhat = gy * self.gamma.data[None, :, None]
        if not train:
            return gxhat * istd[None, :, None]
        sum_g = gxhat.sum(axis=(0, 2), keepdims=True)
        sum_gx = (gxhat * xhat).sum(axis=(0, 2), keepdims=True)
        return (istd[None, :, None] / m) * (m * gxhat - sum_g - xhat * sum_gx)

    def params(self) -> list[Param]:
        return [self.gamma, self.beta]

    def buffers(self) -> dict[str, np.ndarray]:
        return {
            f"{self.name}.running_mean": self.running_mean,
            f"{self.name}.running_var": self.running_var,
        }


class ReLU:
    def __init__(self) -> None:
        self._mask: Optional[np.ndarray] = None

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        self._mask = x > 0
        return np.where(self._mask, x, x.dtype.type(0))

    def backward(self, gy: np.ndarray) -> np.ndarray:
        return np.where(self._mask, gy, gy.dtype.type(0))


class MaxPool1d:
    """Same-length max pool (stride 1); zeros mode pads with -inf."""

    def __init__(self, width: int = 3, padding: str = "zeros"):
        if width % 2 == 0:
            raise ValueError(f"pool width must be odd, got {width}")
        self.width = width
        self.pad = width // 2
        self.padding = padding
        self._arg: Optional[np.ndarray] = None
        self._tp: int = 0

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        xpad = pad1d(x, self.pad, self.padding, fill=-np.inf)
        self._tp = xpad.shape[2]
        out, self._arg = backend.maxpool1d_forward(xpad, self.width)
        return out

    def backward(self, gy: np.ndarray) -> np.ndarray:
        gxpad = backend.maxpool1d_backward(gy, self._arg, self.width, self._tp)
        return unpad_grad(gxpad, self.pad, self.padding)


class GlobalAvgPool:
    def __init__(self) -> None:
        self._t: int = 0

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        self._t = x.shape[2]
        return x.mean(axis=2)

    def backward(self, gy: np.ndarray) -> np.ndarray:
        scale = gy.dtype.type(1.0 / self._t)
        return np.repeat(gy[:, :, None] * scale, self._t, axis=2)

    def params(self) -> list[Param]:
        return []


class Linear:
    def __init__(
        self,
        name: str,
        in_dim: int,
        out_dim: int,
        rng: np.random.Generator,
        dtype: np.dtype,
        relu_gain: bool = False,
    ):
        std = np.sqrt((2.0 if relu_gain else 1.0) / in_dim)
        self.w = Param(f"{name}.w", rng.normal(0.0, std, (out_dim, in_dim)).astype(dtype))
        self.b = Param(f"{name}.b", np.zeros(out_dim, dtype=dtype))
        self._x: Optional[np.ndarray] = None

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        if x.shape[1] != self.w.data.shape[1]:
            raise ValueError(
                f"{self.w.name}: expected input dim {self.w.data.shape[1]}, "
                f"got {x.shape[1]}"
            )
        self._x = x
        return x @ self.w.data.T + self.b.data

    def backward(self, gy: np.ndarray) -> np.ndarray:
        self.w.grad += gy.T @ self._x
        self.b.grad += gy.sum(axis=0)
        return gy @ self.w.data

    def params(self) -> list[Param]:
        return [self.w, self.b]
