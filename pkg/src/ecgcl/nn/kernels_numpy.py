"""Pure-numpy kernels: 1-D convolution and max-pool on pre-padded inputs.

Shapes follow the channels-first layout used everywhere in the model code:
padded input [n, channels, padded_len], weights [out_ch, in_ch, kernel_len].
The convolution is decomposed into one GEMM per kernel tap, which keeps
temporaries small and lets BLAS do the heavy lifting.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def conv1d_forward(xpad: np.ndarray, w: np.ndarray) -> np.ndarray:
    n, c, tp = xpad.shape
    o, _, k = w.shape
    t = tp - k + 1
    out = np.zeros((n, o, t), dtype=xpad.dtype)
    for j in range(k):
        out += np.matmul(w[:, :, j], xpad[:, :, j : j + t])
    return out


def conv1d_backward_data(gy: np.ndarray, w: np.ndarray, tp: int) -> np.ndarray:
    n, o, t = gy.shape
    _, c, k = w.shape
    gxpad = np.zeros((n, c, tp), dtype=gy.dtype)
    for j in range(k):
        gxpad[:, :, j : j + t] += np.matmul(w[:, :, j].T, gy)
    return gxpad


def conv1d_backward_weights(gy: np.ndarray, xpad: np.ndarray, k: int) -> np.ndarray:
    n, o, t = gy.shape
    _, c, _ = xpad.shape
    gw = np.empty((o, c, k), dtype=gy.dtype)
    for j in range(k):
        # sum over batch of gy[n] @ xpad[n, :, j:j+t].T
        gw[:, :, j] = np.matmul(gy, xpad[:, :, j : j + t].transpose(0, 2, 1)).sum(axis=0)
    return gw


def maxpool1d_forward(xpad: np.ndarray, width: int) -> tuple[np.ndarray, np.ndarray]:
    windows = sliding_window_view(xpad, width, axis=2)  # (n, c, t, width)
    arg = windows.argmax(axis=3).astype(np.int8)
    out = np.take_along_axis(windows, arg[..., None].astype(np.intp), axis=3)[..., 0]
    return np.ascontiguousarray(out), arg


def maxpool1d_backward(
    gy: np.ndarray, arg: np.ndarray, width: int, tp: int
) -> np.ndarray:
    n, c, t = gy.shape
    gxpad = np.zeros((n, c, tp), dtype=gy.dtype)
    for j in range(width):
        gxpad[:, :, j : j + t] += gy * (arg == j)
    return gxpad
