"""Kernel backend selection: compiled extension if available, numpy otherwise.

Set ECGCL_KERNELS=numpy or ECGCL_KERNELS=cython to force a backend. Both
expose the same five operations on pre-padded arrays; padding and unpadding
live in the layer code so the two backends stay interchangeable.
"""

from __future__ import annotations

import os

import numpy as np

from . import kernels_numpy as _np_impl

try:
    from . import _kernels as _cy_impl
except ImportError:  # extension not built; pure-Python fallback
    _cy_impl = None

_requested = os.environ.get("ECGCL_KERNELS", "").strip().lower()
if _requested == "numpy":
    _active = "numpy"
elif _requested == "cython":
    if _cy_impl is None:
        raise ImportError(
            "ECGCL_KERNELS=cython but the compiled extension ecgcl.nn._kernels "
            "is not importable; rebuild the package or unset ECGCL_KERNELS"
        )
    _active = "cython"
elif _requested == "":
    _active = "cython" if _cy_impl is not None else "numpy"
else:
    raise ValueError(f"ECGCL_KERNELS must be 'cython' or 'numpy', got {_requested!r}")


def backend_name() -> str:
    return _active


def _c(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a)


def conv1d_forward(xpad: np.ndarray, w: np.ndarray) -> np.ndarray:
    if _active == "numpy":
        return _np_impl.conv1d_forward(xpad, w)
    n, _, tp = xpad.shape
    o, _, k = w.shape
    out = np.zeros((n, o, tp - k + 1), dtype=xpad.dtype)
    _cy_impl.conv1d_forward(_c(xpad), _c(w), out)
    return out


def conv1d_backward_data(gy: np.ndarray, w: np.ndarray, tp: int) -> np.ndarray:
    if _active == "numpy":
        return _np_impl.conv1d_backward_data(gy, w, tp)
    n, _, _ = gy.shape
    _, c, _ = w.shape
    gxpad = np.zeros((n, c, tp), dtype=gy.dtype)
    _cy_impl.conv1d_backward_data(_c(gy), _c(w), gxpad)
    return gxpad


def conv1d_backward_weights(gy: np.ndarray, xpad: np.ndarray, k: int) -> np.ndarray:
    if _active == "numpy":
        return _np_impl.conv1d_backward_weights(gy, xpad, k)
    o = gy.shape[1]
    c = xpad.shape[1]
    gw = np.zeros((o, c, k), dtype=gy.dtype)
    _cy_impl.conv1d_backward_weights(_c(gy), _c(xpad), gw)
    return gw


def maxpool1d_forward(xpad: np.ndarray, width: int) -> tuple[np.ndarray, np.ndarray]:
    if _active == "numpy":
        return _np_impl.maxpool1d_forward(xpad, width)
    n, c, tp = xpad.shape
    out = np.empty((n, c, tp - width + 1), dtype=xpad.dtype)
    arg = np.empty_like(out, dtype=np.int8)
    _cy_impl.maxpool1d_forward(_c(xpad), width, out, arg)
    return out, arg


def maxpool1d_backward(
    gy: np.ndarray, arg: np.ndarray, width: int, tp: int
) -> np.ndarray:
    if _active == "numpy":
        return _np_impl.maxpool1d_backward(gy, arg, width, tp)
    n, c, _ = gy.shape
    gxpad = np.zeros((n, c, tp), dtype=gy.dtype)
    _cy_impl.maxpool1d_backward(_c(gy), _c(arg), gxpad)
    return gxpad
