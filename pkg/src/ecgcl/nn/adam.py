"""Adam optimizer over Param objects; frozen params are never touched."""

from __future__ import annotations

import numpy as np

from .layers import Param


class Adam:
    def __init__(
        self,
        params: list[Param],
        lr: float = 1e-3,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        self.all_params = list(params)
        self.params = [p for p in self.all_params if p.trainable]
        names = [p.name for p in self.all_params]
        if len(set(names)) != len(names):
            raise ValueError("duplicate parameter names")
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = {p.name: np.zeros_like(p.data) for p in self.params}
        self.v = {p.name: np.zeros_like(p.data) for p in self.params}

    def zero_grad(self) -> None:
        for p in self.all_params:
            p.grad[...] = 0

    def step(self) -> None:
        self.t += 1
        bc1 = 1.0 - self.beta1**self.t
        bc2 = 1.0 - self.beta2**self.t
        for p in self.params:
            m = self.m[p.name]
            v = self.v[p.name]
            m += (1.0 - self.beta1) * (p.grad - m)
            v += (1.0 - self.beta2) * (p.grad * p.grad - v)
            p.data -= self.lr * (m / bc1) / (np.sqrt(v / bc2) + self.eps)

    def state_dict(self) -> tuple[dict[str, np.ndarray], int]:
        state: dict[str, np.ndarray] = {}
        for name in self.m:
            state[f"m/{name}"] = self.m[name].copy()
            state[f"v/{name}"] = self.v[name].copy()
        return state, self.t

    def load_state_dict(self, state: dict[str, np.ndarray], t: int) -> None:
        for name in self.m:
            self.m[name][...] = state[f"m/{name}"]
            self.v[name][...] = state[f"v/{name}"]
        self.t = t
