"""Evaluatable real-valued functions on [0, 1]."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


class EvaluationError(ValueError):
    """A function produced a non-finite value somewhere on [0, 1]."""

    def __init__(self, label: str, t: float, value) -> None:
        self.label = label
        self.t = t
        self.value = value
        super().__init__(f"{label!r} evaluated to {value!r} at t={t!r}")


@dataclass(frozen=True)
class FunctionHandle:
    """A real function on [0, 1] with a short label.

    ``deriv`` is an optional analytic derivative; when present it is used by
    the C^1 Hoelder-norm estimate instead of finite differences.
    """

    eval: Callable
    label: str = "f"
    deriv: Optional[Callable] = None

    def __call__(self, t):
        return self.eval(t)


def as_handle(f, label: str = "f") -> FunctionHandle:
    """Wrap a bare callable; FunctionHandles pass through unchanged."""
    if isinstance(f, FunctionHandle):
        return f
    return FunctionHandle(eval=f, label=label)


def constant(c: float, label: str | None = None) -> FunctionHandle:
    c = float(c)
    return FunctionHandle(
        eval=lambda t: np.full_like(np.asarray(t, dtype=float), c) if np.ndim(t) else c,
        label=label or f"const({c:g})",
        deriv=lambda t: np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0,
    )


def identity(label: str = "t") -> FunctionHandle:
    return FunctionHandle(eval=lambda t: np.asarray(t, dtype=float) if np.ndim(t) else float(t),
                          label=label,
                          deriv=lambda t: np.ones_like(np.asarray(t, dtype=float)) if np.ndim(t) else 1.0)


def eval_on(f, ts) -> np.ndarray:
    """Evaluate ``f`` on an array of points, falling back to a scalar loop.

    Raises EvaluationError carrying the offending point if any value is
    non-finite.
    """
    ts = np.asarray(ts, dtype=float)
    fn = f.eval if isinstance(f, FunctionHandle) else f
    vals = None
    try:
        cand = np.asarray(fn(ts), dtype=float)
        if cand.shape == ts.shape:
            vals = cand
    except (TypeError, ValueError, IndexError):
        vals = None
    if vals is None:
        vals = np.array([float(fn(float(t))) for t in ts.ravel()]).reshape(ts.shape)
    if not np.all(np.isfinite(vals)):
        bad = np.flatnonzero(~np.isfinite(vals.ravel()))[0]
        label = getattr(f, "label", getattr(f, "__name__", "f"))
        raise EvaluationError(label, float(ts.ravel()[bad]), float(vals.ravel()[bad]))
    return vals
