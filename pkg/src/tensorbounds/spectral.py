"""Spectral radius oracle: shifted min/max-ratio power iteration.

Used to check bounds empirically, never to derive them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, InputError, PreconditionError
from .irreducibility import is_weakly_irreducible
from .tensor import SparseTensor, apply


@dataclass(frozen=True)
class IterationConfig:
    tol: float = 1e-12
    max_iter: int = 100_000
    shift: float = 1.0

    def __post_init__(self):
        if not self.tol > 0:
            raise InputError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise InputError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.shift >= 0:
            raise InputError(f"shift must be nonnegative, got {self.shift}")


@dataclass(frozen=True)
class PerronEstimate:
    """Spectral radius estimate with its positive eigenvector.

    ``x`` is scaled to max-component 1. ``lower``/``upper`` are the final
    Collatz-Wielandt bracket (shift removed) and ``rho`` is its midpoint.
    """

    rho: float
    x: np.ndarray
    iterations: int
    residual: float
    lower: float
    upper: float

    @property
    def bracket_width(self) -> float:
        return self.upper - self.lower


def residual(B: SparseTensor, est: PerronEstimate) -> float:
    """Max-norm defect of ``B x^{m-1} = rho x^{[m-1]}``."""
    x = np.asarray(est.x, dtype=np.float64)
    return float(np.max(np.abs(apply(B, x) - est.rho * x ** (B.order - 1))))


def perron(B: SparseTensor, cfg: IterationConfig | None = None,
           on_step: Callable[[int, float, float], None] | None = None) -> PerronEstimate:
    """Spectral radius of a weakly irreducible nonnegative tensor.

    Iterates ``x <- (B x^{m-1} + shift x^{[m-1]})^{[1/(m-1)]}`` from the
    all-ones vector. ``on_step(k, lo, hi)`` receives the shifted bracket at
    every iteration.
    """
    cfg = cfg or IterationConfig()
    if not is_weakly_irreducible(B):
        raise PreconditionError("power iteration requires a weakly irreducible tensor")
    p = B.order - 1
    x = np.ones(B.dim)
    lo = hi = float("nan")
    for k in range(1, cfg.max_iter + 1):
        xp = x ** p
        y = apply(B, x) + cfg.shift * xp
        ratios = y / xp
        lo, hi = float(ratios.min()), float(ratios.max())
        if on_step is not None:
            on_step(k, lo, hi)
        if hi - lo <= cfg.tol * hi:
            rho = 0.5 * (hi + lo) - cfg.shift
            est = PerronEstimate(rho=rho, x=x, iterations=k, residual=0.0,
                                 lower=lo - cfg.shift, upper=hi - cfg.shift)
            return PerronEstimate(rho=rho, x=x, iterations=k, residual=residual(B, est),
                                  lower=est.lower, upper=est.upper)
        x = y ** (1.0 / p)
        x /= x.max()
    raise ConvergenceError(
        f"no convergence after {cfg.max_iter} iterations; "
        f"rho in [{lo - cfg.shift!r}, {hi - cfg.shift!r}]",
        bracket=(lo - cfg.shift, hi - cfg.shift), iterations=cfg.max_iter)
