"""Interferential mixedness reduction.

One round sends ``rho -> (rho + rho^2) / (1 + Tr rho^2)``, the post-selected
branch of a controlled-swap interference between two copies.  Eigenvectors
are untouched; each eigenvalue maps as ``l -> l (1 + l) / (1 + sum_j l_j^2)``,
which strictly raises a unique top eigenvalue.

The multi-round subroutine is simulated on its success branch only.  All the
probabilistic content (survival rate per round, copy overhead, overall
success probability) is carried analytically in the returned outcome rather
than sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleConfigError, InvariantError
from .linalg import DensityMatrix

MIXEDNESS_PRECONDITION = 1.0 / 3.0


@dataclass(frozen=True)
class IMRConfig:
    """Target for one purification subroutine.

    reduction_factor: required drop in mixedness (final <= initial / factor).
    copies_out: copies of the purified state that must survive.
    failure_threshold: tolerated probability that any round falls short.
    """

    reduction_factor: float
    copies_out: int = 1
    failure_threshold: float = 0.01

    def __post_init__(self):
        if not self.reduction_factor > 1.0:
            raise InvariantError("reduction factor must be > 1")
        if self.copies_out < 1:
            raise InvariantError("copies_out must be >= 1")
        if not 0.0 < self.failure_threshold < 1.0:
            raise InvariantError("failure threshold must be in (0, 1)")


@dataclass(frozen=True)
class IMROutcome:
    state: DensityMatrix
    rounds_used: int
    copies_consumed: int
    success_probability: float


def mixedness(rho: DensityMatrix) -> float:
    """One minus the largest eigenvalue."""
    return float(1.0 - np.max(np.linalg.eigvalsh(rho.matrix)))


def imr_round(rho: DensityMatrix) -> tuple[DensityMatrix, float]:
    """One purification round and its success probability ``(1 + Tr rho^2)/2``."""
    mat = rho.matrix
    purity = float(np.real(np.trace(mat @ mat)))
    out = (mat + mat @ mat) / (1.0 + purity)
    return DensityMatrix(out, rho.factor_dims), (1.0 + purity) / 2.0


def imr_ratio_bound(x: float) -> float:
    """Upper bound on the per-round mixedness ratio: ``(1+x) / (2 - 2x + x^2)``."""
    x = float(x)
    if not 0.0 <= x < 1.0:
        raise InvariantError("mixedness must be in [0, 1)")
    return (1.0 + x) / (2.0 - 2.0 * x + x * x)


def imr_subroutine(rho: DensityMatrix, cfg: IMRConfig) -> IMROutcome:
    """Run rounds until the guaranteed reduction reaches ``reduction_factor``.

    The round count is the smallest R whose product of per-round ratio bounds,
    each evaluated at the mixedness actually reached so far, is at most
    ``1/reduction_factor``; the realized reduction is at least as good.  The
    survival rate c solves ``c = 1 - x0 - sqrt(log(R/q_th) / M)``, clamped to
    1/2 from above; c <= 0 means the requested copy count cannot guarantee the
    failure threshold.
    """
    x0 = mixedness(rho)
    if x0 > MIXEDNESS_PRECONDITION + 1e-12:
        raise InvariantError(
            f"mixedness {x0:.4f} exceeds the subroutine precondition 1/3"
        )
    if x0 <= 0.0:
        return IMROutcome(
            state=rho,
            rounds_used=0,
            copies_consumed=cfg.copies_out,
            success_probability=1.0,
        )

    target = 1.0 / cfg.reduction_factor
    state = rho
    bound_product = 1.0
    rounds = 0
    x = x0
    while bound_product > target:
        bound_product *= imr_ratio_bound(x)
        state, _ = imr_round(state)
        rounds += 1
        x = mixedness(state)
        if rounds > 10_000:
            raise InfeasibleConfigError("purification is not contracting")

    c_raw = 1.0 - x0 - math.sqrt(
        math.log(rounds / cfg.failure_threshold) / cfg.copies_out
    )
    if c_raw <= 0.0:
        raise InfeasibleConfigError(
            f"survival rate {c_raw:.4f} <= 0: increase copies_out above "
            f"{cfg.copies_out} or relax the failure threshold"
        )
    c = min(c_raw, 0.5)
    copies = math.ceil(cfg.copies_out * (2.0 / c) ** rounds)
    q_succ = 1.0 - rounds * math.exp(-cfg.copies_out * (1.0 - x0 - c) ** 2)
    return IMROutcome(
        state=state,
        rounds_used=rounds,
        copies_consumed=copies,
        success_probability=max(q_succ, 0.0),
    )
