"""Uniform (symmetric) label noise.

Each label is independently kept with probability 1 - eta and otherwise
replaced by a uniform draw over the K - 1 *other* classes, so eta is exactly
the probability that a label changes.  The convenient reparametrization
eta = alpha (1 - 1/K) with alpha in [0, 1) keeps eta inside the regime
eta < (K - 1)/K where the robustness bounds hold.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .rng import STREAM_NOISE, make_rng


@dataclass(frozen=True)
class NoiseSpec:
    """Noise rate eta, corruption seed, and class count K."""

    eta: float
    seed: int
    num_classes: int

    def __post_init__(self):
        k = self.num_classes
        if k < 2:
            raise ValueError(f"num_classes must be >= 2, got {k}")
        if not 0.0 <= self.eta < (k - 1) / k:
            raise ValueError(f"eta must lie in [0, (K-1)/K) = [0, {(k - 1) / k}), got {self.eta}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must be in [0, 2**64), got {self.seed}")


def corrupt_labels(labels, spec: NoiseSpec) -> NDArray[np.int64]:
    """Return a corrupted copy of ``labels`` under the uniform noise law.

    Deterministic given ``spec``; the input array is not modified.  The
    replacement class is sampled by drawing r uniform on [0, K-1) and skipping
    the true class (r + 1 if r >= label), which is exactly uniform over the
    K - 1 wrong classes.
    """
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise ValueError(f"labels must be 1-D, got shape {labels.shape}")
    k = spec.num_classes
    if labels.size and (labels.min() < 0 or labels.max() >= k):
        raise IndexError(f"labels out of range [0, {k})")
    labels = labels.astype(np.int64)
    rng = make_rng(spec.seed, STREAM_NOISE)
    # Both arrays are drawn unconditionally so the flip pattern for a given
    # seed does not depend on eta-dependent branching.
    flip = rng.random(labels.size) < spec.eta
    r = rng.integers(0, k - 1, size=labels.size, dtype=np.int64)
    wrong = r + (r >= labels)
    return np.where(flip, wrong, labels)


def alpha_to_eta(alpha: float, num_classes: int) -> float:
    """eta = alpha (1 - 1/K); maps [0, 1) onto [0, (K-1)/K)."""
    if num_classes < 2:
        raise ValueError(f"num_classes must be >= 2, got {num_classes}")
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    return alpha * (1.0 - 1.0 / num_classes)


def eta_to_alpha(eta: float, num_classes: int) -> float:
    """Inverse of ``alpha_to_eta``."""
    if num_classes < 2:
        raise ValueError(f"num_classes must be >= 2, got {num_classes}")
    alpha = eta * num_classes / (num_classes - 1)
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"eta {eta} outside [0, (K-1)/K) for K = {num_classes}")
    return alpha
