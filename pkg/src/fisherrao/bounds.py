"""Closed-form robustness bounds under uniform label noise.

For noise rate eta < (K-1)/K the excess risks of minimizing a loss on noisy
labels are controlled by two constants: R^eta(f*) - R^eta(f-hat) <= A(K, eta)
and R(f*) - R(f-hat) >= B(K, eta).  Both derive from how far the loss summed
over all possible true labels, sum_y L(p, y), can move as p varies: a loss
whose sum is constant (MAE) gets A = B = 0, an unbounded sum (CE) gives
A = +inf, B = -inf, and in between

    A = eta * (S_max - S_min) / (K - 1)
    B = -eta * (S_max - S_min) / (K - 1 - eta K)

with (S_min, S_max) the range of the loss sum.  For the Fisher-Rao loss that
range is (K arccos(1/sqrt(K))^2, (pi^2/4)(K-1)); for MSE it is (K-1, 2(K-1));
for q-CE with q in (0, 1) the difference S_max - S_min equals (K^q - 1)/(1-q),
whose q = 1/2 case is the Hellinger row 2(sqrt(K) - 1).
"""

import math
from dataclasses import dataclass

from .losses import KINDS, LossSpec


def _check_regime(num_classes: int, eta: float) -> None:
    if num_classes < 2:
        raise ValueError(f"num_classes must be >= 2, got {num_classes}")
    limit = (num_classes - 1) / num_classes
    if not 0.0 <= eta < limit:
        raise ValueError(f"eta must lie in [0, {limit}) for K = {num_classes}, got {eta}")


def fr_sum_bounds(num_classes: int) -> tuple[float, float]:
    """Range of sum_y L_FR(p, y) over the simplex.

    Returns (K arccos(1/sqrt(K))^2, (pi^2/4)(K-1)); the minimum is attained
    at the uniform distribution, the maximum at the vertices.
    """
    if num_classes < 2:
        raise ValueError(f"num_classes must be >= 2, got {num_classes}")
    k = num_classes
    lower = k * math.acos(1.0 / math.sqrt(k)) ** 2
    upper = (math.pi**2 / 4.0) * (k - 1)
    return lower, upper


def fr_critical_value(num_classes: int, j: int) -> float:
    """Critical value of the FR loss sum with j coordinates active.

    The stationary points of sum_y L_FR on the simplex place equal mass 1/j
    on j coordinates and zero elsewhere, giving
    F = (K - j) pi^2/4 + j arccos(1/sqrt(j))^2.  j = K recovers the lower
    bound of ``fr_sum_bounds``, j = 1 the upper bound.
    """
    if num_classes < 2:
        raise ValueError(f"num_classes must be >= 2, got {num_classes}")
    if not 1 <= j <= num_classes:
        raise IndexError(f"j must lie in [1, {num_classes}], got {j}")
    return (num_classes - j) * math.pi**2 / 4.0 + j * math.acos(1.0 / math.sqrt(j)) ** 2


def _sum_range_width(spec: LossSpec, k: float) -> float | None:
    """S_max - S_min for the loss-sum over the simplex; None means unbounded."""
    if spec.kind == "mae":
        return 0.0
    if spec.kind == "mse":
        return float(k - 1)  # range (K-1, 2(K-1))
    if spec.kind == "ce":
        return None
    if spec.kind == "hellinger":
        return 2.0 * (math.sqrt(k) - 1.0)
    if spec.kind == "fr":
        lower, upper = fr_sum_bounds(int(k))
        return upper - lower
    if spec.kind == "qce":
        if spec.q == 0.0:
            return 0.0  # MAE row
        if spec.q == 1.0:
            return None  # CE row
        return (k**spec.q - 1.0) / (1.0 - spec.q)
    raise AssertionError(spec.kind)


def bound_A(spec: LossSpec, num_classes: int, eta: float) -> float:
    """Upper bound A(K, eta) on the noisy-risk gap; +inf for CE-like losses."""
    _check_regime(num_classes, eta)
    width = _sum_range_width(spec, float(num_classes))
    if width is None:
        return math.inf
    # group the K-only factor so the MSE row comes out as exactly eta
    return eta * (width / (num_classes - 1))


def bound_B(spec: LossSpec, num_classes: int, eta: float) -> float:
    """Lower bound B(K, eta) on the clean-risk gap; -inf for CE-like losses."""
    _check_regime(num_classes, eta)
    width = _sum_range_width(spec, float(num_classes))
    if width is None:
        return -math.inf
    return -eta * width / (num_classes - 1 - eta * num_classes)


@dataclass(frozen=True)
class BoundResult:
    spec: LossSpec
    num_classes: int
    eta: float
    A: float
    B: float


def bounds(spec: LossSpec, num_classes: int, eta: float) -> BoundResult:
    return BoundResult(
        spec=spec,
        num_classes=num_classes,
        eta=eta,
        A=bound_A(spec, num_classes, eta),
        B=bound_B(spec, num_classes, eta),
    )


def alpha_sweep(specs: list[LossSpec], num_classes: int, alphas) -> list[dict]:
    """Bound curves at fixed K over a grid of alpha = eta K/(K-1) in [0, 1).

    Returns one row per (alpha, spec): dict with keys
    loss, q, K, alpha, eta, A, B (A/B are +/-inf for CE).
    """
    rows = []
    for alpha in alphas:
        alpha = float(alpha)
        if not 0.0 <= alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
        eta = alpha * (1.0 - 1.0 / num_classes)
        for spec in specs:
            rows.append(
                {
                    "loss": spec.kind,
                    "q": spec.q,
                    "K": num_classes,
                    "alpha": alpha,
                    "eta": eta,
                    "A": bound_A(spec, num_classes, eta),
                    "B": bound_B(spec, num_classes, eta),
                }
            )
    return rows


def class_count_sweep(specs: list[LossSpec], alpha: float, class_counts) -> list[dict]:
    """Bound curves at fixed alpha over a grid of class counts K >= 2."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    rows = []
    for k in class_counts:
        k = int(k)
        eta = alpha * (1.0 - 1.0 / k)
        for spec in specs:
            rows.append(
                {
                    "loss": spec.kind,
                    "q": spec.q,
                    "K": k,
                    "alpha": alpha,
                    "eta": eta,
                    "A": bound_A(spec, k, eta),
                    "B": bound_B(spec, k, eta),
                }
            )
    return rows


# Re-export for callers that build specs from strings at sweep time.
__all__ = [
    "BoundResult",
    "KINDS",
    "alpha_sweep",
    "bound_A",
    "bound_B",
    "bounds",
    "class_count_sweep",
    "fr_critical_value",
    "fr_sum_bounds",
]
