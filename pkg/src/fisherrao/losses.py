"""Classification losses as functions of the predicted distribution.

Every loss here compares the softmax output p to the one-hot target e_y.
Apart from MSE they all reduce to a scalar function of the true-class
probability t = p_y:

    MSE        ||p - e_y||^2            = ||p||^2 - 2 t + 1
    MAE        (1/2) ||p - e_y||_1      = 1 - t
    CE         -ln t
    q-CE       -log_q t                 = (1 - t^(1-q)) / (1 - q)
    FR         arccos(sqrt(t))^2        (squared Fisher-Rao distance / 4)
    Hellinger  2 (1 - sqrt(t))          (squared Hellinger distance)

q-CE interpolates the family: q = 0 is MAE, q = 1/2 is the Hellinger loss,
q -> 1 recovers CE.  For t on (0, 1] the pointwise ordering
MAE <= Hellinger <= FR <= CE holds.

Gradients with respect to scores use t clamped to [CLAMP_EPS, 1] in both the
derivative factor |h'(t)| and the multiplier t, so the CE gradient stays
exactly p - e_y and every factor stays finite.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .simplex import as_distribution, as_scores, softmax

# Probabilities are clamped to at least this before logs / negative powers.
CLAMP_EPS = 1e-12

KINDS = ("mse", "mae", "ce", "qce", "fr", "hellinger")


@dataclass(frozen=True)
class LossSpec:
    """A loss selection: a kind plus, for q-CE, the exponent q in [0, 1]."""

    kind: str
    q: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown loss kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "qce":
            if self.q is None:
                raise ValueError("qce requires q")
            if not 0.0 <= float(self.q) <= 1.0:
                raise ValueError(f"q must lie in [0, 1], got {self.q}")
            object.__setattr__(self, "q", float(self.q))
        elif self.q is not None:
            raise ValueError(f"q is only meaningful for qce, not {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "LossSpec":
        """Parse 'mse' | 'mae' | 'ce' | 'fr' | 'hellinger' | 'qce:<q>'."""
        text = text.strip().lower()
        if text.startswith("qce"):
            _, sep, qs = text.partition(":")
            if not sep:
                raise ValueError("qce needs an exponent, e.g. 'qce:0.7'")
            try:
                q = float(qs)
            except ValueError:
                raise ValueError(f"bad q value {qs!r} in {text!r}") from None
            return cls("qce", q)
        return cls(text)

    @property
    def label(self) -> str:
        return f"qce(q={self.q:g})" if self.kind == "qce" else self.kind

    def __str__(self) -> str:
        return f"qce:{self.q:g}" if self.kind == "qce" else self.kind


MSE = LossSpec("mse")
MAE = LossSpec("mae")
CE = LossSpec("ce")
FR = LossSpec("fr")
HELLINGER = LossSpec("hellinger")


def qce(q: float) -> LossSpec:
    return LossSpec("qce", q)


def q_logarithm(x, q: float):
    """Tsallis q-logarithm log_q(x) = (x^(1-q) - 1) / (1 - q); log_1 = ln.

    Defined for x > 0 and continuous in q: |1 - q| < 1e-12 is routed to the
    ln branch.  Away from the endpoints the power is evaluated as
    expm1((1-q) ln x), which keeps the small numerator accurate as q -> 1;
    q = 0 short-circuits to x - 1 exactly.
    """
    x = np.asarray(x, dtype=np.float64)
    if np.any(x <= 0.0):
        raise ValueError("q_logarithm requires x > 0")
    if abs(1.0 - q) < 1e-12:
        return np.log(x)
    if q == 0.0:
        return x - 1.0
    return np.expm1((1.0 - q) * np.log(x)) / (1.0 - q)


def _true_class_probs(probs: np.ndarray, labels: np.ndarray) -> np.ndarray:
    return probs[np.arange(probs.shape[0]), labels]


def loss_values(spec: LossSpec, probs, labels) -> NDArray[np.float64]:
    """Per-sample losses for a batch: probs (n, K) distributions, labels (n,) ints."""
    probs = np.asarray(probs, dtype=np.float64)
    labels = np.asarray(labels)
    t = _true_class_probs(probs, labels)
    if spec.kind == "mse":
        return (probs * probs).sum(axis=1) - 2.0 * t + 1.0
    if spec.kind == "mae":
        return 1.0 - t
    tc = np.clip(t, CLAMP_EPS, 1.0)
    if spec.kind == "ce":
        return -np.log(tc)
    if spec.kind == "qce":
        return -q_logarithm(tc, spec.q)
    root = np.sqrt(tc)
    if spec.kind == "fr":
        return np.arccos(np.clip(root, -1.0, 1.0)) ** 2
    if spec.kind == "hellinger":
        return 2.0 * (1.0 - root)
    raise AssertionError(spec.kind)


def loss_value(spec: LossSpec, p, y: int) -> float:
    """Loss of a single predicted distribution p against true label y."""
    p = as_distribution(p)
    if not 0 <= int(y) < p.size:
        raise ValueError(f"label {y} out of range for {p.size} classes")
    return float(loss_values(spec, p[None, :], np.array([int(y)]))[0])


def h_prime_abs(spec: LossSpec, t) -> NDArray[np.float64]:
    """|h'(t)| where the loss is h(p_y); t is clamped to [CLAMP_EPS, 1].

    MAE -> 1, CE -> 1/t, q-CE -> t^(-q), Hellinger -> t^(-1/2), and
    FR -> arccos(sqrt(t)) / sqrt(t (1 - t)), whose t -> 1 singularity is
    removable with limit 1.  MSE is not a function of p_y alone.
    """
    if spec.kind == "mse":
        raise ValueError("mse is not a function of the true-class probability alone")
    t = np.clip(np.asarray(t, dtype=np.float64), CLAMP_EPS, 1.0)
    if spec.kind == "mae":
        return np.ones_like(t)
    if spec.kind == "ce":
        return 1.0 / t
    if spec.kind == "qce":
        return t ** (-spec.q)
    if spec.kind == "hellinger":
        return 1.0 / np.sqrt(t)
    if spec.kind == "fr":
        # arccos(sqrt(t)) = arcsin(w) with w = sqrt(1 - t); divide out w
        # analytically so the t -> 1 limit evaluates to exactly 1/sqrt(t).
        w = np.sqrt(1.0 - t)
        w_safe = np.where(w > 1e-8, w, 1.0)
        ratio = np.where(w > 1e-8, np.arcsin(np.clip(w, -1.0, 1.0)) / w_safe, 1.0 + w * w / 6.0)
        return ratio / np.sqrt(t)
    raise AssertionError(spec.kind)


def score_gradients(spec: LossSpec, probs, labels) -> NDArray[np.float64]:
    """Per-sample gradients d loss / d scores, shape (n, K), given probs = softmax(scores).

    For the p_y-only losses the chain rule gives |h'(t)| * t * (p - e_y);
    the clamped t appears in both factors, so CE yields exactly p - e_y.
    """
    probs = np.asarray(probs, dtype=np.float64)
    labels = np.asarray(labels)
    n, k = probs.shape
    rows = np.arange(n)
    if spec.kind == "mse":
        v = 2.0 * probs.copy()
        v[rows, labels] -= 2.0
        v *= probs
        return v - probs * v.sum(axis=1, keepdims=True)
    t = np.clip(_true_class_probs(probs, labels), CLAMP_EPS, 1.0)
    g = probs.copy()
    g[rows, labels] -= 1.0
    g *= (h_prime_abs(spec, t) * t)[:, None]
    return g


def loss_gradient_scores(spec: LossSpec, scores, y: int) -> NDArray[np.float64]:
    """Gradient of the loss with respect to a single raw score vector."""
    scores = as_scores(scores)
    if not 0 <= int(y) < scores.size:
        raise ValueError(f"label {y} out of range for {scores.size} classes")
    p = softmax(scores)
    return score_gradients(spec, p[None, :], np.array([int(y)]))[0]


def loss_sum_over_classes(spec: LossSpec, p) -> float:
    """Sum of the loss over all possible true labels, sum_y L(p, y).

    Closed forms: MAE gives K - 1 identically; MSE gives K (||p||^2 + 1) - 2,
    which ranges over [K - 1, 2 (K - 1)]; FR ranges over
    [K arccos(1/sqrt(K))^2, (pi^2/4) (K - 1)] (see ``bounds.fr_sum_bounds``).
    """
    p = as_distribution(p)
    k = p.size
    labels = np.arange(k)
    return float(loss_values(spec, np.broadcast_to(p, (k, k)), labels).sum())
