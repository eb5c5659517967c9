"""Tour of the closed-form geometry on the probability simplex.

Walks through the Fisher-Rao and Hellinger distances, the sphere embedding
that explains them, the arcsin identity tying the two together, and the
range of the Fisher-Rao loss summed over classes.  Everything here is exact
arithmetic on small vectors; run it and read the output top to bottom.
"""

import numpy as np

from fisherrao import (
    CE,
    FR,
    fisher_rao_distance,
    fisher_rao_from_hellinger,
    fr_critical_value,
    fr_sum_bounds,
    hellinger_distance,
    loss_sum_over_classes,
    loss_value,
    sample_simplex,
    sphere_embed,
)


def section(title):
    print()
    print(title)
    print("-" * len(title))


def main():
    section("Two distributions on the 3-class simplex")
    p = np.array([0.7, 0.2, 0.1])
    q = np.array([0.1, 0.3, 0.6])
    d_fr = fisher_rao_distance(p, q)
    d_h = hellinger_distance(p, q)
    print(f"p = {p},  q = {q}")
    print(f"Fisher-Rao distance  d_FR = {d_fr:.12f}")
    print(f"Hellinger distance   d_H  = {d_h:.12f}")
    print(f"4 arcsin(d_H / 2)         = {fisher_rao_from_hellinger(d_h):.12f}  (same number)")

    section("Why: the square-root embedding onto a sphere")
    # z = 2 sqrt(p) lands on the radius-2 sphere; the geodesic between two
    # distributions is the great-circle arc between their embeddings.
    z_p, z_q = sphere_embed(p), sphere_embed(q)
    print(f"z_p = 2 sqrt(p) = {z_p}")
    print(f"|z_p| = {np.linalg.norm(z_p):.12f}   |z_q| = {np.linalg.norm(z_q):.12f}")
    angle = np.arccos(np.dot(z_p, z_q) / 4.0)
    print(f"angle between embeddings   = {angle:.12f}")
    print(f"arc length (radius 2)      = {2 * angle:.12f}  = d_FR")
    print(f"chord length |z_p - z_q|   = {np.linalg.norm(z_p - z_q):.12f}  = 2 d_H")

    section("The identity holds everywhere, not just at nice points")
    rng = np.random.default_rng(0)
    worst = 0.0
    for k in (2, 3, 5, 10, 50):
        pairs = sample_simplex(rng, k, n=2000), sample_simplex(rng, k, n=2000)
        fr = fisher_rao_distance(pairs[0], pairs[1])
        h = hellinger_distance(pairs[0], pairs[1])
        worst = max(worst, float(np.max(np.abs(fr - fisher_rao_from_hellinger(h)))))
    print(f"max |d_FR - 4 arcsin(d_H/2)| over 10000 random pairs: {worst:.3e}")
    e1, e2 = np.eye(2)
    print(f"diameter check: disjoint support gives d_FR = {fisher_rao_distance(e1, e2):.12f} = pi")

    section("Fisher-Rao loss summed over all class labels")
    # sum_y L_FR(p, y) is bounded on the simplex: smallest at the uniform
    # distribution, largest at the vertices.  That finite range is what the
    # noise-robustness bounds are built from (see robustness_bounds.py).
    k = 3
    lo, hi = fr_sum_bounds(k)
    uniform = np.full(k, 1.0 / k)
    vertex = np.array([1.0, 0.0, 0.0])
    print(f"K = {k}")
    print(f"sum at uniform  = {loss_sum_over_classes(FR, uniform):.12f}   (bound {lo:.12f})")
    # the vertex lands ~6e-6 under the supremum: zero probabilities are
    # clamped to 1e-12 before the arccos, which shaves pi*sqrt(1e-12) off
    # each of the K-1 wrong-class terms.
    print(f"sum at vertex   = {loss_sum_over_classes(FR, vertex):.12f}   (bound {hi:.12f})")
    edge_mid = np.array([0.5, 0.5, 0.0])
    print(f"sum at edge mid = {loss_sum_over_classes(FR, edge_mid):.12f}   "
          f"(critical value j=2: {fr_critical_value(k, 2):.12f})")
    samples = sample_simplex(np.random.default_rng(1), k, n=50000)
    sums = np.array([loss_sum_over_classes(FR, s) for s in samples])
    print(f"range over 50000 random points: [{sums.min():.6f}, {sums.max():.6f}]"
          f"  (inside [{lo:.6f}, {hi:.6f}])")

    section("Contrast: the same sum for cross-entropy is unbounded")
    for eps in (1e-2, 1e-6, 1e-10):
        p_near = np.array([1.0 - 2 * eps, eps, eps])
        total = sum(loss_value(CE, p_near, y) for y in range(3))
        print(f"p ~ vertex (eps = {eps:.0e}): sum_y L_CE = {total:.3f}")


if __name__ == "__main__":
    main()
