import numpy as np
import numpy.testing as npt
import pytest

from fisherrao.rng import make_rng
from fisherrao.simplex import (
    as_distribution,
    as_scores,
    fisher_rao_distance,
    fisher_rao_from_hellinger,
    hellinger_distance,
    one_hot,
    sample_simplex,
    softmax,
    sphere_embed,
)


def test_as_distribution_accepts_and_copies():
    p = as_distribution([0.25, 0.75])
    npt.assert_array_equal(p, [0.25, 0.75])
    src = np.array([0.5, 0.5])
    out = as_distribution(src)
    out[0] = 0.0
    assert src[0] == 0.5


def test_as_distribution_clamps_tiny_negatives():
    p = as_distribution([1.0, -1e-13])
    assert p[1] == 0.0


@pytest.mark.parametrize(
    "bad",
    [
        [0.5],  # too short
        [[0.5, 0.5]],  # not 1-D
        [0.5, np.nan],
        [0.5, np.inf],
        [1.0, -1e-11],  # negative beyond tolerance
        [0.6, 0.6],  # sum off by 0.2
        [0.5, 0.5 + 1e-8],  # sum off beyond 1e-9
    ],
)
def test_as_distribution_rejects(bad):
    with pytest.raises(ValueError):
        as_distribution(bad)


def test_as_distribution_sum_tolerance_boundary():
    as_distribution([0.5, 0.5 + 9e-10])  # inside 1e-9


def test_as_scores_rejects_nonfinite():
    with pytest.raises(ValueError):
        as_scores([1.0, np.nan])
    with pytest.raises(ValueError):
        as_scores([1.0])


def test_one_hot():
    npt.assert_array_equal(one_hot(1, 3), [0.0, 1.0, 0.0])
    with pytest.raises(ValueError):
        one_hot(3, 3)
    with pytest.raises(ValueError):
        one_hot(0, 1)


def test_softmax_uniform_and_shift():
    npt.assert_allclose(softmax([0.0, 0.0, 0.0]), np.full(3, 1 / 3), rtol=0, atol=1e-15)
    out = softmax([1000.0, 1000.0])
    npt.assert_allclose(out, [0.5, 0.5], rtol=0, atol=1e-15)


def test_softmax_log_ratios():
    npt.assert_allclose(softmax(np.log([7.0, 2.0, 1.0])), [0.7, 0.2, 0.1], rtol=0, atol=1e-15)


def test_softmax_rejects_nonfinite():
    with pytest.raises(ValueError):
        softmax([np.inf, 0.0])


def test_softmax_batched_rows_sum_to_one():
    rng = make_rng(3, 99)
    s = rng.normal(size=(50, 7))
    p = softmax(s)
    npt.assert_allclose(p.sum(axis=1), 1.0, rtol=0, atol=1e-12)
    npt.assert_allclose(p[13], softmax(s[13]), rtol=0, atol=0)


def test_sphere_embed_values_and_norm():
    npt.assert_array_equal(sphere_embed([1.0, 0.0]), [2.0, 0.0])
    npt.assert_allclose(sphere_embed([0.5, 0.5]), [np.sqrt(2.0)] * 2, rtol=1e-15)
    npt.assert_allclose(sphere_embed([0.25, 0.75]), [1.0, 1.7320508075688772], rtol=0, atol=1e-15)
    rng = make_rng(4, 99)
    for k in (2, 5, 17):
        z = sphere_embed(sample_simplex(rng, k, 200))
        npt.assert_allclose(np.linalg.norm(z, axis=1), 2.0, rtol=0, atol=1e-9)


def test_softmax_embed_consistency():
    rng = make_rng(5, 99)
    z = sphere_embed(softmax(rng.normal(size=(300, 6)) * 3))
    npt.assert_allclose(np.linalg.norm(z, axis=1), 2.0, rtol=0, atol=1e-9)


def test_distance_examples():
    assert fisher_rao_distance([0.5, 0.5], [0.5, 0.5]) == 0.0
    npt.assert_allclose(fisher_rao_distance([1.0, 0.0], [0.0, 1.0]), np.pi, rtol=0, atol=0)
    npt.assert_allclose(
        fisher_rao_distance([0.9, 0.1], [0.1, 0.9]), 1.8545904360032245, rtol=0, atol=1e-12
    )
    assert hellinger_distance([0.3, 0.7], [0.3, 0.7]) == 0.0
    npt.assert_allclose(hellinger_distance([1.0, 0.0], [0.0, 1.0]), np.sqrt(2.0), rtol=0, atol=0)
    npt.assert_allclose(
        hellinger_distance([0.9, 0.1], [0.1, 0.9]), 0.8944271909999159, rtol=0, atol=1e-12
    )


def test_distance_shape_mismatch():
    with pytest.raises(ValueError):
        fisher_rao_distance([0.5, 0.5], [0.2, 0.3, 0.5])
    with pytest.raises(ValueError):
        hellinger_distance([0.5, 0.5], [0.2, 0.3, 0.5])


def test_distances_symmetric_exactly():
    rng = make_rng(6, 99)
    for k in (2, 3, 10):
        p = sample_simplex(rng, k, 100)
        q = sample_simplex(rng, k, 100)
        npt.assert_array_equal(fisher_rao_distance(p, q), fisher_rao_distance(q, p))
        npt.assert_array_equal(hellinger_distance(p, q), hellinger_distance(q, p))


def test_distance_ranges():
    rng = make_rng(7, 99)
    for k in range(2, 21):
        p = sample_simplex(rng, k, 200)
        q = sample_simplex(rng, k, 200)
        d_fr = fisher_rao_distance(p, q)
        d_h = hellinger_distance(p, q)
        assert np.all((0 <= d_fr) & (d_fr <= np.pi))
        assert np.all((0 <= d_h) & (d_h <= np.sqrt(2.0)))


def test_fisher_rao_hellinger_identity():
    rng = make_rng(8, 99)
    for k in range(2, 21):
        p = sample_simplex(rng, k, 600)
        q = sample_simplex(rng, k, 600)
        lhs = fisher_rao_distance(p, q)
        rhs = fisher_rao_from_hellinger(hellinger_distance(p, q))
        npt.assert_allclose(lhs, rhs, rtol=0, atol=1e-9)


def test_arc_chord_bound_and_asymptotics():
    rng = make_rng(9, 99)
    for k in (2, 5, 12):
        p = sample_simplex(rng, k, 500)
        q = sample_simplex(rng, k, 500)
        assert np.all(2.0 * hellinger_distance(p, q) <= fisher_rao_distance(p, q) + 1e-15)
        # pairs at Hellinger distance <= 1e-3: ratio to the chord tends to 1.
        # Step size per pair targets a separation well above the arccos
        # conditioning floor (noise in the ratio scales like eps / d_h^2).
        d0 = hellinger_distance(p, q)
        t = 2e-4 / np.maximum(d0, 1e-3)
        near = p + t[:, None] * (q - p)  # convex combination, stays on the simplex
        d_h = hellinger_distance(p, near)
        keep = (d_h >= 1e-5) & (d_h <= 1e-3)
        assert keep.mean() > 0.9
        ratio = fisher_rao_distance(p, near)[keep] / (2.0 * d_h[keep])
        npt.assert_allclose(ratio, 1.0, rtol=0, atol=1e-4)


def test_triangle_inequality():
    rng = make_rng(10, 99)
    for k in (2, 4, 9):
        a = sample_simplex(rng, k, 300)
        b = sample_simplex(rng, k, 300)
        c = sample_simplex(rng, k, 300)
        ab = fisher_rao_distance(a, b)
        bc = fisher_rao_distance(b, c)
        ac = fisher_rao_distance(a, c)
        assert np.all(ac <= ab + bc + 1e-12)


def test_zero_iff_equal():
    rng = make_rng(11, 99)
    p = sample_simplex(rng, 5, 100)
    q = sample_simplex(rng, 5, 100)
    d = fisher_rao_distance(p, q)
    assert np.all(d > 1e-3)  # random pairs essentially never coincide
    # d(p, p) is bounded by arccos conditioning, ~sqrt(machine eps)
    assert np.all(fisher_rao_distance(p, p) <= 1e-7)
    assert np.all(hellinger_distance(p, p) == 0.0)


def test_boundary_points_finite():
    # zero entries are legitimate boundary points; closed forms stay finite
    p = np.array([0.0, 0.3, 0.7])
    q = np.array([0.5, 0.5, 0.0])
    assert np.isfinite(fisher_rao_distance(p, q))
    assert np.isfinite(hellinger_distance(p, q))


def test_sample_simplex_shapes_and_validity():
    rng = make_rng(12, 99)
    single = sample_simplex(rng, 4)
    assert single.shape == (4,)
    batch = sample_simplex(rng, 4, 1000)
    assert batch.shape == (1000, 4)
    assert batch.min() >= 0.0
    npt.assert_allclose(batch.sum(axis=1), 1.0, rtol=0, atol=1e-12)
    # flat coverage: each coordinate's mean is 1/K
    npt.assert_allclose(batch.mean(axis=0), 0.25, rtol=0, atol=0.05)
