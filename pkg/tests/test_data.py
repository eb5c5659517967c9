import numpy as np
import numpy.testing as npt
import pytest

from fisherrao.data import (
    DataFormatError,
    LabeledDataset,
    SyntheticSpec,
    generate_synthetic,
    load_csv,
    load_mnist,
    save_csv,
)

# ------------------------------------------------------------ LabeledDataset


def test_dataset_validation_and_immutability():
    ds = LabeledDataset(np.zeros((3, 2)), np.array([0, 1, 1]), 2)
    assert len(ds) == 3 and ds.num_features == 2
    with pytest.raises(ValueError):
        ds.features[0, 0] = 1.0
    with pytest.raises(ValueError):
        LabeledDataset(np.zeros((0, 2)), np.array([], dtype=np.int64), 2)
    with pytest.raises(ValueError):
        LabeledDataset(np.zeros((2, 2)), np.array([0, 2]), 2)
    with pytest.raises(ValueError):
        LabeledDataset(np.full((2, 2), np.nan), np.array([0, 1]), 2)
    with pytest.raises(ValueError):
        LabeledDataset(np.zeros((2, 2)), np.array([0, 1]), 1)


def test_with_labels_and_take():
    ds = LabeledDataset(np.arange(8.0).reshape(4, 2), np.array([0, 1, 0, 1]), 2)
    relabeled = ds.with_labels([1, 1, 1, 1])
    npt.assert_array_equal(relabeled.labels, 1)
    npt.assert_array_equal(relabeled.features, ds.features)
    head = ds.take(2)
    assert len(head) == 2
    npt.assert_array_equal(head.features, ds.features[:2])
    with pytest.raises(ValueError):
        ds.take(5)


# ---------------------------------------------------------------- synthetic


def test_synthetic_spec_validation():
    SyntheticSpec(10, 10, 3, 8)  # 8 = 2^3 vertices, exactly enough
    with pytest.raises(ValueError):
        SyntheticSpec(10, 10, 3, 9)  # more classes than vertices
    with pytest.raises(ValueError):
        SyntheticSpec(0, 10, 3, 2)
    with pytest.raises(ValueError):
        SyntheticSpec(10, 10, 3, 2, class_sep=0.0)


def test_synthetic_shapes_and_coverage():
    train, test = generate_synthetic(SyntheticSpec(1000, 200, 100, 10, 1.0, seed=7))
    assert train.features.shape == (1000, 100)
    assert test.features.shape == (200, 100)
    assert set(np.unique(train.labels)) == set(range(10))


def test_synthetic_deterministic():
    spec = SyntheticSpec(200, 100, 30, 5, 1.0, seed=3)
    a_train, a_test = generate_synthetic(spec)
    b_train, b_test = generate_synthetic(spec)
    npt.assert_array_equal(a_train.features, b_train.features)
    npt.assert_array_equal(a_train.labels, b_train.labels)
    npt.assert_array_equal(a_test.features, b_test.features)


def test_synthetic_train_independent_of_test_size():
    a_train, _ = generate_synthetic(SyntheticSpec(300, 50, 20, 4, 1.0, seed=9))
    b_train, _ = generate_synthetic(SyntheticSpec(300, 5000, 20, 4, 1.0, seed=9))
    npt.assert_array_equal(a_train.features, b_train.features)
    npt.assert_array_equal(a_train.labels, b_train.labels)


def test_synthetic_class_frequencies():
    n = 100_000
    train, _ = generate_synthetic(SyntheticSpec(n, 10, 25, 10, 1.0, seed=1))
    sigma = np.sqrt(0.1 * 0.9 / n)
    for c in range(10):
        assert abs(np.mean(train.labels == c) - 0.1) <= 3 * sigma


def test_synthetic_centers_are_hypercube_vertices():
    sep = 2.5
    train, _ = generate_synthetic(SyntheticSpec(5000, 10, 8, 4, sep, seed=11))
    centers = np.stack([train.features[train.labels == c].mean(axis=0) for c in range(4)])
    # empirical means sit near +/- sep corners (sampling noise ~ 1/sqrt(n))
    snapped = np.where(centers > 0, sep, -sep)
    assert np.max(np.abs(centers - snapped)) < 0.15
    assert len({tuple(row) for row in snapped}) == 4  # distinct vertices


def test_synthetic_highdim_vertices_distinct():
    train, _ = generate_synthetic(SyntheticSpec(4000, 10, 100, 10, 1.0, seed=5))
    centers = np.stack([train.features[train.labels == c].mean(axis=0) for c in range(10)])
    snapped = np.where(centers > 0, 1.0, -1.0)
    assert len({tuple(row) for row in snapped}) == 10


def test_synthetic_noise_is_unit_variance():
    train, _ = generate_synthetic(SyntheticSpec(50_000, 10, 6, 2, 1.0, seed=13))
    centers = np.stack([train.features[train.labels == c].mean(axis=0) for c in range(2)])
    residual = train.features - centers[train.labels]
    assert abs(residual.std() - 1.0) < 0.02


# --------------------------------------------------------------------- IDX


def _write_idx_images(path, arrays):
    n, rows, cols = len(arrays), len(arrays[0]), len(arrays[0][0])
    blob = (0x00000803).to_bytes(4, "big") + n.to_bytes(4, "big") + rows.to_bytes(4, "big") + cols.to_bytes(4, "big")
    for img in arrays:
        for row in img:
            blob += bytes(row)
    path.write_bytes(blob)


def _write_idx_labels(path, labels):
    blob = (0x00000801).to_bytes(4, "big") + len(labels).to_bytes(4, "big") + bytes(labels)
    path.write_bytes(blob)


def _independent_first_label(path):
    """Deliberately separate one-off reader used to cross-check load_mnist."""
    raw = path.read_bytes()
    assert int.from_bytes(raw[0:4], "big") == 2049
    return raw[8]


@pytest.fixture
def idx_pair(tmp_path):
    images = [[[0, 128], [255, 3]], [[1, 2], [3, 4]], [[10, 20], [30, 40]]]
    labels = [7, 0, 9]
    img_path = tmp_path / "imgs.idx3-ubyte"
    lab_path = tmp_path / "labs.idx1-ubyte"
    _write_idx_images(img_path, images)
    _write_idx_labels(lab_path, labels)
    return img_path, lab_path


def test_load_idx_pair(idx_pair):
    img_path, lab_path = idx_pair
    ds = load_mnist(img_path, lab_path)
    assert ds.features.shape == (3, 4)
    assert ds.num_classes == 10
    npt.assert_allclose(ds.features[0], [0.0, 128 / 255, 1.0, 3 / 255], rtol=0, atol=1e-15)
    assert ds.features.min() >= 0.0 and ds.features.max() <= 1.0
    npt.assert_array_equal(ds.labels, [7, 0, 9])
    assert ds.labels[0] == _independent_first_label(lab_path)


def test_load_idx_swapped_files_rejected(idx_pair):
    img_path, lab_path = idx_pair
    with pytest.raises(DataFormatError) as exc:
        load_mnist(lab_path, img_path)
    assert exc.value.offset == 0
    assert "magic" in str(exc.value)


def test_load_idx_truncated(idx_pair, tmp_path):
    img_path, lab_path = idx_pair
    raw = img_path.read_bytes()
    clipped = tmp_path / "clipped.idx3-ubyte"
    clipped.write_bytes(raw[:-5])
    with pytest.raises(DataFormatError) as exc:
        load_mnist(clipped, lab_path)
    assert exc.value.offset is not None
    assert "truncated" in str(exc.value)


def test_load_idx_count_mismatch(idx_pair, tmp_path):
    img_path, _ = idx_pair
    short = tmp_path / "short.idx1-ubyte"
    _write_idx_labels(short, [1, 2])
    with pytest.raises(DataFormatError) as exc:
        load_mnist(img_path, short)
    assert "does not match" in str(exc.value)


def test_load_idx_trailing_garbage(idx_pair, tmp_path):
    img_path, lab_path = idx_pair
    padded = tmp_path / "padded.idx1-ubyte"
    padded.write_bytes(lab_path.read_bytes() + b"\x00")
    with pytest.raises(DataFormatError):
        load_mnist(img_path, padded)


# --------------------------------------------------------------------- CSV


def test_csv_round_trip(tmp_path):
    train, _ = generate_synthetic(SyntheticSpec(50, 10, 7, 3, 1.0, seed=21))
    path = tmp_path / "train.csv"
    save_csv(train, path)
    back = load_csv(path)
    npt.assert_array_equal(back.features, train.features)  # repr round-trips exactly
    npt.assert_array_equal(back.labels, train.labels)
    assert back.num_classes == train.num_classes
    header = path.read_text().splitlines()[0]
    assert header == ",".join([f"f{j}" for j in range(7)] + ["label"])


def test_csv_num_classes_override(tmp_path):
    ds = LabeledDataset(np.zeros((2, 2)), np.array([0, 1]), 5)
    path = tmp_path / "d.csv"
    save_csv(ds, path)
    assert load_csv(path).num_classes == 2  # inferred from labels
    assert load_csv(path, num_classes=5).num_classes == 5


def test_csv_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(DataFormatError):
        load_csv(path)


def test_csv_header_only(tmp_path):
    path = tmp_path / "header.csv"
    path.write_text("f0,f1,label\n")
    with pytest.raises(DataFormatError) as exc:
        load_csv(path)
    assert "no data rows" in str(exc.value)


def test_csv_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("x,y,label\n0.0,0.0,0\n")
    with pytest.raises(DataFormatError) as exc:
        load_csv(path)
    assert exc.value.line == 1


def test_csv_malformed_row_reports_line(tmp_path):
    path = tmp_path / "mal.csv"
    path.write_text("f0,f1,label\n0.0,1.0,0\n0.5,oops,1\n")
    with pytest.raises(DataFormatError) as exc:
        load_csv(path)
    assert exc.value.line == 3
    path.write_text("f0,f1,label\n0.0,1.0\n")
    with pytest.raises(DataFormatError) as exc:
        load_csv(path)
    assert exc.value.line == 2
