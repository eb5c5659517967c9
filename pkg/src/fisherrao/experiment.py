"""Multi-seed training sweeps over (loss, noise rate) cells, with CSV output.

A sweep trains one model per (loss, eta, seed) cell.  Only training labels
are corrupted, from a noise seed derived via ``derive_seed(seed, eta_index)``
so that different noise levels use independent corruptions while every loss
sees the same noisy labels at a given (eta, seed) — a paired comparison.

Per-epoch rows and the cross-seed summary are written as CSV with repr()
floats, so a re-run with identical seeds reproduces the files byte for byte.
Summary accuracy is the final epoch's (acc_metric column says so); the best
epoch's accuracy is logged alongside.
"""

import os
from dataclasses import dataclass, field

import numpy as np

from .data import DataFormatError, LabeledDataset, SyntheticSpec, generate_synthetic, load_csv, load_mnist
from .losses import LossSpec
from .mlp import MlpConfig, TrainingDiverged, TrainRecord, init_model, train
from .noise import NoiseSpec, corrupt_labels
from .rng import derive_seed

SUMMARY_COLUMNS = (
    "loss,q,eta,mean_test_acc,std_test_acc,n_seeds,mean_best_test_acc,acc_metric,n_diverged"
)
PER_EPOCH_COLUMNS = "run_id,loss,q,eta,seed,epoch,train_loss,train_acc,test_acc"


@dataclass(frozen=True)
class ExperimentSpec:
    """Flat description of a sweep, loadable from a key = value config file."""

    dataset: str  # "synthetic" | "mnist" | "csv"
    losses: tuple[LossSpec, ...]
    etas: tuple[float, ...]
    seeds: tuple[int, ...]
    hidden: tuple[int, ...]
    batch_size: int
    epochs: int
    lr: float | None = None
    lr_file: str | None = None
    lr_grid: tuple[float, ...] = ()
    grid_epochs: int | None = None
    eval_every_epoch: bool = True
    out_dir: str = "runs"
    # synthetic source
    n_train: int = 8000
    n_test: int = 2000
    features: int = 100
    classes: int = 10
    class_sep: float = 1.0
    data_seed: int = 0
    # mnist source
    train_images: str | None = None
    train_labels: str | None = None
    test_images: str | None = None
    test_labels: str | None = None
    # csv source
    train_csv: str | None = None
    test_csv: str | None = None
    # applies to mnist/csv: keep only the first train_limit training samples
    train_limit: int | None = None

    def __post_init__(self):
        if self.dataset not in ("synthetic", "mnist", "csv"):
            raise ValueError(f"dataset must be synthetic, mnist, or csv, got {self.dataset!r}")
        if not self.losses or not self.etas or not self.seeds:
            raise ValueError("losses, etas, and seeds must all be nonempty")
        if len(set(map(str, self.losses))) != len(self.losses):
            raise ValueError("duplicate loss entries")
        if self.dataset == "mnist" and None in (
            self.train_images, self.train_labels, self.test_images, self.test_labels
        ):
            raise ValueError("mnist dataset needs train_images/train_labels/test_images/test_labels")
        if self.dataset == "csv" and None in (self.train_csv, self.test_csv):
            raise ValueError("csv dataset needs train_csv and test_csv")


_BOOL = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}

_INT_KEYS = {"batch_size", "epochs", "grid_epochs", "n_train", "n_test", "features",
             "classes", "data_seed", "train_limit"}
_FLOAT_KEYS = {"lr", "class_sep"}
_STR_KEYS = {"dataset", "out_dir", "lr_file", "train_images", "train_labels",
             "test_images", "test_labels", "train_csv", "test_csv"}


def parse_config(path) -> ExperimentSpec:
    """Parse a flat 'key = value' config file ('#' starts a comment)."""
    values: dict = {}
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if not sep or not key or not val:
                raise ValueError(f"{path}: line {lineno}: expected 'key = value', got {raw.rstrip()!r}")
            try:
                if key in _INT_KEYS:
                    values[key] = int(val)
                elif key in _FLOAT_KEYS:
                    values[key] = float(val)
                elif key in _STR_KEYS:
                    values[key] = val
                elif key == "eval_every_epoch":
                    values[key] = _BOOL[val.lower()]
                elif key == "losses":
                    values[key] = tuple(LossSpec.parse(tok) for tok in val.split(","))
                elif key == "etas":
                    values[key] = tuple(float(tok) for tok in val.split(","))
                elif key == "seeds":
                    values[key] = tuple(int(tok) for tok in val.split(","))
                elif key == "hidden":
                    values[key] = tuple(int(tok) for tok in val.split(",")) if val.lower() != "none" else ()
                elif key == "lr_grid":
                    values[key] = tuple(float(tok) for tok in val.split(","))
                else:
                    raise ValueError(f"unknown key {key!r}")
            except (ValueError, KeyError) as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
    required = {"dataset", "losses", "etas", "seeds", "hidden", "batch_size", "epochs"}
    missing = sorted(required - values.keys())
    if missing:
        raise ValueError(f"{path}: missing required keys: {', '.join(missing)}")
    return ExperimentSpec(**values)


def load_datasets(spec: ExperimentSpec) -> tuple[LabeledDataset, LabeledDataset]:
    """Materialize (train, test) from the configured source."""
    if spec.dataset == "synthetic":
        train_ds, test_ds = generate_synthetic(
            SyntheticSpec(spec.n_train, spec.n_test, spec.features, spec.classes,
                          spec.class_sep, spec.data_seed)
        )
    elif spec.dataset == "mnist":
        train_ds = load_mnist(spec.train_images, spec.train_labels)
        test_ds = load_mnist(spec.test_images, spec.test_labels)
    else:
        train_ds = load_csv(spec.train_csv)
        test_ds = load_csv(spec.test_csv)
        k = max(train_ds.num_classes, test_ds.num_classes)
        train_ds = LabeledDataset(train_ds.features, train_ds.labels, k)
        test_ds = LabeledDataset(test_ds.features, test_ds.labels, k)
    if spec.train_limit is not None and spec.train_limit < len(train_ds):
        train_ds = train_ds.take(spec.train_limit)
    if train_ds.num_features != test_ds.num_features:
        raise DataFormatError(
            f"train has {train_ds.num_features} features but test has {test_ds.num_features}"
        )
    return train_ds, test_ds


@dataclass(frozen=True)
class RunResult:
    """Outcome of one (loss, eta, seed) training cell."""

    loss: LossSpec
    eta: float
    seed: int
    lr: float
    records: list[TrainRecord] = field(default_factory=list)
    diverged: bool = False

    @property
    def final_test_acc(self) -> float | None:
        return self.records[-1].test_acc if self.records else None

    @property
    def best_test_acc(self) -> float | None:
        accs = [r.test_acc for r in self.records if r.test_acc is not None]
        return max(accs) if accs else None


def run_cell(
    train_ds: LabeledDataset,
    test_ds: LabeledDataset,
    loss: LossSpec,
    eta: float,
    eta_index: int,
    seed: int,
    hidden: tuple[int, ...],
    batch_size: int,
    epochs: int,
    lr: float,
    eval_every_epoch: bool = True,
) -> RunResult:
    """Corrupt a fresh copy of the training labels, train one model, record."""
    k = train_ds.num_classes
    noise = NoiseSpec(eta, derive_seed(seed, eta_index), k)
    noisy_ds = train_ds.with_labels(corrupt_labels(train_ds.labels, noise))
    config = MlpConfig(
        layer_sizes=(train_ds.num_features, *hidden, k),
        loss=loss,
        learning_rate=lr,
        batch_size=batch_size,
        epochs=epochs,
        seed=seed,
    )
    model = init_model(config)
    try:
        records = train(model, noisy_ds, test_ds, config, eval_test_every_epoch=eval_every_epoch)
    except TrainingDiverged as exc:
        return RunResult(loss, eta, seed, lr, records=exc.records, diverged=True)
    return RunResult(loss, eta, seed, lr, records=records, diverged=False)


def run_sweep(
    train_ds: LabeledDataset,
    test_ds: LabeledDataset,
    spec: ExperimentSpec,
    lr_for=None,
    progress=None,
) -> list[RunResult]:
    """All (eta, loss, seed) cells in deterministic order.

    lr_for(loss, eta) supplies the learning rate per cell; default is the
    spec's fixed lr (or the table loaded from spec.lr_file).
    """
    if lr_for is None:
        lr_for = make_lr_lookup(spec)
    results = []
    for eta_index, eta in enumerate(spec.etas):
        for loss in spec.losses:
            for seed in spec.seeds:
                lr = lr_for(loss, eta)
                if progress is not None:
                    progress(f"train loss={loss} eta={eta:g} seed={seed} lr={lr:g}")
                result = run_cell(
                    train_ds, test_ds, loss, eta, eta_index, seed,
                    spec.hidden, spec.batch_size, spec.epochs, lr, spec.eval_every_epoch,
                )
                if progress is not None and result.diverged:
                    progress(f"  diverged at epoch {len(result.records) + 1}")
                results.append(result)
    return results


def make_lr_lookup(spec: ExperimentSpec):
    """Learning-rate source for a sweep: lr_file table if set, else fixed lr."""
    if spec.lr_file is not None:
        table = read_lr_table(spec.lr_file)

        def from_table(loss: LossSpec, eta: float) -> float:
            key = (str(loss), eta)
            if key not in table:
                raise ValueError(f"{spec.lr_file}: no learning rate for loss={loss} eta={eta:g}")
            return table[key]

        return from_table
    if spec.lr is None:
        raise ValueError("config needs either lr or lr_file for training")
    return lambda loss, eta: spec.lr


def grid_search_lr(
    train_ds: LabeledDataset,
    test_ds: LabeledDataset,
    spec: ExperimentSpec,
    progress=None,
) -> list[dict]:
    """Short training per (loss, eta, grid lr); pick the lr with the best
    final test accuracy (ties toward the smaller lr).

    Uses the first configured seed and grid_epochs (default: epochs) epochs.
    Returns one row per grid point: loss, q, eta, lr, final_test_acc,
    selected (1 for the chosen lr, else 0); diverged runs score -1.
    """
    if not spec.lr_grid:
        raise ValueError("config needs a nonempty lr_grid for grid search")
    seed = spec.seeds[0]
    epochs = spec.grid_epochs if spec.grid_epochs is not None else spec.epochs
    rows = []
    for eta_index, eta in enumerate(spec.etas):
        for loss in spec.losses:
            accs = []
            for lr in spec.lr_grid:
                if progress is not None:
                    progress(f"grid loss={loss} eta={eta:g} lr={lr:g}")
                result = run_cell(
                    train_ds, test_ds, loss, eta, eta_index, seed,
                    spec.hidden, spec.batch_size, epochs, lr, eval_every_epoch=False,
                )
                acc = result.final_test_acc if not result.diverged else None
                accs.append(-1.0 if acc is None else acc)
            best = int(np.argmax(accs))  # first max -> smallest lr on ties
            for i, (lr, acc) in enumerate(zip(spec.lr_grid, accs)):
                rows.append({
                    "loss": loss.kind, "q": loss.q, "eta": eta, "lr": lr,
                    "final_test_acc": acc, "selected": int(i == best),
                })
    return rows


def summarize(results: list[RunResult]) -> list[dict]:
    """Cross-seed aggregation per (loss, eta), in first-seen order.

    mean/std (population std, ddof 0) of the final-epoch test accuracy over
    the seeds that completed; diverged seeds are excluded from the statistics
    and counted in n_diverged.
    """
    order: list[tuple[str, float]] = []
    cells: dict[tuple[str, float], list[RunResult]] = {}
    for r in results:
        key = (str(r.loss), r.eta)
        if key not in cells:
            cells[key] = []
            order.append(key)
        cells[key].append(r)
    rows = []
    for key in order:
        group = cells[key]
        loss = group[0].loss
        finals = [r.final_test_acc for r in group if not r.diverged and r.final_test_acc is not None]
        bests = [r.best_test_acc for r in group if not r.diverged and r.best_test_acc is not None]
        rows.append({
            "loss": loss.kind,
            "q": loss.q,
            "eta": group[0].eta,
            "mean_test_acc": float(np.mean(finals)) if finals else float("nan"),
            "std_test_acc": float(np.std(finals)) if finals else float("nan"),
            "n_seeds": len(finals),
            "mean_best_test_acc": float(np.mean(bests)) if bests else float("nan"),
            "acc_metric": "final",
            "n_diverged": sum(r.diverged for r in group),
        })
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def run_id(loss: LossSpec, eta: float, seed: int) -> str:
    return f"{loss}-eta{eta:g}-seed{seed}"


def write_per_epoch_csv(path, results: list[RunResult]) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(PER_EPOCH_COLUMNS + "\n")
        for r in results:
            rid = run_id(r.loss, r.eta, r.seed)
            for rec in r.records:
                f.write(",".join([
                    rid, r.loss.kind, _fmt(r.loss.q), repr(r.eta), str(r.seed),
                    str(rec.epoch), repr(rec.train_loss), repr(rec.train_acc), _fmt(rec.test_acc),
                ]) + "\n")


def write_summary_csv(path, rows: list[dict]) -> None:
    cols = SUMMARY_COLUMNS.split(",")
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(SUMMARY_COLUMNS + "\n")
        for row in rows:
            f.write(",".join(_fmt(row[c]) for c in cols) + "\n")


def write_lr_table_csv(path, rows: list[dict]) -> None:
    cols = ["loss", "q", "eta", "lr", "final_test_acc", "selected"]
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(",".join(cols) + "\n")
        for row in rows:
            f.write(",".join(_fmt(row[c]) for c in cols) + "\n")


def _split_csv(path) -> tuple[list[str], list[list[str]]]:
    with open(path, "r", encoding="ascii") as f:
        lines = f.read().splitlines()
    if not lines:
        raise DataFormatError("empty file", path=path, line=1)
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def read_lr_table(path) -> dict[tuple[str, float], float]:
    """Selected learning rates from a grid-search CSV: (loss str, eta) -> lr."""
    header, rows = _split_csv(path)
    expected = ["loss", "q", "eta", "lr", "final_test_acc", "selected"]
    if header != expected:
        raise DataFormatError(f"bad header {header!r}", path=path, line=1)
    table = {}
    for i, parts in enumerate(rows, start=2):
        if len(parts) != len(expected):
            raise DataFormatError(f"expected {len(expected)} fields, got {len(parts)}", path=path, line=i)
        if parts[5] == "1":
            loss = LossSpec(parts[0], float(parts[1]) if parts[1] else None)
            table[(str(loss), float(parts[2]))] = float(parts[3])
    return table


def read_per_epoch_csv(path) -> list[dict]:
    """Rows of a per-epoch CSV, typed; test_acc is None where it was skipped."""
    header, raw_rows = _split_csv(path)
    if header != PER_EPOCH_COLUMNS.split(","):
        raise DataFormatError(f"bad header {header!r}", path=path, line=1)
    rows = []
    for i, parts in enumerate(raw_rows, start=2):
        if len(parts) != 9:
            raise DataFormatError(f"expected 9 fields, got {len(parts)}", path=path, line=i)
        try:
            rows.append({
                "run_id": parts[0],
                "loss": parts[1],
                "q": float(parts[2]) if parts[2] else None,
                "eta": float(parts[3]),
                "seed": int(parts[4]),
                "epoch": int(parts[5]),
                "train_loss": float(parts[6]),
                "train_acc": float(parts[7]),
                "test_acc": float(parts[8]) if parts[8] else None,
            })
        except ValueError as exc:
            raise DataFormatError(f"unparseable value ({exc})", path=path, line=i) from None
    return rows


def summarize_from_csv(path) -> list[dict]:
    """Recompute the summary from a per-epoch CSV (same statistics as ``summarize``).

    The per-epoch schema carries no status column, so a run is inferred to
    have diverged when it logged fewer epochs than the longest run in the
    file (all cells of a sweep share the same epoch budget).
    """
    rows = read_per_epoch_csv(path)
    by_run: dict[str, list[dict]] = {}
    run_order = []
    for row in rows:
        if row["run_id"] not in by_run:
            by_run[row["run_id"]] = []
            run_order.append(row["run_id"])
        by_run[row["run_id"]].append(row)
    full_epochs = max(max(r["epoch"] for r in recs) for recs in by_run.values())
    results = []
    for rid in run_order:
        recs = sorted(by_run[rid], key=lambda r: r["epoch"])
        head = recs[0]
        loss = LossSpec(head["loss"], head["q"])
        results.append(RunResult(
            loss=loss, eta=head["eta"], seed=head["seed"], lr=float("nan"),
            records=[TrainRecord(r["epoch"], r["train_loss"], r["train_acc"], r["test_acc"]) for r in recs],
            diverged=recs[-1]["epoch"] < full_epochs,
        ))
    return summarize(results)


def run_experiment(spec: ExperimentSpec, out_dir=None, progress=None) -> tuple[list[RunResult], list[dict]]:
    """Load data, run the sweep, write runs.csv and summary.csv under out_dir."""
    out = spec.out_dir if out_dir is None else out_dir
    train_ds, test_ds = load_datasets(spec)
    results = run_sweep(train_ds, test_ds, spec, progress=progress)
    os.makedirs(out, exist_ok=True)
    write_per_epoch_csv(os.path.join(out, "runs.csv"), results)
    summary = summarize(results)
    write_summary_csv(os.path.join(out, "summary.csv"), summary)
    return results, summary
