"""Dataset CSV and model text formats.

Dataset: UTF-8 CSV with LF line endings and header ``label,f1,...,fd``; one
row per point, numbers printed with 17 significant digits so a round trip is
exact.

Model: four plain-text lines::

    omega: 5 5 0
    assignment: A=1 B=2
    margin: 10
    tie_policy: lowest-index

Coordinates in the file are 1-based; in memory they are 0-based.
"""

from __future__ import annotations

import csv
import io
import re

import numpy as np

from ..svm import TIE_POLICY, LabeledDataset, TrainedModel


class InputError(ValueError):
    """Base class for unusable input files."""


class MalformedHeaderError(InputError):
    pass


class NonNumericCellError(InputError):
    pass


class RaggedRowError(InputError):
    pass


class UnknownLabelError(InputError):
    pass


class MalformedModelError(InputError):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def dataset_to_csv(points, labels) -> str:
    X = np.asarray(points, dtype=float)
    if X.ndim != 2:
        raise ValueError("points must be a 2-D array")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label"] + [f"f{j + 1}" for j in range(X.shape[1])])
    for lab, row in zip(labels, X):
        w.writerow([str(lab)] + [_fmt(v) for v in row])
    return buf.getvalue()


def write_dataset(path, data: LabeledDataset) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(dataset_to_csv(data.points, data.labels))


def parse_dataset(text: str, source: str = "<string>"):
    """Parse dataset CSV text into ``(points, labels)`` without normalizing."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise MalformedHeaderError(f"{source}: empty file, expected header 'label,f1,...,fd'")
    header = [h.strip() for h in rows[0]]
    d = len(header) - 1
    expected = ["label"] + [f"f{j + 1}" for j in range(d)]
    if d < 2 or header != expected:
        raise MalformedHeaderError(
            f"{source}: header must be 'label,f1,...,fd' with d >= 2, got {','.join(rows[0])!r}")
    labels, values = [], []
    for k, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != d + 1:
            raise RaggedRowError(f"{source}, line {k}: expected {d + 1} cells, got {len(row)}")
        lab = row[0].strip()
        if not lab:
            raise InputError(f"{source}, line {k}: empty label")
        try:
            vals = [float(c) for c in row[1:]]
        except ValueError:
            bad = next(c for c in row[1:] if not _is_float(c))
            raise NonNumericCellError(f"{source}, line {k}: non-numeric cell {bad!r}") from None
        if not all(np.isfinite(vals)):
            raise NonNumericCellError(f"{source}, line {k}: non-finite value")
        labels.append(lab)
        values.append(vals)
    if not values:
        raise InputError(f"{source}: no data rows")
    return np.array(values), tuple(labels)


def _is_float(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def read_dataset(path) -> LabeledDataset:
    with open(path, encoding="utf-8", newline="") as fh:
        X, labels = parse_dataset(fh.read(), str(path))
    return LabeledDataset(X, labels)


# --------------------------------------------------------------------------
# models

_LABEL_OK = re.compile(r"^[^\s=]+$")


def model_to_text(model: TrainedModel) -> str:
    for lab in model.assignment:
        if not _LABEL_OK.match(str(lab)):
            raise ValueError(f"label {lab!r} cannot be written (no spaces or '=')")
    asg = " ".join(f"{lab}={c + 1}" for lab, c in model._order)
    return (f"omega: {' '.join(_fmt(v) for v in model.omega)}\n"
            f"assignment: {asg}\n"
            f"margin: {_fmt(model.margin)}\n"
            f"tie_policy: {model.tie_policy}\n")


def write_model(path, model: TrainedModel) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(model_to_text(model))


def parse_model(text: str, source: str = "<string>") -> TrainedModel:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    keys = ["omega", "assignment", "margin", "tie_policy"]
    if len(lines) != 4:
        raise MalformedModelError(f"{source}: expected 4 lines, got {len(lines)}")
    fields = {}
    for key, line in zip(keys, lines):
        head, sep, rest = line.partition(":")
        if not sep or head.strip() != key:
            raise MalformedModelError(f"{source}: expected '{key}: ...', got {line!r}")
        fields[key] = rest.strip()
    try:
        omega = np.array([float(v) for v in fields["omega"].split()])
        margin = float(fields["margin"])
    except ValueError:
        raise MalformedModelError(f"{source}: non-numeric omega or margin") from None
    asg = {}
    for item in fields["assignment"].split():
        lab, sep, coord = item.partition("=")
        if not sep or not coord.isdigit():
            raise MalformedModelError(f"{source}: bad assignment entry {item!r}")
        asg[lab] = int(coord) - 1
    if fields["tie_policy"] != TIE_POLICY:
        raise MalformedModelError(f"{source}: unsupported tie policy {fields['tie_policy']!r}")
    try:
        return TrainedModel(omega, asg, margin, fields["tie_policy"])
    except ValueError as exc:
        raise MalformedModelError(f"{source}: {exc}") from None


def read_model(path) -> TrainedModel:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read(), str(path))


def check_labels(model: TrainedModel, labels) -> None:
    unknown = sorted(set(labels) - set(model.assignment))
    if unknown:
        raise UnknownLabelError(f"labels not known to the model: {', '.join(map(str, unknown))}")
