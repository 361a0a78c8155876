"""Shared helpers for the test suite."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from dummyreg import (
    CategoricalColumn,
    Dataset,
    build_design,
    categorical_column,
    cell_means,
    numeric_column,
    parse_formula,
    spec_from_json,
    synthesize,
)

DATA_DIR = Path(__file__).parent / "data"


def load_spec(name: str):
    return spec_from_json((DATA_DIR / name).read_text())


def load_json(name: str) -> dict:
    return json.loads((DATA_DIR / name).read_text())


def random_one_factor(rng, k_range=(2, 6), count_range=(2, 9)) -> Dataset:
    """One categorical predictor with unequal group sizes plus response."""
    k = int(rng.integers(*k_range))
    counts = rng.integers(count_range[0], count_range[1], size=k)
    if len(set(counts.tolist())) == 1:
        counts[0] += 1
    codes = np.repeat(np.arange(k), counts)
    levels = tuple(f"g{i}" for i in range(k))
    y = rng.normal(20.0, 3.0, size=int(counts.sum()))
    return Dataset({
        "g": CategoricalColumn(levels, codes),
        "y": numeric_column(y),
    })


def random_two_factor(rng, k_range=(2, 4)) -> Dataset:
    """Full two-way grid, every cell populated with >= 2 rows."""
    ka = int(rng.integers(*k_range))
    kb = int(rng.integers(*k_range))
    a_cells, b_cells, y = [], [], []
    for i in range(ka):
        for j in range(kb):
            count = int(rng.integers(2, 5))
            a_cells.extend([f"a{i}"] * count)
            b_cells.extend([f"b{j}"] * count)
            y.extend(rng.normal(10.0, 2.0, size=count).tolist())
    return Dataset({
        "a": categorical_column(a_cells),
        "b": categorical_column(b_cells),
        "y": numeric_column(y),
    })


def interaction_design(spread: float = 0.3):
    """Crossed 2x3 design from the checked-in cell-mean file.

    Returns (design, data, observed cell means keyed by level tuple).
    """
    data = synthesize(load_spec("sex_by_education_means.json"), spread)
    design = build_design(parse_formula("bmi ~ female * edu"), data,
                          refs={"edu": "low"})
    means = cell_means(data, ["female", "edu"], "bmi")
    return design, data, means


def row_cell_key(data: Dataset, factors, i: int) -> tuple[str, ...]:
    key = []
    for name in factors:
        column = data[name]
        if isinstance(column, CategoricalColumn):
            key.append(column.levels[column.codes[i]])
        else:
            value = float(column.values[i])
            key.append(str(int(value)) if value.is_integer() else repr(value))
    return tuple(key)


def dataset_csv(data: Dataset) -> str:
    """Dataset as CSV text that read_csv types back identically."""
    lines = [",".join(data.columns)]
    for i in range(data.n_rows):
        cells = []
        for name in data.columns:
            column = data[name]
            if isinstance(column, CategoricalColumn):
                cells.append(column.levels[column.codes[i]])
            else:
                cells.append(repr(float(column.values[i])))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
