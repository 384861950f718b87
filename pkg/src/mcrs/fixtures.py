"""Bundled sample data."""

from __future__ import annotations

from importlib import resources

import numpy as np

from .dataset import DMUDataset, load_dataset

# Published closest-target row for DMU7 in the original worked example, which is
# feasible but not minimal: (7, 4, 1.5) on the DMU3-DMU4 face needs only 0.5.
PUBLISHED_DMU7_CLOSEST = ((7.0, 2.3333), (1.1667,))
PUBLISHED_DMU7_OBJECTIVE = 1.8333


def table1_bytes() -> bytes:
    return resources.files(__package__).joinpath("data/table1.csv").read_bytes()


def table1() -> DMUDataset:
    """Nine DMUs with inputs (x1, x2) and a unit output."""
    return load_dataset(table1_bytes())


def is_table1(ds: DMUDataset) -> bool:
    ref = table1()
    return (
        ds.inputs.shape == ref.inputs.shape
        and ds.outputs.shape == ref.outputs.shape
        and np.array_equal(ds.inputs, ref.inputs)
        and np.array_equal(ds.outputs, ref.outputs)
    )
