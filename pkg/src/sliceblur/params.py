"""Filter parameter files.

Plain ``key = value`` text, one key per line; list values are
comma-separated.  Written by the optimizer, read by the filter CLI.

Keys: k, sigma0, error_model (qf | l2), breakpoints, constants, weights, e2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .approx import Partition, to_slices


@dataclass(frozen=True)
class FilterParams:
    partition: Partition
    sigma0: float
    error_model: str
    e2: float

    def __post_init__(self):
        if self.error_model not in ("qf", "l2"):
            raise ValueError(f"unknown error model: {self.error_model}")


def save_params(path, params: FilterParams):
    p = params.partition
    weights = to_slices(p).weights
    lines = [
        f"k = {p.k}",
        f"sigma0 = {params.sigma0!r}",
        f"error_model = {params.error_model}",
        "breakpoints = " + ", ".join(str(int(b)) for b in p.breakpoints),
        "constants = " + ", ".join(repr(float(c)) for c in p.constants),
        "weights = " + ", ".join(repr(float(w)) for w in weights),
        f"e2 = {params.e2!r}",
    ]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_params(path) -> FilterParams:
    fields = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            fields[key.strip()] = value.strip()
    try:
        k = int(fields["k"])
        sigma0 = float(fields["sigma0"])
        error_model = fields["error_model"]
        breakpoints = [int(v) for v in fields["breakpoints"].split(",")]
        constants = [float(v) for v in fields["constants"].split(",")]
        e2 = float(fields["e2"])
    except KeyError as exc:
        raise ValueError(f"{path}: missing parameter key {exc}") from None
    if len(breakpoints) != k or len(constants) != k:
        raise ValueError(f"{path}: k does not match parameter lengths")
    partition = Partition(np.array(breakpoints), np.array(constants))
    if "weights" in fields:
        stored = np.array([float(v) for v in fields["weights"].split(",")])
        if not np.allclose(stored, to_slices(partition).weights, atol=1e-9):
            raise ValueError(f"{path}: weights inconsistent with constants")
    return FilterParams(partition, sigma0, error_model, e2)
