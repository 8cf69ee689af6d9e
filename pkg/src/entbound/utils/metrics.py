"""Small statistics helpers for seed aggregates"""
from typing import Sequence, Tuple

import numpy as np


def mean_and_sample_std(values: Sequence[float]) -> Tuple[float, float]:
    """Mean and n-1 standard deviation; std is 0 for a single value"""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return float("nan"), float("nan")
    if arr.size == 1:
        return float(arr[0]), 0.0
    return float(arr.mean()), float(arr.std(ddof=1))


def to_bits(nats: float) -> float:
    return nats / float(np.log(2.0))
