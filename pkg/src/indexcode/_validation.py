"""Input checks shared by the estimator wrappers."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .exceptions import InstanceError
from .instance import Instance, load_instance, parse_instance


def check_instance(instance, require_coverage: bool = False) -> Instance:
    """Accept an Instance, instance-file text, or a path to an instance file."""
    if isinstance(instance, Instance):
        inst = instance
    elif isinstance(instance, Path):
        inst = load_instance(instance)
    elif isinstance(instance, str):
        inst = parse_instance(instance) if "\n" in instance else load_instance(instance)
    else:
        raise TypeError(f"expected an Instance, file text or path, got {type(instance).__name__}")
    if require_coverage and inst.coverage is None:
        raise InstanceError("a cellular instance (with coverage lines) is required")
    return inst


def check_messages(X, n: int, q: int) -> np.ndarray:
    """Message vectors as an (samples, n) integer array reduced mod q."""
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != n:
        raise ValueError(f"expected message rows of length {n}, got shape {np.shape(X)}")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("message entries must be integers")
        arr = arr.astype(np.int64)
    return np.mod(arr, q).astype(np.int64)
