"""Input validation helpers shared by the estimators and the functional API."""

import math

import numpy as np

from .exceptions import NormalizationError

#: Allowed deviation of a probability vector's sum from one.
NORMALIZATION_TOL = 1e-9


def check_binary_matrix(B, *, require_nonzero=True):
    """Return ``B`` as a 2-D ``int8`` array, raising if it is not 0/1 valued."""
    arr = np.asarray(B)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got {arr.ndim} dimensions")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"matrix must be non-empty, got shape {arr.shape}")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("matrix entries must be 0 or 1")
    arr = arr.astype(np.int8, copy=False)
    if require_nonzero and not arr.any():
        raise ValueError("matrix has no non-zero entry")
    return arr


def check_weights(weights, n_columns):
    """Return a float weight vector of length ``n_columns`` (default all ones)."""
    if weights is None:
        return np.ones(n_columns, dtype=float)
    w = np.asarray(weights, dtype=float)
    if w.shape != (n_columns,):
        raise ValueError(f"expected {n_columns} weights, got shape {w.shape}")
    if not np.all(np.isfinite(w)) or (w < 0).any():
        raise ValueError("weights must be finite and non-negative")
    return w


def check_probability_vector(p, *, strictly_positive=False, tol=NORMALIZATION_TOL):
    """Validate a discrete distribution and return it as a float array.

    Zeros are allowed unless ``strictly_positive`` is set. The sum is checked
    with :func:`math.fsum` so long vectors do not accumulate rounding drift.
    """
    arr = np.asarray(p, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("distribution is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("distribution contains non-finite values")
    if strictly_positive and (arr <= 0).any():
        raise ValueError("all probabilities must be strictly positive")
    if (arr < 0).any():
        raise ValueError("probabilities must be non-negative")
    total = math.fsum(arr.tolist())
    if abs(total - 1.0) > tol:
        raise NormalizationError(f"distribution sums to {total!r}, not 1 (tol={tol})")
    return arr


def check_rank_vector(v, *, min_length=1):
    """Return a per-rank vector as a 1-D float array of non-negative values."""
    arr = np.asarray(v, dtype=float).ravel()
    if arr.size < min_length:
        raise ValueError(f"vector needs at least {min_length} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector contains non-finite values")
    if (arr < 0).any():
        raise ValueError("per-rank values must be non-negative")
    return arr
