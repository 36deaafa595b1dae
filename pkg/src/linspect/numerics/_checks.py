import numpy as np

from ..errors import DimensionError, ParameterError

EPS = np.finfo(np.float64).eps


def as_matrix(m, *, square=False, complex_ok=True, name="matrix"):
    """Validate ``m`` as a finite, non-empty 2-D float64/complex128 array."""
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionError(f"{name} is empty (shape {arr.shape})")
    if np.iscomplexobj(arr):
        if not complex_ok:
            raise ParameterError(f"{name} must be real")
        arr = arr.astype(np.complex128)
    else:
        arr = arr.astype(np.float64)
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"{name} has non-finite entries")
    return arr
