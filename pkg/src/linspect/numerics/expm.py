"""Matrix exponential by scaling and squaring with a [13/13] Pade approximant."""
import math

import numpy as np

from ..errors import MatrixOverflowError
from ._checks import as_matrix
from .solve import solve

# Pade [13/13] numerator coefficients (denominator is the same with
# alternating signs) and the 1-norm bound below which no scaling is needed.
_B = (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0, 129060195264000.0, 10559470521600.0,
      670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
      960960.0, 16380.0, 182.0, 1.0)
_THETA13 = 5.371920351148152


def expm(m):
    """Return ``e**m`` for a square matrix.

    >>> expm([[0.0, 1.0], [0.0, 0.0]])
    array([[1., 1.],
           [0., 1.]])
    """
    a = as_matrix(m, square=True)
    n = a.shape[0]
    norm1 = np.max(np.sum(np.abs(a), axis=0))
    s = 0
    if norm1 > _THETA13:
        s = int(math.ceil(math.log2(norm1 / _THETA13)))
        a = a / 2.0**s

    ident = np.eye(n, dtype=a.dtype)
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a4 @ a2
    b = _B
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident)
    r = solve(v - u, v + u)

    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(s):
            r = r @ r
            if not np.all(np.isfinite(r)):
                raise MatrixOverflowError(
                    f"overflow at squaring {i + 1} of {s}")
    return r
