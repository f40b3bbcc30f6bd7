"""Legendre polynomials by the three-term recurrence."""

import numpy as np

from ..errors import NegativeIndexError


def legendre_eval(n, x):
    """
    Evaluate the Legendre polynomial P_n at ``x``.

    P_0 = 1, P_1 = x, P_n = ((2n - 1) x P_{n-1} - (n - 1) P_{n-2}) / n.

    Parameters:
    -----------
    n : int
        Polynomial index, n >= 0
    x : float or numpy.ndarray
        Evaluation point(s)

    Returns:
    --------
    float or numpy.ndarray
        P_n(x), same shape as ``x``
    """
    if n < 0:
        raise NegativeIndexError("Index must be non-negative")
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=np.float64)
    previous = np.ones_like(x)
    if n == 0:
        return float(previous) if scalar else previous
    current = x.copy()
    for k in range(2, n + 1):
        previous, current = current, ((2 * k - 1) * x * current - (k - 1) * previous) / k
    return float(current) if scalar else current


def legendre_basis(x, p):
    """
    Columns ``[P_1(x), ..., P_p(x)]`` for a 1-d array ``x``.

    The constant P_0 is omitted; intercepts are handled by centering.
    """
    if p < 1:
        raise ValueError(f"Truncation limit must be at least 1, got {p}")
    x = np.asarray(x, dtype=np.float64)
    basis = np.empty((x.shape[0], p), dtype=np.float64)
    previous = np.ones_like(x)
    current = x.copy()
    basis[:, 0] = current
    for k in range(2, p + 1):
        previous, current = current, ((2 * k - 1) * x * current - (k - 1) * previous) / k
        basis[:, k - 1] = current
    return basis
