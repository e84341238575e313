"""Small dense symmetric linear algebra.

Symmetric matrices are plain ``float64`` arrays of shape ``(d, d)`` that have
passed through :func:`symmetric` or :func:`unvec`; the result is exactly
symmetric and marked read-only. ``vec`` is row-major flattening, which
coincides with column-major flattening for symmetric input.
"""

import numpy as np
import scipy.linalg

from .errors import DimensionError, InvalidParams, NotPositiveDefinite

# relative asymmetry tolerated (and averaged away) by ``symmetric``
ASYMMETRY_RTOL = 1e-6


def _freeze(a):
    a.setflags(write=False)
    return a


def vector(v, d=None, name="vector"):
    """Validate a finite real vector, optionally of length ``d``."""
    if np.ndim(v) > 1:
        raise DimensionError(f"{name} must be one-dimensional")
    v = np.array(v, dtype=float).reshape(-1)
    if d is not None and v.shape[0] != d:
        raise DimensionError(f"{name} has length {v.shape[0]}, expected {d}")
    if not np.all(np.isfinite(v)):
        raise InvalidParams(f"{name} has non-finite entries")
    return _freeze(v)


def symmetric(x, d=None, name="matrix"):
    """Return ``x`` as a validated, exactly symmetric read-only matrix.

    Scalars are promoted to ``1 x 1``. Asymmetry up to a relative
    ``ASYMMETRY_RTOL`` is removed by averaging with the transpose; anything
    larger is rejected.
    """
    a = np.array(x, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    if d is not None and a.shape[0] != d:
        raise DimensionError(f"{name} is {a.shape[0]}x{a.shape[0]}, expected {d}x{d}")
    if not np.all(np.isfinite(a)):
        raise InvalidParams(f"{name} has non-finite entries")
    scale = np.max(np.abs(a)) if a.size else 0.0
    if np.max(np.abs(a - a.T)) > ASYMMETRY_RTOL * scale:
        raise InvalidParams(f"{name} is not symmetric")
    return _freeze((a + a.T) / 2.0)


def vec(s):
    return np.asarray(s, dtype=float).reshape(-1).copy()


def unvec(v, d):
    """Inverse of :func:`vec`: reshape a length ``d**2`` vector to ``(X + X^T) / 2``.

    Unlike :func:`symmetric` this never rejects asymmetric input.
    """
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape[0] != d * d:
        raise DimensionError(f"expected {d * d} entries for a {d}x{d} matrix, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise InvalidParams("matrix has non-finite entries")
    x = v.reshape(d, d)
    return _freeze((x + x.T) / 2.0)


def cholesky(s):
    """Lower Cholesky factor of ``s``.

    Success is the operational definition of positive definiteness used
    throughout the package.

    Raises
    ------
    NotPositiveDefinite
        If a pivot is non-positive or non-finite.
    """
    s = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(s)):
        raise NotPositiveDefinite("matrix has non-finite entries")
    try:
        low = np.linalg.cholesky(s)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("matrix is not positive definite") from None
    diag = np.diag(low)
    if not np.all(np.isfinite(low)) or np.any(diag <= 0.0):
        raise NotPositiveDefinite("matrix is not positive definite")
    return low


def is_spd(s):
    try:
        cholesky(s)
    except NotPositiveDefinite:
        return False
    return True


def logdet_spd(s):
    return logdet_factor(cholesky(s))


def solve_spd(s, b):
    """Solve ``s @ x = b`` by Cholesky forward/back substitution."""
    return solve_factor(cholesky(s), b)


def inverse_spd(s):
    return inverse_factor(cholesky(s))


# the *_factor variants reuse a lower Cholesky factor from ``cholesky``


def logdet_factor(low):
    return 2.0 * float(np.sum(np.log(np.diag(low))))


def solve_factor(low, b):
    b = np.asarray(b, dtype=float)
    if b.shape[0] != low.shape[0]:
        raise DimensionError(f"right-hand side has length {b.shape[0]}, expected {low.shape[0]}")
    return scipy.linalg.cho_solve((low, True), b)


def inverse_factor(low):
    inv = scipy.linalg.cho_solve((low, True), np.eye(low.shape[0]))
    return _freeze((inv + inv.T) / 2.0)
