"""Normal-inverse-Wishart parameterizations and exponential-family pieces.

Three immutable parameter sets describe the same NIW distribution:

* :class:`StandardParams` ``(mu0, lam, psi, nu)``, the textbook form;
* :class:`NaturalParams` ``(eta1, eta2, eta3, eta4)`` with
  ``eta1 = psi + lam * mu0 mu0^T``, ``eta2 = lam * mu0``, ``eta3 = lam``,
  ``eta4 = nu``;
* :class:`MeanParams` ``(m1, m2, m3, m4)``, the expected sufficient statistic.

Matrix blocks (``eta1``, ``m1`` and ``s1``) are kept as ``d x d`` arrays, and
inner products pair them by the Frobenius (trace) form, which equals the dot
product of their ``vec`` flattenings.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    InvalidMeanParams,
    InvalidNaturalParams,
    InvalidStandardParams,
    NoRoot,
    NotPositiveDefinite,
)
from .linalg import symmetric, vector
from .special import multivariate_log_gamma

_LOG_2 = math.log(2.0)
_LOG_2PI = math.log(2.0 * math.pi)


def _finite_scalar(x, name, exc):
    x = float(x)
    if not math.isfinite(x):
        raise exc(f"{name} must be finite, got {x!r}")
    return x


@dataclass(frozen=True, eq=False)
class StandardParams:
    mu0: np.ndarray
    lam: float
    psi: np.ndarray
    nu: float

    def __post_init__(self):
        psi = symmetric(self.psi, name="psi")
        d = psi.shape[0]
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "mu0", vector(self.mu0, d, name="mu0"))
        lam = _finite_scalar(self.lam, "lambda", InvalidStandardParams)
        nu = _finite_scalar(self.nu, "nu", InvalidStandardParams)
        if lam <= 0.0:
            raise InvalidStandardParams(f"lambda must be positive, got {lam!r}")
        if nu <= d - 1:
            raise InvalidStandardParams(f"nu must exceed d - 1 = {d - 1}, got {nu!r}")
        if not linalg.is_spd(psi):
            raise InvalidStandardParams("psi must be positive definite")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "nu", nu)

    @property
    def dim(self):
        return self.psi.shape[0]


@dataclass(frozen=True, eq=False)
class NaturalParams:
    eta1: np.ndarray
    eta2: np.ndarray
    eta3: float
    eta4: float

    def __post_init__(self):
        eta1 = symmetric(self.eta1, name="eta1")
        d = eta1.shape[0]
        object.__setattr__(self, "eta1", eta1)
        object.__setattr__(self, "eta2", vector(self.eta2, d, name="eta2"))
        eta3 = _finite_scalar(self.eta3, "eta3", InvalidNaturalParams)
        eta4 = _finite_scalar(self.eta4, "eta4", InvalidNaturalParams)
        if eta3 <= 0.0:
            raise InvalidNaturalParams(f"eta3 must be positive, got {eta3!r}")
        if eta4 <= d - 1:
            raise InvalidNaturalParams(f"eta4 must exceed d - 1 = {d - 1}, got {eta4!r}")
        object.__setattr__(self, "eta3", eta3)
        object.__setattr__(self, "eta4", eta4)
        if not linalg.is_spd(self.psi):
            raise InvalidNaturalParams("eta1 - eta2 eta2^T / eta3 must be positive definite")

    @property
    def dim(self):
        return self.eta1.shape[0]

    @property
    def psi(self):
        """The scale matrix ``eta1 - eta2 eta2^T / eta3``."""
        return self.eta1 - np.outer(self.eta2, self.eta2) / self.eta3


@dataclass(frozen=True, eq=False)
class MeanParams:
    """Expected sufficient statistic ``E[s(mu, Sigma)]``.

    Construction checks the three conditions under which the reverse map has
    a solution: ``-2 m1`` is positive definite, the implied ``lambda`` is
    positive, and ``logdet(-2 m1) > 2 m4``. The last one raises
    :class:`~niwmap.errors.NoRoot` rather than ``InvalidMeanParams``.
    """

    m1: np.ndarray
    m2: np.ndarray
    m3: float
    m4: float

    def __post_init__(self):
        m1 = symmetric(self.m1, name="m1")
        d = m1.shape[0]
        object.__setattr__(self, "m1", m1)
        m2 = vector(self.m2, d, name="m2")
        object.__setattr__(self, "m2", m2)
        m3 = _finite_scalar(self.m3, "m3", InvalidMeanParams)
        m4 = _finite_scalar(self.m4, "m4", InvalidMeanParams)
        object.__setattr__(self, "m3", m3)
        object.__setattr__(self, "m4", m4)
        try:
            low = linalg.cholesky(-2.0 * m1)
        except NotPositiveDefinite:
            raise InvalidMeanParams("m1 must be negative definite") from None
        if not 2.0 * m3 + m2 @ linalg.solve_factor(low, m2) < 0.0:
            raise InvalidMeanParams("2 m3 + m2^T (-2 m1)^{-1} m2 must be negative (lambda > 0)")
        gap = linalg.logdet_factor(low) - 2.0 * m4
        if not gap > 0.0:
            raise NoRoot(f"logdet(-2 m1) - 2 m4 = {gap!r} must be positive for a root in nu to exist")

    @property
    def dim(self):
        return self.m1.shape[0]


@dataclass(frozen=True, eq=False)
class SufficientStats:
    """``(-Sigma^{-1}/2, Sigma^{-1} mu, -mu^T Sigma^{-1} mu / 2, -log|Sigma|/2)``.

    Fields may carry a leading batch axis.
    """

    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray
    s4: np.ndarray


def standard_to_natural(p):
    return NaturalParams(
        eta1=p.psi + p.lam * np.outer(p.mu0, p.mu0),
        eta2=p.lam * p.mu0,
        eta3=p.lam,
        eta4=p.nu,
    )


def natural_to_standard(e):
    return StandardParams(mu0=e.eta2 / e.eta3, lam=e.eta3, psi=e.psi, nu=e.eta4)


def sufficient_statistic(mu, sigma):
    """Sufficient statistic of one ``(mu, sigma)`` pair or a stacked batch.

    ``mu`` has shape ``(..., d)`` and ``sigma`` shape ``(..., d, d)``.
    """
    mu = np.asarray(mu, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim == 2:
        sigma = symmetric(sigma, name="sigma")
        mu = vector(mu, sigma.shape[0], name="mu")
    try:
        low = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("sigma must be positive definite") from None
    if not np.all(np.isfinite(low)):
        raise NotPositiveDefinite("sigma must be positive definite")
    prec = np.linalg.inv(sigma)
    prec = 0.5 * (prec + np.swapaxes(prec, -1, -2))
    s2 = np.einsum("...ij,...j->...i", prec, mu)
    return SufficientStats(
        s1=-0.5 * prec,
        s2=s2,
        s3=-0.5 * np.einsum("...i,...i->...", mu, s2),
        s4=-np.sum(np.log(np.diagonal(low, axis1=-2, axis2=-1)), axis=-1),
    )


def inner_product(e, s):
    """``<eta, s>`` with the Frobenius pairing on the matrix block."""
    return (
        np.einsum("ij,...ij->...", e.eta1, s.s1)
        + np.einsum("i,...i->...", e.eta2, s.s2)
        + e.eta3 * s.s3
        + e.eta4 * s.s4
    )


def log_base_measure(sigma):
    sigma = symmetric(sigma, name="sigma")
    d = sigma.shape[0]
    return -0.5 * (d + 2) * linalg.logdet_spd(sigma)


def log_partition(e):
    """Log partition function evaluated directly in natural coordinates."""
    d = e.dim
    return (
        -0.5 * d * math.log(e.eta3)
        - 0.5 * e.eta4 * linalg.logdet_spd(e.psi)
        + 0.5 * d * _LOG_2PI
        + 0.5 * e.eta4 * d * _LOG_2
        + multivariate_log_gamma(0.5 * e.eta4, d)
    )


def log_partition_standard(p):
    """The same log partition function written in ``(lam, psi, nu)``."""
    d = p.dim
    return (
        -0.5 * d * math.log(p.lam)
        - 0.5 * p.nu * linalg.logdet_spd(p.psi)
        + 0.5 * d * _LOG_2PI
        + 0.5 * p.nu * d * _LOG_2
        + multivariate_log_gamma(0.5 * p.nu, d)
    )


def log_pdf(mu, sigma, e):
    """Log density at ``(mu, sigma)`` as ``<eta, s> + log f - A(eta)``."""
    s = sufficient_statistic(mu, sigma)
    return float(inner_product(e, s)) + log_base_measure(sigma) - log_partition(e)
