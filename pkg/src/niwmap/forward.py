"""Natural to mean parameters: the gradient of the log partition function."""

import math

import numpy as np

from . import linalg
from .model import MeanParams, natural_to_standard
from .special import digamma_sum

_LOG_2 = math.log(2.0)


def mean_from_natural(e):
    """Expected sufficient statistic of the NIW distribution with naturals ``e``.

    Evaluated in standard coordinates with a single Cholesky factorization
    of ``psi``::

        m1 = -(nu / 2) psi^{-1}
        m2 = nu psi^{-1} mu0
        m3 = -d / (2 lam) - (nu / 2) mu0^T psi^{-1} mu0
        m4 = -logdet(psi) / 2 + (d / 2) log 2 + sum_i digamma((nu - i) / 2) / 2
    """
    p = natural_to_standard(e)
    d = p.dim
    low = linalg.cholesky(p.psi)
    psi_inv = linalg.inverse_factor(low)
    psi_inv_mu0 = linalg.solve_factor(low, p.mu0)
    return MeanParams(
        m1=-0.5 * p.nu * psi_inv,
        m2=p.nu * psi_inv_mu0,
        m3=-0.5 * d / p.lam - 0.5 * p.nu * float(np.dot(p.mu0, psi_inv_mu0)),
        m4=-0.5 * linalg.logdet_factor(low) + 0.5 * d * _LOG_2 + 0.5 * digamma_sum(p.nu, d),
    )
