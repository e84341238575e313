"""Shared generators and independent reference computations for the tests."""

import math

import numpy as np
from scipy.special import multigammaln
from scipy.stats import ortho_group

from niwmap.model import StandardParams, standard_to_natural


def random_spd(rng, d, max_cond=100.0, scale=None):
    """SPD matrix with condition number at most ``max_cond``."""
    scale = math.exp(rng.uniform(math.log(0.1), math.log(10.0))) if scale is None else scale
    eig = scale * np.exp(rng.uniform(0.0, math.log(max_cond), size=d))
    if d == 1:
        return eig.reshape(1, 1)
    q = ortho_group.rvs(d, random_state=rng)
    s = q @ np.diag(eig) @ q.T
    return 0.5 * (s + s.T)


def random_standard(rng, d, nu_span=30.0):
    """Parameters drawn from the ranges used by the round-trip checks."""
    return StandardParams(
        mu0=rng.uniform(-5.0, 5.0, size=d),
        lam=rng.uniform(0.1, 10.0),
        psi=random_spd(rng, d),
        nu=rng.uniform(d - 1 + 0.1, d + nu_span),
    )


def random_natural(rng, d, nu_span=30.0):
    return standard_to_natural(random_standard(rng, d, nu_span))


def cofactor_det(a):
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a[0, 0]
    return sum((-1) ** j * a[0, j] * cofactor_det(np.delete(a[1:], j, axis=1)) for j in range(n))


def direct_log_pdf(mu, sigma, p):
    """Term-by-term log of the NIW density in standard parameters."""
    d = p.dim
    sign_s, logdet_sigma = np.linalg.slogdet(sigma)
    sign_p, logdet_psi = np.linalg.slogdet(p.psi)
    assert sign_s > 0 and sign_p > 0
    sigma_inv = np.linalg.inv(sigma)
    r = np.asarray(mu) - p.mu0
    return (
        0.5 * d * math.log(p.lam)
        + 0.5 * p.nu * logdet_psi
        - 0.5 * (p.nu + d + 2) * logdet_sigma
        - 0.5 * d * math.log(2 * math.pi)
        - 0.5 * p.nu * d * math.log(2)
        - multigammaln(0.5 * p.nu, d)
        - 0.5 * np.trace(p.psi @ sigma_inv)
        - 0.5 * p.lam * r @ sigma_inv @ r
    )


def max_rel_err(actual, expected):
    actual = np.atleast_1d(np.asarray(actual, dtype=float))
    expected = np.atleast_1d(np.asarray(expected, dtype=float))
    return float(np.max(np.abs(actual - expected) / np.abs(expected)))


def fd_log_partition_gradient(log_partition, e, h=1e-5):
    """Central differences of ``log_partition`` at naturals ``e``.

    ``eta1`` is perturbed along symmetric directions ``E_ij + E_ji``, whose
    directional derivative is twice the ``(i, j)`` gradient entry off the
    diagonal.
    """
    from niwmap.model import NaturalParams

    d = e.dim

    def at(eta1=e.eta1, eta2=e.eta2, eta3=e.eta3, eta4=e.eta4):
        return log_partition(NaturalParams(eta1=eta1, eta2=eta2, eta3=eta3, eta4=eta4))

    g1 = np.zeros((d, d))
    for i in range(d):
        for j in range(i, d):
            direction = np.zeros((d, d))
            direction[i, j] = direction[j, i] = 1.0
            deriv = (at(eta1=e.eta1 + h * direction) - at(eta1=e.eta1 - h * direction)) / (2 * h)
            g1[i, j] = g1[j, i] = deriv if i == j else deriv / 2
    g2 = np.zeros(d)
    for i in range(d):
        step = np.zeros(d)
        step[i] = h
        g2[i] = (at(eta2=e.eta2 + step) - at(eta2=e.eta2 - step)) / (2 * h)
    g3 = (at(eta3=e.eta3 + h) - at(eta3=e.eta3 - h)) / (2 * h)
    g4 = (at(eta4=e.eta4 + h) - at(eta4=e.eta4 - h)) / (2 * h)
    return g1, g2, g3, g4
