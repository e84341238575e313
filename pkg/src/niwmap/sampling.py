"""NIW sampling, used as an independent Monte Carlo check on the forward map.

Random streams are ``numpy.random.Generator`` instances over the PCG64 bit
generator. Normal variates come from numpy's ziggurat sampler and chi-square
variates from its Marsaglia-Tsang gamma sampler, so a given seed reproduces
the same draws on every platform for a fixed numpy version.

A batch of ``n`` draws consumes the stream block-wise (all chi-square
diagonals, then all Bartlett sub-diagonal normals, then all location
normals), so it is not the same as ``n`` successive single draws.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import InvalidParams
from .model import SufficientStats, sufficient_statistic


def random_source(seed):
    """Deterministic random stream for a 64-bit integer seed."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def _bartlett_factor(low, nu, rng, n):
    # low @ A for W = (low A)(low A)^T ~ Wishart(low low^T, nu), A lower-triangular
    d = low.shape[0]
    a = np.zeros((n, d, d))
    idx = np.arange(d)
    a[:, idx, idx] = np.sqrt(rng.chisquare(nu - idx, size=(n, d)))
    rows, cols = np.tril_indices(d, -1)
    a[:, rows, cols] = rng.standard_normal(size=(n, rows.size))
    return low @ a


def sample_inverse_wishart(psi, nu, rng, size=None):
    """Draw ``Sigma ~ InverseWishart(psi, nu)``.

    Draws ``W ~ Wishart(psi^{-1}, nu)`` by the Bartlett decomposition and
    returns ``W^{-1}``; valid for any real ``nu > d - 1``.
    """
    psi = linalg.symmetric(psi, name="psi")
    d = psi.shape[0]
    if not nu > d - 1:
        raise InvalidParams(f"nu must exceed d - 1 = {d - 1}, got {nu!r}")
    low = linalg.cholesky(linalg.inverse_spd(psi))
    n = 1 if size is None else int(size)
    b_inv = np.linalg.inv(_bartlett_factor(low, nu, rng, n))
    sigma = np.swapaxes(b_inv, -1, -2) @ b_inv
    sigma = 0.5 * (sigma + np.swapaxes(sigma, -1, -2))
    return sigma[0] if size is None else sigma


def sample_niw(p, rng, size=None):
    """Draw ``(mu, Sigma)`` with ``Sigma ~ IW(psi, nu)``, ``mu | Sigma ~ N(mu0, Sigma / lam)``."""
    n = 1 if size is None else int(size)
    sigma = sample_inverse_wishart(p.psi, p.nu, rng, size=n)
    z = rng.standard_normal(size=(n, p.dim))
    chol = np.linalg.cholesky(sigma / p.lam)
    mu = p.mu0 + np.einsum("nij,nj->ni", chol, z)
    if size is None:
        return mu[0], sigma[0]
    return mu, sigma


@dataclass(frozen=True, eq=False)
class MomentEstimate:
    mean: SufficientStats
    standard_error: SufficientStats
    n_samples: int


def mc_mean_sufficient_stats(p, n, rng):
    """Monte Carlo estimate of the expected sufficient statistic under ``p``."""
    if n < 2:
        raise InvalidParams(f"need at least 2 samples, got {n}")
    mu, sigma = sample_niw(p, rng, size=n)
    s = sufficient_statistic(mu, sigma)
    fields = ("s1", "s2", "s3", "s4")
    mean = {k: np.mean(getattr(s, k), axis=0) for k in fields}
    se = {k: np.std(getattr(s, k), axis=0, ddof=1) / np.sqrt(n) for k in fields}
    return MomentEstimate(mean=SufficientStats(**mean), standard_error=SufficientStats(**se), n_samples=n)
