"""Mean to natural parameters.

``mu0``, ``lam`` and ``psi`` follow in closed form once the degrees of
freedom ``nu`` is known. ``nu`` is the unique root on ``(d - 1, inf)`` of::

    f(nu) = logdet(-2 m1) - d log(nu / 2) + sum_{i<d} digamma((nu - i) / 2) - 2 m4

``f`` is strictly increasing and strictly concave there. Newton's method
started from any point with ``f <= 0`` therefore climbs monotonically to the
root without overshooting. A starting point is found by repeatedly halving
the distance from the initial guess to ``d - 1``.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from . import linalg
from .errors import BracketingFailed, DomainError, InvalidParams, NewtonStalled, NoRoot
from .model import StandardParams, standard_to_natural
from .special import digamma_sum, trigamma_sum


@dataclass(frozen=True)
class NuSolverConfig:
    """Settings for :func:`find_nu`.

    ``nu0=None`` means "start at ``d``".
    """

    nu0: Optional[float] = None
    epsilon: float = 1e-10
    max_newton_iters: int = 100
    max_bracket_halvings: int = 200

    def __post_init__(self):
        if not (self.epsilon > 0.0 and math.isfinite(self.epsilon)):
            raise InvalidParams(f"epsilon must be positive, got {self.epsilon!r}")
        if self.nu0 is not None and not math.isfinite(self.nu0):
            raise InvalidParams(f"nu0 must be finite, got {self.nu0!r}")
        if self.max_newton_iters < 1 or self.max_bracket_halvings < 1:
            raise InvalidParams("iteration caps must be positive")

    def start(self, d):
        nu0 = float(d) if self.nu0 is None else float(self.nu0)
        if not nu0 > d - 1:
            raise InvalidParams(f"nu0 must exceed d - 1 = {d - 1}, got {nu0!r}")
        return nu0


@dataclass(frozen=True)
class NuSolveReport:
    nu: float
    bracket_halvings: int
    newton_iters: int
    final_abs_f: float
    # starting point of the Newton phase followed by every Newton iterate
    iterates: Tuple[float, ...] = ()


def f_nu(nu, logdet_neg2m1, m4, d):
    if not nu > d - 1:
        raise DomainError(f"nu must exceed d - 1 = {d - 1}, got {nu!r}")
    return logdet_neg2m1 - d * math.log(0.5 * nu) + digamma_sum(nu, d) - 2.0 * m4


def f_prime_nu(nu, d):
    if not nu > d - 1:
        raise DomainError(f"nu must exceed d - 1 = {d - 1}, got {nu!r}")
    return -d / nu + 0.5 * trigamma_sum(nu, d)


def find_nu(logdet_neg2m1, m4, d, cfg=None):
    """Solve ``f(nu) = 0`` by bracketing followed by Newton-Raphson.

    Parameters
    ----------
    logdet_neg2m1 : float
        ``log|-2 m1|``.
    m4 : float
        Expected ``-log|Sigma| / 2``.
    d : int
        Dimension.
    cfg : NuSolverConfig, optional

    Returns
    -------
    NuSolveReport

    Raises
    ------
    NoRoot
        If ``logdet_neg2m1 <= 2 m4``. Since ``digamma(x) < log(x)``, ``f``
        is bounded above by ``logdet_neg2m1 - 2 m4`` and has no root.
    BracketingFailed, NewtonStalled
        If an iteration cap is hit.
    """
    cfg = cfg or NuSolverConfig()
    if not logdet_neg2m1 - 2.0 * m4 > 0.0:
        raise NoRoot(f"logdet(-2 m1) - 2 m4 = {logdet_neg2m1 - 2.0 * m4!r} is not positive; no root in nu exists")
    lower = d - 1

    def f(x):
        return f_nu(x, logdet_neg2m1, m4, d)

    nu = cfg.start(d)
    fv = f(nu)
    halvings = 0
    while fv > 0.0:
        if halvings >= cfg.max_bracket_halvings:
            raise BracketingFailed(f"f(nu) still positive after {halvings} halvings (nu = {nu!r})")
        nu = lower + 0.5 * (nu - lower)
        halvings += 1
        if not nu > lower:
            raise BracketingFailed("bracketing collapsed onto nu = d - 1")
        fv = f(nu)

    iterates = [nu]
    iters = 0
    while abs(fv) > cfg.epsilon:
        if iters >= cfg.max_newton_iters:
            raise NewtonStalled(f"|f(nu)| = {abs(fv)!r} after {iters} Newton iterations (nu = {nu!r})")
        step = fv / f_prime_nu(nu, d)
        nu -= step
        iters += 1
        fv = f(nu)
        iterates.append(nu)
        # flat f: m4 near its supremum puts the root at very large nu
        if abs(step) <= cfg.epsilon * max(1.0, nu):
            break
    return NuSolveReport(
        nu=nu,
        bracket_halvings=halvings,
        newton_iters=iters,
        final_abs_f=abs(fv),
        iterates=tuple(iterates),
    )


def standard_from_mean(m, cfg=None, full_output=False):
    """Standard parameters whose expected sufficient statistic is ``m``.

    With ``full_output=True`` returns ``(params, report)`` where ``report``
    is the :class:`NuSolveReport` of the degrees-of-freedom solve.
    """
    d = m.dim
    low = linalg.cholesky(-2.0 * m.m1)
    mu0 = linalg.solve_factor(low, m.m2)
    lam = -d / (2.0 * m.m3 + float(m.m2 @ mu0))
    report = find_nu(linalg.logdet_factor(low), m.m4, d, cfg)
    psi = report.nu * linalg.inverse_factor(low)
    p = StandardParams(mu0=mu0, lam=lam, psi=psi, nu=report.nu)
    if full_output:
        return p, report
    return p


def natural_from_mean(m, cfg=None, full_output=False):
    p, report = standard_from_mean(m, cfg, full_output=True)
    e = standard_to_natural(p)
    if full_output:
        return e, report
    return e
