"""Densities, priors and the log-normal sum approximation used by the likelihood.

Conditionally on the number of recurrences ``N``, an individual's log gap
times ``Y`` follow a Gaussian AR(1) chain with constant mean
``x'beta + m1`` and lag coefficient ``m2``; the survival time ``S`` is
log-normal with log-scale mean ``x'gamma + delta``. The pair is truncated to
``sum(exp(Y)) <= S``, and the truncation probability is approximated by
matching the first two moments of ``sum(exp(Y))`` with a log-normal.

Gamma and inverse-gamma priors use the shape/rate parameterization.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields

import numpy as np
from scipy.special import gammaln, log_ndtr

from ._kernels import fw_rows

LOG_2PI = float(np.log(2.0 * np.pi))


@dataclass
class Globals:
    """Parameters shared by all individuals."""

    beta: np.ndarray
    gamma: np.ndarray
    sigma2: float = 1.0
    eta2: float = 1.0
    r: float = 1.0
    lam: float = 1.0
    M: float = 1.0

    def __post_init__(self):
        self.beta = np.array(self.beta, dtype=float).reshape(-1)
        self.gamma = np.array(self.gamma, dtype=float).reshape(-1)
        if self.beta.shape != self.gamma.shape:
            raise ValueError("beta and gamma must have the same length")
        for name in ("sigma2", "eta2", "r", "lam", "M"):
            value = float(getattr(self, name))
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive, got {value!r}")
            setattr(self, name, value)

    def copy(self) -> Globals:
        return Globals(self.beta.copy(), self.gamma.copy(), self.sigma2,
                       self.eta2, self.r, self.lam, self.M)

    def __eq__(self, other):
        if not isinstance(other, Globals):
            return NotImplemented
        return (np.array_equal(self.beta, other.beta)
                and np.array_equal(self.gamma, other.gamma)
                and (self.sigma2, self.eta2, self.r, self.lam, self.M)
                == (other.sigma2, other.eta2, other.r, other.lam, other.M))


@dataclass(frozen=True)
class RandomEffect:
    """Individual (or cluster) effects: gap-time level ``m1``, lag ``m2``,
    survival level ``delta``."""

    m1: float = 0.0
    m2: float = 0.0
    delta: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.m1, self.m2, self.delta], dtype=float)


def _default_nu():
    return inverse_gamma_hyper(1.0, 100.0)[0]


def _default_s0():
    return inverse_gamma_hyper(1.0, 100.0)[1]


@dataclass(frozen=True)
class Hyperparams:
    """Fixed prior constants.

    ``max_events`` optionally truncates the negative-binomial count prior
    to ``{0, ..., max_events}``; it exists for validation harnesses and is
    ``None`` in normal use.
    """

    sigma2_beta: float = 100.0
    sigma2_gamma: float = 100.0
    sigma2_m: float = 100.0
    sigma2_delta: float = 100.0
    nu_sigma2: float = field(default_factory=_default_nu)
    sigma2_0: float = field(default_factory=_default_s0)
    nu_eta2: float = field(default_factory=_default_nu)
    eta2_0: float = field(default_factory=_default_s0)
    a_M: float = 1.0
    b_M: float = 1.0
    a_r: float = 1.0
    b_r: float = 1.0
    a_lambda: float = 1.0
    b_lambda: float = 0.1
    max_events: int | None = None

    def __post_init__(self):
        for f in fields(self):
            if f.name == "max_events":
                continue
            value = float(getattr(self, f.name))
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"hyperparameter {f.name} must be positive, got {value!r}")
            object.__setattr__(self, f.name, value)
        if self.max_events is not None:
            if int(self.max_events) < 0:
                raise ValueError("max_events must be nonnegative")
            object.__setattr__(self, "max_events", int(self.max_events))

    def to_dict(self) -> dict:
        return asdict(self)


def inverse_gamma_hyper(mean: float, var: float) -> tuple[float, float]:
    """``(nu, s0sq)`` such that Inv-Gamma(nu/2, nu*s0sq/2) has the given
    mean and variance."""
    if mean <= 0 or var <= 0:
        raise ValueError("mean and variance must be positive")
    shape = mean * mean / var + 2.0
    nu = 2.0 * shape
    s0sq = mean * (shape - 1.0) / shape
    return nu, s0sq


# -- count model --------------------------------------------------------------

def nb_log_pmf(n, r, lam):
    """Negative binomial log-pmf with shape ``r`` and mean ``lam``."""
    n = np.asarray(n, dtype=float)
    out = (gammaln(n + r) - gammaln(r) - gammaln(n + 1.0)
           + r * np.log(r / (r + lam)) + n * np.log(lam / (r + lam)))
    return out if out.ndim else float(out)


def count_log_pmf(n, r, lam, max_events=None):
    """Count prior log-pmf, optionally truncated to ``n <= max_events``."""
    lp = nb_log_pmf(n, r, lam)
    if max_events is None:
        return lp
    support = np.arange(max_events + 1)
    lognorm = np.logaddexp.reduce(nb_log_pmf(support, r, lam))
    lp = np.where(np.asarray(n) <= max_events, lp - lognorm, -np.inf)
    return lp if lp.ndim else float(lp)


# -- gap times and survival ---------------------------------------------------

def loggap_logdensity(Y, x, beta, re: RandomEffect, sigma2: float) -> float:
    """Log-density of the AR(1) log gap-time chain; 0 when there are no gaps."""
    y = np.asarray(Y, dtype=float)
    if y.size == 0:
        return 0.0
    mu = float(np.dot(x, beta)) + re.m1
    u = y - mu
    resid = np.empty_like(u)
    resid[0] = u[0]
    resid[1:] = u[1:] - re.m2 * u[:-1]
    return float(-0.5 * y.size * (LOG_2PI + np.log(sigma2))
                 - 0.5 * np.dot(resid, resid) / sigma2)


def logsurv_logdensity(S: float, x, gamma, re: RandomEffect, eta2: float) -> float:
    """Log-normal log-density of the survival time."""
    if not S > 0:
        raise ValueError(f"survival time must be positive, got {S!r}")
    logs = np.log(S)
    mu_s = float(np.dot(x, gamma)) + re.delta
    return float(-logs - 0.5 * (LOG_2PI + np.log(eta2))
                 - 0.5 * (logs - mu_s) ** 2 / eta2)


# -- Fenton-Wilkinson ---------------------------------------------------------

def fw_table(m2, sigma2: float, nmax: int):
    """Log-normal moment match for the sum of ``n`` AR(1) log-normal gaps.

    Returns ``(shift, s2)`` arrays of shape ``(len(m2), nmax + 1)`` where,
    for a chain with mean ``mu``, the matched log-normal has log-scale mean
    ``mu + shift[:, n]`` and variance ``s2[:, n]``. Column 0 (no gaps) is
    zero and carries no meaning.
    Moments are accumulated in log space, so only a non-finite marginal
    variance yields a non-finite result.
    """
    m2 = np.ascontiguousarray(np.atleast_1d(np.asarray(m2, dtype=float)).ravel())
    nmax = int(nmax)
    shift = np.zeros((m2.size, nmax + 1))
    s2 = np.zeros((m2.size, nmax + 1))
    if nmax >= 1:
        fw_rows(m2, float(sigma2), nmax, shift, s2)
    return shift, s2


def fenton_wilkinson(x, beta, re: RandomEffect, sigma2: float, N: int) -> tuple[float, float]:
    """Log-normal ``(muT, s2T)`` matching the first two moments of
    ``T_N = sum_j exp(Y_j)`` under the AR(1) gap-time law."""
    N = int(N)
    if N < 1:
        raise ValueError("N must be at least 1")
    mu = float(np.dot(x, beta)) + re.m1
    shift, s2 = fw_table(re.m2, sigma2, N)
    muT, s2T = mu + shift[0, N], s2[0, N]
    if not (np.isfinite(muT) and np.isfinite(s2T)):
        raise OverflowError(
            f"moments of the gap-time sum overflow (N={N}, m2={re.m2!r}, sigma2={sigma2!r})")
    return float(muT), float(s2T)


def log_normconst(x, beta, gamma, re: RandomEffect, sigma2: float, eta2: float, N: int) -> float:
    """Approximate log-probability that ``T_N <= S`` under the untruncated law."""
    if N == 0:
        return 0.0
    muT, s2T = fenton_wilkinson(x, beta, re, sigma2, N)
    mu_s = float(np.dot(x, gamma)) + re.delta
    return float(log_ndtr((mu_s - muT) / np.sqrt(s2T + eta2)))


def log_joint(Y, S: float, x, globals: Globals, re: RandomEffect, N: int) -> float:
    """Truncated joint log-density of ``(Y, S)`` given ``N``."""
    y = np.asarray(Y, dtype=float)
    if y.size != N:
        raise ValueError(f"expected {N} log gaps, got {y.size}")
    if N > 0 and np.sum(np.exp(y)) > S:
        return -np.inf
    return (loggap_logdensity(y, x, globals.beta, re, globals.sigma2)
            + logsurv_logdensity(S, x, globals.gamma, re, globals.eta2)
            - log_normconst(x, globals.beta, globals.gamma, re, globals.sigma2,
                            globals.eta2, N))


# -- priors ---------------------------------------------------------------------

def normal_logpdf(x, var):
    x = np.asarray(x, dtype=float)
    return -0.5 * (LOG_2PI + np.log(var)) - 0.5 * x * x / var


def gamma_logpdf(x, shape, rate):
    return shape * np.log(rate) - gammaln(shape) + (shape - 1.0) * np.log(x) - rate * x


def inv_gamma_logpdf(x, shape, scale):
    return shape * np.log(scale) - gammaln(shape) - (shape + 1.0) * np.log(x) - scale / x


def log_prior(globals: Globals, hyper: Hyperparams) -> float:
    """Joint prior log-density of the global parameters."""
    h = hyper
    lp = float(np.sum(normal_logpdf(globals.beta, h.sigma2_beta)))
    lp += float(np.sum(normal_logpdf(globals.gamma, h.sigma2_gamma)))
    lp += inv_gamma_logpdf(globals.sigma2, h.nu_sigma2 / 2, h.nu_sigma2 * h.sigma2_0 / 2)
    lp += inv_gamma_logpdf(globals.eta2, h.nu_eta2 / 2, h.nu_eta2 * h.eta2_0 / 2)
    lp += gamma_logpdf(globals.r, h.a_r, h.b_r)
    lp += gamma_logpdf(globals.lam, h.a_lambda, h.b_lambda)
    lp += gamma_logpdf(globals.M, h.a_M, h.b_M)
    return float(lp)


def base_measure_logpdf(atoms, hyper: Hyperparams):
    """Log-density of the DP base measure at rows ``(m1, m2, delta)``."""
    a = np.asarray(atoms, dtype=float)
    return (normal_logpdf(a[..., 0], hyper.sigma2_m)
            + normal_logpdf(a[..., 1], hyper.sigma2_m)
            + normal_logpdf(a[..., 2], hyper.sigma2_delta))
