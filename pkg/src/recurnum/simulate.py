"""Synthetic data from the joint model, with the random-subset censoring scheme."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, Individual
from .model import RandomEffect
from .state import make_rng


class RejectionCapError(RuntimeError):
    pass


def _default_atoms():
    return tuple(RandomEffect(float(h), 0.8 * (h - 2), h + 4.0) for h in (1, 2, 3))


@dataclass(frozen=True)
class SimulationConfig:
    """Generative constants. Defaults reproduce the three-cluster study design:
    150 individuals assigned round-robin to atoms ``m = (h, 0.8(h - 2))``,
    ``delta = h + 4`` for ``h = 1, 2, 3``."""

    L: int = 150
    q: int = 2
    cluster_atoms: tuple = field(default_factory=_default_atoms)
    beta: tuple = (-1.0, 1.0)
    gamma: tuple = (-1.0, 1.0)
    r: float = 1.0
    lam: float = 7.0
    sigma2: float = 1.0
    eta2: float = 1.0
    censor_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.L < 1 or self.q < 1:
            raise ValueError("L and q must be positive")
        atoms = tuple(a if isinstance(a, RandomEffect) else RandomEffect(*a)
                      for a in self.cluster_atoms)
        if not atoms:
            raise ValueError("at least one cluster atom is required")
        object.__setattr__(self, "cluster_atoms", atoms)
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))
        object.__setattr__(self, "gamma", tuple(float(b) for b in self.gamma))
        if len(self.beta) != self.q or len(self.gamma) != self.q:
            raise ValueError("beta and gamma must have length q")
        for name in ("r", "lam", "sigma2", "eta2"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not 0 <= self.censor_rate < 1:
            raise ValueError("censor_rate must lie in [0, 1)")


@dataclass
class GroundTruth:
    """Every latent quantity behind a simulated dataset."""

    covariates: np.ndarray
    cluster: np.ndarray
    n_events: np.ndarray
    log_gaps: list
    survival: np.ndarray
    config: SimulationConfig

    @property
    def L(self) -> int:
        return int(self.cluster.size)

    def event_times(self, i: int) -> np.ndarray:
        return np.cumsum(np.exp(self.log_gaps[i]))

    def dataset(self) -> Dataset:
        """The fully observed dataset (no censoring)."""
        return Dataset(tuple(
            Individual(self.covariates[i], self.event_times(i), self.survival[i], True, str(i + 1))
            for i in range(self.L)), self.config.q)


def draw_constrained(rng, N: int, mu: float, m2: float, sigma2: float, mu_s: float,
                     eta2: float, max_attempts: int = 10 ** 6):
    """Draw ``(log gaps, S)`` from the truncated joint given ``N`` by rejection.

    Candidates are generated in growing batches; the first one satisfying
    ``sum(exp(Y)) <= S`` is returned with the number of attempts used.
    """
    sd, eta = np.sqrt(sigma2), np.sqrt(eta2)
    used = 0
    batch = 16
    while used < max_attempts:
        b = min(batch, max_attempts - used)
        z = np.empty((b, N))
        prev = np.zeros(b)
        for j in range(N):
            prev = (m2 * prev if j else 0.0) + sd * rng.standard_normal(b)
            z[:, j] = prev
        log_s = mu_s + eta * rng.standard_normal(b)
        if N:
            with np.errstate(over="ignore"):
                # sequential sum, matching how event times are reconstructed
                total = np.cumsum(np.exp(mu + z), axis=1)[:, -1]
        else:
            total = np.zeros(b)
        ok = np.flatnonzero(total <= np.exp(log_s))
        if ok.size:
            k = ok[0]
            return mu + z[k], float(np.exp(log_s[k])), used + k + 1
        used += b
        batch = min(batch * 4, 65536)
    raise RejectionCapError(f"no draw satisfied the constraint in {max_attempts} attempts")


def simulate_dataset(config: SimulationConfig, rng=None):
    """Fully observed dataset and ground truth drawn from the model.

    Returns ``(dataset, truth)``; censoring is applied separately by
    :func:`apply_censoring`.
    """
    if rng is None:
        rng = make_rng(config.seed)
    L, q = config.L, config.q
    H = len(config.cluster_atoms)
    beta, gamma = np.array(config.beta), np.array(config.gamma)
    x = rng.uniform(size=(L, q))
    cluster = np.arange(L) % H
    counts = rng.negative_binomial(config.r, config.r / (config.r + config.lam), size=L)
    gaps, S = [], np.empty(L)
    for i in range(L):
        re = config.cluster_atoms[cluster[i]]
        try:
            y, s, _ = draw_constrained(rng, int(counts[i]), x[i] @ beta + re.m1, re.m2,
                                       config.sigma2, x[i] @ gamma + re.delta, config.eta2)
        except RejectionCapError as exc:
            raise RejectionCapError(
                f"individual {i} (N={counts[i]}, cluster {cluster[i]}): {exc}; "
                "acceptance probability below 1e-6") from None
        gaps.append(y)
        S[i] = s
    truth = GroundTruth(x, cluster, counts.astype(np.int64), gaps, S, config)
    return truth.dataset(), truth


def apply_censoring(truth: GroundTruth, rate: float, rng) -> Dataset:
    """Censor exactly ``round(rate * L)`` individuals chosen uniformly at random.

    A censored individual's follow-up ends uniformly in ``(T_1, S)``, or in
    ``(0, S)`` when it has no events; events after that time are dropped.
    """
    if not 0 <= rate < 1:
        raise ValueError("rate must lie in [0, 1)")
    L = truth.L
    k = int(np.floor(rate * L + 0.5))
    chosen = np.zeros(L, dtype=bool)
    chosen[rng.choice(L, size=k, replace=False)] = True
    out = []
    for i in range(L):
        t = truth.event_times(i)
        S = float(truth.survival[i])
        if not chosen[i]:
            out.append(Individual(truth.covariates[i], t, S, True, str(i + 1)))
            continue
        lo = t[0] if t.size else 0.0
        c = rng.uniform(lo, S)
        while not lo < c < S:
            c = rng.uniform(lo, S)
        out.append(Individual(truth.covariates[i], t[t <= c], c, False, str(i + 1)))
    return Dataset(tuple(out), truth.config.q)


def simulate(config: SimulationConfig):
    """Dataset censored at ``config.censor_rate`` plus its ground truth."""
    rng = make_rng(config.seed)
    _, truth = simulate_dataset(config, rng)
    return apply_censoring(truth, config.censor_rate, rng), truth
