"""Posterior summaries of a chain: intervals, partitions, predictive draws,
Kaplan-Meier curves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .model import RandomEffect
from .simulate import RejectionCapError, draw_constrained
from .state import Chain


class EmptyChainError(ValueError):
    pass


def _require_samples(chain: Chain):
    if len(chain) == 0:
        raise EmptyChainError("chain holds no samples")


# -- scalar summaries -----------------------------------------------------------

def summarize_scalar(chain: Chain, extractor, level: float = 0.95):
    """Posterior mean and equal-tailed credible interval of ``extractor(state)``.

    Parameters
    ----------
    chain : Chain
    extractor : callable
        Maps a :class:`~recurnum.state.ModelState` to a real number.
    level : float
        Credible level in (0, 1).

    Returns
    -------
    (mean, lower, upper) : tuple of float
    """
    _require_samples(chain)
    if not 0 < level < 1:
        raise ValueError("level must lie in (0, 1)")
    v = np.array([float(extractor(s)) for s in chain.samples])
    lo, hi = np.quantile(v, [(1 - level) / 2, (1 + level) / 2])
    return float(v.mean()), float(lo), float(hi)


def n_events_table(chain: Chain, data: Dataset, level: float = 0.95) -> list[dict]:
    """Per-individual summary of the total event count ``N_i``."""
    _require_samples(chain)
    N = np.array([s.n_events for s in chain.samples], dtype=float)
    lo, hi = np.quantile(N, [(1 - level) / 2, (1 + level) / 2], axis=0)
    mean = N.mean(axis=0)
    return [{"id": ind.id, "mean": float(mean[i]), "lower": float(lo[i]), "upper": float(hi[i]),
             "n_observed": ind.n_events, "censored": not ind.survival_observed}
            for i, ind in enumerate(data)]


def coefficient_table(chain: Chain, level: float = 0.95) -> list[dict]:
    """Summaries of every global parameter and the number of occupied clusters."""
    _require_samples(chain)
    g0 = chain[0].globals
    extractors = [(f"beta[{k}]", lambda s, k=k: s.globals.beta[k]) for k in range(g0.beta.size)]
    extractors += [(f"gamma[{k}]", lambda s, k=k: s.globals.gamma[k]) for k in range(g0.gamma.size)]
    extractors += [(name, lambda s, name=name: getattr(s.globals, name))
                   for name in ("sigma2", "eta2", "r", "lam", "M")]
    extractors.append(("n_clusters", lambda s: s.n_clusters))
    rows = []
    for name, f in extractors:
        mean, lo, hi = summarize_scalar(chain, f, level)
        rows.append({"parameter": name, "mean": mean, "lower": lo, "upper": hi})
    return rows


def cluster_count_distribution(chain: Chain) -> dict:
    """Posterior frequency of each occupied-cluster count."""
    _require_samples(chain)
    k, n = np.unique([s.n_clusters for s in chain.samples], return_counts=True)
    return {int(a): float(b) / len(chain) for a, b in zip(k, n)}


# -- partitions -----------------------------------------------------------------

def canonical_labels(labels) -> np.ndarray:
    """Relabel so clusters are numbered 0, 1, ... in order of first appearance."""
    a = np.asarray(labels)
    if a.size == 0:
        return np.zeros(0, dtype=np.int64)
    _, first, inv = np.unique(a, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(first.size)
    return rank[inv.ravel()]


@dataclass(frozen=True, eq=False)
class Partition:
    """A clustering of individuals with canonical labels."""

    labels: np.ndarray

    def __post_init__(self):
        lab = np.asarray(self.labels, dtype=np.int64)
        if lab.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if not np.array_equal(lab, canonical_labels(lab)):
            raise ValueError("labels are not in canonical first-occurrence order")
        lab = lab.copy()
        lab.flags.writeable = False
        object.__setattr__(self, "labels", lab)

    @classmethod
    def from_labels(cls, labels) -> Partition:
        return cls(canonical_labels(labels))

    @property
    def n_clusters(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_clusters)

    def members(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.labels == k)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    def __hash__(self):
        return hash(self.labels.tobytes())

    def __len__(self):
        return int(self.labels.size)


def _unique_partitions(chain: Chain):
    """Distinct canonical partitions, the sample index where each first occurs,
    and how many samples carry it."""
    _require_samples(chain)
    if chain.L == 0:
        return np.zeros((1, 0), dtype=np.int64), np.zeros(1, dtype=np.int64), np.array([len(chain)])
    P = np.array([canonical_labels(s.assignments) for s in chain.samples], dtype=np.int64)
    P = P.reshape(len(chain), chain.L)
    uniq, first, counts = np.unique(P, axis=0, return_index=True, return_counts=True)
    order = np.argsort(first)
    return uniq[order], first[order], counts[order]


def _comembership(labels: np.ndarray) -> np.ndarray:
    return labels[:, None] == labels[None, :]


def _cocluster_counts(uniq, counts) -> np.ndarray:
    L = uniq.shape[1]
    C = np.zeros((L, L), dtype=np.int64)
    for lab, n in zip(uniq, counts):
        C += n * _comembership(lab)
    return C


def coclustering_matrix(chain: Chain) -> np.ndarray:
    """Posterior probability that each pair of individuals shares a cluster."""
    uniq, _, counts = _unique_partitions(chain)
    return _cocluster_counts(uniq, counts) / float(len(chain))


def binder_loss(labels, coclustering) -> float:
    """Binder's loss with equal costs: ``sum_{i<j} |1(same cluster) - p_ij|``."""
    lab = np.asarray(labels)
    D = np.abs(_comembership(lab) - np.asarray(coclustering, dtype=float))
    return float(np.triu(D, 1).sum())


def binder_partition(chain: Chain) -> Partition:
    """Sampled partition with the smallest Binder loss against the chain's own
    co-clustering probabilities; ties go to the earliest sample."""
    uniq, first, counts = _unique_partitions(chain)
    C = _cocluster_counts(uniq, counts)
    n = len(chain)
    iu = np.triu_indices(chain.L, 1)
    # losses scaled by the sample count are integers, so comparisons are exact
    losses = np.array([np.abs(n * _comembership(lab)[iu] - C[iu]).sum() for lab in uniq])
    best = np.flatnonzero(losses == losses.min())
    winner = best[np.argmin(first[best])]
    return Partition(uniq[winner])


# -- predictive draws -----------------------------------------------------------

def _draw_effects(chain: Chain, n_draws: int, rng):
    """Sample indices and ``(m1, m2, delta)`` rows from the DP predictive."""
    h = chain.hyper
    L = chain.L
    picks = rng.integers(len(chain), size=n_draws)
    out = np.empty((n_draws, 3))
    fresh = np.zeros(n_draws, dtype=bool)
    sd = np.sqrt([h.sigma2_m, h.sigma2_m, h.sigma2_delta])
    for d, s in enumerate(picks):
        state = chain[s]
        M = state.globals.M
        if L == 0 or rng.random() < M / (M + L):
            out[d] = sd * rng.standard_normal(3)
            fresh[d] = True
        else:
            out[d] = state.atoms[state.assignments[rng.integers(L)]]
    return picks, out, fresh


def predictive_random_effect_draws(chain: Chain, n_draws: int, rng) -> list[RandomEffect]:
    """Random effects for a new individual under the DP predictive rule.

    Each draw picks a posterior sample uniformly; with probability
    ``M / (M + L)`` the effect is a fresh draw from the base measure, otherwise
    it is an existing atom chosen with probability proportional to cluster size.
    """
    _require_samples(chain)
    _, eff, _ = _draw_effects(chain, int(n_draws), rng)
    return [RandomEffect(*map(float, row)) for row in eff]


def _draw_count(rng, r, lam, cap):
    while True:
        n = int(rng.negative_binomial(r, r / (r + lam)))
        if cap is None or n <= cap:
            return n


def predictive_outcome_draws(chain: Chain, x_new, n_draws: int, rng,
                             max_attempts: int = 10 ** 6, on_cap: str = "raise") -> list[tuple]:
    """Posterior predictive ``(N, S, log gaps)`` for a new individual with covariates ``x_new``.

    Each draw picks a posterior sample, a random effect by the DP predictive
    rule, ``N`` from the negative binomial, and then ``(Y, S)`` by rejection
    from the constrained joint.

    Parameters
    ----------
    max_attempts : int
        Rejection proposals allowed per draw.
    on_cap : {"raise", "skip"}
        What to do when a draw exhausts ``max_attempts`` (typically a fresh
        base-measure atom with an explosive lag and many events). ``"skip"``
        keeps the draw's ``N``, whose marginal does not depend on the
        constraint, and returns ``S = nan`` and ``None`` for the gaps.

    Raises
    ------
    RejectionCapError
        With ``on_cap="raise"``, when a draw cannot be completed.
    """
    _require_samples(chain)
    if on_cap not in ("raise", "skip"):
        raise ValueError("on_cap must be 'raise' or 'skip'")
    x = np.asarray(x_new, dtype=float).ravel()
    if x.size != chain.q:
        raise ValueError(f"expected {chain.q} covariates, got {x.size}")
    picks, eff, _ = _draw_effects(chain, int(n_draws), rng)
    cap = chain.hyper.max_events
    out = []
    for d, s in enumerate(picks):
        g = chain[s].globals
        m1, m2, delta = eff[d]
        N = _draw_count(rng, g.r, g.lam, cap)
        try:
            y, S, _ = draw_constrained(rng, N, float(x @ g.beta) + m1, m2, g.sigma2,
                                       float(x @ g.gamma) + delta, g.eta2, max_attempts)
        except RejectionCapError as exc:
            if on_cap == "skip":
                out.append((N, float("nan"), None))
                continue
            raise RejectionCapError(
                f"predictive draw {d} (N={N}, m2={m2:.3g}): {exc}") from None
        out.append((N, S, y))
    return out


# -- Kaplan-Meier ----------------------------------------------------------------

def kaplan_meier(times, event_flags):
    """Product-limit survival estimate.

    Returns
    -------
    times : ndarray
        Distinct observed times, ascending.
    survival : ndarray
        Estimated survival probability just after each time.
    """
    t = np.asarray(times, dtype=float).ravel()
    e = np.asarray(event_flags, dtype=bool).ravel()
    if t.size == 0:
        raise ValueError("Kaplan-Meier estimate of an empty sample")
    if t.size != e.size:
        raise ValueError("times and event flags differ in length")
    if not np.all(t > 0):
        raise ValueError("times must be positive")
    uniq, inv = np.unique(t, return_inverse=True)
    deaths = np.bincount(inv, weights=e, minlength=uniq.size)
    leaving = np.bincount(inv, minlength=uniq.size)
    at_risk = t.size - np.concatenate([[0], np.cumsum(leaving)[:-1]])
    return uniq, np.cumprod(1.0 - deaths / at_risk)


def cluster_kaplan_meier(chain: Chain, partition: Partition | None = None,
                         n_largest: int | None = 2) -> dict:
    """Kaplan-Meier curves of survival per cluster of a point partition.

    Each individual contributes ``exp`` of its posterior mean ``log S_i``
    as an uncensored time. Clusters are ranked by size; keys are canonical
    cluster labels.
    """
    _require_samples(chain)
    if partition is None:
        partition = binder_partition(chain)
    log_s = np.mean([np.log(s.survival) for s in chain.samples], axis=0)
    S = np.exp(log_s)
    order = np.argsort(-partition.sizes, kind="stable")
    if n_largest is not None:
        order = order[:n_largest]
    out = {}
    for k in order:
        idx = partition.members(k)
        out[int(k)] = kaplan_meier(S[idx], np.ones(idx.size, dtype=bool))
    return out
