"""Transdimensional Gibbs sampler.

One sweep updates, in order: the censored individuals' latent counts, tail
gaps and survival times (birth/death/refresh moves); the DP partition and
cluster atoms (Neal's Algorithm 8 followed by slice updates of every atom);
the DP concentration; the global parameters (univariate slice updates).

Per-individual likelihood evaluations use sufficient statistics of the log
gap vector, which make the AR(1) quadratic form a polynomial in the level
and lag, and per-cluster tables of the log-normal moment match (which
depends on the level only through a shift).
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr, ndtri_exp

from ._kernels import loglik as _loglik

from .data import Dataset
from .model import (Globals, Hyperparams, count_log_pmf, fw_table, gamma_logpdf, inv_gamma_logpdf,
                    normal_logpdf)
from .slice import SliceSamplingError, slice_step
from .state import Chain, ModelState, SamplerConfig, make_rng

log = logging.getLogger(__name__)

# Latent log gaps are kept where exp(y) is a positive, finite, normal float.
# Beyond this range gaps collapse to 0 or inf, and the AR(1) power sums lose
# all precision (the quadratic form can even come out negative).
_LOG_FLOAT_MAX = math.log(np.finfo(float).max)
_LOG_FLOAT_TINY = math.log(np.finfo(float).tiny)


class SamplerError(RuntimeError):
    pass


# -- likelihood kernels ---------------------------------------------------------

def gap_stats(y: np.ndarray) -> tuple:
    """Sufficient statistics of a log gap vector for the AR(1) quadratic form."""
    if y.size == 0:
        return 0.0, 0.0, 0.0, 0.0, 0.0, 0.0
    cur, prev = y[1:], y[:-1]
    return (float(y[0]), float(cur @ cur), float(cur.sum()),
            float(prev @ prev), float(prev.sum()), float(cur @ prev))


def loglik_core(N, log_s, y1, a_cur, b_cur, a_prev, b_prev, cross,
                mu, mu_s, m2, shift, s2, sigma2, eta2):
    """Vectorized truncated joint log-density; arguments broadcast.

    ``mu`` and ``mu_s`` are the gap and survival log-scale means, ``shift``
    and ``s2`` the moment-match table entries for ``N``. The constraint
    indicator is assumed to hold.
    """
    return _loglik(N, log_s, y1, a_cur, b_cur, a_prev, b_prev, cross,
                   mu, mu_s, m2, shift, s2, sigma2, eta2)


class _Latent:
    """Per-individual arrays derived from the latent state."""

    def __init__(self, L):
        self.N = np.zeros(L, dtype=np.int64)
        self.S = np.ones(L)
        self.log_s = np.zeros(L)
        self.stats = np.zeros((6, L))

    def set(self, i, y, S):
        self.N[i] = y.size
        self.S[i] = S
        self.log_s[i] = math.log(S)
        self.stats[:, i] = gap_stats(y)

    def args(self, idx=slice(None)):
        st = self.stats
        return (self.N[idx], self.log_s[idx], st[0, idx], st[1, idx], st[2, idx],
                st[3, idx], st[4, idx], st[5, idx])


class _Tables:
    """Moment-match tables, one row per cluster, for the current sigma2."""

    def __init__(self, m2, sigma2, nmax):
        self.sigma2 = sigma2
        self.nmax = max(int(nmax), 1)
        self.shift, self.s2 = fw_table(m2, sigma2, self.nmax)

    def ensure(self, atoms, n):
        if n > self.nmax:
            self.nmax = max(n, 2 * self.nmax)
            self.shift, self.s2 = fw_table(atoms[:, 1], self.sigma2, self.nmax)

    def set_row(self, k, m2):
        shift, s2 = fw_table(m2, self.sigma2, self.nmax)
        self.shift[k], self.s2[k] = shift[0], s2[0]

    def append(self, m2):
        shift, s2 = fw_table(m2, self.sigma2, self.nmax)
        self.shift = np.vstack([self.shift, shift])
        self.s2 = np.vstack([self.s2, s2])

    def delete(self, k):
        self.shift = np.delete(self.shift, k, axis=0)
        self.s2 = np.delete(self.s2, k, axis=0)


@dataclass
class SweepStats:
    """Move counters accumulated across sweeps."""

    births_proposed: int = 0
    births_accepted: int = 0
    deaths_proposed: int = 0
    deaths_accepted: int = 0
    refreshes: int = 0
    new_clusters: int = 0

    @property
    def birth_rate(self) -> float:
        return self.births_accepted / self.births_proposed if self.births_proposed else float("nan")

    @property
    def death_rate(self) -> float:
        return self.deaths_accepted / self.deaths_proposed if self.deaths_proposed else float("nan")


# -- the sampler ----------------------------------------------------------------

class GibbsSampler:
    """Holds the data-dependent constants for repeated sweeps over one dataset."""

    def __init__(self, data: Dataset, hyper: Hyperparams, config: SamplerConfig | None = None):
        self.data = data
        self.hyper = hyper
        self.config = config if config is not None else SamplerConfig()
        self.L = data.L
        self.X = data.covariate_matrix
        self.n_obs = data.n_events
        self.censored = data.censored
        self.censored_idx = np.flatnonzero(self.censored)
        self.c = data.censor_times
        self.obs_gaps = [ind.log_gaps for ind in data]
        self.t_obs = np.array([ind.event_times[-1] if ind.n_events else 0.0 for ind in data])
        self.stats = SweepStats()
        self._base = _Latent(self.L)
        for i in range(self.L):
            if not self.censored[i]:
                self._base.set(i, self.obs_gaps[i], self.c[i])

    # ---- state helpers

    def initial_state(self) -> ModelState:
        L, q = self.L, self.data.q
        lam = float(self.n_obs.mean()) + 1.0 if L else 1.0
        globals_ = Globals(np.zeros(q), np.zeros(q), 1.0, 1.0, 1.0, lam, 1.0)
        S = np.where(self.censored, np.maximum(self.c, self.t_obs) * 1.5, self.c)
        atoms = np.zeros((1 if L else 0, 3))
        return ModelState(globals_, np.zeros(L, dtype=np.int64), atoms,
                          self.n_obs.copy(), S, [np.empty(0) for _ in range(L)])

    def latent(self, state: ModelState) -> _Latent:
        lat = _Latent(self.L)
        lat.N[:] = self._base.N
        lat.S[:] = self._base.S
        lat.log_s[:] = self._base.log_s
        lat.stats[:] = self._base.stats
        for i in self.censored_idx:
            lat.set(i, self._gaps(state, i), state.survival[i])
        return lat

    def _gaps(self, state, i):
        tail = state.tails[i]
        return np.concatenate([self.obs_gaps[i], tail]) if tail.size else self.obs_gaps[i]

    def tables(self, state: ModelState, lat: _Latent) -> _Tables:
        nmax = int(lat.N.max()) + 1 if self.L else 1
        return _Tables(state.atoms[:, 1], state.globals.sigma2, nmax)

    def _slice(self, target, x0, name, logp0=None, width=None):
        try:
            return slice_step(target, x0, width or self.config.slice_width,
                              self.config.slice_max_steps, self._rng, logp0=logp0)
        except SliceSamplingError as exc:
            raise SliceSamplingError(f"{name}: {exc}") from exc

    # ---- full sweep

    def sweep(self, state: ModelState, rng: np.random.Generator) -> ModelState:
        lat = self.update_censored_latents(state, rng)
        tables = self.update_random_effects(state, rng, lat)
        self.update_concentration(state, rng)
        self.update_globals(state, rng, lat, tables)
        return state

    # ---- censored latents

    def update_censored_latents(self, state: ModelState, rng, lat: _Latent | None = None) -> _Latent:
        """One birth, death or refresh move per censored individual."""
        self._rng = rng
        if lat is None:
            lat = self.latent(state)
        if self.censored_idx.size == 0:
            return lat
        g = state.globals
        tables = self.tables(state, lat)
        p_birth, p_death, _ = self.config.rj_move_probs
        log_bd = math.log(p_death / p_birth) if p_birth > 0 else 0.0
        cap = self.hyper.max_events
        sd = math.sqrt(g.sigma2)
        eta = math.sqrt(g.eta2)
        xb = self.X @ g.beta
        xg = self.X @ g.gamma
        r, lam = g.r, g.lam
        log_q = math.log(lam / (r + lam))

        def log_const(k, mu, mu_s, n):
            if n == 0:
                return 0.0
            tables.ensure(state.atoms, n)
            return float(log_ndtr((mu_s - mu - tables.shift[k, n])
                                  / math.sqrt(tables.s2[k, n] + g.eta2)))

        for i in self.censored_idx:
            k = state.assignments[i]
            m1, m2, delta = state.atoms[k]
            mu = xb[i] + m1
            mu_s = xg[i] + delta
            n = int(self.n_obs[i])
            c = self.c[i]
            tail = state.tails[i]
            N = n + tail.size
            S = float(state.survival[i])
            t_last = self.t_obs[i] + (float(np.exp(tail).sum()) if tail.size else 0.0)
            u = rng.random()
            if u < p_birth:
                self.stats.births_proposed += 1
                prev = tail[-1] if tail.size else (self.obs_gaps[i][-1] if n else None)
                mean = mu if prev is None else mu + m2 * (prev - mu)
                y_new = mean + sd * rng.standard_normal()
                # a gap too long to represent can never fit before S
                t_new = t_last + math.exp(y_new) if y_new < _LOG_FLOAT_MAX else math.inf
                log_u = math.log(rng.random())
                if y_new > _LOG_FLOAT_TINY and t_new <= S and (N > n or t_new > c) and (cap is None or N + 1 <= cap):
                    log_a = (math.log((N + r) / (N + 1)) + log_q
                             + log_const(k, mu, mu_s, N) - log_const(k, mu, mu_s, N + 1) + log_bd)
                    if log_u < log_a:
                        state.tails[i] = np.append(tail, y_new)
                        self.stats.births_accepted += 1
            elif u < p_birth + p_death:
                self.stats.deaths_proposed += 1
                log_u = math.log(rng.random())
                if N > n:
                    log_a = (math.log(N / (N - 1 + r)) - log_q
                             + log_const(k, mu, mu_s, N) - log_const(k, mu, mu_s, N - 1) - log_bd)
                    if log_u < log_a:
                        state.tails[i] = tail[:-1].copy()
                        self.stats.deaths_accepted += 1
            else:
                self.stats.refreshes += 1
                S = self._draw_survival(rng, mu_s, eta, max(c, t_last), c, t_last)
                state.survival[i] = S
                if tail.size:
                    state.tails[i] = self._refresh_tail(i, tail, S, mu, m2, g.sigma2)
            new_tail = state.tails[i]
            state.n_events[i] = n + new_tail.size
            lat.set(i, np.concatenate([self.obs_gaps[i], new_tail]), state.survival[i])
        return lat

    @staticmethod
    def _draw_survival(rng, mu_s, eta, lower, c, t_last):
        z_lo = (math.log(lower) - mu_s) / eta
        log_tail = float(log_ndtr(-z_lo))
        for _ in range(100):
            z = -float(ndtri_exp(math.log(rng.random()) + log_tail))
            S = math.exp(mu_s + eta * z)
            if S > c and S >= t_last:
                return S
        raise SamplerError(f"could not draw a survival time beyond {lower!r}")

    def _refresh_tail(self, i, tail, S, mu, m2, sigma2):
        y = np.concatenate([self.obs_gaps[i], tail])
        n = int(self.n_obs[i])
        N = y.size
        c = self.c[i]
        t_obs = self.t_obs[i]
        e = np.exp(tail)
        inv2s = 0.5 / sigma2
        for j in range(n, N):
            cur = y[j]
            rest = t_obs + (e.sum() - e[j - n])
            room = S - rest
            upper = math.log(room) if room > 0 else cur
            upper = max(upper, cur)
            lower = _LOG_FLOAT_TINY
            if j == n and c > t_obs:
                lower = max(lower, math.log(c - t_obs))
                if not cur > lower:
                    lower = math.nextafter(cur, -math.inf)
            prev = y[j - 1] - mu if j > 0 else None
            nxt = y[j + 1] - mu if j + 1 < N else None

            def target(v, prev=prev, nxt=nxt, lower=lower, upper=upper):
                if v > upper or v <= lower:
                    return -math.inf
                d = v - mu
                r1 = d if prev is None else d - m2 * prev
                out = -r1 * r1 * inv2s
                if nxt is not None:
                    r2 = nxt - m2 * d
                    out -= r2 * r2 * inv2s
                return out

            v, _ = self._slice(target, cur, f"tail gap {j} of individual {i}")
            y[j] = v
            e[j - n] = math.exp(v)
        return y[n:].copy()

    # ---- DP partition and atoms

    def update_random_effects(self, state: ModelState, rng, lat: _Latent | None = None) -> _Tables:
        """Algorithm-8 reassignment sweep followed by slice updates of every atom."""
        self._rng = rng
        if lat is None:
            lat = self.latent(state)
        h = self.hyper
        g = state.globals
        if self.L == 0:
            state.atoms = np.zeros((0, 3))
            return _Tables(np.zeros(0), g.sigma2, 1)
        tables = self.tables(state, lat)
        m_aux = self.config.aux_components
        log_aux = math.log(g.M / m_aux)
        sd_m, sd_d = math.sqrt(h.sigma2_m), math.sqrt(h.sigma2_delta)
        xb = self.X @ g.beta
        xg = self.X @ g.gamma
        a = state.assignments
        atoms = state.atoms
        counts = np.bincount(a, minlength=atoms.shape[0])

        aux_all = rng.standard_normal((self.L, m_aux, 3)) * np.array([sd_m, sd_m, sd_d])
        log_aux_w = np.full(m_aux, log_aux)
        for i in range(self.L):
            k = a[i]
            counts[k] -= 1
            aux = aux_all[i]
            if counts[k] == 0:
                aux[0] = atoms[k]
                atoms = np.delete(atoms, k, axis=0)
                counts = np.delete(counts, k)
                tables.delete(k)
                a[a > k] -= 1
            a[i] = -1
            K = atoms.shape[0]
            N = int(lat.N[i])
            if N > 0:
                aux_shift, aux_s2 = fw_table(aux[:, 1], g.sigma2, N)
                ll_old = _member_loglik(lat, i, atoms, tables.shift[:, N], tables.s2[:, N],
                                        xb[i], xg[i], g)
                ll_aux = _member_loglik(lat, i, aux, aux_shift[:, N], aux_s2[:, N],
                                        xb[i], xg[i], g)
            else:
                ll_old = _member_loglik(lat, i, atoms, 0.0, 0.0, xb[i], xg[i], g)
                ll_aux = _member_loglik(lat, i, aux, 0.0, 0.0, xb[i], xg[i], g)
            with np.errstate(divide="ignore"):
                logw = np.concatenate([np.log(counts) + ll_old, log_aux_w + ll_aux])
            top = logw.max()
            if not np.isfinite(top):
                raise SamplerError(f"individual {i} has zero likelihood under every candidate atom")
            w = np.exp(logw - top)
            cw = np.cumsum(w)
            j = min(int(np.searchsorted(cw, rng.random() * cw[-1], side="right")), K + m_aux - 1)
            if j < K:
                a[i] = j
                counts[j] += 1
            else:
                atoms = np.vstack([atoms, aux[j - K]])
                counts = np.append(counts, 1)
                tables.append(aux[j - K, 1])
                a[i] = K
                self.stats.new_clusters += 1
        state.atoms = atoms

        members = [np.flatnonzero(a == k) for k in range(atoms.shape[0])]
        for k, idx in enumerate(members):
            self._update_atom(state, k, idx, lat, tables, xb, xg)
        return tables

    def _update_atom(self, state, k, idx, lat, tables, xb, xg):
        h = self.hyper
        g = state.globals
        atom = state.atoms[k]
        args = lat.args(idx)
        N = lat.N[idx]
        nmax = int(N.max())
        xb_i, xg_i = xb[idx], xg[idx]

        def ll(m1, m2, delta, shift, s2):
            return float(_cluster_loglik(args, xb_i + m1, xg_i + delta, m2, shift, s2, g))

        shift, s2 = tables.shift[k, N], tables.s2[k, N]
        m1, m2, delta = atom

        def t_m1(v):
            return float(normal_logpdf(v, h.sigma2_m)) + ll(v, m2, delta, shift, s2)

        m1, _ = self._slice(t_m1, m1, f"atom {k} m1")

        def t_m2(v):
            sh, ss = fw_table(v, g.sigma2, nmax)
            return float(normal_logpdf(v, h.sigma2_m)) + ll(m1, v, delta, sh[0, N], ss[0, N])

        m2, _ = self._slice(t_m2, m2, f"atom {k} m2")
        tables.set_row(k, m2)
        shift, s2 = tables.shift[k, N], tables.s2[k, N]

        def t_delta(v):
            return float(normal_logpdf(v, h.sigma2_delta)) + ll(m1, m2, v, shift, s2)

        delta, _ = self._slice(t_delta, delta, f"atom {k} delta")
        state.atoms[k] = (m1, m2, delta)

    # ---- concentration

    def update_concentration(self, state: ModelState, rng) -> ModelState:
        return update_concentration(state, self.hyper, rng, self.L)

    # ---- globals

    def update_globals(self, state: ModelState, rng, lat: _Latent | None = None,
                       tables: _Tables | None = None) -> ModelState:
        """Univariate slice updates of beta, gamma, log sigma2, log eta2, log r, log lambda."""
        self._rng = rng
        if lat is None:
            lat = self.latent(state)
        if tables is None:
            tables = self.tables(state, lat)
        h = self.hyper
        g = state.globals
        X = self.X
        a = state.assignments
        atoms = state.atoms
        args = lat.args()
        N = lat.N
        if self.L:
            m1, m2, delta = atoms[a, 0], atoms[a, 1], atoms[a, 2]
            shift, s2 = tables.shift[a, N], tables.s2[a, N]
        else:
            m1 = m2 = delta = shift = s2 = np.zeros(0)
        mu = X @ g.beta + m1
        mu_s = X @ g.gamma + delta

        def total(mu_, mu_s_, shift_, s2_, sigma2, eta2):
            if not self.L:
                return 0.0
            return float(_loglik(*args, mu_, mu_s_, m2, shift_, s2_, sigma2, eta2).sum())

        for j in range(self.data.q):
            base = mu - X[:, j] * g.beta[j]

            def t_beta(v):
                return float(normal_logpdf(v, h.sigma2_beta)) + total(
                    base + X[:, j] * v, mu_s, shift, s2, g.sigma2, g.eta2)

            g.beta[j], _ = self._slice(t_beta, g.beta[j], f"beta[{j}]")
            mu = base + X[:, j] * g.beta[j]

        for j in range(self.data.q):
            base = mu_s - X[:, j] * g.gamma[j]

            def t_gamma(v):
                return float(normal_logpdf(v, h.sigma2_gamma)) + total(
                    mu, base + X[:, j] * v, shift, s2, g.sigma2, g.eta2)

            g.gamma[j], _ = self._slice(t_gamma, g.gamma[j], f"gamma[{j}]")
            mu_s = base + X[:, j] * g.gamma[j]

        nmax = tables.nmax
        m2_atoms = atoms[:, 1]
        a_s, b_s = h.nu_sigma2 / 2, h.nu_sigma2 * h.sigma2_0 / 2

        def t_sigma2(t):
            s = math.exp(t)
            if not 0 < s < math.inf:
                return -math.inf
            if self.L:
                sh, ss = fw_table(m2_atoms, s, nmax)
                ll = total(mu, mu_s, sh[a, N], ss[a, N], s, g.eta2)
            else:
                ll = 0.0
            return inv_gamma_logpdf(s, a_s, b_s) + t + ll

        t, _ = self._slice(t_sigma2, math.log(g.sigma2), "log sigma2")
        g.sigma2 = math.exp(t)
        tables = _Tables(m2_atoms, g.sigma2, nmax)
        if self.L:
            shift, s2 = tables.shift[a, N], tables.s2[a, N]

        a_e, b_e = h.nu_eta2 / 2, h.nu_eta2 * h.eta2_0 / 2

        def t_eta2(t):
            e = math.exp(t)
            if not 0 < e < math.inf:
                return -math.inf
            return inv_gamma_logpdf(e, a_e, b_e) + t + total(mu, mu_s, shift, s2, g.sigma2, e)

        t, _ = self._slice(t_eta2, math.log(g.eta2), "log eta2")
        g.eta2 = math.exp(t)

        cap = h.max_events

        def t_r(t):
            r = math.exp(t)
            if not 0 < r < math.inf:
                return -math.inf
            return (gamma_logpdf(r, h.a_r, h.b_r) + t
                    + float(np.sum(count_log_pmf(N, r, g.lam, cap))))

        t, _ = self._slice(t_r, math.log(g.r), "log r")
        g.r = math.exp(t)

        def t_lam(t):
            lam = math.exp(t)
            if not 0 < lam < math.inf:
                return -math.inf
            return (gamma_logpdf(lam, h.a_lambda, h.b_lambda) + t
                    + float(np.sum(count_log_pmf(N, g.r, lam, cap))))

        t, _ = self._slice(t_lam, math.log(g.lam), "log lambda")
        g.lam = math.exp(t)
        return state


def _member_loglik(lat, i, cand, shift, s2, xb_i, xg_i, g):
    """Log-likelihood of individual ``i`` under each candidate atom row."""
    st = lat.stats[:, i]
    return _loglik(lat.N[i], lat.log_s[i], *st, xb_i + cand[:, 0], xg_i + cand[:, 2],
                   cand[:, 1], shift, s2, g.sigma2, g.eta2)


def _cluster_loglik(args, mu, mu_s, m2, shift, s2, g):
    """Summed log-likelihood of the members ``idx`` of one cluster."""
    return _loglik(*args, mu, mu_s, m2, shift, s2, g.sigma2, g.eta2).sum()


# -- functional interface ---------------------------------------------------------

def initial_state(data: Dataset, hyper: Hyperparams, config: SamplerConfig | None = None) -> ModelState:
    return GibbsSampler(data, hyper, config).initial_state()


def update_globals(state, data, hyper, rng, config=None):
    return GibbsSampler(data, hyper, config).update_globals(state, rng)


def update_random_effects(state, data, hyper, rng, config=None):
    GibbsSampler(data, hyper, config).update_random_effects(state, rng)
    return state


def update_concentration(state, hyper, rng, L=None):
    """Resample the DP concentration given the number of occupied clusters.

    Uses the auxiliary-variable construction: draw ``eta ~ Beta(M + 1, L)``,
    then ``M`` from a two-component mixture of gammas. With no individuals
    the conditional is the prior.
    """
    L = state.assignments.size if L is None else L
    h = hyper
    g = state.globals
    K = state.n_clusters
    if L == 0:
        g.M = float(rng.gamma(h.a_M, 1.0 / h.b_M))
        return state
    eta = rng.beta(g.M + 1.0, L)
    rate = h.b_M - math.log(eta)
    odds = (h.a_M + K - 1.0) / (L * rate)
    shape = h.a_M + K if rng.random() < odds / (1.0 + odds) else h.a_M + K - 1.0
    g.M = max(float(rng.gamma(shape, 1.0 / rate)), np.finfo(float).tiny)
    return state


def update_censored_latents(state, data, hyper, rng, config=None):
    GibbsSampler(data, hyper, config).update_censored_latents(state, rng)
    return state


def gibbs_sweep(state, data, hyper, rng, config=None):
    return GibbsSampler(data, hyper, config).sweep(state, rng)


def run_chain(data: Dataset, hyper: Hyperparams, config: SamplerConfig,
              chain_index: int = 0, callback=None, state: ModelState | None = None,
              sink=None, keep: bool = True) -> Chain:
    """Run ``config.iterations`` sweeps and keep every ``thin``-th state after burn-in.

    ``callback(iteration, state, sampler)`` is invoked after every sweep and
    ``sink(iteration, state)`` on every stored state. With ``keep=False`` the
    returned chain holds no samples (use a sink to stream them instead).
    """
    sampler = GibbsSampler(data, hyper, config)
    rng = make_rng(config.seed, chain_index)
    state = sampler.initial_state() if state is None else state.copy()
    samples, iterations = [], []
    start = time.perf_counter()
    for t in range(1, config.iterations + 1):
        try:
            sampler.sweep(state, rng)
        except Exception as exc:
            raise SamplerError(f"iteration {t}: {exc}") from exc
        if t > config.burn_in and (t - config.burn_in) % config.thin == 0:
            state.check(data)
            if sink is not None:
                sink(t, state)
            if keep:
                samples.append(state.copy())
                iterations.append(t)
        if callback is not None:
            callback(t, state, sampler)
    log.debug("chain %d: %d sweeps in %.1fs", chain_index, config.iterations,
              time.perf_counter() - start)
    return Chain(samples, config, hyper, iterations, data.L, data.q, chain_index)
