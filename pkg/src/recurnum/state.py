"""Sampler configuration, posterior states and chains."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .data import Dataset
from .model import Globals, Hyperparams, RandomEffect


class StateError(ValueError):
    pass


@dataclass(frozen=True)
class SamplerConfig:
    iterations: int = 200_000
    burn_in: int = 20_000
    thin: int = 10
    seed: int = 0
    slice_width: float = 1.0
    slice_max_steps: int = 50
    aux_components: int = 3
    rj_move_probs: tuple = (0.35, 0.35, 0.30)

    def __post_init__(self):
        for name in ("iterations", "thin", "slice_max_steps", "aux_components"):
            value = getattr(self, name)
            if int(value) != value or int(value) < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if int(self.burn_in) != self.burn_in or self.burn_in < 0:
            raise ValueError(f"burn_in must be a nonnegative integer, got {self.burn_in!r}")
        object.__setattr__(self, "burn_in", int(self.burn_in))
        if self.burn_in >= self.iterations:
            raise ValueError(
                f"burn_in ({self.burn_in}) must be smaller than iterations ({self.iterations})")
        seed = int(self.seed)
        if not 0 <= seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "seed", seed)
        if not (np.isfinite(self.slice_width) and self.slice_width > 0):
            raise ValueError("slice_width must be positive")
        object.__setattr__(self, "slice_width", float(self.slice_width))
        probs = tuple(float(p) for p in self.rj_move_probs)
        if len(probs) != 3 or min(probs) < 0 or abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError("rj_move_probs must be three nonnegative numbers summing to 1")
        if (probs[0] == 0) != (probs[1] == 0):
            raise ValueError("birth and death moves must be both enabled or both disabled")
        object.__setattr__(self, "rj_move_probs", probs)

    @property
    def n_samples(self) -> int:
        return (self.iterations - self.burn_in) // self.thin

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rj_move_probs"] = list(self.rj_move_probs)
        return d


def make_rng(seed: int, chain_index: int = 0) -> np.random.Generator:
    """Generator for chain ``chain_index``; streams for different chains are
    independent children of the same seed."""
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(int(seed), spawn_key=(int(chain_index),))))


@dataclass
class ModelState:
    """A point in the posterior: globals, DP partition, per-individual latents.

    ``atoms`` has one row ``(m1, m2, delta)`` per occupied cluster and
    ``assignments[i]`` indexes it. ``tails[i]`` holds the imputed log gaps
    after the observed ones, so ``n_events[i] = n_i + len(tails[i])``.
    """

    globals: Globals
    assignments: np.ndarray
    atoms: np.ndarray
    n_events: np.ndarray
    survival: np.ndarray
    tails: list = field(default_factory=list)

    def copy(self) -> ModelState:
        return ModelState(self.globals.copy(), self.assignments.copy(), self.atoms.copy(),
                          self.n_events.copy(), self.survival.copy(),
                          [t.copy() for t in self.tails])

    @property
    def n_clusters(self) -> int:
        return int(self.atoms.shape[0])

    def random_effect(self, i: int) -> RandomEffect:
        m1, m2, d = self.atoms[self.assignments[i]]
        return RandomEffect(float(m1), float(m2), float(d))

    def log_gaps(self, data: Dataset, i: int) -> np.ndarray:
        return np.concatenate([data[i].log_gaps, self.tails[i]])

    def __eq__(self, other):
        if not isinstance(other, ModelState):
            return NotImplemented
        return (self.globals == other.globals
                and np.array_equal(self.assignments, other.assignments)
                and np.array_equal(self.atoms, other.atoms)
                and np.array_equal(self.n_events, other.n_events)
                and np.array_equal(self.survival, other.survival)
                and len(self.tails) == len(other.tails)
                and all(np.array_equal(a, b) for a, b in zip(self.tails, other.tails)))

    def check(self, data: Dataset, rtol: float = 1e-12) -> None:
        """Raise :class:`StateError` if any state invariant fails."""
        L = data.L
        a = self.assignments
        if a.shape != (L,) or self.n_events.shape != (L,) or self.survival.shape != (L,) \
                or len(self.tails) != L:
            raise StateError("latent arrays do not match the number of individuals")
        K = self.atoms.shape[0]
        if self.atoms.ndim != 2 or self.atoms.shape[1] != 3:
            raise StateError("atoms must have shape (K, 3)")
        if L and (a.min() < 0 or a.max() >= K):
            raise StateError("assignment refers to a missing atom")
        if np.any(np.bincount(a, minlength=K) == 0):
            raise StateError("empty cluster present")
        if not np.all(np.isfinite(self.atoms)):
            raise StateError("non-finite atom")
        if self.globals.beta.size != data.q:
            raise StateError("coefficient length differs from q")
        for i, ind in enumerate(data):
            n, N, S, tail = ind.n_events, int(self.n_events[i]), float(self.survival[i]), self.tails[i]
            if N != n + tail.size:
                raise StateError(f"individual {i}: N={N} but {n} observed + {tail.size} imputed gaps")
            if ind.survival_observed:
                if tail.size or S != ind.censor_time:
                    raise StateError(f"individual {i}: observed survival was modified")
                continue
            if not S > ind.censor_time:
                raise StateError(f"individual {i}: imputed S={S!r} not beyond c={ind.censor_time!r}")
            if not np.all(np.isfinite(tail)):
                raise StateError(f"individual {i}: non-finite imputed gap")
            t_obs = ind.event_times[-1] if n else 0.0
            if tail.size:
                t = t_obs + np.cumsum(np.exp(tail))
                if not t[0] > ind.censor_time:
                    raise StateError(f"individual {i}: first imputed event at {t[0]!r} "
                                     f"not after c={ind.censor_time!r}")
                if t[-1] > S * (1 + rtol):
                    raise StateError(f"individual {i}: last event {t[-1]!r} after S={S!r}")


@dataclass
class Chain:
    """Thinned post-burn-in states plus the settings that produced them."""

    samples: list
    config: SamplerConfig
    hyper: Hyperparams
    iterations: list
    L: int
    q: int
    chain_index: int = 0

    @property
    def seed(self) -> int:
        return self.config.seed

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def __getitem__(self, k):
        return self.samples[k]
