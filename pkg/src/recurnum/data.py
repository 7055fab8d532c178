"""Observed-data containers and the event-time / log-gap-time transforms.

Times are durations in days measured from the start of each individual's
recurrence process, which is fixed at zero.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np


class DatasetValidationError(ValueError):
    """Raised when raw records violate the observed-data invariants.

    ``errors`` holds one human-readable message per offending record.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def to_log_gaps(event_times) -> np.ndarray:
    """Log gap times ``log(T_j - T_{j-1})`` with ``T_0 = 0``."""
    t = np.asarray(event_times, dtype=float)
    if t.ndim != 1:
        raise ValueError("event_times must be one-dimensional")
    if t.size == 0:
        return np.empty(0)
    if not np.all(np.isfinite(t)):
        bad = int(np.flatnonzero(~np.isfinite(t))[0])
        raise ValueError(f"event time at index {bad} is not finite")
    gaps = np.diff(t, prepend=0.0)
    if np.any(gaps <= 0):
        bad = int(np.flatnonzero(gaps <= 0)[0])
        if bad == 0:
            raise ValueError(f"event time at index 0 must be positive, got {t[0]!r}")
        raise ValueError(
            f"event times must be strictly increasing: index {bad} "
            f"({t[bad]!r}) does not exceed index {bad - 1} ({t[bad - 1]!r})")
    return np.log(gaps)


def from_log_gaps(gaps) -> np.ndarray:
    """Event times from log gap times (cumulative sum of exponentials)."""
    y = np.asarray(gaps, dtype=float)
    if y.ndim != 1:
        raise ValueError("gaps must be one-dimensional")
    if y.size == 0:
        return np.empty(0)
    if not np.all(np.isfinite(y)):
        raise ValueError("log gaps must be finite")
    with np.errstate(over="raise"):
        try:
            t = np.cumsum(np.exp(y))
        except FloatingPointError:
            raise OverflowError("event times overflow double precision") from None
    if not np.all(np.isfinite(t)):
        raise OverflowError("event times overflow double precision")
    return t


@dataclass(frozen=True, eq=False)
class Individual:
    """One subject: covariates, observed event times and follow-up end.

    ``censor_time`` is ``c_i``, the minimum of the censoring and survival
    times. When ``survival_observed`` is true the survival time equals it.
    """

    covariates: np.ndarray
    event_times: np.ndarray
    censor_time: float
    survival_observed: bool
    id: str = ""

    def __post_init__(self):
        x = np.array(self.covariates, dtype=float).reshape(-1)
        t = np.array(self.event_times, dtype=float).reshape(-1)
        x.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "covariates", x)
        object.__setattr__(self, "event_times", t)
        object.__setattr__(self, "censor_time", float(self.censor_time))
        object.__setattr__(self, "survival_observed", bool(self.survival_observed))
        object.__setattr__(self, "id", str(self.id))

    @property
    def n_events(self) -> int:
        return int(self.event_times.size)

    @property
    def log_gaps(self) -> np.ndarray:
        return to_log_gaps(self.event_times)

    def __eq__(self, other):
        if not isinstance(other, Individual):
            return NotImplemented
        return (self.id == other.id
                and self.survival_observed == other.survival_observed
                and self.censor_time == other.censor_time
                and np.array_equal(self.covariates, other.covariates)
                and np.array_equal(self.event_times, other.event_times))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Dataset:
    """Ordered individuals sharing a covariate dimension ``q``.

    An empty dataset is allowed so that the sampler can be run on the prior
    alone; :func:`validate_dataset` still requires at least one record.
    """

    individuals: tuple = field(default_factory=tuple)
    q: int = 1

    def __post_init__(self):
        object.__setattr__(self, "individuals", tuple(self.individuals))
        if int(self.q) < 1:
            raise ValueError("q must be a positive integer")
        object.__setattr__(self, "q", int(self.q))

    def __len__(self):
        return len(self.individuals)

    def __iter__(self):
        return iter(self.individuals)

    def __getitem__(self, i):
        return self.individuals[i]

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.q == other.q and self.individuals == other.individuals

    __hash__ = None

    @property
    def L(self) -> int:
        return len(self.individuals)

    @property
    def covariate_matrix(self) -> np.ndarray:
        if not self.individuals:
            return np.zeros((0, self.q))
        return np.vstack([ind.covariates for ind in self.individuals])

    @property
    def censored(self) -> np.ndarray:
        return np.array([not ind.survival_observed for ind in self.individuals], dtype=bool)

    @property
    def n_events(self) -> np.ndarray:
        return np.array([ind.n_events for ind in self.individuals], dtype=np.int64)

    @property
    def censor_times(self) -> np.ndarray:
        return np.array([ind.censor_time for ind in self.individuals], dtype=float)

    @property
    def ids(self) -> list:
        return [ind.id for ind in self.individuals]

    def summary(self) -> dict:
        n = self.n_events
        return {
            "L": self.L,
            "q": self.q,
            "total_events": int(n.sum()),
            "max_events": int(n.max()) if n.size else 0,
            "censored": int(self.censored.sum()),
            "observed": int(self.L - self.censored.sum()),
        }


def _where(record, k):
    lines = record.get("lines")
    if lines:
        if len(lines) == 1:
            return f"line {lines[0]}"
        return f"lines {lines[0]}-{lines[-1]}"
    ident = record.get("id")
    return f"record {k}" + (f" (id {ident})" if ident not in (None, "") else "")


def validate_dataset(records) -> Dataset:
    """Build a :class:`Dataset` from raw records, checking every invariant.

    ``records`` is an iterable of mappings with keys ``covariates``,
    ``event_times``, ``censor_time``, ``survival_observed`` and optionally
    ``id`` and ``lines`` (source line numbers used in error messages).
    A :class:`Dataset` is accepted as well and returned unchanged.
    All problems are collected and raised together.
    """
    if isinstance(records, Dataset):
        if records.L == 0:
            raise DatasetValidationError(["dataset has no individuals"])
        records = [{"id": ind.id, "covariates": ind.covariates,
                    "event_times": ind.event_times, "censor_time": ind.censor_time,
                    "survival_observed": ind.survival_observed}
                   for ind in records]
    records = list(records)
    errors = []
    if not records:
        raise DatasetValidationError(["dataset has no individuals"])

    q = None
    individuals = []
    for k, rec in enumerate(records):
        where = _where(rec, k)
        x = np.asarray(rec["covariates"], dtype=float).reshape(-1)
        if q is None:
            q = x.size
        if x.size != q:
            errors.append(f"{where}: expected {q} covariates, got {x.size}")
        if x.size == 0:
            errors.append(f"{where}: at least one covariate is required")
        if not np.all(np.isfinite(x)):
            errors.append(f"{where}: covariates must be finite")

        c = float(rec["censor_time"])
        if not (np.isfinite(c) and c > 0):
            errors.append(f"{where}: censor time must be positive and finite, got {c!r}")

        t = np.asarray(rec["event_times"], dtype=float).reshape(-1)
        if t.size:
            if np.any(~np.isfinite(t)) or np.any(t <= 0):
                errors.append(f"{where}: event times must be positive and finite")
            d = np.diff(t)
            if np.any(d == 0):
                j = int(np.flatnonzero(d == 0)[0]) + 1
                errors.append(f"{where}: duplicate event time {t[j]!r}")
            elif np.any(d < 0):
                j = int(np.flatnonzero(d < 0)[0]) + 1
                errors.append(f"{where}: event times not increasing at position {j}")
            if np.isfinite(c) and np.any(t > c):
                errors.append(
                    f"{where}: event at t={t[t > c][0]!r} exceeds censor time {c!r} "
                    "(events must satisfy T <= c)")
        individuals.append(Individual(
            covariates=x, event_times=t, censor_time=c,
            survival_observed=bool(rec["survival_observed"]),
            id=str(rec.get("id", k + 1) if rec.get("id") not in (None, "") else k + 1)))

    ids = [ind.id for ind in individuals]
    if len(set(ids)) != len(ids):
        seen = set()
        for k, i in enumerate(ids):
            if i in seen:
                errors.append(f"{_where(records[k], k)}: duplicate id {i!r}")
            seen.add(i)

    if errors:
        raise DatasetValidationError(errors)
    return Dataset(individuals=tuple(individuals), q=q)
