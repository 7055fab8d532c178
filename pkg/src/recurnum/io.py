"""File formats: dataset CSV, chain JSON-lines, run configuration, summary tables.

Dataset CSV
    Header ``id,time,is_event,censor_time,status,x1,...,xq``. Each individual
    has one row per recurrent event (``is_event=1``, ``time`` the event time)
    and exactly one terminal row (``is_event=0``, ``time`` equal to
    ``censor_time``, ``status`` ``observed`` or ``censored``). ``censor_time``
    and ``status`` may be left blank on event rows; if given they must agree
    with the terminal row. Covariates must be identical on every row of an id.

Chain JSON-lines
    First line is a header object ``{"format": "recurnum-chain", "version",
    "n_samples", "L", "q", "seed", "chain_index", "config", "hyper"}``. Each
    following line is one stored state: ``iteration``, ``beta``, ``gamma``,
    ``sigma2``, ``eta2``, ``r``, ``lam``, ``M``, ``assignments`` (cluster index
    per individual), ``atoms`` (``[m1, m2, delta]`` per cluster), ``n_events``,
    ``survival`` and ``tails`` (imputed log gaps after the observed ones, per
    individual). Floats are written with round-trip precision.

Run configuration
    Flat ``key = value`` lines; ``#`` starts a comment. Keys are the
    :class:`~recurnum.model.Hyperparams` and :class:`~recurnum.state.SamplerConfig`
    field names, ``data``, ``out``, ``chains``, and ``sim.*`` keys for
    :class:`~recurnum.simulate.SimulationConfig`. Unknown keys are errors.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .data import Dataset, DatasetValidationError, validate_dataset
from .model import Globals, Hyperparams, RandomEffect
from .simulate import GroundTruth, SimulationConfig
from .state import Chain, ModelState, SamplerConfig

CHAIN_FORMAT = "recurnum-chain"
CHAIN_VERSION = 1


class ChainFormatError(ValueError):
    pass


class ConfigError(ValueError):
    pass


# -- dataset CSV ------------------------------------------------------------------

_BASE_COLUMNS = ["id", "time", "is_event", "censor_time", "status"]


def _num(text: str) -> float:
    return float(text.strip())


def parse_dataset_csv(path) -> Dataset:
    """Read a long-format dataset CSV; all problems are reported together with line numbers.

    Raises
    ------
    DatasetValidationError
    FileNotFoundError
    """
    errors = []
    groups: dict[str, dict] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DatasetValidationError([f"{path}: empty file"]) from None
        xcols = header[len(_BASE_COLUMNS):]
        expected = _BASE_COLUMNS + [f"x{k + 1}" for k in range(len(xcols))]
        if header != expected or not xcols:
            raise DatasetValidationError(
                [f"line 1: header must be {','.join(_BASE_COLUMNS)},x1,...,xq; got {','.join(header)}"])
        q = len(xcols)
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                errors.append(f"line {line}: expected {len(header)} fields, got {len(row)}")
                continue
            ident = row[0].strip()
            if not ident:
                errors.append(f"line {line}: missing id")
                continue
            try:
                t = _num(row[1])
                flag = row[2].strip()
                if flag not in ("0", "1"):
                    raise ValueError(f"is_event must be 0 or 1, got {flag!r}")
                x = tuple(_num(v) for v in row[5:])
                c = _num(row[3]) if row[3].strip() else None
            except ValueError as exc:
                errors.append(f"line {line}: {exc}")
                continue
            status = row[4].strip()
            g = groups.setdefault(ident, {"id": ident, "events": [], "terminal": None,
                                          "x": x, "x_line": line, "lines": [], "bad": False})
            g["lines"].append(line)
            if x != g["x"]:
                errors.append(f"line {line}: covariates for id {ident} differ from line {g['x_line']}")
                g["bad"] = True
            if flag == "1":
                g["events"].append((t, line, c, status))
                continue
            if g["terminal"] is not None:
                errors.append(f"line {line}: second terminal row for id {ident} "
                              f"(first on line {g['terminal'][2]})")
                g["bad"] = True
                continue
            if status not in ("observed", "censored"):
                errors.append(f"line {line}: status must be 'observed' or 'censored', got {status!r}")
                g["bad"] = True
            if c is None or c != t:
                errors.append(f"line {line}: terminal row time must equal censor_time")
                g["bad"] = True
            g["terminal"] = (t, status, line)

    records = []
    for ident, g in groups.items():
        if g["terminal"] is None:
            errors.append(f"lines {g['lines'][0]}-{g['lines'][-1]}: id {ident} has no terminal row")
            continue
        c, status, tline = g["terminal"]
        for t, line, ce, se in g["events"]:
            if ce is not None and ce != c:
                errors.append(f"line {line}: censor_time differs from terminal row (line {tline})")
                g["bad"] = True
            if se and se != status:
                errors.append(f"line {line}: status differs from terminal row (line {tline})")
                g["bad"] = True
            if t > c:
                errors.append(f"line {line}: event at t={t!r} after censor_time {c!r} for id {ident}")
                g["bad"] = True
        if g["bad"]:
            continue
        records.append({"id": ident, "covariates": g["x"],
                        "event_times": sorted(t for t, *_ in g["events"]),
                        "censor_time": c, "survival_observed": status == "observed",
                        "lines": sorted(g["lines"])})
    if errors:
        raise DatasetValidationError(errors)
    if not records:
        raise DatasetValidationError([f"{path}: no individuals"])
    data = validate_dataset(records)
    if data.q != q:
        raise DatasetValidationError([f"expected {q} covariates"])
    return data


def write_dataset_csv(path, data: Dataset) -> None:
    """Write ``data`` in the long format read by :func:`parse_dataset_csv`."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(_BASE_COLUMNS + [f"x{k + 1}" for k in range(data.q)])
        for ind in data:
            x = [repr(float(v)) for v in ind.covariates]
            c = repr(float(ind.censor_time))
            status = "observed" if ind.survival_observed else "censored"
            for t in ind.event_times:
                w.writerow([ind.id, repr(float(t)), 1, c, status] + x)
            w.writerow([ind.id, c, 0, c, status] + x)


# -- chains -----------------------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


def chain_header(config: SamplerConfig, hyper: Hyperparams, L: int, q: int,
                 chain_index: int = 0, n_samples: int | None = None) -> dict:
    return {"format": CHAIN_FORMAT, "version": CHAIN_VERSION,
            "n_samples": config.n_samples if n_samples is None else n_samples,
            "L": L, "q": q, "seed": config.seed, "chain_index": chain_index,
            "config": config.to_dict(), "hyper": hyper.to_dict()}


def state_record(iteration: int, s: ModelState) -> dict:
    g = s.globals
    return {"iteration": int(iteration), "beta": g.beta.tolist(), "gamma": g.gamma.tolist(),
            "sigma2": g.sigma2, "eta2": g.eta2, "r": g.r, "lam": g.lam, "M": g.M,
            "assignments": s.assignments.tolist(), "atoms": s.atoms.tolist(),
            "n_events": s.n_events.tolist(), "survival": s.survival.tolist(),
            "tails": [t.tolist() for t in s.tails]}


def _state_from_record(rec: dict) -> tuple[int, ModelState]:
    g = Globals(rec["beta"], rec["gamma"], rec["sigma2"], rec["eta2"], rec["r"], rec["lam"], rec["M"])
    atoms = np.array(rec["atoms"], dtype=float).reshape(-1, 3)
    return int(rec["iteration"]), ModelState(
        g, np.array(rec["assignments"], dtype=np.int64), atoms,
        np.array(rec["n_events"], dtype=np.int64), np.array(rec["survival"], dtype=float),
        [np.array(t, dtype=float) for t in rec["tails"]])


class ChainWriter:
    """Stream a chain to disk one state at a time.

    Usable as a context manager; :meth:`write` is a suitable sink for
    :func:`~recurnum.sampler.run_chain`.
    """

    def __init__(self, path, config: SamplerConfig, hyper: Hyperparams, L: int, q: int,
                 chain_index: int = 0, n_samples: int | None = None):
        self.path = Path(path)
        self._fh = open(self.path, "w", encoding="utf-8", newline="\n")
        self._fh.write(_dump(chain_header(config, hyper, L, q, chain_index, n_samples)) + "\n")

    def write(self, iteration: int, state: ModelState) -> None:
        self._fh.write(_dump(state_record(iteration, state)) + "\n")

    def close(self):
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def write_chain(path, chain: Chain) -> None:
    with ChainWriter(path, chain.config, chain.hyper, chain.L, chain.q, chain.chain_index,
                     len(chain)) as w:
        for t, s in zip(chain.iterations, chain.samples):
            w.write(t, s)


def read_chain(path) -> Chain:
    """Inverse of :func:`write_chain`.

    Raises
    ------
    ChainFormatError
        On a wrong format name or version, a malformed record, or a file
        holding fewer samples than its header declares (truncation); the
        message gives the byte offset of the problem.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    offset = 0
    header = None
    samples, iterations = [], []
    for line in raw.splitlines(keepends=True):
        start = offset
        offset += len(line)
        if not line.endswith(b"\n"):
            raise ChainFormatError(f"{path}: truncated record at byte offset {start}")
        try:
            rec = json.loads(line)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ChainFormatError(f"{path}: malformed record at byte offset {start}: {exc}") from None
        if header is None:
            if not isinstance(rec, dict) or rec.get("format") != CHAIN_FORMAT:
                raise ChainFormatError(f"{path}: not a {CHAIN_FORMAT} file")
            if rec.get("version") != CHAIN_VERSION:
                raise ChainFormatError(f"{path}: format version {rec.get('version')!r} is not "
                                       f"supported (expected {CHAIN_VERSION})")
            header = rec
            continue
        try:
            t, s = _state_from_record(rec)
        except (KeyError, TypeError, ValueError) as exc:
            raise ChainFormatError(f"{path}: bad sample record at byte offset {start}: {exc}") from None
        iterations.append(t)
        samples.append(s)
    if header is None:
        raise ChainFormatError(f"{path}: empty file")
    if len(samples) != header["n_samples"]:
        raise ChainFormatError(f"{path}: truncated at byte offset {offset}: header declares "
                               f"{header['n_samples']} samples, found {len(samples)}")
    cfg = dict(header["config"])
    cfg["rj_move_probs"] = tuple(cfg["rj_move_probs"])
    return Chain(samples, SamplerConfig(**cfg), Hyperparams(**header["hyper"]), iterations,
                 header["L"], header["q"], header["chain_index"])


# -- ground truth -------------------------------------------------------------------

def simulation_config_to_dict(cfg: SimulationConfig) -> dict:
    d = {f.name: getattr(cfg, f.name) for f in fields(cfg)}
    d["cluster_atoms"] = [[a.m1, a.m2, a.delta] for a in cfg.cluster_atoms]
    d["beta"], d["gamma"] = list(cfg.beta), list(cfg.gamma)
    return d


def write_ground_truth(path, truth: GroundTruth) -> None:
    obj = {"config": simulation_config_to_dict(truth.config),
           "covariates": truth.covariates.tolist(), "cluster": truth.cluster.tolist(),
           "n_events": truth.n_events.tolist(), "survival": truth.survival.tolist(),
           "log_gaps": [np.asarray(y).tolist() for y in truth.log_gaps]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, allow_nan=False)
        fh.write("\n")


def read_ground_truth(path) -> GroundTruth:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    cfg = dict(obj["config"])
    cfg["cluster_atoms"] = tuple(RandomEffect(*a) for a in cfg["cluster_atoms"])
    return GroundTruth(np.array(obj["covariates"], dtype=float),
                       np.array(obj["cluster"], dtype=np.int64),
                       np.array(obj["n_events"], dtype=np.int64),
                       [np.array(y, dtype=float) for y in obj["log_gaps"]],
                       np.array(obj["survival"], dtype=float), SimulationConfig(**cfg))


# -- run configuration ------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs, as read from a config file."""

    hyper: Hyperparams = field(default_factory=Hyperparams)
    sampler: SamplerConfig = field(default_factory=SamplerConfig)
    simulation: SimulationConfig | None = None
    data_path: str | None = None
    out_dir: str | None = None
    chains: int = 1

    def __post_init__(self):
        for name in ("data_path", "out_dir"):
            if getattr(self, name) is not None and not str(getattr(self, name)).strip():
                raise ConfigError(f"{name} must not be empty")
        if int(self.chains) != self.chains or self.chains < 1:
            raise ConfigError("chains must be a positive integer")


_HYPER_KEYS = {f.name for f in fields(Hyperparams)}
_SAMPLER_KEYS = {f.name for f in fields(SamplerConfig)}
_SIM_KEYS = {f.name for f in fields(SimulationConfig)}
_INT_KEYS = {"iterations", "burn_in", "thin", "seed", "slice_max_steps", "aux_components",
             "max_events", "chains", "sim.L", "sim.q", "sim.seed"}
_LIST_KEYS = {"rj_move_probs", "sim.beta", "sim.gamma"}


def _parse_value(key, text):
    text = text.strip()
    if key == "sim.cluster_atoms":
        atoms = []
        for part in text.split(";"):
            vals = [float(v) for v in part.replace(",", " ").split()]
            if len(vals) != 3:
                raise ValueError("each atom needs three numbers 'm1 m2 delta'")
            atoms.append(RandomEffect(*vals))
        return tuple(atoms)
    if key in _LIST_KEYS:
        return tuple(float(v) for v in text.split(","))
    if key in ("data", "out"):
        return text
    if key == "max_events" and text.lower() in ("", "none"):
        return None
    if key in _INT_KEYS:
        value = float(text)
        if not value.is_integer():
            raise ValueError(f"expected an integer, got {text!r}")
        return int(value)
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"expected a finite number, got {text!r}")
    return value


def parse_config_text(text: str, source: str = "<config>") -> RunConfig:
    """Parse a flat ``key = value`` configuration (see the module docstring)."""
    hyper, sampler, sim, other = {}, {}, {}, {}
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in seen:
            raise ConfigError(f"{source}:{lineno}: key {key!r} already set on line {seen[key]}")
        seen[key] = lineno
        if key.startswith("sim."):
            target, name, valid = sim, key[4:], key[4:] in _SIM_KEYS
        elif key in _HYPER_KEYS:
            target, name, valid = hyper, key, True
        elif key in _SAMPLER_KEYS:
            target, name, valid = sampler, key, True
        elif key in ("data", "out", "chains"):
            target, name, valid = other, key, True
        else:
            valid = False
        if not valid:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            target[name] = _parse_value(key, value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: {key}: {exc}") from None
    try:
        h = Hyperparams(**hyper)
        s = SamplerConfig(**sampler)
        if sim:
            sim.setdefault("seed", s.seed)
        simcfg = SimulationConfig(**sim) if sim else None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: {exc}") from None
    return RunConfig(h, s, simcfg, other.get("data"), other.get("out"), other.get("chains", 1))


def parse_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read(), str(path))


def format_config(cfg: RunConfig) -> str:
    """Render a :class:`RunConfig` in the format read by :func:`parse_config_text`."""
    out = []
    for k, v in cfg.hyper.to_dict().items():
        if v is not None:
            out.append(f"{k} = {v!r}")
    for k, v in cfg.sampler.to_dict().items():
        out.append(f"{k} = {','.join(map(repr, v)) if isinstance(v, list) else repr(v)}")
    if cfg.data_path:
        out.append(f"data = {cfg.data_path}")
    if cfg.out_dir:
        out.append(f"out = {cfg.out_dir}")
    out.append(f"chains = {cfg.chains}")
    if cfg.simulation is not None:
        for k, v in simulation_config_to_dict(cfg.simulation).items():
            if k == "cluster_atoms":
                v = "; ".join(" ".join(repr(x) for x in a) for a in v)
            elif isinstance(v, list):
                v = ",".join(map(repr, v))
            else:
                v = repr(v)
            out.append(f"sim.{k} = {v}")
    return "\n".join(out) + "\n"


# -- summary tables ---------------------------------------------------------------

def write_table(path, rows: list[dict], columns: list[str]) -> None:
    """CSV with a header row and columns in the given order."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in columns])


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def read_table(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def write_matrix(path, matrix: np.ndarray, labels: list[str]) -> None:
    """Square matrix with row and column labels."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id"] + list(labels))
        for lab, row in zip(labels, matrix):
            w.writerow([lab] + [repr(float(v)) for v in row])


def read_matrix(path) -> tuple[np.ndarray, list[str]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    labels = rows[0][1:]
    return np.array([[float(v) for v in r[1:]] for r in rows[1:]]).reshape(len(labels), -1), labels


def remove_quietly(paths) -> None:
    for p in paths:
        try:
            os.remove(p)
        except OSError:
            pass


__all__ = [
    "CHAIN_FORMAT", "CHAIN_VERSION", "ChainFormatError", "ChainWriter", "ConfigError",
    "DatasetValidationError", "RunConfig", "chain_header", "format_config", "parse_config",
    "parse_config_text", "parse_dataset_csv", "read_chain", "read_ground_truth", "read_matrix",
    "read_table", "state_record", "write_chain", "write_dataset_csv", "write_ground_truth",
    "write_matrix", "write_table",
]
