import json

import numpy as np
import pytest

from recurnum.data import DatasetValidationError
from recurnum.io import (ChainFormatError, ConfigError, format_config, parse_config,
                         parse_config_text, parse_dataset_csv, read_chain, read_ground_truth,
                         read_matrix, read_table, write_chain, write_dataset_csv,
                         write_ground_truth, write_matrix, write_table)
from recurnum.model import Hyperparams
from recurnum.sampler import run_chain
from recurnum.simulate import SimulationConfig, simulate
from recurnum.state import SamplerConfig

HEADER = "id,time,is_event,censor_time,status,x1\n"


def write(tmp_path, text, name="data.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_minimal_file(tmp_path):
    p = write(tmp_path, HEADER + "a,10,1,,,0.5\na,25,1,40,observed,0.5\na,40,0,40,observed,0.5\n"
                                 "b,3,0,3,censored,0.1\n")
    data = parse_dataset_csv(p)
    assert data.L == 2 and data.q == 1
    a, b = data
    assert a.id == "a" and a.event_times.tolist() == [10.0, 25.0]
    assert a.censor_time == 40.0 and a.survival_observed and a.covariates.tolist() == [0.5]
    assert b.n_events == 0 and not b.survival_observed


def test_rows_may_be_interleaved(tmp_path):
    p = write(tmp_path, HEADER + "a,25,1,,,1\nb,2,0,2,observed,0\na,10,1,,,1\na,40,0,40,censored,1\n")
    assert parse_dataset_csv(p)[0].event_times.tolist() == [10.0, 25.0]


@pytest.mark.parametrize("body, message", [
    ("a,10,1,,,0.5\n", "lines 2-2: id a has no terminal row"),
    ("a,10,1,,,0.5\na,20,0,20,observed,0.7\n", "line 3: covariates for id a differ from line 2"),
    ("a,50,1,,,0.5\na,20,0,20,observed,0.5\n", "line 2: event at t=50.0 after censor_time 20.0"),
    ("a,20,0,20,alive,0.5\n", "line 2: status must be"),
    ("a,20,0,21,observed,0.5\n", "line 2: terminal row time must equal censor_time"),
    ("a,20,0,20,observed,0.5\na,20,0,20,observed,0.5\n", "line 3: second terminal row"),
    ("a,x,1,,,0.5\n", "line 2:"),
    ("a,10,1,30,observed,0.5\na,20,0,20,observed,0.5\n", "line 2: censor_time differs"),
])
def test_validation_messages(tmp_path, body, message):
    p = write(tmp_path, HEADER + body)
    with pytest.raises(DatasetValidationError) as info:
        parse_dataset_csv(p)
    assert any(message in e for e in info.value.errors), info.value.errors


def test_all_errors_reported_together(tmp_path):
    p = write(tmp_path, HEADER + "a,10,1,,,0.5\nb,20,0,20,alive,0.5\nc,1,2,,,0\n")
    with pytest.raises(DatasetValidationError) as info:
        parse_dataset_csv(p)
    assert len(info.value.errors) == 3


def test_bad_header(tmp_path):
    with pytest.raises(DatasetValidationError, match="line 1: header"):
        parse_dataset_csv(write(tmp_path, "id,t,is_event,censor_time,status,x1\n"))


def test_simulated_dataset_round_trip(tmp_path):
    data, _ = simulate(SimulationConfig(L=40, censor_rate=0.5, seed=2))
    p = tmp_path / "sim.csv"
    write_dataset_csv(p, data)
    assert parse_dataset_csv(p) == data
    write_dataset_csv(tmp_path / "again.csv", parse_dataset_csv(p))
    assert (tmp_path / "again.csv").read_bytes() == p.read_bytes()


@pytest.fixture(scope="module")
def chain():
    data, _ = simulate(SimulationConfig(L=10, censor_rate=0.5, seed=3))
    return run_chain(data, Hyperparams(), SamplerConfig(iterations=150, burn_in=50, thin=1, seed=3))


def test_chain_round_trip(tmp_path, chain):
    p = tmp_path / "chain.jsonl"
    write_chain(p, chain)
    back = read_chain(p)
    assert len(back) == len(chain) == 100
    assert back.iterations == chain.iterations
    assert all(a == b for a, b in zip(back.samples, chain.samples))
    assert (back.config, back.hyper, back.L, back.q) == (chain.config, chain.hyper, chain.L, chain.q)
    write_chain(tmp_path / "again.jsonl", back)
    assert (tmp_path / "again.jsonl").read_bytes() == p.read_bytes()


def test_truncated_chain_reports_offset(tmp_path, chain):
    p = tmp_path / "chain.jsonl"
    write_chain(p, chain)
    raw = p.read_bytes()
    lines = raw.splitlines(keepends=True)
    cut = sum(len(x) for x in lines[:51])
    p.write_bytes(raw[:cut + 30])
    with pytest.raises(ChainFormatError, match=f"truncated record at byte offset {cut}"):
        read_chain(p)
    p.write_bytes(raw[:cut])
    with pytest.raises(ChainFormatError, match=f"truncated at byte offset {cut}.*found 50"):
        read_chain(p)


def test_chain_version_and_format_checks(tmp_path, chain):
    p = tmp_path / "chain.jsonl"
    write_chain(p, chain)
    lines = p.read_text().splitlines(keepends=True)
    header = json.loads(lines[0])
    header["version"] = 99
    p.write_text(json.dumps(header) + "\n" + "".join(lines[1:]))
    with pytest.raises(ChainFormatError, match="version 99"):
        read_chain(p)
    p.write_text('{"format": "other"}\n')
    with pytest.raises(ChainFormatError, match="not a recurnum-chain"):
        read_chain(p)
    p.write_text(lines[0] + "{not json\n")
    with pytest.raises(ChainFormatError, match=f"malformed record at byte offset {len(lines[0])}"):
        read_chain(p)


def test_ground_truth_round_trip(tmp_path):
    _, truth = simulate(SimulationConfig(L=9, seed=4))
    p = tmp_path / "truth.json"
    write_ground_truth(p, truth)
    back = read_ground_truth(p)
    assert back.config == truth.config
    np.testing.assert_array_equal(back.survival, truth.survival)
    np.testing.assert_array_equal(back.cluster, truth.cluster)
    for a, b in zip(back.log_gaps, truth.log_gaps):
        np.testing.assert_array_equal(a, b)


CONFIG = """\
# small run
iterations = 500
burn_in = 100   # trailing comment
thin = 2
seed = 8
sigma2_m = 0.5
max_events = 40
out = results
chains = 2
sim.L = 30
sim.censor_rate = 0.5
sim.beta = -1, 1
sim.cluster_atoms = 1 -0.8 5; 2 0 6
"""


def test_config_parsing(tmp_path):
    cfg = parse_config(write(tmp_path, CONFIG, "run.cfg"))
    assert (cfg.sampler.iterations, cfg.sampler.burn_in, cfg.sampler.thin) == (500, 100, 2)
    assert cfg.hyper.sigma2_m == 0.5 and cfg.hyper.max_events == 40
    assert cfg.out_dir == "results" and cfg.chains == 2 and cfg.data_path is None
    sim = cfg.simulation
    assert sim.L == 30 and sim.beta == (-1.0, 1.0) and sim.seed == 8
    assert [(a.m1, a.m2, a.delta) for a in sim.cluster_atoms] == [(1, -0.8, 5), (2, 0, 6)]
    assert parse_config_text(format_config(cfg)) == cfg


def test_default_config_round_trip():
    cfg = parse_config_text("")
    assert cfg.sampler == SamplerConfig() and cfg.hyper == Hyperparams() and cfg.simulation is None
    assert parse_config_text(format_config(cfg)) == cfg


@pytest.mark.parametrize("text, message", [
    ("iterations = 10\nbogus = 1\n", "run.cfg:2: unknown key 'bogus'"),
    ("thin = 2\nthin = 3\n", "run.cfg:2: key 'thin' already set on line 1"),
    ("iterations = 1.5\n", "run.cfg:1: iterations"),
    ("just words\n", "run.cfg:1: expected 'key = value'"),
    ("sim.nonsense = 1\n", "unknown key 'sim.nonsense'"),
    ("iterations = 10\nburn_in = 10\n", "burn"),
])
def test_config_errors(text, message):
    with pytest.raises(ConfigError, match=message):
        parse_config_text(text, "run.cfg")


def test_tables_round_trip(tmp_path):
    rows = [{"a": 1.5, "b": True, "c": "x"}, {"a": 0.1, "b": False, "c": "y"}]
    write_table(tmp_path / "t.csv", rows, ["c", "a", "b"])
    back = read_table(tmp_path / "t.csv")
    assert back == [{"c": "x", "a": "1.5", "b": "1"}, {"c": "y", "a": "0.1", "b": "0"}]
    m = np.array([[1.0, 0.25], [0.25, 1.0]])
    write_matrix(tmp_path / "m.csv", m, ["p", "q"])
    got, labels = read_matrix(tmp_path / "m.csv")
    np.testing.assert_array_equal(got, m)
    assert labels == ["p", "q"]
