"""Command-line interface: ``recurnum {simulate,fit,summarize,predict}``.

Every command exits with status 1 and a one-line message on failure, after
removing any files it had started to write.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .io import (ChainWriter, RunConfig, parse_config, parse_dataset_csv, read_chain,
                 remove_quietly, write_dataset_csv, write_ground_truth, write_matrix,
                 write_table)
from .posterior import (binder_partition, cluster_count_distribution, cluster_kaplan_meier,
                        coclustering_matrix, coefficient_table, n_events_table,
                        predictive_outcome_draws, predictive_random_effect_draws)
from .sampler import run_chain
from .simulate import SimulationConfig, simulate
from .state import Chain, make_rng

log = logging.getLogger("recurnum")

# spawn key reserved for post-processing draws, disjoint from chain indices
POSTERIOR_STREAM = 2 ** 32 - 1


class CommandError(RuntimeError):
    pass


class _Outputs:
    """Tracks files a command creates so they can be removed on failure."""

    def __init__(self, out_dir):
        self.dir = Path(out_dir)
        self.created_dir = not self.dir.exists()
        self.dir.mkdir(parents=True, exist_ok=True)
        self.paths = []

    def path(self, name) -> Path:
        p = self.dir / name
        self.paths.append(p)
        return p

    def discard(self):
        remove_quietly(self.paths)
        if self.created_dir:
            try:
                self.dir.rmdir()
            except OSError:
                pass


def _config(args) -> RunConfig:
    return parse_config(args.config) if args.config else RunConfig()


# -- commands ---------------------------------------------------------------------

def cmd_simulate(args, out: _Outputs):
    cfg = _config(args)
    sim = cfg.simulation or SimulationConfig(seed=cfg.sampler.seed)
    data, truth = simulate(sim)
    write_dataset_csv(out.path("data.csv"), data)
    write_ground_truth(out.path("truth.json"), truth)
    log.info("simulated %d individuals (%d censored) into %s", data.L,
             int(data.censored.sum()), out.dir)


def _fit_one(cfg: RunConfig, data, chain_path, progress_path, chain_index, log_every):
    start = time.perf_counter()
    with ChainWriter(chain_path, cfg.sampler, cfg.hyper, data.L, data.q, chain_index) as w, \
            open(progress_path, "w", newline="") as fh:
        prog = csv.writer(fh, lineterminator="\n")
        prog.writerow(["iteration", "seconds", "n_clusters", "birth_acceptance",
                       "death_acceptance"])

        def progress(t, state, sampler):
            if t % log_every == 0 or t == cfg.sampler.iterations:
                st = sampler.stats
                prog.writerow([t, f"{time.perf_counter() - start:.3f}", state.n_clusters,
                               f"{st.birth_rate:.4f}", f"{st.death_rate:.4f}"])
                fh.flush()
                log.info("chain %d: iteration %d/%d, %d clusters", chain_index, t,
                         cfg.sampler.iterations, state.n_clusters)

        run_chain(data, cfg.hyper, cfg.sampler, chain_index, callback=progress,
                  sink=w.write, keep=False)


def cmd_fit(args, out: _Outputs):
    cfg = _config(args)
    data_path = args.data or cfg.data_path
    if not data_path:
        raise CommandError("no dataset given (use --data or the 'data' config key)")
    data = parse_dataset_csv(data_path)
    chains = args.chains or cfg.chains
    log_every = args.log_every or max(1, cfg.sampler.iterations // 100)
    for c in range(chains):
        _fit_one(cfg, data, out.path(f"chain_{c}.jsonl"), out.path(f"progress_{c}.csv"), c,
                 log_every)


def _load_chains(paths) -> Chain:
    chains = [read_chain(p) for p in paths]
    first = chains[0]
    for p, ch in zip(paths[1:], chains[1:]):
        if (ch.L, ch.q) != (first.L, first.q) or ch.hyper != first.hyper:
            raise CommandError(f"{p}: chain does not match {paths[0]} (dimensions or priors)")
    if len(chains) == 1:
        return first
    return Chain([s for ch in chains for s in ch.samples], first.config, first.hyper,
                 [t for ch in chains for t in ch.iterations], first.L, first.q, first.chain_index)


def cmd_summarize(args, out: _Outputs):
    chain = _load_chains(args.chain)
    data = parse_dataset_csv(args.data)
    if data.L != chain.L or data.q != chain.q:
        raise CommandError(f"dataset has L={data.L}, q={data.q} but the chain has "
                           f"L={chain.L}, q={chain.q}")
    if len(chain) == 0:
        raise CommandError("chain holds no samples")
    level = args.level
    write_table(out.path("n_summary.csv"), n_events_table(chain, data, level),
                ["id", "mean", "lower", "upper", "n_observed", "censored"])
    write_table(out.path("coefficients.csv"), coefficient_table(chain, level),
                ["parameter", "mean", "lower", "upper"])
    dist = cluster_count_distribution(chain)
    write_table(out.path("cluster_counts.csv"),
                [{"n_clusters": k, "probability": v} for k, v in dist.items()],
                ["n_clusters", "probability"])
    write_matrix(out.path("coclustering.csv"), coclustering_matrix(chain), data.ids)
    part = binder_partition(chain)
    write_table(out.path("partition.csv"),
                [{"id": i, "cluster": int(k)} for i, k in zip(data.ids, part.labels)],
                ["id", "cluster"])
    km = cluster_kaplan_meier(chain, part, n_largest=args.km_clusters)
    write_table(out.path("km.csv"),
                [{"cluster": k, "time": t, "survival": s}
                 for k, (times, surv) in km.items() for t, s in zip(times, surv)],
                ["cluster", "time", "survival"])
    seed = chain.seed if args.seed is None else args.seed
    rng = make_rng(seed, POSTERIOR_STREAM)
    draws = predictive_random_effect_draws(chain, args.draws, rng)
    write_table(out.path("re_draws.csv"),
                [{"m1": d.m1, "m2": d.m2, "delta": d.delta} for d in draws],
                ["m1", "m2", "delta"])


def cmd_predict(args, out: _Outputs):
    chain = _load_chains(args.chain)
    if len(chain) == 0:
        raise CommandError("chain holds no samples")
    try:
        x = np.array([float(v) for v in args.covariates.split(",")])
    except ValueError:
        raise CommandError(f"--covariates must be comma-separated numbers, got {args.covariates!r}")
    seed = chain.seed if args.seed is None else args.seed
    rng = make_rng(seed, POSTERIOR_STREAM)
    draws = predictive_outcome_draws(chain, x, args.draws, rng, args.max_attempts, args.on_cap)
    rows = []
    for d, (N, S, y) in enumerate(draws):
        done = y is not None
        rows.append({"draw": d, "N": N, "complete": done, "S": S if done else "",
                     "log_gaps": " ".join(repr(float(v)) for v in y) if done else ""})
    write_table(out.path("predictive.csv"), rows, ["draw", "N", "complete", "S", "log_gaps"])
    skipped = sum(not r["complete"] for r in rows)
    if skipped:
        log.warning("%d of %d draws hit the rejection cap; their S and gaps are left blank",
                    skipped, len(rows))


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="recurnum", description=(
        "Bayesian joint model of recurrent gap times and a terminal event "
        "with Dirichlet-process random effects."))
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-q", "--quiet", action="store_true", help="only report errors")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", parents=[common], help="draw a synthetic dataset and its ground truth")
    s.add_argument("--config", help="run configuration file (sim.* keys)")
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(func=cmd_simulate)

    f = sub.add_parser("fit", parents=[common], help="run the sampler and write chain files")
    f.add_argument("--config", help="run configuration file")
    f.add_argument("--data", help="dataset CSV (overrides the 'data' key)")
    f.add_argument("--out", required=True, help="output directory")
    f.add_argument("--chains", type=int, help="number of independent chains")
    f.add_argument("--log-every", type=int, help="progress log interval in sweeps")
    f.set_defaults(func=cmd_fit)

    m = sub.add_parser("summarize", parents=[common], help="posterior summary tables from chain files")
    m.add_argument("--chain", required=True, nargs="+", help="chain file(s); samples are pooled")
    m.add_argument("--data", required=True, help="the dataset CSV the chain was fitted to")
    m.add_argument("--out", required=True, help="output directory")
    m.add_argument("--level", type=float, default=0.95, help="credible level (default 0.95)")
    m.add_argument("--draws", type=int, default=1000, help="predictive random-effect draws")
    m.add_argument("--km-clusters", type=int, default=2,
                   help="Kaplan-Meier curves for this many largest clusters")
    m.add_argument("--seed", type=int, help="seed for predictive draws (default: chain seed)")
    m.set_defaults(func=cmd_summarize)

    r = sub.add_parser("predict", parents=[common], help="posterior predictive outcomes for a new individual")
    r.add_argument("--chain", required=True, nargs="+", help="chain file(s); samples are pooled")
    r.add_argument("--covariates", required=True, help='comma-separated, e.g. "0.5,1"')
    r.add_argument("--draws", type=int, default=1000)
    r.add_argument("--out", required=True, help="output directory")
    r.add_argument("--seed", type=int, help="seed for the draws (default: chain seed)")
    r.add_argument("--max-attempts", type=int, default=10 ** 6,
                   help="rejection proposals allowed per draw")
    r.add_argument("--on-cap", choices=("raise", "skip"), default="raise",
                   help="when a draw exhausts its proposals: fail (default) or keep only N")
    r.set_defaults(func=cmd_predict)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s", stream=sys.stderr)
    out = None
    try:
        out = _Outputs(args.out)
        args.func(args, out)
    except KeyboardInterrupt:
        if out is not None:
            out.discard()
        print(f"recurnum {args.command}: interrupted", file=sys.stderr)
        return 130
    except Exception as exc:
        if out is not None:
            out.discard()
        msg = " ".join(str(exc).split()) or type(exc).__name__
        print(f"recurnum {args.command}: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
