"""Bayesian joint modelling of recurrent gap times and a terminal event.

Gap times follow an AR(1) process on the log scale, survival is log-normal,
event counts are negative binomial, and individual random effects are
clustered by a Dirichlet process. Posterior inference uses a
transdimensional Gibbs sampler that imputes the events hidden by censoring.
"""

__version__ = "0.1.0"

from .data import Dataset, DatasetValidationError, Individual, validate_dataset
from .model import Globals, Hyperparams, RandomEffect
from .posterior import (Partition, binder_partition, coclustering_matrix, kaplan_meier,
                        predictive_outcome_draws, predictive_random_effect_draws,
                        summarize_scalar)
from .sampler import GibbsSampler, gibbs_sweep, run_chain
from .simulate import SimulationConfig, simulate
from .state import Chain, ModelState, SamplerConfig, make_rng

__all__ = [
    "Chain", "Dataset", "DatasetValidationError", "GibbsSampler", "Globals", "Hyperparams",
    "Individual", "ModelState", "Partition", "RandomEffect", "SamplerConfig",
    "SimulationConfig", "binder_partition", "coclustering_matrix", "gibbs_sweep",
    "kaplan_meier", "make_rng", "predictive_outcome_draws", "predictive_random_effect_draws",
    "run_chain", "simulate", "summarize_scalar", "validate_dataset",
]
