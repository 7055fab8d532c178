import math

import numpy as np
import pytest
from scipy import stats

from recurnum.slice import SliceSamplingError, slice_sample, slice_step


def run(log_target, x0, n, rng, **kw):
    out = np.empty(n)
    x = x0
    for k in range(n):
        x = slice_sample(log_target, x, rng=rng, **kw)
        out[k] = x
    return out


def test_standard_normal_target():
    rng = np.random.default_rng(0)
    xs = run(lambda x: -0.5 * x * x, 3.0, 20000, rng)[::5]
    assert stats.kstest(xs, "norm").pvalue > 0.01


def test_gamma_target_with_boundary():
    rng = np.random.default_rng(1)
    def lp(x):
        return 1.5 * math.log(x) - x if x > 0 else -math.inf
    xs = run(lp, 1.0, 20000, rng, w=2.0)[::5]
    assert stats.kstest(xs, stats.gamma(2.5).cdf).pvalue > 0.01


def test_bimodal_target_small_width():
    rng = np.random.default_rng(2)
    mix = [(-2.0, 0.6), (2.0, 0.4)]
    def lp(x):
        return math.log(sum(w * math.exp(-0.5 * (x - m) ** 2) for m, w in mix))
    xs = run(lp, 0.0, 40000, rng, w=1.0, max_steps=100)[::5]
    cdf = lambda v: sum(w * stats.norm(m).cdf(v) for m, w in mix)
    assert stats.kstest(xs, cdf).pvalue > 0.01


def test_returns_logp_of_new_point():
    rng = np.random.default_rng(3)
    lp = lambda x: -abs(x)
    x, logp = slice_step(lp, 0.5, rng=rng)
    assert logp == lp(x)


def test_nonfinite_start_raises():
    with pytest.raises(SliceSamplingError, match="starting point"):
        slice_step(lambda x: -math.inf, 0.0, rng=np.random.default_rng(0))


def test_budget_exhaustion_is_valid_unless_strict():
    rng = np.random.default_rng(4)
    flat = lambda x: 0.0
    x = slice_sample(flat, 0.0, w=1.0, max_steps=3, rng=rng)
    assert abs(x) <= 3.0
    with pytest.raises(SliceSamplingError, match="exhausted"):
        slice_sample(flat, 0.0, w=1.0, max_steps=3, rng=rng, strict=True)


def test_shrinkage_cap():
    # slice of (numerically) zero width around x0: shrinkage can never succeed
    def spike(x):
        return 0.0 if x == 0.5 else -math.inf
    with pytest.raises(SliceSamplingError, match="shrinkage"):
        slice_step(spike, 0.5, rng=np.random.default_rng(5), max_shrinks=50)
