import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recurnum.data import (Dataset, DatasetValidationError, Individual, from_log_gaps,
                           to_log_gaps, validate_dataset)


def record(times=(), c=10.0, observed=False, x=(0.5, 1.0), ident=None):
    rec = {"covariates": x, "event_times": times, "censor_time": c, "survival_observed": observed}
    if ident is not None:
        rec["id"] = ident
    return rec


# -- transforms ------------------------------------------------------------------

def test_to_log_gaps_examples():
    np.testing.assert_array_equal(to_log_gaps([1.0]), [0.0])
    np.testing.assert_allclose(to_log_gaps([1.0, 3.0, 7.0]), [0.0, np.log(2), np.log(4)])
    assert to_log_gaps([]).shape == (0,)


def test_from_log_gaps_examples():
    np.testing.assert_array_equal(from_log_gaps([0.0]), [1.0])
    assert from_log_gaps([]).shape == (0,)
    np.testing.assert_array_equal(from_log_gaps([0.0, 0.0]), [1.0, 2.0])


@pytest.mark.parametrize("times, index", [([1.0, 1.0], 1), ([2.0, 1.0], 1), ([0.0, 1.0], 0),
                                          ([-1.0], 0), ([1.0, 2.0, 2.0], 2)])
def test_to_log_gaps_names_offending_index(times, index):
    with pytest.raises(ValueError, match=f"index {index}"):
        to_log_gaps(times)


def test_from_log_gaps_overflow_raises():
    with pytest.raises(OverflowError):
        from_log_gaps([800.0])
    with pytest.raises(OverflowError):
        from_log_gaps([709.5, 709.5])


def test_round_trip_random_vectors():
    rng = np.random.default_rng(3)
    for _ in range(100):
        t = np.cumsum(rng.exponential(rng.uniform(0.01, 100), size=rng.integers(1, 40)))
        np.testing.assert_allclose(from_log_gaps(to_log_gaps(t)), t, rtol=1e-10)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-20, 20), min_size=1, max_size=30))
def test_round_trip_from_gaps(gaps):
    y = np.array(gaps)
    t = from_log_gaps(y)
    assert np.all(np.diff(t) >= 0)
    np.testing.assert_allclose(np.exp(y).sum(), t[-1], rtol=1e-10)


# -- containers ----------------------------------------------------------------

def test_individual_is_immutable():
    ind = Individual([1.0], [1.0, 2.0], 3.0, True)
    with pytest.raises(ValueError):
        ind.event_times[0] = 5.0
    with pytest.raises(AttributeError):
        ind.censor_time = 4.0
    assert ind.n_events == 2
    np.testing.assert_allclose(ind.log_gaps, [0.0, 0.0])


def test_single_censored_row_without_events():
    data = validate_dataset([record(c=10.0)])
    assert data.L == 1 and data.q == 2
    assert data[0].n_events == 0 and data.censored.tolist() == [True]


def test_event_after_censor_time_is_rejected():
    with pytest.raises(DatasetValidationError) as info:
        validate_dataset([record(), record(times=(12.0,), c=10.0, ident="p7")])
    (msg,) = info.value.errors
    assert "p7" in msg and "T <= c" in msg


def test_all_errors_are_collected():
    recs = [record(times=(1.0, 1.0)), record(x=(1.0,)), record(c=-1.0),
            record(ident="a"), record(ident="a")]
    with pytest.raises(DatasetValidationError) as info:
        validate_dataset(recs)
    text = " | ".join(info.value.errors)
    assert "duplicate event time" in text
    assert "expected 2 covariates" in text
    assert "censor time must be positive" in text
    assert "duplicate id" in text


def test_line_numbers_in_messages():
    rec = record(times=(5.0, 4.0))
    rec["lines"] = [3, 4, 5]
    with pytest.raises(DatasetValidationError, match="lines 3-5"):
        validate_dataset([rec])


def test_empty_input_rejected():
    with pytest.raises(DatasetValidationError):
        validate_dataset([])


def test_validation_is_idempotent():
    data = validate_dataset([record(times=(1.0, 4.0), c=5.0, observed=True), record()])
    again = validate_dataset(data)
    assert again == data
    assert validate_dataset(again) == data


def readmission_shaped_records():
    """403 individuals, 458 events in total (at most 22 each), 294 censored."""
    rng = np.random.default_rng(0)
    counts = np.zeros(403, dtype=int)
    counts[0] = 22
    rest = rng.multinomial(458 - 22, np.full(402, 1 / 402))
    counts[1:] = np.minimum(rest, 21)
    counts[1] += 458 - counts.sum()
    censored = np.zeros(403, dtype=bool)
    censored[rng.choice(403, 294, replace=False)] = True
    recs = []
    for i, n in enumerate(counts):
        t = np.cumsum(rng.exponential(100, size=n))
        c = (t[-1] if n else 0) + rng.exponential(500) + 1
        recs.append(record(tuple(t), c, not censored[i], tuple(rng.uniform(size=2)), str(i)))
    return recs


def test_readmission_shaped_dataset_summary():
    data = validate_dataset(readmission_shaped_records())
    s = data.summary()
    assert (s["L"], s["total_events"], s["censored"], s["observed"]) == (403, 458, 294, 109)
    assert s["max_events"] == 22


def test_empty_dataset_container_allowed_for_prior_runs():
    d = Dataset((), 2)
    assert d.L == 0 and d.covariate_matrix.shape == (0, 2)
