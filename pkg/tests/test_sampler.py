import math

import numpy as np
import pytest
import scipy.stats

from xebench import (
    DigitString,
    SampleBatch,
    batch_to_csv,
    draw_batch,
    draw_sample,
    empirical_histogram,
    enumerate_pmf,
    generate_weight_table,
    log_prob,
    log_prob_batch,
    make_batch,
)

from helpers import all_digit_rows, point_mass_table, uniform_table, worked_table


# ----------------------------------------------------------------- sampling


def test_point_mass_draws_only_zeros():
    t = point_mass_table(4, 2)
    batch = draw_batch(t, 500, 11)
    assert not batch.digits.any()
    assert np.all(batch.log_probs == 0.0)
    assert draw_sample(t, 123, 11).digits == (0, 0, 0, 0)


def test_batch_matches_single_draws():
    t = generate_weight_table(5, 3, 8)
    batch = draw_batch(t, 20, 99)
    for m in (0, 7, 19):
        assert batch.digit_string(m) == draw_sample(t, m, 99)


def test_batch_is_deterministic():
    t = uniform_table(3, 2)
    a = draw_batch(t, 1000, 7)
    b = draw_batch(t, 1000, 7)
    assert np.array_equal(a.digits, b.digits)
    assert np.array_equal(a.log_probs, b.log_probs)
    c = draw_batch(t, 1000, 8)
    assert not np.array_equal(a.digits, c.digits)


def test_batch_worker_and_chunk_invariance():
    t = generate_weight_table(6, 3, 21)
    base = draw_batch(t, 5003, 4)
    for workers in (2, 3, 7):
        alt = draw_batch(t, 5003, 4, workers=workers)
        assert np.array_equal(base.digits, alt.digits)
        assert np.array_equal(base.log_probs, alt.log_probs)
    chunked = draw_batch(t, 5003, 4, chunk_size=97)
    assert np.array_equal(base.digits, chunked.digits)
    assert np.array_equal(base.log_probs, chunked.log_probs)


def test_draw_batch_rejects_bad_arguments():
    t = uniform_table(2, 2)
    with pytest.raises(ValueError):
        draw_batch(t, 0, 1)
    with pytest.raises(ValueError):
        draw_batch(t, 10, 1, workers=0)
    with pytest.raises(ValueError):
        draw_batch(t, 10, 1, chunk_size=0)


def test_uniform_frequencies_within_five_sigma():
    t = uniform_table(3, 2)
    M = 1_000_000
    hist = empirical_histogram(draw_batch(t, M, 5))
    se = math.sqrt(0.125 * 0.875 / M)
    assert np.all(np.abs(hist.probs - 0.125) <= 5 * se)


def test_worked_example_frequencies_within_five_sigma():
    t = worked_table()
    M = 100_000
    hist = empirical_histogram(draw_batch(t, M, 17))
    for x, p in enumerate([0.42, 0.12, 0.28, 0.18]):
        se = math.sqrt(p * (1 - p) / M)
        assert abs(hist.probs[x] - p) <= 5 * se


def _pooled_chi_square_pvalue(table, M, seed):
    """Chi-square goodness of fit, pooling cells with expected count < 10."""
    expected = enumerate_pmf(table).probs * M
    observed = empirical_histogram(draw_batch(table, M, seed)).probs * M
    keep = expected >= 10.0
    obs = observed[keep].tolist()
    exp = expected[keep].tolist()
    if not np.all(keep):
        obs.append(float(observed[~keep].sum()))
        exp.append(float(expected[~keep].sum()))
        if exp[-1] < 10.0 and len(exp) > 1:
            exp[-2] += exp.pop()
            obs[-2] += obs.pop()
    stat, pvalue = scipy.stats.chisquare(obs, exp)
    return pvalue


@pytest.mark.parametrize("n,d,seed", [(12, 2, 31), (7, 3, 32)])
def test_sampled_counts_match_exact_pmf(n, d, seed):
    # joint goodness-of-fit over all d**n cells validates the whole scheme,
    # not just the marginals
    table = generate_weight_table(n, d, seed)
    assert _pooled_chi_square_pvalue(table, 1_000_000, seed + 1) >= 1e-4


# ----------------------------------------------------------------- log_prob


def test_log_prob_worked_values():
    t = worked_table()
    assert log_prob(t, DigitString((1, 1), 2)) == pytest.approx(
        math.log(0.18), abs=1e-12
    )
    assert log_prob(t, DigitString((0, 0), 2)) == pytest.approx(
        math.log(0.42), abs=1e-12
    )


def test_log_prob_uniform_is_minus_n_log_d():
    t = uniform_table(7, 3)
    s = DigitString((2, 1, 0, 2, 2, 1, 0), 3)
    assert log_prob(t, s) == pytest.approx(-7 * math.log(3), abs=1e-12)


def test_log_prob_zero_weight_is_minus_inf():
    t = point_mass_table(3, 2)
    assert log_prob(t, DigitString((1, 0, 0), 2)) == -math.inf


def test_log_prob_rejects_mismatched_string():
    t = worked_table()
    with pytest.raises(ValueError):
        log_prob(t, DigitString((1, 1, 1), 2))
    with pytest.raises(ValueError):
        log_prob(t, DigitString((1, 1), 3))


@pytest.mark.parametrize("n,d", [(16, 2), (10, 3), (6, 5)])
def test_log_probs_sum_to_one_over_all_outcomes(n, d):
    t = generate_weight_table(n, d, 1000 + n * d)
    lp = log_prob_batch(t, all_digit_rows(n, d))
    assert abs(np.exp(lp).sum() - 1.0) <= 1e-9


def test_log_prob_batch_matches_scalar():
    t = generate_weight_table(9, 4, 55)
    batch = draw_batch(t, 64, 3)
    for m in range(0, 64, 13):
        assert batch.log_probs[m] == log_prob(t, batch.digit_string(m))


# -------------------------------------------------------------- SampleBatch


def test_make_batch_computes_log_probs():
    t = worked_table()
    batch = make_batch(t, [[0, 0], [1, 1]])
    assert batch.log_probs == pytest.approx(
        [math.log(0.42), math.log(0.18)], abs=1e-12
    )
    assert batch.master_seed is None
    assert batch.M == 2


def test_sample_batch_rejects_bad_shapes():
    with pytest.raises(ValueError):
        make_batch(worked_table(), np.zeros((0, 2), dtype=np.int64))
    with pytest.raises(ValueError):
        make_batch(worked_table(), [[0, 2]])  # digit out of range
    with pytest.raises(ValueError):
        make_batch(worked_table(), [[0, 1, 1]])  # wrong width


def test_sample_batch_arrays_read_only():
    batch = draw_batch(uniform_table(2, 2), 10, 1)
    with pytest.raises(ValueError):
        batch.digits[0, 0] = 1
    with pytest.raises(ValueError):
        batch.log_probs[0] = 0.0


# ---------------------------------------------------------------- batch csv


def test_batch_csv_decimal_codes():
    t = worked_table()
    text = batch_to_csv(make_batch(t, [[0, 0], [1, 1]]))
    lines = text.splitlines()
    assert lines[0] == "sample_index,x_or_digits,log_prob"
    first = lines[1].split(",")
    assert first[0] == "0"
    assert first[1] == "0"
    assert float(first[2]) == pytest.approx(math.log(0.42), abs=1e-12)
    assert lines[2].split(",")[1] == "3"  # digits (1, 1) encode 1 + 2 = 3


def test_batch_csv_decimal_at_63_bit_boundary():
    t = uniform_table(63, 2)
    lines = batch_to_csv(make_batch(t, [[1] * 63])).splitlines()
    assert lines[1].split(",")[1] == str(2**63 - 1)


def test_batch_csv_digit_text_beyond_63_bits():
    t = uniform_table(70, 2)
    batch = make_batch(t, [[1] + [0] * 69])
    code = batch_to_csv(batch).splitlines()[1].split(",")[1]
    assert len(code) == 70
    assert code[0] == "1"
    assert set(code[1:]) == {"0"}


def test_batch_csv_uses_base36_letters():
    t = uniform_table(18, 12)  # 12**18 > 2**63 forces digit text
    batch = make_batch(t, [[11] * 18])
    assert batch_to_csv(batch).splitlines()[1].split(",")[1] == "b" * 18


def test_batch_csv_rejects_unprintable_radix():
    t = uniform_table(12, 40)  # 40**12 > 2**63 and d > 36
    batch = make_batch(t, [[39] * 12])
    with pytest.raises(ValueError):
        batch_to_csv(batch)


def test_batch_csv_log_probs_round_trip():
    t = generate_weight_table(8, 2, 14)
    batch = draw_batch(t, 25, 15)
    lines = batch_to_csv(batch).splitlines()
    assert len(lines) == 26
    for m, line in enumerate(lines[1:]):
        fields = line.split(",")
        assert int(fields[0]) == m
        assert float(fields[2]) == batch.log_probs[m]
