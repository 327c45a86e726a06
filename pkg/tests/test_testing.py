import itertools
import math

import numpy as np
import pytest

from errexp import (
    BinaryHypothesis,
    DegenerateHypothesisError,
    EmpiricalType,
    ValidationError,
    bayesian_error_exponent,
    chernoff_lambda_star,
    kl_divergence,
    make_distribution,
    neyman_pearson_min_beta,
    stein_errors,
    stein_region_membership,
    tilted,
    TiltedFamily,
)

D_HALF_QUARTER = 0.2075187496394219


@pytest.fixture
def bernoulli_pair():
    return BinaryHypothesis(
        make_distribution([0.5, 0.5]), make_distribution([0.25, 0.75])
    )


class TestBinaryHypothesis:
    def test_infinite_kl_rejected(self):
        with pytest.raises(ValidationError):
            BinaryHypothesis(make_distribution([1, 1]), make_distribution([1, 0]))

    def test_bad_priors(self):
        with pytest.raises(ValidationError):
            BinaryHypothesis(
                make_distribution([1, 1]), make_distribution([1, 3]), priors=(1.0, 0.0)
            )


class TestSteinRegion:
    def test_type_at_p1_is_member(self, bernoulli_pair):
        t = EmpiricalType((1, 1), 2)
        assert stein_region_membership(t, bernoulli_pair, 1e-6)

    def test_far_type_outside(self, bernoulli_pair):
        t = EmpiricalType((0, 2), 2)
        assert not stein_region_membership(t, bernoulli_pair, 0.1)

    def test_unbounded_region(self, bernoulli_pair):
        for counts in ((0, 2), (1, 1), (2, 0)):
            assert stein_region_membership(
                EmpiricalType(counts, 2), bernoulli_pair, 1e6
            )


class TestSteinErrors:
    def test_identical_hypotheses_keep_beta_high(self):
        h = BinaryHypothesis(make_distribution([1, 1]), make_distribution([1, 1]))
        report = stein_errors(h, 50, 0.1)
        assert report.beta_n > 0.9
        assert report.exponent < 0.01

    def test_exponent_within_widened_band(self, bernoulli_pair):
        report = stein_errors(bernoulli_pair, 500, 0.05)
        assert report.alpha_n < 0.5
        slack = abs(math.log2(1.0 - report.alpha_n)) / 500
        assert D_HALF_QUARTER - 0.05 - slack <= report.exponent
        assert report.exponent <= D_HALF_QUARTER + 0.05 + slack

    def test_alpha_decreases_with_n(self, bernoulli_pair):
        alphas = [
            stein_errors(bernoulli_pair, n, 0.02).alpha_n for n in (100, 500, 2000)
        ]
        assert alphas[0] > alphas[1] > alphas[2]


def brute_force_np_beta(p1, p2, n, eps):
    """Optimal randomized LR test over all 2**n sequences."""
    items = []
    for seq in itertools.product((0, 1), repeat=n):
        m1 = float(np.prod([p1[s] for s in seq]))
        m2 = float(np.prod([p2[s] for s in seq]))
        ratio = m1 / m2 if m2 > 0 else math.inf
        items.append((ratio, m1, m2))
    items.sort(key=lambda x: -x[0])
    target = 1.0 - eps
    acc = 0.0
    beta = 0.0
    for _, m1, m2 in items:
        if acc + m1 < target:
            acc += m1
            beta += m2
        else:
            beta += (target - acc) / m1 * m2
            break
    return beta


class TestNeymanPearson:
    def test_matches_brute_force(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            p1 = make_distribution(rng.uniform(0.1, 1, 2))
            p2 = make_distribution(rng.uniform(0.1, 1, 2))
            h = BinaryHypothesis(p1, p2)
            n = int(rng.integers(2, 9))
            eps = float(rng.uniform(0.02, 0.45))
            mine = neyman_pearson_min_beta(h, n, eps)
            oracle = brute_force_np_beta(p1.probs, p2.probs, n, eps)
            assert mine == pytest.approx(oracle, abs=1e-10)

    def test_monotone_in_epsilon(self, bernoulli_pair):
        betas = [
            neyman_pearson_min_beta(bernoulli_pair, 40, eps)
            for eps in (0.05, 0.1, 0.2, 0.4)
        ]
        assert all(b1 >= b2 for b1, b2 in zip(betas, betas[1:]))

    def test_exponent_approaches_kl(self, bernoulli_pair):
        gaps = []
        for n in (100, 500, 2000):
            beta = neyman_pearson_min_beta(bernoulli_pair, n, 0.05)
            gaps.append(abs(-math.log2(beta) / n - D_HALF_QUARTER))
        assert gaps[0] > gaps[1] > gaps[2]

    def test_epsilon_range(self, bernoulli_pair):
        with pytest.raises(ValidationError):
            neyman_pearson_min_beta(bernoulli_pair, 10, 0.5)


class TestChernoff:
    def test_symmetric_pair_midpoint(self):
        h = BinaryHypothesis(make_distribution([1, 3]), make_distribution([3, 1]))
        report = chernoff_lambda_star(h)
        assert report.lambda_star == pytest.approx(0.5, abs=1e-9)
        assert report.c_info == pytest.approx(D_HALF_QUARTER, abs=1e-9)

    def test_symmetric_value_is_kl_at_uniform_tilt(self):
        p1 = make_distribution([1, 3])
        p2 = make_distribution([3, 1])
        expected = kl_divergence(tilted(TiltedFamily(p1, p2), 0.5), p1)
        report = chernoff_lambda_star(BinaryHypothesis(p1, p2))
        assert report.c_info == pytest.approx(expected, abs=1e-9)

    def test_equalization_random_pairs(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            k = int(rng.integers(2, 4))
            p1 = make_distribution(rng.uniform(0.05, 1, k))
            p2 = make_distribution(rng.uniform(0.05, 1, k))
            if np.allclose(p1.probs, p2.probs):
                continue
            report = chernoff_lambda_star(BinaryHypothesis(p1, p2))
            assert abs(report.d1 - report.d2) <= 1e-9
            assert 0.0 < report.lambda_star < 1.0
            # interior optimum beats both one-sided exponents
            assert report.c_info < min(
                kl_divergence(p1, p2), kl_divergence(p2, p1)
            )

    def test_identical_pair_degenerate(self):
        d = make_distribution([1, 1])
        with pytest.raises(DegenerateHypothesisError):
            chernoff_lambda_star(BinaryHypothesis(d, d))


class TestBayesianExponent:
    def test_prior_independence(self):
        p1 = make_distribution([1, 1])
        p2 = make_distribution([1, 3])
        a = bayesian_error_exponent(BinaryHypothesis(p1, p2, priors=(0.5, 0.5)), 10)
        b = bayesian_error_exponent(BinaryHypothesis(p1, p2, priors=(0.9, 0.1)), 10)
        assert a == b

    def test_symmetric_value(self):
        h = BinaryHypothesis(make_distribution([1, 3]), make_distribution([3, 1]))
        assert bayesian_error_exponent(h, 5) == pytest.approx(D_HALF_QUARTER, abs=1e-9)
