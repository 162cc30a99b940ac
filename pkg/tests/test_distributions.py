from collections import Counter
from itertools import permutations
from math import factorial

import pytest

from permruns import distributions as dist
from permruns.errors import GuardError
from permruns.perms import (descent_count, is_canonical_j_half_ascending, is_half_ascending,
                            is_j_half_ascending, run_count, t_statistic)
from permruns.poly import IntPolynomial, divide_exact_x_plus_1, is_log_concave, multiply


def brute(n, stat, keep=lambda p: True, weight=1):
    """Scalar oracle: scan itertools.permutations with the per-permutation functions."""
    c = Counter(stat(p) for p in permutations(range(1, n + 1)) if keep(p))
    return {k: weight * v for k, v in c.items()}


class TestRunDistribution:
    @pytest.mark.parametrize("n,expected", [
        (2, {1: 2}),
        (3, {1: 2, 2: 4}),
        (4, {1: 2, 2: 12, 3: 10}),
    ])
    def test_small_rows(self, n, expected):
        assert dist.run_distribution(n).counts == expected

    @pytest.mark.parametrize("n", range(2, 9))
    def test_matches_scalar_scan(self, n):
        table = dist.run_distribution(n)
        assert table.counts == brute(n, run_count)
        assert table.total == factorial(n)
        assert all(c % 2 == 0 for c in table.counts.values())

    def test_rejects_n1(self):
        with pytest.raises(ValueError):
            dist.run_distribution(1)

    def test_guard(self):
        with pytest.raises(GuardError):
            dist.run_distribution(11)

    @pytest.mark.parametrize("n", range(4, 11))
    def test_vanishes_at_minus_one(self, n):
        assert dist.runs_polynomial(n)(-1) == 0


class TestDescentDistribution:
    def test_n4(self):
        assert dist.descent_distribution(4).counts == {0: 1, 1: 11, 2: 11, 3: 1}

    def test_n1(self):
        assert dist.descent_distribution(1).counts == {0: 1}

    def test_n6(self):
        assert dist.descent_distribution(6).sequence() == [1, 57, 302, 302, 57, 1]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_symmetric_and_matches_scan(self, n):
        table = dist.descent_distribution(n)
        assert table.counts == brute(n, descent_count)
        assert all(table[k] == table[n - 1 - k] for k in range(n))


class TestTDistribution:
    def test_n4(self):
        table = dist.t_distribution(4, 1)
        assert table.counts == {1: 2, 2: 10}
        assert table.total == 12

    def test_n6_j2(self):
        assert dist.t_distribution(6, 2).counts == {1: 2, 2: 56, 3: 122}

    @pytest.mark.parametrize("n", range(4, 9))
    def test_matches_scalar_scan(self, n):
        for j in range(1, (n - 2) // 2 + 1):
            expected = brute(n, lambda p: t_statistic(p, j),
                             lambda p: is_canonical_j_half_ascending(p, j), weight=2)
            table = dist.t_distribution(n, j)
            assert table.counts == expected
            assert table.total == factorial(n) // 2 ** j

    def test_unrestricted_sum_is_not_the_quotient(self):
        # summing over every 1-half-ascending permutation without the ascent at
        # position n-1-2j gives 4x + 8x^2, not R_4/(x+1) = 2x + 10x^2
        literal = brute(4, lambda p: t_statistic(p, 1), lambda p: is_j_half_ascending(p, 1))
        assert literal == {1: 4, 2: 8}

    @pytest.mark.parametrize("n,j", [(3, 1), (4, 0), (4, 2), (7, 3)])
    def test_range(self, n, j):
        with pytest.raises(ValueError):
            dist.t_distribution(n, j)


class TestHalfAscending:
    def test_n4(self):
        assert dist.half_ascending_descent_distribution(4).counts == {0: 1, 1: 5}

    def test_n6(self):
        table = dist.half_ascending_descent_distribution(6)
        assert table.counts == {0: 1, 1: 28, 2: 61}
        assert table.total == 90

    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_relation_to_t_polynomial(self, n):
        u = dist.half_ascending_descent_distribution(n)
        t = dist.t_distribution(n, (n - 2) // 2)
        assert {k + 1: 2 * c for k, c in u.counts.items()} == t.counts

    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_runs_are_twice_descents_plus_one(self, n):
        u = dist.half_ascending_descent_distribution(n)
        runs = dist.runs_on_half_ascending(n)
        assert runs.counts == {2 * k + 1: c for k, c in u.counts.items()}

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            dist.half_ascending_descent_distribution(5)


class TestOddT:
    def test_n5(self):
        table = dist.odd_t_distribution(5)
        assert table.counts == {0: 2, 1: 26, 2: 32}
        assert table.total == 60
        assert is_log_concave(table.sequence()).ok

    def test_n5_reconstructs_r5(self):
        t = dist.odd_t_distribution(5).polynomial()
        assert multiply(IntPolynomial((0, 1, 1)), t) == dist.runs_polynomial(5)

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_matches_scan(self, n):
        assert dist.odd_t_distribution(n).counts == brute(n, descent_count, is_half_ascending, 2)

    def test_even_rejected(self):
        with pytest.raises(ValueError):
            dist.odd_t_distribution(6)


class TestFactorization:
    def test_n4(self):
        f = dist.factorize_runs_polynomial(4)
        assert f.m == 1
        assert f.t_polynomial.to_dict() == {1: 2, 2: 10}
        assert f.verified

    @pytest.mark.parametrize("n", range(4, 10))
    def test_verified(self, n):
        f = dist.factorize_runs_polynomial(n)
        assert f.verified, f.error
        assert f.reconstructed == f.r_polynomial
        assert f.m == (n - 2) // 2
        assert f.core[0] == 2  # only the identity and its complement have one run

    def test_n5_against_odd_table(self):
        f = dist.factorize_runs_polynomial(5)
        assert f.core == dist.odd_t_distribution(5).polynomial()


class TestQuotients:
    @pytest.mark.parametrize("n", range(4, 10))
    def test_every_j(self, n):
        checks = dist.verify_quotients(n)
        assert len(checks) == (n - 2) // 2
        assert all(c.ok for c in checks)

    @pytest.mark.parametrize("n", range(4, 10))
    def test_quotients_are_nonnegative(self, n):
        r = dist.runs_polynomial(n)
        for j in range(1, (n - 2) // 2 + 1):
            assert all(c >= 0 for c in divide_exact_x_plus_1(r, j))


class TestPairInvariance:
    def test_worked_example(self):
        assert dist.verify_pair_invariance(4, 1, 1).ok

    def test_boundary_position_holds(self):
        assert dist.verify_pair_invariance(6, 1, 3).ok
        assert dist.verify_pair_invariance(6, 2, 1).ok

    @pytest.mark.parametrize("i", [1, 2])
    def test_interior_positions_fail(self, i):
        res = dist.verify_pair_invariance(6, 1, i)
        assert not res.ok
        assert res.expected_half == IntPolynomial((0, 1, 29, 89, 61))

    def test_range(self):
        with pytest.raises(ValueError):
            dist.verify_pair_invariance(6, 2, 2)


@pytest.mark.parametrize("n", range(4, 10))
def test_counting_polynomial_products_stay_log_concave(n):
    polys = [dist.runs_polynomial(n), dist.descent_distribution(n).polynomial()]
    if n % 2 == 0:
        polys.append(dist.half_ascending_descent_distribution(n).polynomial())
    else:
        polys.append(dist.odd_t_distribution(n).polynomial())
    for a in polys:
        for b in polys:
            seq = list(multiply(a, b))
            first = next(i for i, c in enumerate(seq) if c)
            assert is_log_concave(seq[first:]).ok
