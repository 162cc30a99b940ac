"""Acceptance suite: one test per numbered criterion.

Each test checks its statement exactly and within its runtime budget.  The
terminal summary (see conftest.py) prints one PASS/FAIL line per criterion.
"""
import time

import pytest

from permruns import distributions as dist
from permruns import verify
from permruns.paths import Restriction
from permruns.perms import (complement, enumerate_permutations, half_ascending_bound,
                            pairing_defects, run_count)
from permruns.phi import audit_quasi_injection, valid_audit_ks


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


def failures_of(results):
    return [f"{r.name} n={r.n}: {r.counterexample}" for r in results if not r.passed]


@pytest.mark.criterion(1, "golden run tables R_2, R_3, R_4")
def test_golden_tables():
    with Budget(1):
        assert dist.run_distribution(2).counts == {1: 2}
        assert dist.run_distribution(3).counts == {1: 2, 2: 4}
        assert dist.run_distribution(4).counts == {1: 2, 2: 12, 3: 10}


@pytest.mark.criterion(2, "factorisation R_n = x (x+1)^m T_n, n = 4..10")
def test_factorization():
    with Budget(60):
        bad = []
        for n in range(4, 11):
            f = dist.factorize_runs_polynomial(n)
            if not f.verified:
                bad.append(f"n={n}: {f.error or f'{f.core} != {f.enumerated}'}")
        assert not bad, bad


@pytest.mark.criterion(3, "bijection roundtrip and |P(n,k)| = A(n,k), n <= 8")
def test_bijection():
    with Budget(30):
        bad = failures_of(verify.check_bijection(n) for n in range(1, 9))
        assert not bad, bad


@pytest.mark.criterion(4, "path-count DP equals enumeration, n <= 8, all restrictions")
def test_dp_oracle():
    with Budget(60):
        bad = failures_of(verify.check_dp_oracle(n) for n in range(1, 9))
        assert not bad, bad


@pytest.mark.criterion(5, "half-ascending cardinalities, runs = 2 des + 1, |V(n,k)| = U(n,k)")
def test_half_ascending_identities():
    with Budget(60):
        results = [verify.check_trivi(n) for n in range(2, 10)]
        bad = failures_of(results)
        assert not bad, bad
        assert all(results[n - 2].details["runs_formula_failures"] == 0 for n in (4, 6, 8))


@pytest.mark.criterion(6, "log-concavity of R, A, U, odd-T for n <= 10")
def test_log_concavity():
    with Budget(120):
        bad = failures_of(verify.check_log_concavity(n) for n in range(1, 11))
        assert not bad, bad


@pytest.mark.criterion(7, "tail-swap audit for n <= 6 plus the n = 7, k = 3 spot check")
def test_phi_audit():
    with Budget(600):
        bad = []
        for n in range(3, 7):
            for k in valid_audit_ks(n):
                for r in Restriction:
                    rec = audit_quasi_injection(n, k, r)
                    if not rec.passed:
                        bad.append(rec.as_dict(timing=False))
        spot = audit_quasi_injection(7, 3, Restriction.ALL)
        if not spot.passed:
            bad.append(spot.as_dict(timing=False))
        assert not bad, bad
        assert spot.domain_pairs == 1191 * 1191
        assert spot.target_size == 2416


@pytest.mark.criterion(8, "swap invariance at every (i, i+1), n <= 7")
def test_invariance():
    with Budget(60):
        bad = failures_of(verify.check_invariance(n) for n in range(4, 8))
        assert not bad, bad


@pytest.mark.criterion(9, "property suite: complement, I_j pairing, R_n(-1) = 0, Eulerian symmetry")
def test_property_suite():
    with Budget(60):
        problems = []
        for n in range(1, 9):
            for p in enumerate_permutations(n):
                q = complement(p)
                if complement(q) != p or run_count(q) != run_count(p):
                    problems.append(f"complement fails at {p}")
                    break
            a = dist.descent_distribution(n)
            if any(a[k] != a[n - 1 - k] for k in range(n)):
                problems.append(f"A({n}, k) is not symmetric")
            if n >= 4:
                if dist.runs_polynomial(n)(-1) != 0:
                    problems.append(f"R_{n}(-1) != 0")
                for j in range(1, half_ascending_bound(n) + 1):
                    defects = pairing_defects(n, j)
                    if defects:
                        d = defects[0]
                        problems.append(
                            f"I_{j} at n={n}: {len(defects)} permutations where t_{j - 1} does not "
                            f"move by one, e.g. {d.p} -> {d.image} with t = {d.t_p}, {d.t_image}")
        assert not problems, problems
