"""Named verification suites used by the command line and the acceptance tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Dict, List, Optional

from . import distributions as dist
from . import paths, perms, phi
from .poly import divide_exact_x_plus_1, is_log_concave, support_is_interval
from .errors import NotDivisible


@dataclass
class CheckResult:
    name: str
    n: int
    passed: bool
    details: Dict[str, object] = field(default_factory=dict)
    counterexample: Optional[str] = None

    def as_dict(self) -> dict:
        out = {"check": self.name, "n": self.n, "passed": self.passed, "details": self.details}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _need(n: int, lo: int, what: str) -> None:
    if n < lo:
        raise ValueError(f"{what} needs n >= {lo}")


def check_divisibility(n: int, max_n: Optional[int] = None) -> CheckResult:
    _need(n, 4, "divisibility")
    r = dist.runs_polynomial(n, max_n=max_n)
    at_minus_one = r(-1)
    details = {"R_n": r.to_dict(), "R_n(-1)": at_minus_one, "R_n(1)": r(1)}
    try:
        q = divide_exact_x_plus_1(r, 1)
        details["quotient"] = q.to_dict()
        ok = at_minus_one == 0 and r(1) == factorial(n)
        return CheckResult("divisibility", n, ok, details)
    except NotDivisible as exc:
        return CheckResult("divisibility", n, False, details, str(exc))


def check_quotients(n: int, max_n: Optional[int] = None) -> CheckResult:
    _need(n, 4, "lemma-difficult")
    rows = dist.verify_quotients(n, max_n=max_n)
    fac = dist.factorize_runs_polynomial(n, max_n=max_n)
    details = {
        "m": fac.m,
        "T_n": fac.t_polynomial.to_dict(),
        "per_j": {str(c.j): c.ok for c in rows},
        "factorization_verified": fac.verified,
    }
    bad = next((c for c in rows if not c.ok), None)
    ce = None
    if bad is not None:
        ce = f"j={bad.j}: R_n/(x+1)^j = {bad.quotient} but enumerated R_n,j = {bad.enumerated}"
    elif not fac.verified:
        ce = fac.error or f"quotient {fac.core} != enumerated {fac.enumerated}"
    return CheckResult("lemma-difficult", n, bad is None and fac.verified, details, ce)


def check_trivi(n: int, max_n: Optional[int] = None) -> CheckResult:
    """Half-ascending cardinalities and, for even n, runs = 2 * descents + 1."""
    details: Dict[str, object] = {}
    ok = True
    ce = None
    for j in range(0, perms.half_ascending_bound(n) + 1):
        count = dist.j_half_ascending_count(n, j, max_n=max_n)
        expected = factorial(n) // 2 ** j
        details[f"j={j}"] = count
        if count != expected:
            ok, ce = False, f"{count} {j}-half-ascending permutations, expected {expected}"
    if n % 2 == 0 and n >= 4:
        bad = 0
        for block in perms.permutation_blocks(n, max_n=max(n, max_n or 0, perms.MAX_ENUMERATION_N)):
            block = block[dist._pairs_mask(block, n // 2)]
            wrong = dist.runs_of_rows(block) != 2 * dist.descents_of_rows(block) + 1
            if ce is None and wrong.any():
                ce = "runs != 2*descents+1 for " + "".join(map(str, block[wrong][0].tolist()))
            bad += int(wrong.sum())
        details["runs_formula_failures"] = bad
        ok = ok and bad == 0
        if n <= paths.MAX_PATH_N:
            u = dist.half_ascending_descent_distribution(n, max_n=max_n)
            v = paths.path_counts_dp(n, paths.Restriction.V)
            details["U"] = u.counts
            if any(u[k] != v[k] for k in range(n)):
                ok, ce = False, f"|V(n,k)| = {v} differs from U(n,k) = {u.counts}"
    return CheckResult("trivi", n, ok, details, ce)


def check_bijection(n: int, max_n: Optional[int] = None) -> CheckResult:
    counts = [0] * n
    for p in perms.enumerate_permutations(n, max_n=max_n):
        path = paths.perm_to_path(p)
        if paths.validate(path) is not None or paths.path_to_perm(path) != p:
            return CheckResult("bijection", n, False, {}, f"roundtrip fails for {p}")
        if path.vertical_indices() != {i + 1 for i in perms.descent_positions(p)}:
            return CheckResult("bijection", n, False, {}, f"directions disagree with descents of {p}")
        counts[path.verticals] += 1
    enumerated = [0] * n
    for path in paths.enumerate_paths(n, max_n=max(n, max_n or 0)):
        enumerated[path.verticals] += 1
        if paths.perm_to_path(paths.path_to_perm(path)) != path:
            return CheckResult("bijection", n, False, {}, f"path {path} does not roundtrip")
    eulerian = dist.descent_distribution(n, max_n=max(n, max_n or 0))
    ok = counts == enumerated == [eulerian[k] for k in range(n)]
    return CheckResult("bijection", n, ok,
                       {"roundtrips": factorial(n), "P(n,k)": enumerated},
                       None if ok else f"|P(n,k)| = {enumerated} vs A(n,k) = {eulerian.counts}")


def check_dp_oracle(n: int, max_n: Optional[int] = None) -> CheckResult:
    details = {}
    for r in paths.Restriction:
        enumerated = [0] * n
        for path in paths.enumerate_paths(n, restriction=r, max_n=max_n):
            enumerated[path.verticals] += 1
        dp = paths.path_counts_dp(n, r)
        details[r.value] = dp
        if dp != enumerated:
            return CheckResult("dp-oracle", n, False, details,
                               f"{r.value}: dp {dp} != enumeration {enumerated}")
    return CheckResult("dp-oracle", n, True, details)


def check_invariance(n: int, max_n: Optional[int] = None) -> CheckResult:
    _need(n, 4, "invariance")
    details = {}
    failures = []
    for j in range(1, perms.half_ascending_bound(n) + 1):
        for i in range(1, n - 2 * j):
            res = dist.verify_pair_invariance(n, j, i, max_n=max_n)
            details[f"j={j},i={i}"] = res.ok
            if not res.ok:
                failures.append(f"j={j}, i={i}: ascent half {res.ascent_half} != {res.expected_half}")
    return CheckResult("invariance", n, not failures, details,
                       failures[0] if failures else None)


def check_log_concavity(n: int, max_n: Optional[int] = None) -> CheckResult:
    tables = {}
    if n >= 2:
        tables["R"] = dist.run_distribution(n, max_n=max_n)
    tables["A"] = dist.descent_distribution(n, max_n=max_n)
    if n >= 4 and n % 2 == 0:
        tables["U"] = dist.half_ascending_descent_distribution(n, max_n=max_n)
    if n >= 3 and n % 2 == 1:
        tables["odd-T"] = dist.odd_t_distribution(n, max_n=max_n)
    details = {}
    ce = None
    for name, table in tables.items():
        seq = table.sequence()
        res = is_log_concave(seq)
        good = res.ok and support_is_interval(seq)
        details[name] = {"sequence": seq, "log_concave": good}
        if not good and ce is None:
            ce = f"{name}({n}, .) = {seq} fails at offset {res.index}"
    return CheckResult("log-concavity", n, ce is None, details, ce)


def check_phi_audit(n: int, k: Optional[int] = None, restriction: Optional[str] = None,
                    max_pairs: Optional[int] = None, timing: bool = True) -> CheckResult:
    _need(n, 3, "phi-audit")
    ks = [k] if k is not None else list(phi.valid_audit_ks(n))
    rs = [paths.Restriction(restriction)] if restriction else list(paths.Restriction)
    records = []
    ce = None
    for kk in ks:
        for r in rs:
            rec = phi.audit_quasi_injection(n, kk, r, max_pairs=max_pairs)
            records.append(rec.as_dict(timing=timing))
            if not rec.passed and ce is None:
                ce = f"audit failed at k={kk}, restriction={r.value}"
    return CheckResult("phi-audit", n, ce is None, {"audits": records}, ce)


SUITE: Dict[str, Callable[..., CheckResult]] = {
    "divisibility": check_divisibility,
    "lemma-difficult": check_quotients,
    "trivi": check_trivi,
    "bijection": check_bijection,
    "dp-oracle": check_dp_oracle,
    "invariance": check_invariance,
    "log-concavity": check_log_concavity,
    "phi-audit": check_phi_audit,
}


def run_all(n: int, max_n: Optional[int] = None, timing: bool = True) -> List[CheckResult]:
    """Run the suite in fixed order, stopping after the first failure."""
    results = []
    for name, fn in SUITE.items():
        if name == "phi-audit":
            res = fn(n, timing=timing)
        else:
            res = fn(n, max_n=max_n)
        results.append(res)
        if not res.passed:
            break
    return results
