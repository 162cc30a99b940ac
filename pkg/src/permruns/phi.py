"""The tail-swapping map on path pairs and its exhaustive counting audit.

A pair ``(P, Q)`` with ``k-1`` and ``k+1`` vertical edges is drawn with P
starting at (0, 0) and Q at (1, -1).  Both anchors have coordinate sum 0, so
after t edges both paths sit on the anti-diagonal ``x + y = t``; the first
common point X is reached after the same number s of edges on each path.
Swapping the tails after X gives two paths with k vertical edges each.  The
swap is kept only when both results are still valid labeled paths.
"""
from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import GuardError, NoIntersection
from .paths import (H, V, LabeledPath, Restriction, Violation, enumerate_paths,
                    first_violation, junction_ok, satisfies)

P_ORIGIN = (0, 0)
Q_ORIGIN = (1, -1)

#: Default guard on the number of pairs one audit cell may touch.
MAX_PAIRS = 10 ** 7


@dataclass(frozen=True)
class EmbeddedPath:
    origin: tuple
    points: tuple
    path: LabeledPath

    @property
    def end(self) -> tuple:
        return self.points[-1]


def _points(directions: Sequence[str], origin: tuple) -> tuple:
    x, y = origin
    pts = [(x, y)]
    for d in directions:
        if d == H:
            x += 1
        else:
            y += 1
        pts.append((x, y))
    return tuple(pts)


def embed(path: LabeledPath, origin: tuple = P_ORIGIN) -> EmbeddedPath:
    return EmbeddedPath(tuple(origin), _points([e.dir for e in path.edges], origin), path)


def embed_pair(P: LabeledPath, Q: LabeledPath) -> Tuple[EmbeddedPath, EmbeddedPath]:
    """Anchor P at (0, 0) and Q at (1, -1); Q must have two more vertical edges."""
    if P.n != Q.n:
        raise ValueError(f"paths have different lengths {P.n} and {Q.n}")
    if Q.verticals != P.verticals + 2:
        raise ValueError(
            f"need k-1 and k+1 vertical edges, got {P.verticals} and {Q.verticals}")
    return embed(P, P_ORIGIN), embed(Q, Q_ORIGIN)


@dataclass(frozen=True)
class Intersection:
    point: tuple
    step_p: int
    step_q: int

    @property
    def coordinate_sum(self) -> int:
        return self.point[0] + self.point[1]


def first_intersection(P: EmbeddedPath, Q: EmbeddedPath) -> Intersection:
    """Common lattice point with the smallest coordinate sum."""
    where_q = {pt: t for t, pt in enumerate(Q.points)}
    best = None
    for t, pt in enumerate(P.points):
        if pt in where_q and (best is None or sum(pt) < sum(best[0])):
            best = (pt, t, where_q[pt])
    if best is None:
        raise NoIntersection(f"paths from {P.origin} and {Q.origin} never meet")
    return Intersection(*best)


def _first_common_step(p_pts: Sequence, q_pts: Sequence) -> Optional[int]:
    # valid only for anchors with equal coordinate sums
    for t, (a, b) in enumerate(zip(p_pts, q_pts)):
        if a == b:
            return t
    return None


class PhiStatus(str, Enum):
    DEFINED = "defined"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class PhiOutcome:
    status: PhiStatus
    intersection: Intersection
    pair: Optional[Tuple[LabeledPath, LabeledPath]] = None
    failed: Optional[str] = None  # "P'" or "Q'"
    reason: Optional[Violation] = None

    @property
    def defined(self) -> bool:
        return self.status == PhiStatus.DEFINED


def swap_tails(P: LabeledPath, Q: LabeledPath, s: int) -> Tuple[LabeledPath, LabeledPath]:
    return (LabeledPath(P.edges[:s] + Q.edges[s:]), LabeledPath(Q.edges[:s] + P.edges[s:]))


def apply_phi(P: LabeledPath, Q: LabeledPath, k: Optional[int] = None) -> PhiOutcome:
    """Swap tails at the first intersection and re-validate both results."""
    for name, path in (("P", P), ("Q", Q)):
        bad = first_violation(path.edges)
        if bad is not None:
            raise ValueError(f"{name} is not a valid path: {bad}")
    if k is not None and (P.verticals, Q.verticals) != (k - 1, k + 1):
        raise ValueError(f"expected {k - 1} and {k + 1} vertical edges")
    ep, eq = embed_pair(P, Q)
    x = first_intersection(ep, eq)
    if x.step_p != x.step_q:
        raise AssertionError("anchors with equal coordinate sums must meet at equal steps")
    P2, Q2 = swap_tails(P, Q, x.step_p)
    for name, path in (("P'", P2), ("Q'", Q2)):
        bad = first_violation(path.edges)
        if bad is not None:
            return PhiOutcome(PhiStatus.UNDEFINED, x, failed=name, reason=bad)
    return PhiOutcome(PhiStatus.DEFINED, x, pair=(P2, Q2))


# -------------------------------------------------------------------- audit

@dataclass
class AuditRecord:
    n: int
    k: int
    restriction: str
    source_lower: int = 0  # |P(n, k-1)| under the restriction
    source_upper: int = 0  # |P(n, k+1)|
    target_size: int = 0  # |P(n, k)|
    domain_pairs: int = 0
    defined: int = 0
    undefined: int = 0
    injective: bool = True
    image_size: int = 0
    target_intersecting_pairs: int = 0
    intersecting_nonimage: int = 0
    all_domain_pairs_intersect: bool = True
    image_pairs_intersect: bool = True
    closure_holds: bool = True
    b_equals_d_cases: int = 0
    geometry: Dict[str, int] = field(default_factory=dict)
    specialized_disagreements: int = 0
    elapsed: float = 0.0

    @property
    def counting_holds(self) -> bool:
        return self.undefined <= self.intersecting_nonimage

    @property
    def inequality_holds(self) -> bool:
        return self.source_lower * self.source_upper <= self.target_size ** 2

    @property
    def passed(self) -> bool:
        return (self.injective and self.defined == self.image_size
                and self.all_domain_pairs_intersect and self.image_pairs_intersect
                and self.closure_holds and self.counting_holds and self.inequality_holds
                and self.specialized_disagreements == 0)

    def as_dict(self, *, timing: bool = True) -> dict:
        out = {
            "n": self.n, "k": self.k, "restriction": self.restriction,
            "domain_pairs": self.domain_pairs, "defined": self.defined,
            "undefined": self.undefined, "injective": self.injective,
            "target_intersecting_pairs": self.target_intersecting_pairs,
            "image_size": self.image_size, "intersecting_nonimage": self.intersecting_nonimage,
            "source_lower": self.source_lower, "source_upper": self.source_upper,
            "target_size": self.target_size,
            "counting_holds": self.counting_holds, "inequality_holds": self.inequality_holds,
            "closure_holds": self.closure_holds,
            "all_domain_pairs_intersect": self.all_domain_pairs_intersect,
            "image_pairs_intersect": self.image_pairs_intersect,
            "b_equals_d_cases": self.b_equals_d_cases,
            "geometry": dict(sorted(self.geometry.items())),
            "specialized_disagreements": self.specialized_disagreements,
            "passed": self.passed,
        }
        if timing:
            out["elapsed"] = f"{self.elapsed:.3f}"
        return out


def _group_by_shape(paths: List[tuple]) -> Dict[str, List[tuple]]:
    groups: Dict[str, List[tuple]] = defaultdict(list)
    for edges in paths:
        groups["".join(e[0] for e in edges)].append(edges)
    return dict(groups)


def count_intersecting_pairs(paths: List[tuple]) -> int:
    """Pairs (A, B) of the given paths that meet when A starts at (0,0), B at (1,-1)."""
    groups = _group_by_shape(paths)
    total = 0
    for sa, ga in groups.items():
        pa = _points(sa, P_ORIGIN)
        for sb, gb in groups.items():
            if _first_common_step(pa, _points(sb, Q_ORIGIN)) is not None:
                total += len(ga) * len(gb)
    return total


def audit_quasi_injection(
    n: int,
    k: int,
    restriction: Restriction = Restriction.ALL,
    *,
    max_pairs: Optional[int] = None,
) -> AuditRecord:
    """Apply the tail swap to every pair in P(n,k-1) x P(n,k+1) and count.

    Checks injectivity with an explicit image set, counts intersecting
    pairs in P(n,k) x P(n,k) (grouped by direction pattern, since whether two
    paths meet depends only on their directions), and compares the specialised
    junction inequalities with the generic validator on crossings where P
    continues east and Q continues north after X.
    """
    restriction = Restriction(restriction)
    if not (1 <= k and k + 1 <= n - 1):
        raise ValueError(f"k={k} needs 0 <= k-1 and k+1 <= n-1 (n={n})")
    started = time.perf_counter()
    rec = AuditRecord(n, k, restriction.value)
    limit = MAX_PAIRS if max_pairs is None else max_pairs
    guard_n = max(n, 9)

    lower = [p.edges for p in enumerate_paths(n, k - 1, restriction, max_n=guard_n)]
    upper = [p.edges for p in enumerate_paths(n, k + 1, restriction, max_n=guard_n)]
    targets = [p.edges for p in enumerate_paths(n, k, restriction, max_n=guard_n)]
    rec.source_lower, rec.source_upper, rec.target_size = len(lower), len(upper), len(targets)
    rec.domain_pairs = len(lower) * len(upper)
    if max(rec.domain_pairs, rec.target_size ** 2) > limit:
        raise GuardError(
            f"audit cell n={n}, k={k} touches {max(rec.domain_pairs, rec.target_size ** 2)} pairs "
            f"(limit {limit}; pass max_pairs to override)")

    index = {edges: t for t, edges in enumerate(targets)}
    T = len(targets)
    codes: List[int] = []
    geometry: Dict[str, int] = defaultdict(int)
    shape_meets: Dict[tuple, Optional[int]] = {}

    def meets(sa: str, sb: str) -> Optional[int]:
        key = (sa, sb)
        if key not in shape_meets:
            shape_meets[key] = _first_common_step(_points(sa, P_ORIGIN), _points(sb, Q_ORIGIN))
        return shape_meets[key]

    for sp, group_p in _group_by_shape(lower).items():
        for sq, group_q in _group_by_shape(upper).items():
            pairs = len(group_p) * len(group_q)
            s = meets(sp, sq)
            if s is None:
                rec.all_domain_pairs_intersect = False
                rec.undefined += pairs
                continue
            kind = f"in:{sp[s - 1]}{sq[s - 1]} out:{sp[s]}{sq[s]}"
            geometry[kind] += pairs
            if sp[s] == sq[s]:
                rec.b_equals_d_cases += pairs
            # swapped shapes must again meet first at step s
            if meets(sp[:s] + sq[s:], sq[:s] + sp[s:]) != s:
                rec.image_pairs_intersect = False
            crossing = (sp[s - 1], sq[s - 1], sp[s], sq[s]) == (H, V, H, V)
            i = s + 1
            for P in group_p:
                head_p, tail_p = P[:s], P[s:]
                a, b = P[s - 1][1], P[s][1]
                for Q in group_q:
                    P2 = head_p + Q[s:]
                    Q2 = Q[:s] + tail_p
                    # only the junction at X can differ from P or Q
                    ok = junction_ok(s, P2[s - 1], P2[s]) and junction_ok(s, Q2[s - 1], Q2[s])
                    if crossing:
                        c, d = Q[s - 1][1], Q[s][1]
                        in_domain = a >= b and c >= d
                        in_image = a + d <= i and b + c <= i
                        if not in_domain or in_image != ok:
                            rec.specialized_disagreements += 1
                    if not ok:
                        rec.undefined += 1
                        continue
                    rec.defined += 1
                    ip, iq = index.get(P2), index.get(Q2)
                    if ip is None or iq is None:
                        rec.closure_holds = False
                        continue
                    codes.append(ip * T + iq)

    image = np.unique(np.asarray(codes, dtype=np.int64)) if codes else np.empty(0, np.int64)
    rec.image_size = int(image.size)
    rec.injective = rec.image_size == len(codes)
    rec.geometry = dict(geometry)
    rec.target_intersecting_pairs = count_intersecting_pairs(targets)
    rec.intersecting_nonimage = rec.target_intersecting_pairs - rec.image_size
    rec.elapsed = time.perf_counter() - started
    return rec


def valid_audit_ks(n: int) -> range:
    """Every k whose neighbours k-1 >= 0 and k+1 <= n-1 exist.

    k = 1 is kept: P(n, 0) is the single all-horizontal path, and for the V
    restriction at small n it is the only cell with a nonempty domain.
    """
    return range(1, n - 1)
