"""Labeled northeastern lattice paths and their bijection with permutations.

A path is a sequence of edges ``a_1..a_n``, each horizontal (``H``) or
vertical (``V``) and carrying a positive label ``e_i``.  It is valid when

1. ``a_1`` is horizontal with label 1,
2. two consecutive parallel edges have ``e_i >= e_{i+1}``,
3. two consecutive perpendicular edges have ``e_i + e_{i+1} <= i + 1``.

Edge indices are 1-based.  Paths carry no coordinates; see :mod:`permruns.phi`
for the embedded view.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, NamedTuple, Optional, Sequence

from . import perms
from .errors import InvalidPath
from .perms import Permutation

H = "H"
V = "V"

#: Default guard for exhaustive path enumeration.
MAX_PATH_N = 9


class Edge(NamedTuple):
    dir: str
    label: int

    def __str__(self):
        return f"{self.dir}{self.label}"


class Restriction(str, Enum):
    ALL = "all"
    V = "V"
    VPRIME = "Vprime"


@dataclass(frozen=True)
class Violation:
    condition: int  # 0 = malformed edge
    index: int
    detail: str

    def __str__(self):
        return f"condition ({self.condition}) fails at index {self.index}: {self.detail}"


@dataclass(frozen=True)
class LabeledPath:
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(Edge(str(d), int(l)) for d, l in self.edges))

    @classmethod
    def parse(cls, text: str) -> "LabeledPath":
        """Accepts ``"H1 H1 V2"`` / ``"[H1, V1]"`` or the JSON edge-list form."""
        text = text.strip()
        if text.startswith("[{") or text.startswith("[ {") or text.startswith("{"):
            return cls.from_json(text)
        tokens = re.findall(r"[HVhv]\s*\d+", text)
        leftover = re.sub(r"[HVhv]\s*\d+|[\s,\[\]]", "", text)
        if not tokens or leftover:
            raise ValueError(f"cannot parse path {text!r}")
        return cls(tuple((t[0].upper(), int(t[1:])) for t in tokens))

    @classmethod
    def from_json(cls, data) -> "LabeledPath":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ValueError(f"bad path JSON: {exc}") from None
        try:
            edges = tuple((e["dir"], e["label"]) for e in data)
        except (TypeError, KeyError) as exc:
            raise ValueError(f"path JSON must be a list of {{dir, label}} objects ({exc})") from None
        for d, label in edges:
            if d not in (H, V) or not isinstance(label, int):
                raise ValueError(f"bad edge {{dir: {d!r}, label: {label!r}}}")
        return cls(edges)

    def to_json(self) -> list:
        return [{"dir": e.dir, "label": e.label} for e in self.edges]

    @property
    def n(self) -> int:
        return len(self.edges)

    @property
    def verticals(self) -> int:
        return sum(1 for e in self.edges if e.dir == V)

    def vertical_indices(self) -> frozenset:
        return frozenset(i for i, e in enumerate(self.edges, 1) if e.dir == V)

    @property
    def directions(self) -> str:
        return "".join(e.dir for e in self.edges)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __str__(self):
        return "[" + ", ".join(map(str, self.edges)) + "]"


# -------------------------------------------------------------- validation

def junction_ok(i: int, a: Sequence, b: Sequence) -> bool:
    """Conditions (2)/(3) between edge ``i`` (``a``) and edge ``i+1`` (``b``)."""
    if a[0] == b[0]:
        return a[1] >= b[1]
    return a[1] + b[1] <= i + 1


def first_violation(edges: Sequence) -> Optional[Violation]:
    if not edges:
        return Violation(0, 0, "empty path")
    for i, (d, label) in enumerate(edges, 1):
        if d not in (H, V) or label < 1:
            return Violation(0, i, f"edge {d}{label} is not H/V with a positive label")
    if tuple(edges[0]) != (H, 1):
        return Violation(1, 1, f"first edge is {edges[0][0]}{edges[0][1]}, expected H1")
    for i in range(1, len(edges)):
        a, b = edges[i - 1], edges[i]
        if not junction_ok(i, a, b):
            if a[0] == b[0]:
                return Violation(2, i, f"parallel edges need e_{i}={a[1]} >= e_{i + 1}={b[1]}")
            return Violation(3, i, f"perpendicular edges need e_{i}+e_{i + 1}={a[1] + b[1]} <= {i + 1}")
    return None


def validate(path: LabeledPath) -> Optional[Violation]:
    """Return None when ``path`` satisfies (1)-(3), else the first violation."""
    return first_violation(path.edges)


def is_valid(path: LabeledPath) -> bool:
    return first_violation(path.edges) is None


def label_choices(i: int, edge: Sequence, next_dir: str) -> range:
    """Labels allowed for edge ``i+1`` in direction ``next_dir`` after ``edge``."""
    if edge[0] == next_dir:
        return range(1, edge[1] + 1)
    return range(1, i + 2 - edge[1])


# ---------------------------------------------------------------- bijection

def perm_to_path(p: Sequence[int]) -> LabeledPath:
    """Edge i records whether i-1 is a descent, and the rank of p_i among p_1..p_i."""
    if len(p) < 1:
        raise ValueError("empty permutation")
    edges = [Edge(H, 1)]
    for i in range(2, len(p) + 1):
        value = p[i - 1]
        rank = 1 + sum(1 for v in p[: i - 1] if v < value)
        if p[i - 2] > value:
            edges.append(Edge(V, rank))
        else:
            edges.append(Edge(H, i + 1 - rank))
    return LabeledPath(tuple(edges))


def path_to_perm(path: LabeledPath) -> Permutation:
    """Inverse of :func:`perm_to_path`; rejects invalid paths."""
    violation = validate(path)
    if violation is not None:
        raise InvalidPath(violation)
    values: List[int] = []
    for i, (d, label) in enumerate(path.edges, 1):
        rank = label if d == V else i + 1 - label
        values = [v + 1 if v >= rank else v for v in values]
        values.append(rank)
    return Permutation(values)


# ------------------------------------------------------------- restrictions

def must_be_horizontal(i: int, restriction: Restriction) -> bool:
    if restriction == Restriction.V:
        return i % 2 == 0
    if restriction == Restriction.VPRIME:
        return i % 2 == 1 and i >= 3
    return False


def is_V(path: LabeledPath) -> bool:
    """Every even-indexed edge is horizontal."""
    return all(e.dir == H for i, e in enumerate(path.edges, 1) if i % 2 == 0)


def is_Vprime(path: LabeledPath) -> bool:
    """Every odd-indexed edge from index 3 on is horizontal."""
    return all(e.dir == H for i, e in enumerate(path.edges, 1) if i % 2 == 1 and i >= 3)


def satisfies(path: LabeledPath, restriction: Restriction) -> bool:
    restriction = Restriction(restriction)
    if restriction == Restriction.V:
        return is_V(path)
    if restriction == Restriction.VPRIME:
        return is_Vprime(path)
    return True


# -------------------------------------------------------------- enumeration

def enumerate_paths(
    n: int,
    k: Optional[int] = None,
    restriction: Restriction = Restriction.ALL,
    *,
    max_n: Optional[int] = None,
) -> Iterator[LabeledPath]:
    """Every valid path of length n (with k vertical edges if given).

    Order is lexicographic edge by edge on (direction, label), H before V.
    """
    if n < 1:
        raise ValueError("n must be positive")
    perms.check_guard(n, max_n, MAX_PATH_N, "path enumeration")
    restriction = Restriction(restriction)
    edges: List[Edge] = [Edge(H, 1)]

    def extend(i: int, verticals: int):
        # edges a_1..a_i are placed
        if i == n:
            if k is None or verticals == k:
                yield LabeledPath(tuple(edges))
            return
        last = edges[-1]
        for d in (H, V):
            if d == V and must_be_horizontal(i + 1, restriction):
                continue
            nv = verticals + (d == V)
            if k is not None and (nv > k or k - nv > n - i - 1):
                continue
            for label in label_choices(i, last, d):
                edges.append(Edge(d, label))
                yield from extend(i + 1, nv)
                edges.pop()

    if k is not None and not 0 <= k <= n - 1:
        return
    yield from extend(1, 0)


def path_counts_dp(n: int, restriction: Restriction = Restriction.ALL) -> List[int]:
    """Counts of valid restricted paths of length n, indexed by vertical edges.

    State after edge i is (direction, label) with a count per number of
    vertical edges so far; labels never exceed i - 1 for i >= 2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    restriction = Restriction(restriction)
    # state[(dir, label)] = list of counts indexed by verticals
    state = {(H, 1): [1]}
    for i in range(1, n):
        nxt: dict = {}
        for (d, label), counts in state.items():
            for nd in (H, V):
                if nd == V and must_be_horizontal(i + 1, restriction):
                    continue
                shift = 1 if nd == V else 0
                for nl in label_choices(i, (d, label), nd):
                    slot = nxt.setdefault((nd, nl), [0] * (i + 1))
                    for v, c in enumerate(counts):
                        if c:
                            slot[v + shift] += c
        state = nxt
    totals = [0] * n
    for counts in state.values():
        for v, c in enumerate(counts):
            totals[v] += c
    return totals


def count_paths_dp(n: int, k: int, restriction: Restriction = Restriction.ALL) -> int:
    if k < 0 or n < 1:
        return 0
    counts = path_counts_dp(n, restriction)
    return counts[k] if k < len(counts) else 0
