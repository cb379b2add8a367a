"""Brute-force ground truth over explicit scattering sequences.

A scattering sequence is a walk on the interface indices: -1 (source
depth), 0..M (the interfaces), and M+1 (transmission receiver depth).
Reflection sequences start and end at -1 with interior in 0..M;
transmission sequences run from -1 to M+1.  Each step between adjacent
interfaces consumes half the two-way travel time of the layer crossed.

Weights come straight from the per-visit scattering rule: a visit to
interface j between two stays above contributes R_j, between two stays
below contributes -R_j, and a pass-through contributes sqrt(1 - R_j^2).

Transit counts are read off the depth-vs-time graph of the walk: k_n is
the number of excursions to depth >= n (equivalently, down-crossings of
layer n); an excursion that goes strictly deeper than n marks a branch
point at n.  For transmission walks the final excursion at each depth is
the trunk and is excluded from both counts.

This module is exponential by design -- it exists to validate the closed
forms at desk scale -- and guards itself with a sequence-count budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import EnumerationLimitExceeded, InvalidSequence
from .medium import Medium
from .transit import (
    REFLECTION,
    TRANSMISSION,
    TransitVector,
    reflection_arrival,
    transmission_arrival,
)

DEFAULT_SEQUENCE_LIMIT = 10_000_000


@dataclass(frozen=True)
class ScatteringSequence:
    """Interface-index walk, e.g. (-1, 0, 1, 0, -1)."""

    depths: Tuple[int, ...]
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "depths", tuple(int(d) for d in self.depths))
        p = self.depths
        if len(p) < 3:
            raise InvalidSequence(f"sequence too short: {p}")
        for a, b in zip(p, p[1:]):
            if abs(a - b) != 1:
                raise InvalidSequence(f"non-adjacent step {a} -> {b}")
        if p[0] != -1:
            raise InvalidSequence(f"must start at -1, got {p[0]}")
        if self.kind == REFLECTION:
            if p[-1] != -1:
                raise InvalidSequence(f"reflection walk must end at -1, got {p[-1]}")
            if min(p[1:-1]) < 0:
                raise InvalidSequence("interior may not revisit -1")
        elif self.kind == TRANSMISSION:
            last = p[-1]
            if any(d < 0 for d in p[1:]) or any(d >= last for d in p[1:-1]):
                raise InvalidSequence("interior must stay within 0..M")
        else:
            raise InvalidSequence(f"unknown kind {self.kind!r}")


@dataclass(frozen=True)
class PathStats:
    k: TransitVector
    b: Tuple[int, ...]
    arrival: float
    weight: float


def weight(seq: ScatteringSequence, refls: Sequence[float]) -> float:
    """Product of per-visit scattering factors, computed from first principles."""
    p = seq.depths
    trans = [math.sqrt(1.0 - r * r) for r in refls]
    w = 1.0
    for i in range(1, len(p) - 1):
        j = p[i]
        if p[i - 1] == p[i + 1] == j - 1:
            w *= refls[j]
        elif p[i - 1] == p[i + 1] == j + 1:
            w *= -refls[j]
        else:
            w *= trans[j]
    return w


def _counts(p: Tuple[int, ...], n_levels: int):
    """Down-crossing and branched-excursion counts per level 0..n_levels-1."""
    down = [0] * n_levels
    branched = [0] * n_levels
    open_branch = [False] * n_levels
    for a, b in zip(p, p[1:]):
        if b == a + 1:  # down-step into level b
            if b < n_levels:
                down[b] += 1
                open_branch[b] = False
            if 0 <= a < n_levels and not open_branch[a]:
                branched[a] += 1
                open_branch[a] = True
        else:  # up-step out of level a
            if a < n_levels:
                open_branch[a] = False
    return down, branched


def stats(seq: ScatteringSequence, medium: Medium) -> PathStats:
    """Transit/branch count vectors, arrival time and weight of a walk."""
    m1 = medium.n_layers + 1
    p = seq.depths
    if max(p) > (m1 if seq.kind == TRANSMISSION else m1 - 1):
        raise InvalidSequence(f"walk exceeds interface range for M={m1 - 1}")
    down, branched = _counts(p, m1)
    if seq.kind == REFLECTION:
        k = TransitVector(tuple(down), REFLECTION)
        b = tuple(branched)
        arrival = reflection_arrival(k.k, medium)
    else:
        # one excursion per level is the trunk; it always branches deeper
        k = TransitVector(tuple(d - 1 for d in down), TRANSMISSION)
        b = tuple(x - 1 for x in branched)
        arrival = transmission_arrival(k.k, medium)
    return PathStats(k, b, arrival, weight(seq, medium.reflections))


def leg_time(seq: ScatteringSequence, medium: Medium) -> float:
    """Arrival time summed leg by leg along the walk (independent of stats)."""
    taus = medium.all_taus
    t = 0.0
    for a, b in zip(seq.depths, seq.depths[1:]):
        t += 0.5 * taus[max(a, b)]
    return t


def enumerate_sequences(medium: Medium, kind: str, cutoff: float,
                        limit: int = DEFAULT_SEQUENCE_LIMIT
                        ) -> Iterator[ScatteringSequence]:
    """Yield every walk of the given kind arriving by the cutoff, once each.

    DFS with time-budget pruning: a branch is abandoned as soon as the time
    spent plus the cheapest exit exceeds the cutoff.  Raises
    EnumerationLimitExceeded past ``limit`` emitted sequences.
    """
    if not math.isfinite(cutoff):
        raise ValueError("cutoff must be finite")
    m = medium.n_layers
    taus = medium.all_taus
    half = [0.5 * t for t in taus]
    if kind == REFLECTION:
        # exit_cost[v]: time to climb from interface v back to -1
        exit_cost = [0.0] * (m + 1)
        acc = 0.0
        for v in range(m + 1):
            acc += half[v]
            exit_cost[v] = acc
        top, end_at = -1, -1
    elif kind == TRANSMISSION:
        # exit_cost[v]: time to descend from interface v to M+1
        exit_cost = [0.0] * (m + 1)
        acc = 0.0
        for v in range(m, -1, -1):
            acc += half[v + 1]
            exit_cost[v] = acc
        top, end_at = 0, m + 1
    else:
        raise ValueError(f"unknown kind {kind!r}")

    emitted = 0
    path = [-1, 0]

    def emit():
        nonlocal emitted
        emitted += 1
        if emitted > limit:
            raise EnumerationLimitExceeded(
                f"more than {limit} sequences below cutoff {cutoff}")
        return ScatteringSequence(tuple(path), kind)

    def walk(v: int, t: float):
        # invariant: t + exit_cost[v] <= cutoff
        if kind == REFLECTION:
            if v == 0:
                path.append(-1)
                yield emit()
                path.pop()
            else:
                path.append(v - 1)
                yield from walk(v - 1, t + half[v])
                path.pop()
            if v < m:
                t2 = t + half[v + 1]
                if t2 + exit_cost[v + 1] <= cutoff:
                    path.append(v + 1)
                    yield from walk(v + 1, t2)
                    path.pop()
        else:
            if v == m:
                path.append(m + 1)
                yield emit()
                path.pop()
            else:
                t2 = t + half[v + 1]
                if t2 + exit_cost[v + 1] <= cutoff:
                    path.append(v + 1)
                    yield from walk(v + 1, t2)
                    path.pop()
            if v > 0:
                t2 = t + half[v]
                if t2 + exit_cost[v - 1] <= cutoff:
                    path.append(v - 1)
                    yield from walk(v - 1, t2)
                    path.pop()

    t0 = half[0]
    if t0 + exit_cost[0] <= cutoff:
        yield from walk(0, t0)


def class_counts(medium: Medium, kind: str, cutoff: float,
                 limit: int = DEFAULT_SEQUENCE_LIMIT
                 ) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int]:
    """Exact number of walks per (transit vector, branch vector) class."""
    out: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}
    for seq in enumerate_sequences(medium, kind, cutoff, limit):
        st = stats(seq, medium)
        key = (st.k.k, st.b)
        out[key] = out.get(key, 0) + 1
    return out


def weight_sums_by_vector(medium: Medium, kind: str, cutoff: float,
                          limit: int = DEFAULT_SEQUENCE_LIMIT
                          ) -> Dict[Tuple[int, ...], float]:
    """Sum of walk weights grouped by transit vector."""
    out: Dict[Tuple[int, ...], float] = {}
    for seq in enumerate_sequences(medium, kind, cutoff, limit):
        st = stats(seq, medium)
        out[st.k.k] = out.get(st.k.k, 0.0) + st.weight
    return out
