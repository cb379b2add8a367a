"""Transit count vectors: enumeration, branch sets and multi-index arithmetic.

A reflection transit vector k has k_0 = 1 and prefix support (k_n = 0
forces k_{n+1} = 0); a transmission transit vector has k_0 = 0 with
arbitrary nonnegative entries.  k_n counts round-trip crossings of
layer n, so the arrival time of every echo with transit vector k is
the inner product <k, tau> (plus half the total travel time in the
transmission case).

Enumeration is a depth-first search over the entries of k carrying the
remaining time budget, so the cost is proportional to the number of
vectors emitted.  Vectors are yielded in DFS order; sorting by arrival
time is the consumer's job.  Arrival times are accumulated strictly
left to right (k_0*tau_0 first) so that term counts at a given cutoff
are deterministic and reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Iterator, List, Sequence, Tuple

from .errors import DomainError, InvalidTransitVector
from .medium import Medium

REFLECTION = "reflection"
TRANSMISSION = "transmission"


@dataclass(frozen=True)
class TransitVector:
    """Per-layer round-trip crossing counts, tagged reflection or transmission."""

    k: Tuple[int, ...]
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        k = self.k
        if self.kind not in (REFLECTION, TRANSMISSION):
            raise InvalidTransitVector(f"unknown kind {self.kind!r}")
        if not k:
            raise InvalidTransitVector("empty transit vector")
        if any(x < 0 for x in k):
            raise InvalidTransitVector(f"negative entry in {k}")
        if self.kind == REFLECTION:
            if k[0] != 1:
                raise InvalidTransitVector(f"reflection vector must have k_0 = 1: {k}")
            for a, b in zip(k, k[1:]):
                if a == 0 and b != 0:
                    raise InvalidTransitVector(f"support must be a prefix: {k}")
        else:
            if k[0] != 0:
                raise InvalidTransitVector(f"transmission vector must have k_0 = 0: {k}")


def left_shift(k: Sequence[int]) -> Tuple[int, ...]:
    """(k_1, ..., k_M, 0)."""
    k = tuple(k)
    return k[1:] + (0,)


def unit_clip(k: Sequence[int]) -> Tuple[int, ...]:
    """Entrywise min with 1."""
    return tuple(min(1, x) for x in k)


def multi_binomial_exact(x: Sequence[int], y: Sequence[int]) -> int:
    """Product of entrywise binomial coefficients, exact integer."""
    if len(x) != len(y):
        raise DomainError(f"length mismatch: {len(x)} vs {len(y)}")
    out = 1
    for xn, yn in zip(x, y):
        if yn < 0 or xn < 0:
            raise DomainError(f"negative entries: C({xn}, {yn})")
        if yn > xn:
            raise DomainError(f"y exceeds x entrywise: C({xn}, {yn})")
        out *= comb(xn, yn)
    return out


def multi_binomial(x: Sequence[int], y: Sequence[int]) -> float:
    """Product of entrywise binomial coefficients as a float."""
    return float(multi_binomial_exact(x, y))


def branch_ranges(tv: TransitVector) -> List[range]:
    """Per-index ranges whose Cartesian product is the admissible branch set."""
    k = tv.k
    kt = left_shift(k)
    if tv.kind == REFLECTION:
        return [range(min(1, kt[n]), min(k[n], kt[n]) + 1) for n in range(len(k))]
    return [range(0, min(k[n], kt[n]) + 1) for n in range(len(k))]


def branch_set(tv: TransitVector) -> List[Tuple[int, ...]]:
    """All admissible branch count vectors for k, in lexicographic order."""
    return list(product(*branch_ranges(tv)))


def arrival_time(k: Sequence[int], taus: Sequence[float]) -> float:
    """<k, tau> accumulated left to right (the canonical summation order)."""
    t = k[0] * taus[0]
    for n in range(1, len(k)):
        t = t + k[n] * taus[n]
    return t


def half_total_time(medium: Medium) -> float:
    """|tau'|/2: one-way traversal time of the whole stack, fixed summation order."""
    base = 0.0
    for t in medium.all_taus:
        base += 0.5 * t
    return base


def reflection_arrival(k: Sequence[int], medium: Medium) -> float:
    """Arrival time of a reflection echo, identical floats to the enumerator."""
    return arrival_time(k, medium.layer_taus)


def transmission_arrival(k: Sequence[int], medium: Medium) -> float:
    """Arrival time of a transmission echo, identical floats to the enumerator."""
    taus = medium.layer_taus
    t = half_total_time(medium)
    for n in range(1, len(k)):
        t = t + k[n] * taus[n]
    return t


def enumerate_reflection(medium: Medium, cutoff: float) -> Iterator[TransitVector]:
    """Yield every reflection transit vector with <k, tau> <= cutoff, once each.

    DFS order; the cutoff comparison is inclusive.  Empty if cutoff < tau_0.
    """
    taus = medium.layer_taus
    m1 = len(taus)
    t0 = 1 * taus[0]
    if t0 > cutoff:
        return

    def walk(n: int, prefix: Tuple[int, ...], t: float):
        yield TransitVector(prefix + (0,) * (m1 - n), REFLECTION)
        if n < m1:
            kn = 1
            while True:
                tn = t + kn * taus[n]
                if tn > cutoff:
                    break
                yield from walk(n + 1, prefix + (kn,), tn)
                kn += 1

    yield from walk(1, (1,), t0)


def enumerate_transmission(medium: Medium, cutoff: float) -> Iterator[TransitVector]:
    """Yield every transmission transit vector arriving by the cutoff, once each.

    Arrival = |tau'|/2 + <k, tau>, inclusive comparison; empty if the direct
    arrival already exceeds the cutoff.
    """
    taus = medium.layer_taus
    m1 = len(taus)
    base = half_total_time(medium)
    if base > cutoff:
        return

    def walk(n: int, prefix: Tuple[int, ...], t: float):
        if n == m1:
            yield TransitVector(prefix, TRANSMISSION)
            return
        kn = 0
        while True:
            tn = t + kn * taus[n]
            if tn > cutoff:
                break
            yield from walk(n + 1, prefix + (kn,), tn)
            kn += 1

    yield from walk(1, (0,), base)
