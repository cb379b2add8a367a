"""Discrete-time wavefield recursion for equal-travel-time layered media.

When every layer has the same two-way travel time D, all wavefronts hit
interfaces synchronously every D/2 seconds, and the exact wavefield is a
pure 2x2 scattering recursion per interface and half period:

    up_above   = R_n * down_above + T_n * up_below
    down_below = T_n * down_above - R_n * up_below

A unit downgoing impulse is launched above the first interface; the
upgoing amplitude crossing the source depth gives the reflection response
on the grid t = j*D, and the downgoing amplitude crossing the deepest
interface gives the transmission response on t = |tau'|/2 + j*D.

This is an independent physics oracle: it exercises the interface
scattering rules directly, with no combinatorics involved, so agreement
with the closed-form pulse trains validates amplitudes and sign
conventions end to end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .errors import UnequalTaus
from .medium import Medium
from .transit import half_total_time


@dataclass(frozen=True)
class LatticeResult:
    """Sampled reflection (g) and transmission (h) responses on the time grid."""

    period: float
    g_times: Tuple[float, ...]
    g: Tuple[float, ...]
    h_times: Tuple[float, ...]
    h: Tuple[float, ...]

    def energy(self) -> float:
        return sum(x * x for x in self.g) + sum(x * x for x in self.h)


def simulate(medium: Medium, n_steps: int) -> LatticeResult:
    """Run the recursion for n_steps grid periods.

    Requires all layer travel times exactly equal (the tail travel time
    only delays the transmission samples).  Returns reflection samples at
    t = j*D for j = 1..n_steps and transmission samples at
    t = |tau'|/2 + j*D for j = 0..n_steps-1.
    """
    taus = medium.layer_taus
    period = taus[0]
    if any(t != period for t in taus):
        raise UnequalTaus(f"layer travel times must all be equal, got {taus}")
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")

    m = medium.n_layers
    refl = medium.reflections
    trans = medium.transmission_coeffs()

    # down[n]: downgoing wave arriving at interface n this half step (n = 0..M)
    # up[n]: upgoing wave in region n arriving at interface n-1 this half step
    down = [0.0] * (m + 1)
    up = [0.0] * (m + 2)
    down[0] = 1.0

    # reflection arrivals live on even half steps, transmission leaves the
    # stack on half steps of parity M+1
    total_halves = 2 * n_steps + m + 1
    g_raw = [0.0] * (total_halves + 2)
    h_raw = [0.0] * (total_halves + 2)

    for s in range(1, total_halves + 1):
        new_down = [0.0] * (m + 1)
        new_up = [0.0] * (m + 2)
        for n in range(m + 1):
            d, u = down[n], up[n + 1]
            new_up[n] = refl[n] * d + trans[n] * u
            out_down = trans[n] * d - refl[n] * u
            if n < m:
                new_down[n + 1] = out_down
            else:
                h_raw[s] += out_down  # crosses the deepest interface, absorbed
        g_raw[s + 1] += new_up[0]  # reaches the source depth next half step
        new_up[0] = 0.0
        down, up = new_down, new_up

    half_stack = half_total_time(medium)
    g_times = tuple(j * period for j in range(1, n_steps + 1))
    g = tuple(g_raw[2 * j] for j in range(1, n_steps + 1))
    h_times = tuple(half_stack + j * period for j in range(n_steps))
    h = tuple(h_raw[m + 1 + 2 * j] for j in range(n_steps))
    return LatticeResult(period, g_times, g, h_times, h)
