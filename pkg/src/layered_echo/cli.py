"""Command-line front end.

Subcommands: reflect, transmit, convert, oracle, lattice, render.
Pulse trains and sampled signals go to stdout (or --out) as CSV; summary
metrics go to stderr so stdout stays pipeline-clean.  Exit codes: 0 on
success, 1 on verification failure (oracle/lattice deviation), 2 on
usage, parse or validation errors.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from contextlib import contextmanager
from typing import Optional

from . import goupillaud, greens, oracle, transit
from .amplitudes import amplitude, class_count
from .errors import LayeredEchoError
from .medium import Medium, read_medium, write_medium
from .transit import REFLECTION, TRANSMISSION, TransitVector

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2

THREADS_ENV = "LAYERED_ECHO_THREADS"


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


@contextmanager
def _open_out(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            yield fh


def _load_medium(path: str) -> Medium:
    if not os.path.exists(path):
        raise LayeredEchoError(f"medium file not found: {path}")
    return read_medium(path)


def _parse_wavelet(spec: str):
    if spec == "spike":
        return "spike"
    if spec.startswith("ricker:"):
        try:
            freq = float(spec.split(":", 1)[1])
        except ValueError:
            raise LayeredEchoError(f"bad wavelet spec: {spec!r}") from None
        return greens.ricker(freq)
    raise LayeredEchoError(f"bad wavelet spec: {spec!r} (use ricker:FREQ or spike)")


def _run_train(args, kind: str) -> int:
    medium = _load_medium(args.medium)
    start = time.perf_counter()
    build = greens.reflection_green if kind == REFLECTION else greens.transmission_green
    train = build(medium, args.cutoff,
                  amplitude_floor=args.floor, threads=args.threads)
    if args.merge_tol is not None:
        train = greens.merge_ties(train, args.merge_tol)
    wall = time.perf_counter() - start
    with _open_out(args.out) as fh:
        greens.write_train_csv(train, fh, with_k=args.with_k)
    amps = train.amplitudes()
    lo = min(amps, key=abs) if amps else 0.0
    hi = max(amps, key=abs) if amps else 0.0
    print(f"{kind}: terms={len(train)} min_amp={lo:.6g} max_amp={hi:.6g} "
          f"wall={wall:.3f}s", file=sys.stderr)
    return EXIT_OK


def _cmd_reflect(args) -> int:
    return _run_train(args, REFLECTION)


def _cmd_transmit(args) -> int:
    return _run_train(args, TRANSMISSION)


def _cmd_convert(args) -> int:
    medium = _load_medium(args.medium)
    with _open_out(args.out) as fh:
        fh.write(write_medium(medium))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    medium = _load_medium(args.medium)
    kinds = [args.kind] if args.kind else [REFLECTION, TRANSMISSION]
    tol = args.tol
    worst = 0.0
    mismatches = 0
    for kind in kinds:
        # pad the walk budget so boundary arrivals cannot drop a class
        pad = args.cutoff * (1.0 + 1e-9) + 1e-12
        sums = oracle.weight_sums_by_vector(medium, kind, pad, limit=args.limit)
        counts = oracle.class_counts(medium, kind, pad, limit=args.limit)
        enum = (transit.enumerate_reflection if kind == REFLECTION
                else transit.enumerate_transmission)
        n_vec = 0
        for tv in enum(medium, args.cutoff):
            n_vec += 1
            closed = amplitude(medium.reflections, tv)
            if args.corrupt and n_vec == 1:
                closed += 1e-3  # test hook: force a detectable deviation
            brute = sums.get(tv.k, 0.0)
            scale = max(abs(brute), abs(closed), 1e-300)
            worst = max(worst, abs(closed - brute) / scale)
        per_class = {}
        for (k, b), count in counts.items():
            tv = TransitVector(k, kind)
            expected = class_count(tv, b)
            if count != expected:
                mismatches += 1
                print(f"class count mismatch {kind} k={k} b={b}: "
                      f"oracle {count} vs formula {expected}", file=sys.stderr)
        print(f"{kind}: vectors={n_vec} classes={len(counts)}", file=sys.stderr)
    print(f"max relative amplitude deviation: {worst:.3e}")
    print(f"class count mismatches: {mismatches}")
    if worst > tol or mismatches:
        return EXIT_VERIFICATION
    return EXIT_OK


def _cmd_lattice(args) -> int:
    medium = _load_medium(args.medium)
    result = goupillaud.simulate(medium, args.steps)
    period = result.period
    worst = 0.0
    for kind, times, samples in ((REFLECTION, result.g_times, result.g),
                                 (TRANSMISSION, result.h_times, result.h)):
        build = (greens.reflection_green if kind == REFLECTION
                 else greens.transmission_green)
        cutoff = times[-1] * (1.0 + 1e-12)
        train = greens.merge_ties(build(medium, cutoff))
        by_slot = {}
        t_first = times[0]
        for term in train.terms:
            j = round((term.time - t_first) / period)
            by_slot[j] = by_slot.get(j, 0.0) + term.amplitude
        for j, (t, s) in enumerate(zip(times, samples)):
            dev = abs(s - by_slot.get(j, 0.0))
            if args.corrupt and j == 0:
                dev += 1e-3  # test hook
            worst = max(worst, dev)
    print(f"max absolute deviation: {worst:.3e}")
    print(f"energy: {result.energy():.12f}")
    if worst > args.tol or result.energy() > 1.0 + 1e-9:
        return EXIT_VERIFICATION
    return EXIT_OK


def _cmd_render(args) -> int:
    if not os.path.exists(args.train):
        raise LayeredEchoError(f"train CSV not found: {args.train}")
    with open(args.train, "r", encoding="ascii") as fh:
        train = greens.read_train_csv(fh)
    wavelet = _parse_wavelet(args.wavelet)
    signal = greens.convolve(train, wavelet, args.t0, args.dt, args.n)
    with _open_out(args.out) as fh:
        greens.write_signal_csv(signal, fh)
    return EXIT_OK


def _add_common_train_args(p):
    p.add_argument("--medium", required=True, help="medium file (taur or phys)")
    p.add_argument("--cutoff", type=float, required=True,
                   help="arrival-time cutoff in seconds (inclusive)")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.add_argument("--merge-tol", type=float, default=None, dest="merge_tol",
                   help="merge coincident arrivals at this relative tolerance")
    p.add_argument("--floor", type=float, default=0.0,
                   help="drop terms with |amplitude| below this (default keep all)")
    p.add_argument("--threads", type=int, default=None,
                   help=f"parallel amplitude evaluation (default ${THREADS_ENV} "
                        "or available cores)")
    p.add_argument("--with-k", action="store_true", dest="with_k",
                   help="emit the transit vector provenance column")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="layered-echo",
        description="Exact reflection/transmission Green's functions of "
                    "piecewise-constant layered acoustic media.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reflect", help="compute the reflection pulse train")
    _add_common_train_args(p)
    p.set_defaults(func=_cmd_reflect)

    p = sub.add_parser("transmit", help="compute the transmission pulse train")
    _add_common_train_args(p)
    p.set_defaults(func=_cmd_transmit)

    p = sub.add_parser("convert", help="convert a physical profile to tau-R form")
    p.add_argument("--medium", required=True, help="physical-format medium file")
    p.add_argument("--out", default=None, help="output tau-R path (default stdout)")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("oracle", help="check closed forms against brute force")
    p.add_argument("--medium", required=True)
    p.add_argument("--cutoff", type=float, required=True)
    p.add_argument("--kind", choices=[REFLECTION, TRANSMISSION], default=None)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--limit", type=int, default=oracle.DEFAULT_SEQUENCE_LIMIT)
    p.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("lattice", help="check closed forms against the "
                                       "equal-travel-time recursion")
    p.add_argument("--medium", required=True)
    p.add_argument("--steps", type=int, default=12)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("render", help="convolve a train CSV onto a sample grid")
    p.add_argument("--train", required=True, help="pulse-train CSV")
    p.add_argument("--wavelet", default="spike", help="ricker:FREQ or spike")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is None and hasattr(args, "threads"):
        args.threads = _default_threads()
    if getattr(args, "cutoff", None) is not None and args.command in (
            "reflect", "transmit") and not (args.cutoff > 0):
        print("error: --cutoff must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except LayeredEchoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
