"""Command-line interface.

    chanquant analyze --channel '{"kind": "named", "name": "amplitude_damping", "params": {"gamma": 0.3}}'
    chanquant sweep --sweep werner --start 0 --stop 1 --step 0.001
    chanquant verify --seed 7 --n-channels 1000 --samples 100000

Exit codes: 0 success, 1 input error, 2 invariant violation, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from .bipartite import choi_state, geometric_discord_b, observation_check
from .channels import (
    AffineChannel,
    ChannelName,
    amplitude_damping,
    kraus_to_affine,
    kraus_validate,
    named_channel,
    validate_affine,
)
from .errors import ChannelError, InvalidParameter, ParseError, SchemaError, ValidationError
from .numerics import sym_eig3
from .quantumness import classify, grid_min_quantumness, mc_quantumness, optimal_axis_class, quantumness
from .teleport import teleport_report, werner_state
from .verify import VerifyConfig, run_all

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2
EXIT_USAGE = 64

MAX_SWEEP_POINTS = 10**6
FLOAT_FORMAT = ".16g"


# -- channel specs -----------------------------------------------------------

def _complex_entry(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(c, (int, float)) for c in v):
        return complex(v[0], v[1])
    raise SchemaError(f"matrix entry must be a number or [re, im], got {v!r}")


def _require_keys(obj: dict, required: set, optional: set = frozenset()) -> None:
    keys = set(obj)
    missing = required - keys
    extra = keys - required - optional
    if missing:
        raise SchemaError(f"missing field(s) {sorted(missing)}")
    if extra:
        raise SchemaError(f"unexpected field(s) {sorted(extra)}")


def parse_channel_spec(json_text: str) -> AffineChannel:
    """Parse and validate a channel description.

    Accepted forms::

        {"kind": "kraus", "ops": [[[re, im], [re, im]], [[re, im], [re, im]]], ...]}
        {"kind": "affine", "lambda": [[...], [...], [...]], "t": [...]}
        {"kind": "named", "name": "amplitude_damping", "params": {"gamma": 0.3}}
    """
    try:
        obj = json.loads(json_text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("channel spec must be an object with a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "kraus":
            _require_keys(obj, {"kind", "ops"})
            ops = obj["ops"]
            if not isinstance(ops, list) or not ops:
                raise SchemaError("'ops' must be a nonempty list of 2x2 matrices")
            mats = []
            for op in ops:
                if not (isinstance(op, list) and len(op) == 2 and all(isinstance(r, list) and len(r) == 2 for r in op)):
                    raise SchemaError("each Kraus operator must be a 2x2 nested list")
                mats.append(np.array([[_complex_entry(v) for v in row] for row in op]))
            ch = kraus_to_affine(kraus_validate(mats))
        elif kind == "affine":
            _require_keys(obj, {"kind", "lambda"}, {"t"})
            lam = np.asarray(obj["lambda"], dtype=float)
            t = np.asarray(obj.get("t", [0, 0, 0]), dtype=float)
            if lam.shape != (3, 3) or t.shape != (3,):
                raise SchemaError("'lambda' must be 3x3 and 't' a 3-vector")
            ch = AffineChannel(lam, t)
        elif kind == "named":
            _require_keys(obj, {"kind", "name"}, {"params"})
            if obj["name"] not in {c.value for c in ChannelName}:
                raise SchemaError(f"unknown channel name {obj['name']!r}")
            params = obj.get("params", {})
            if not isinstance(params, dict):
                raise SchemaError("'params' must be an object")
            ch = named_channel(obj["name"], params)
        else:
            raise SchemaError(f"unknown channel kind {kind!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, (SchemaError, ValidationError)):
            raise
        raise ValidationError(str(exc)) from None
    return validate_affine(ch)


def _read_channel_arg(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


# -- analyze -----------------------------------------------------------------

def analyze(ch: AffineChannel, resolution: int | None = None, samples: int | None = None, seed: int = 0) -> dict:
    rep = quantumness(ch)
    obs = observation_check(ch)
    cls = classify(ch)
    out = {
        "q": rep.q,
        "m_eigenvalues": rep.m_eigenvalues.tolist(),
        "optimal_n": rep.optimal_n.tolist(),
        "d_g": obs.d_g,
        "gap": obs.gap,
        "flags": cls.flags(),
    }
    if resolution is not None:
        q_grid, n_grid = grid_min_quantumness(ch, resolution)
        out["grid"] = {"resolution": resolution, "q_grid": q_grid, "n_grid": n_grid.tolist()}
    if samples is not None:
        est, se = mc_quantumness(ch, rep.optimal_n, samples, seed)
        out["monte_carlo"] = {"samples": samples, "seed": seed, "estimate": est, "std_error": se}
    return out


# -- sweeps ------------------------------------------------------------------

SWEEP_COLUMNS = {
    "amplitude_damping": ("gamma", "quantumness", "geometric_discord", "optimal_n_class"),
    "werner": ("w", "quantumness", "avg_fidelity", "beats_classical"),
}


@dataclass(frozen=True)
class SweepSpec:
    family: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.family not in SWEEP_COLUMNS:
            raise InvalidParameter(f"unknown sweep family {self.family!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop) and math.isfinite(self.step)):
            raise InvalidParameter("sweep bounds must be finite")
        if self.start > self.stop:
            raise InvalidParameter("start must not exceed stop")
        if self.step <= 0:
            raise InvalidParameter("step must be positive")
        if (self.stop - self.start) / self.step > MAX_SWEEP_POINTS:
            raise InvalidParameter(f"more than {MAX_SWEEP_POINTS} sweep points")

    @property
    def outputs(self) -> tuple[str, ...]:
        return SWEEP_COLUMNS[self.family]

    def points(self) -> np.ndarray:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(n)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, str):
        return v
    return format(float(v), FLOAT_FORMAT)


def _snap_unit(x: float) -> float:
    # grid points may overshoot 1 by an ulp
    c = min(max(x, 0.0), 1.0)
    return c if abs(x - c) < 1e-12 else x


def sweep_rows(spec: SweepSpec) -> list[tuple]:
    rows = []
    for x in spec.points():
        x = float(x)
        if spec.family == "amplitude_damping":
            ch = amplitude_damping(_snap_unit(x))
            rep = quantumness(ch)
            e, v = sym_eig3(rep.m_matrix)
            rows.append((x, rep.q, geometric_discord_b(choi_state(ch)).d_g, optimal_axis_class(e, v)))
        else:
            rep = teleport_report(werner_state(_snap_unit(x)))
            rows.append((x, rep.q, rep.avg_fidelity, rep.beats_classical))
    return rows


def write_sweep(spec: SweepSpec, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(spec.outputs)
    for row in sweep_rows(spec):
        writer.writerow([_fmt(v) for v in row])


# -- argument parsing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chanquant", description="Coherence-based quantumness of qubit channels.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="quantumness, discord and class flags of one channel")
    p.add_argument("--channel", required=True, help="channel JSON, inline or a file path")
    p.add_argument("--resolution", type=int, default=None, help="also run the basis-grid oracle")
    p.add_argument("--samples", type=int, default=None, help="also run the Monte Carlo estimator")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("sweep", help="figure data as CSV")
    p.add_argument("--sweep", required=True, choices=sorted(SWEEP_COLUMNS), dest="family")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--format", choices=["csv"], default="csv")

    p = sub.add_parser("verify", help="run the seeded invariant suites")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--n-channels", type=int, default=1000)
    p.add_argument("--samples", type=int, default=100_000, help="Monte Carlo samples per channel")
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--inject-corrupt", action="store_true", help=argparse.SUPPRESS)
    return parser


def cmd_analyze(args, out: TextIO, err: TextIO) -> int:
    try:
        ch = parse_channel_spec(_read_channel_arg(args.channel))
        if args.resolution is not None and args.resolution < 16:
            raise InvalidParameter("resolution must be at least 16")
        if args.samples is not None and args.samples < 1000:
            raise InvalidParameter("samples must be at least 1000")
        report = analyze(ch, args.resolution, args.samples, args.seed)
    except ChannelError as exc:
        err.write(f"chanquant analyze: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    json.dump(report, out, indent=2)
    out.write("\n")
    return EXIT_OK


def cmd_sweep(args, out: TextIO, err: TextIO) -> int:
    try:
        spec = SweepSpec(args.family, args.start, args.stop, args.step)
        write_sweep(spec, out)
    except ChannelError as exc:
        err.write(f"chanquant sweep: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    return EXIT_OK


def cmd_verify(args, out: TextIO, err: TextIO) -> int:
    if args.n_channels < 1:
        err.write("chanquant verify: --n-channels must be at least 1\n")
        return EXIT_USAGE
    if args.samples < 1000 or args.resolution < 16:
        err.write("chanquant verify: --samples must be >= 1000 and --resolution >= 16\n")
        return EXIT_USAGE
    extra = [AffineChannel(1.5 * np.eye(3), np.zeros(3))] if args.inject_corrupt else []
    cfg = VerifyConfig(
        seed=args.seed,
        n_channels=args.n_channels,
        mc_samples=args.samples,
        mc_channels=min(100, args.n_channels),
        unitary_channels=min(100, args.n_channels),
        resolution=args.resolution,
        extra_channels=extra,
    )
    results = run_all(cfg)
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        out.write(f"{status} {res.name}: {res.passed}/{res.total}\n")
    failed = [r for r in results if not r.ok]
    for res in failed:
        out.write(json.dumps({"suite": res.name, "counterexample": res.failure}) + "\n")
    return EXIT_VIOLATION if failed else EXIT_OK


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"analyze": cmd_analyze, "sweep": cmd_sweep, "verify": cmd_verify}[args.command]
    return handler(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
