"""Command line front end.

Subcommands cover every computation path: simulate (full state vector,
closed-form recursion, or primitive superposition), primitives (a single
sign-pattern trajectory), classify (periodicity of sign patterns), decompose
(tape weights over the sign patterns), spectrum, and invariants (circle
fit). Angle flags accept the expression grammar of qtm.exprs, so
--alpha "pi/sqrt(3)" means exactly that.

Exit codes: 0 success, 2 usage or configuration error, 3 failed numeric
validation (norm drift, circle fit above tolerance).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, analysis, engine, io, primitives, recursion
from .errors import CircleFitError, ConfigurationError, NumericalValidationError
from .exprs import parse_angle
from .state import normalize_tape_spec


def _angle(src):
    try:
        return parse_angle(src)
    except ConfigurationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_out_flags(sub, formats=("csv", "json", "svg")):
    sub.add_argument("--out", default="-",
                     help="output path, - for stdout (default)")
    sub.add_argument("--format", choices=formats, default=formats[0])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qtm",
        description="spin-chain Turing machine simulator",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="run the machine and export the "
                          "head trajectory")
    sim.add_argument("--tape-size", type=int, required=True)
    sim.add_argument("--alpha", type=_angle, required=True,
                     help='rotation angle, e.g. "pi/sqrt(3)"')
    sim.add_argument("--phi0", type=_angle, default=0.0,
                     help="initial head angle (default 0)")
    sim.add_argument("--steps", type=int, required=True)
    sim.add_argument("--initial", default="zeros",
                     help="tape spec: zeros, ones, or a string over 0 1 + -")
    sim.add_argument("--variant", choices=("x", "iy"), default="x")
    sim.add_argument("--engine",
                     choices=("statevector", "recursion", "primitives"),
                     default="statevector")
    _add_out_flags(sim)
    sim.set_defaults(func=cmd_simulate)

    prim = subs.add_parser("primitives", help="trajectory of one +/- pattern")
    prim.add_argument("--pattern", required=True,
                      help='sign pattern; spell leading-minus patterns as '
                      '--pattern="-+" or --pattern=-+')
    prim.add_argument("--alpha", type=_angle, required=True)
    prim.add_argument("--phi0", type=_angle, default=0.0)
    prim.add_argument("--steps", type=int, required=True)
    _add_out_flags(prim)
    prim.set_defaults(func=cmd_primitives)

    cla = subs.add_parser("classify", help="periodicity of sign patterns")
    group = cla.add_mutually_exclusive_group(required=True)
    group.add_argument("--pattern",
                       help="single sign pattern (use --pattern=-... for "
                       "leading-minus patterns)")
    group.add_argument("--all", action="store_true",
                       help="sweep all 2**M patterns")
    cla.add_argument("--tape-size", type=int)
    cla.add_argument("--alpha", type=_angle, default=parse_angle("pi/sqrt(3)"))
    cla.add_argument("--phi0", type=_angle, default=0.3,
                     help="probe head angle for numeric detection "
                     "(generic value, default 0.3)")
    cla.add_argument("--max-cycles", type=int, default=1000)
    _add_out_flags(cla, formats=("csv",))
    cla.set_defaults(func=cmd_classify)

    dec = subs.add_parser("decompose", help="tape weights over sign patterns")
    dec.add_argument("--initial", required=True)
    dec.add_argument("--tape-size", type=int, required=True)
    _add_out_flags(dec, formats=("csv",))
    dec.set_defaults(func=cmd_decompose)

    spec = subs.add_parser("spectrum", help="magnitude spectrum of a "
                           "trajectory")
    spec.add_argument("--tape-size", type=int)
    spec.add_argument("--alpha", type=_angle, required=True)
    spec.add_argument("--phi0", type=_angle, default=0.0)
    spec.add_argument("--steps", type=int, required=True)
    spec.add_argument("--initial", default="zeros")
    spec.add_argument("--variant", choices=("x", "iy"), default="x")
    spec.add_argument("--pattern",
                      help="use this +/- primitive instead of the full state")
    _add_out_flags(spec, formats=("csv",))
    spec.set_defaults(func=cmd_spectrum)

    inv = subs.add_parser("invariants", help="fit the invariant circle "
                          "family of a trajectory")
    inv.add_argument("--tape-size", type=int, required=True)
    inv.add_argument("--alpha", type=_angle, required=True)
    inv.add_argument("--phi0", type=_angle, default=0.0)
    inv.add_argument("--steps", type=int, default=3000)
    inv.add_argument("--initial", default="zeros")
    inv.add_argument("--max-circles", type=int, default=None,
                     help="default 2**(M+1)")
    inv.add_argument("--out", default="-")
    inv.set_defaults(func=cmd_invariants)

    return parser


def _manifest(args, extra=None):
    cfg = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("func", "command") and not k.startswith("_")
    }
    manifest = {
        "command": " ".join(["qtm"] + (args._argv or [])),
        "config": cfg,
        "outputs": [] if args.out == "-" else [args.out],
        "tool_version": __version__,
    }
    if extra:
        manifest["config"].update(extra)
    return manifest


def _write_trajectory(args, traj, tape_size):
    manifest = _manifest(args)
    if args.format == "csv":
        io.write_trajectory_csv(traj, args.out, tape_size=tape_size)
    elif args.format == "json":
        io.write_trajectory_json(traj, manifest, args.out)
        return
    else:
        io.write_trajectory_svg(traj, args.out)
    if args.out != "-":
        io.write_manifest(manifest, args.out)


def cmd_simulate(args):
    config = engine.MachineConfig.uniform(
        args.tape_size, args.alpha, phi0=args.phi0, variant=args.variant,
        initial=args.initial, steps=args.steps,
    )
    if args.engine == "statevector":
        traj = engine.run(config)
    elif args.engine == "recursion":
        traj = recursion.run(config)
    else:
        if args.variant != "x":
            raise ConfigurationError(
                "the primitives engine covers the plain flip variant only"
            )
        weights = primitives.decompose(config.resolved_initial())
        traj = primitives.superpose(weights, args.phi0, args.alpha, args.steps)
    _write_trajectory(args, traj, args.tape_size)
    return 0


def cmd_primitives(args):
    traj = primitives.run_primitive(args.pattern, args.phi0, args.alpha,
                                    args.steps)
    _write_trajectory(args, traj, len(traj.config.resolved_initial()))
    return 0


def _census_workers():
    raw = os.environ.get("QTM_THREADS", "")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigurationError(f"QTM_THREADS must be an integer, got {raw!r}")


def cmd_classify(args):
    if args.pattern is not None:
        pats = [primitives.normalize_pattern(args.pattern)]
        if args.tape_size is not None and len(pats[0]) != args.tape_size:
            raise ConfigurationError("--pattern length disagrees with --tape-size")
    else:
        if args.tape_size is None:
            raise ConfigurationError("--all needs --tape-size")
        pats = primitives.all_patterns(args.tape_size)

    if args.pattern is not None:
        periods = {
            pats[0]: primitives.detect_period_numeric(
                pats[0], args.phi0, args.alpha, args.max_cycles)
        }
    else:
        periods = primitives.period_census(
            args.tape_size, args.phi0, args.alpha, args.max_cycles,
            workers=_census_workers(),
        )

    with io._open_out(args.out) as fh:
        fh.write("pattern,kind,q,gaps,period\n")
        for pat in pats:
            cls = primitives.classify(pat)
            period = periods[pat]
            fh.write(
                f"{pat},{cls.kind},{cls.q},"
                f"{';'.join(str(g) for g in cls.gaps)},"
                f"{'' if period is None else period}\n"
            )
    if args.out != "-":
        io.write_manifest(_manifest(args), args.out)
    return 0


def cmd_decompose(args):
    weights = primitives.decompose(
        normalize_tape_spec(args.initial, args.tape_size)
    )
    pats = primitives.all_patterns(args.tape_size)
    with io._open_out(args.out) as fh:
        fh.write("pattern,weight\n")
        for pat, w in zip(pats, weights.tolist()):
            fh.write(f"{pat},{w!r}\n")
    if args.out != "-":
        io.write_manifest(_manifest(args), args.out)
    return 0


def cmd_spectrum(args):
    if args.pattern is not None:
        traj = primitives.run_primitive(args.pattern, args.phi0, args.alpha,
                                        args.steps)
    else:
        if args.tape_size is None:
            raise ConfigurationError("spectrum needs --pattern or --tape-size")
        traj = engine.run(engine.MachineConfig.uniform(
            args.tape_size, args.alpha, phi0=args.phi0,
            variant=args.variant, initial=args.initial, steps=args.steps,
        ))
    spec = analysis.spectrum(traj)
    with io._open_out(args.out) as fh:
        fh.write("frequency,magnitude_y,magnitude_z\n")
        rows = zip(spec.frequencies.tolist(), spec.magnitude_y.tolist(),
                   spec.magnitude_z.tolist())
        for f, my, mz in rows:
            fh.write(f"{f!r},{my!r},{mz!r}\n")
    if args.out != "-":
        io.write_manifest(_manifest(args), args.out)
    return 0


def cmd_invariants(args):
    config = engine.MachineConfig.uniform(
        args.tape_size, args.alpha, phi0=args.phi0, initial=args.initial,
        steps=args.steps,
    )
    traj = engine.run(config)
    max_circles = args.max_circles
    if max_circles is None:
        max_circles = 2 ** (args.tape_size + 1)
    circles = analysis.fit_invariant_circles(traj, max_circles)
    payload = {
        "manifest": _manifest(args, {"max_circles": max_circles}),
        "radius": circles.radius,
        "centers": circles.centers.tolist(),
        "residual": circles.residual,
        "num_circles": len(circles),
        "residues": circles.residues,
    }
    with io._open_out(args.out) as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    return 0


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = list(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"qtm: error: {exc}", file=sys.stderr)
        return 2
    except (NumericalValidationError, CircleFitError) as exc:
        print(f"qtm: numeric validation failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
