"""Command-line surface.

Subcommands:

  generate <system> --out FILE     write a benchmark panel as CSV
  analyze <csv> --out DIR          full pairwise discovery, report files
  ssad <csv> --x A --y B           one ordered pair's band-exit score
  tssavr <csv> --x A --y B         one ordered pair's variance ratio
  baseline granger|ccm <csv> --x A --y B

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or
malformed input, analysis failure).  The default seed is 0, or the value
of the SIGAREA_SEED environment variable when set; an explicit --seed
always wins.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import io as sio
from .direction import shift_profile, ts_savr
from .baselines import ccm, granger
from .errors import SigAreaError
from .nulltest import ssad_pair
from .pipeline import RunConfig, discover
from .series import difference, scale_unit_range
from .synth import gen_four_species, gen_two_species_bidir, gen_two_species_sync


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; this package reserves 2
    # for data errors, so turn usage problems into a catchable exception.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get("SIGAREA_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"SIGAREA_SEED must be an integer, got {raw!r}") from None


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--window-length", type=int, default=10, metavar="L")
    parser.add_argument("--n-shuffles", type=int, default=1000, metavar="N")
    parser.add_argument("--stride", type=int, default=None, metavar="S",
                        help="window step; default = window length (tiling)")
    parser.add_argument("--rho", type=float, default=1.0)
    parser.add_argument("--alpha", type=float, default=0.05)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--difference-order", type=int, default=0, metavar="K")
    parser.add_argument("--interp-step", type=float, default=None, metavar="DT",
                        help="resample onto a uniform grid (needs a time column)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="sigarea", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a benchmark system as CSV")
    gen.add_argument("system", choices=[
        "two_species_sync", "two_species_bidir", "four_species"])
    gen.add_argument("--steps", type=int, default=None,
                     help="sample count (default 3000 for the bidirectional "
                          "system, 1000 otherwise)")
    gen.add_argument("--tau-d", type=int, default=0, choices=[0, 2, 4],
                     help="X->Y delay of the bidirectional system")
    gen.add_argument("--seed", type=int, default=None,
                     help="accepted for interface symmetry; the map "
                          "generators are deterministic")
    gen.add_argument("--out", required=True, metavar="FILE")

    ana = sub.add_parser("analyze", help="pairwise discovery over a CSV panel")
    ana.add_argument("csv")
    ana.add_argument("--out", required=True, metavar="DIR")
    _add_common_flags(ana)
    ana.add_argument("--tau-min", type=int, default=-10)
    ana.add_argument("--tau-max", type=int, default=10)
    ana.add_argument("--theta", type=float, default=None,
                     help="|SSAD| edge threshold; omit for rank mode")
    ana.add_argument("--noise-channel", action="store_true",
                     help="append a scaled white-noise control channel")
    ana.add_argument("--granger", action="store_true",
                     help="add lagged-regression baseline columns")
    ana.add_argument("--ccm", action="store_true",
                     help="add cross-mapping baseline columns")

    for name in ("ssad", "tssavr"):
        single = sub.add_parser(name, help=f"run {name} on one ordered pair")
        single.add_argument("csv")
        single.add_argument("--x", required=True, metavar="NAME")
        single.add_argument("--y", required=True, metavar="NAME")
        if name == "ssad":
            _add_common_flags(single)
        else:
            single.add_argument("--tau-min", type=int, default=-10)
            single.add_argument("--tau-max", type=int, default=10)
            single.add_argument("--difference-order", type=int, default=0)
            single.add_argument("--interp-step", type=float, default=None)

    base = sub.add_parser("baseline", help="reference method on one pair")
    base.add_argument("method", choices=["granger", "ccm"])
    base.add_argument("csv")
    base.add_argument("--x", required=True, metavar="NAME")
    base.add_argument("--y", required=True, metavar="NAME")
    base.add_argument("--maxlag", type=int, default=10,
                      help="largest regression lag (granger)")
    base.add_argument("--embed-dim", type=int, default=2)
    base.add_argument("--lag", type=int, default=1)
    return parser


def _generate(args: argparse.Namespace) -> int:
    steps = args.steps
    if steps is None:
        steps = 3000 if args.system == "two_species_bidir" else 1000
    if args.system == "two_species_sync":
        panel = gen_two_species_sync(steps)
    elif args.system == "two_species_bidir":
        panel = gen_two_species_bidir(steps, args.tau_d)
    else:
        panel = gen_four_species(steps)
    sio.write_csv(panel, args.out)
    print(f"wrote {panel.length} samples of {', '.join(panel.names)} to {args.out}")
    return 0


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    try:
        return RunConfig(
            window_length=args.window_length,
            n_shuffles=args.n_shuffles,
            seed=args.seed if args.seed is not None else _default_seed(),
            stride=args.stride,
            rho=args.rho,
            alpha=args.alpha,
            tau_min=getattr(args, "tau_min", -10),
            tau_max=getattr(args, "tau_max", 10),
            theta=getattr(args, "theta", None),
            difference_order=args.difference_order,
            add_noise_channel=getattr(args, "noise_channel", False),
            run_granger=getattr(args, "granger", False),
            run_ccm=getattr(args, "ccm", False),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _analyze(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    panel, _ = sio.read_csv(args.csv, args.interp_step)
    result = discover(panel, config)
    written = sio.write_report(result, args.out)
    print(f"wrote {len(written)} files to {args.out}")
    return 0


def _prepared_pair(args: argparse.Namespace):
    panel, _ = sio.read_csv(args.csv, args.interp_step)
    order = args.difference_order
    a = scale_unit_range(difference(panel.get(args.x), order))
    b = scale_unit_range(difference(panel.get(args.y), order))
    return a, b


def _ssad(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    a, b = _prepared_pair(args)
    forward, _ = ssad_pair(
        a,
        b,
        window_length=config.window_length,
        n_shuffles=config.n_shuffles,
        seed=config.seed,
        stride=config.effective_stride,
        rho=config.rho,
        alpha=config.alpha,
    )
    print(sio.format_float(forward.score))
    return 0


def _tssavr(args: argparse.Namespace) -> int:
    a, b = _prepared_pair(args)
    verdict = ts_savr(shift_profile(a, b, args.tau_min, args.tau_max))
    print(f"{sio.format_float(verdict.ratio)} {verdict.label}")
    return 0


def _baseline(args: argparse.Namespace) -> int:
    panel, _ = sio.read_csv(args.csv)
    x, y = panel.get(args.x), panel.get(args.y)
    if args.method == "granger":
        result = granger(x, y, args.maxlag)
        for lag in sorted(result.per_lag_p):
            print(f"lag {lag} p {sio.format_float(result.per_lag_p[lag])}")
        print(f"min_p {sio.format_float(result.min_p)}")
    else:
        result = ccm(x, y, args.embed_dim, args.lag)
        for size in result.library_sizes:
            print(f"library {size} r2 {sio.format_float(result.skill[size])}")
        print(f"max_r2 {sio.format_float(result.max_r2)}")
    return 0


_HANDLERS = {
    "generate": _generate,
    "analyze": _analyze,
    "ssad": _ssad,
    "tssavr": _tssavr,
    "baseline": _baseline,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:
        # argparse --help exits 0 through here
        code = exc.code
        return code if isinstance(code, int) else 0
    except KeyError as exc:
        print(f"error: no channel named {exc.args[0]!r} in the input", file=sys.stderr)
        return 2
    except (SigAreaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
