"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 degenerate or empty result.
"""

import argparse
import csv
import io
import sys
from pathlib import Path

from .errors import InvalidParams, NoFeasiblePoint, ResonanceError
from .infodist import optimal_bound
from .measurement import MEASUREMENT_KINDS
from .peaks import find_peaks_array
from .probes import PROBE_FORMS
from .sweep import (
    FAMILY_PARAMS,
    SweepSpec,
    Tie,
    attenuation,
    best_single_qubit_strategy,
    evaluate_point,
    run_sweep,
)

CSV_HEADER = ("param", "value", "D", "Du", "Dv", "q0", "q1", "G", "IAE", "bound", "degenerate")
EXIT_OK, EXIT_INVALID, EXIT_DEGENERATE = 0, 2, 3


class UsageError(Exception):
    pass


def fmt(x):
    return format(float(x), ".12g")


def rows_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [r.param, fmt(r.value), fmt(r.D), fmt(r.Du), fmt(r.Dv), fmt(r.q0), fmt(r.q1),
             fmt(r.G), fmt(r.IAE), fmt(r.bound), int(r.degenerate)]
        )
    return buf.getvalue()


def read_sweep_csv(path):
    """Parse a sweep CSV into ``{column: list of floats}``."""
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or tuple(header) != CSV_HEADER:
                raise UsageError(f"{path}: header must be {','.join(CSV_HEADER)}")
            columns = {name: [] for name in CSV_HEADER[1:]}
            for lineno, rec in enumerate(reader, start=2):
                if len(rec) != len(CSV_HEADER):
                    raise UsageError(f"{path}:{lineno}: expected {len(CSV_HEADER)} fields, got {len(rec)}")
                for name, text in zip(CSV_HEADER[1:], rec[1:]):
                    columns[name].append(float(text))
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    return columns


def gnuplot_script(csv_path, param):
    return (
        "set datafile separator ','\n"
        f"set xlabel '{param}'\n"
        "set ylabel 'disturbance'\n"
        f"plot '{csv_path}' using 2:3 skip 1 with lines title 'D', \\\n"
        f"     '' using 2:4 skip 1 with lines title 'Du', \\\n"
        f"     '' using 2:5 skip 1 with lines title 'Dv'\n"
    )


def _add_family_args(p):
    p.add_argument("--family", choices=sorted(FAMILY_PARAMS), required=True)
    for name in ("a", "c", "alpha2", "beta2", "s"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--measurement", choices=MEASUREMENT_KINDS, default="eigenbasis",
                   help="Eve's measurement on a two-qubit probe (one-qubit probes use the closed form)")
    p.add_argument("--probe-form", choices=PROBE_FORMS, default="isometric",
                   help="sign convention of the two-qubit probe's delta admixture")


def _add_sweep_args(p):
    _add_family_args(p)
    p.add_argument("--param", required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=2001)
    p.add_argument("--tie", help="linear tie such as beta2=1.8-alpha2")
    p.add_argument("--workers", type=int, default=1)


def _fixed_values(args, exclude=()):
    fixed = {}
    for name in FAMILY_PARAMS[args.family]:
        value = getattr(args, name, None)
        if value is None:
            continue
        if name in exclude:
            raise InvalidParams(f"--{name} conflicts with sweeping or tying {name}")
        fixed[name] = value
    return fixed


def _spec_from_args(args, delta=None):
    tie = Tie.parse(args.tie) if args.tie else None
    exclude = {args.param} | ({tie.target} if tie else set())
    fixed = _fixed_values(args, exclude)
    if delta is not None:
        fixed["delta"] = delta
    return SweepSpec(
        args.family, args.param, args.start, args.stop, args.steps, fixed, tie, args.measurement, args.probe_form
    )


def cmd_sweep(args, out):
    spec = _spec_from_args(args)
    rows = run_sweep(spec, args.workers)
    text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
        if args.gnuplot:
            Path(args.out).with_suffix(".gp").write_text(gnuplot_script(args.out, spec.param))
    else:
        out.write(text)
    if all(r.degenerate for r in rows):
        print("every grid point is degenerate", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_peaks(args, out):
    if args.min_prominence < 0:
        raise InvalidParams("--min-prominence must be nonnegative")
    columns = read_sweep_csv(args.input)
    if args.column not in columns or args.column in ("value", "degenerate"):
        raise InvalidParams(f"column {args.column!r} is not a numeric sweep column")
    if len(columns["value"]) < 3:
        raise InvalidParams("peak finding needs at least three rows")
    report = find_peaks_array(columns["value"], columns[args.column], args.min_prominence, args.column)
    for p in report.peaks:
        out.write(f"{fmt(p.location)},{fmt(p.height)},{fmt(p.prominence)},{fmt(p.width)}\n")
    return EXIT_OK


def cmd_gain(args, out):
    values = _fixed_values(args)
    missing = [n for n in FAMILY_PARAMS[args.family] if n not in values]
    if missing:
        raise InvalidParams(f"missing --{', --'.join(missing)} for the {args.family} family")
    gr, dr = evaluate_point(args.family, values, args.measurement, args.probe_form)
    fields = [f"q{k}={fmt(q)}" for k, q in enumerate(gr.q)]
    fields += [f"G{k}={fmt(g)}" for k, g in enumerate(gr.Glambda)]
    fields += [
        f"G={fmt(gr.G)}", f"IAE={fmt(gr.IAE)}", f"Du={fmt(dr.Du)}", f"Dv={fmt(dr.Dv)}",
        f"D={fmt(dr.D)}", f"bound={fmt(optimal_bound(min(max(dr.D, 0.0), 0.5)))}",
        f"measurement={gr.measurement}",
    ]
    if gr.degenerate:
        fields.append("degenerate")
    out.write(" ".join(fields) + "\n")
    return EXIT_OK


def cmd_attenuation(args, out):
    try:
        deltas = [float(t) for t in args.deltas.split(",") if t.strip()]
    except ValueError as exc:
        raise InvalidParams(f"--deltas: {exc}") from exc
    if not deltas:
        raise InvalidParams("--deltas needs at least one value")
    template = _spec_from_args(args, delta=deltas[0])
    table = attenuation(template, deltas, workers=args.workers)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("delta", "maxProminence"))
    for delta, prom in table:
        writer.writerow((fmt(delta), fmt(prom)))
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return EXIT_OK


def cmd_best(args, out):
    res = best_single_qubit_strategy(args.target, args.resolution)
    out.write(
        f"a={fmt(res.params.a)} c={fmt(res.params.c)} D={fmt(res.D)} IAE={fmt(res.IAE)} "
        f"gap={fmt(res.gap)} gap_at_D={fmt(res.gap_at_D)}\n"
    )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bb84-resonance",
        description="Information gain and disturbance of near-optimal BB84 eavesdropping probes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="sweep one strategy parameter and write a CSV")
    _add_sweep_args(p)
    p.add_argument("--out", help="output CSV path (default: standard output)")
    p.add_argument("--gnuplot", action="store_true", help="also write a gnuplot script next to --out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("peaks", help="list peaks of one column of a sweep CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--column", default="D")
    p.add_argument("--min-prominence", type=float, default=0.05)
    p.set_defaults(func=cmd_peaks)

    p = sub.add_parser("gain", help="evaluate a single strategy")
    _add_family_args(p)
    p.set_defaults(func=cmd_gain)

    p = sub.add_parser("attenuation", help="largest D-peak prominence for several delta values")
    _add_sweep_args(p)
    p.add_argument("--deltas", required=True, help="comma-separated delta values")
    p.add_argument("--out", help="output CSV path (default: standard output)")
    p.set_defaults(func=cmd_attenuation)

    p = sub.add_parser("best", help="grid search for the most informative delta=0 one-qubit probe")
    p.add_argument("--target", type=float, required=True, help="target disturbance")
    p.add_argument("--resolution", type=int, default=2000)
    p.set_defaults(func=cmd_best)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NoFeasiblePoint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ResonanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
