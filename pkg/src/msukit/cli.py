"""msukit command line.

Exit codes: 0 success, 1 usage or validation error, 2 data error,
3 stop rule not converged.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from contextlib import contextmanager

from . import csvio, harness, infotheory
from .cardinality import recommended_sample_size
from .errors import DataError, MSUError, NotConvergedError, SelectionError, ValidationError
from .synthgen import GeneratorConfig, generate_dataset, make_features

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NOT_CONVERGED = 0, 1, 2, 3
SEED_ENV = "MSUKIT_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _names(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, harness.DEFAULT_SEED))


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _add_feature_flags(p, class_card_default=2):
    p.add_argument("--class-card", type=int, default=class_card_default, help="class cardinality")
    p.add_argument("--xor", type=int, default=0, metavar="M", help="one XOR group of M binary features")
    p.add_argument("--informative", type=_ints, default=[], metavar="CARDS",
                   help="Kononenko-informative feature cardinalities, e.g. 4,8")
    p.add_argument("--noninformative", type=_ints, default=[], metavar="CARDS",
                   help="uniform non-informative feature cardinalities")
    p.add_argument("--k", type=int, default=1, help="informativeness level of Kononenko features")
    p.add_argument("--noise", type=float, default=0.05, help="XOR class flip probability")


def _features(args):
    return make_features(xor=args.xor, informative=args.informative,
                         noninformative=args.noninformative, k=args.k)


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(args.class_card, _features(args), args.rows, args.noise, args.seed)
    ds = generate_dataset(cfg, args.trial)
    with _output(args.output) as fh:
        csvio.write_dataset(ds, fh)
    return EXIT_OK


def _report_lines(ds, args):
    lines = []
    cols = _names(args.columns) if args.columns else None
    if not args.su and not args.msu:
        report = infotheory.measure_report(ds, cols)
        lines += [(f"H({n})", h) for n, h in report.entropies.items()]
        lines += [(f"SU({a},{b})", v) for (a, b), v in report.su.items()]
        if report.msu is not None:
            joined = ",".join(report.columns)
            lines += [(f"C({joined})", report.total_correlation), (f"MSU({joined})", report.msu)]
        return lines
    names = cols or ds.names
    for n in names:
        lines.append((f"H({n})", infotheory.entropy(ds.columns[ds.position(n)])))
    for pair in args.su:
        sel = _names(pair)
        if len(sel) != 2:
            raise ValidationError(f"--su needs exactly two columns, got {pair!r}")
        lines.append((f"SU({pair})", infotheory.symmetrical_uncertainty(ds, *sel)))
    for group in args.msu:
        sel = _names(group)
        if len(sel) < 2:
            raise ValidationError("need at least two variables")
        joined = ",".join(sel)
        lines.append((f"C({joined})", infotheory.total_correlation(ds, sel)))
        lines.append((f"MSU({joined})", infotheory.msu(ds, sel)))
    return lines


def cmd_measure(args) -> int:
    try:
        if args.input == "-":
            ds = csvio.read_dataset(sys.stdin, args.class_column)
        else:
            with open(args.input, newline="") as fh:
                ds = csvio.read_dataset(fh, args.class_column)
    except OSError as exc:
        raise DataError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        lines = _report_lines(ds, args)
    except SelectionError as exc:
        raise DataError(str(exc)) from None
    for label, value in lines:
        print(f"{label} = {value:.6f}")
    if args.csv:
        with _output(args.csv) as fh:
            fh.write("measure,value\n")
            for label, value in lines:
                fh.write(f"\"{label}\",{value:.6f}\n")
    return EXIT_OK


def _custom_experiment(args) -> harness.ExperimentConfig:
    if not args.axis or not args.values:
        raise ValidationError("a sweep needs --figure, or --axis and --values")
    feats = _features(args)
    base = GeneratorConfig(args.class_card or 2, feats, args.rows or 1000,
                           0.05 if args.noise is None else args.noise)
    measures = [harness.Measure("msu")]
    if args.su_each:
        measures = [harness.su_vs_class(f.name) for f in feats] + measures
    return harness.ExperimentConfig(base, args.axis, tuple(args.values), trials=args.trials or harness.DEFAULT_TRIALS,
                                    measures=tuple(measures), master_seed=args.seed,
                                    calculated=bool(args.calculated), factor=args.factor or 10,
                                    label="custom")


def cmd_sweep(args) -> int:
    if args.figure:
        families = harness.figure_families(
            args.figure, trials=args.trials, master_seed=args.seed, values=args.values,
            n_rows=args.rows, noise=args.noise, class_cardinality=args.class_card,
            calculated=args.calculated, factor=args.factor)
    else:
        families = [_custom_experiment(args)]
    results = []
    for exp in families:
        results.extend(harness.sweep(exp, args.threads))
    with _output(args.output) as fh:
        csvio.write_curves(results, fh)
    if args.output not in (None, "-"):
        for res in results:
            means = " ".join(csvio.fmt(m) for m in res.means)
            print(f"{res.measure}: {means}")
    return EXIT_OK


def cmd_samplesize(args) -> int:
    print(recommended_sample_size(args.class_card, args.cards, args.factor))
    return EXIT_OK


def cmd_stoprule(args) -> int:
    if not (args.xor or args.informative or args.noninformative):
        args.xor = 2
    if len(args.schedule) < 2:
        raise ValidationError("schedule needs at least two sample sizes")
    base = GeneratorConfig(args.class_card, _features(args), args.schedule[0], args.noise)
    exp = harness.ExperimentConfig(base, "samples", tuple(args.schedule), trials=args.trials,
                                   master_seed=args.seed, label="stoprule")
    try:
        result = harness.stop_rule_search(exp, args.threshold, args.schedule, args.threads)
    except NotConvergedError as exc:
        _write_trace(exc.trace, args.trace)
        print(f"not converged: threshold {args.threshold}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    print(result.sample_size)
    _write_trace(result.trace, args.trace)
    return EXIT_OK


def _write_trace(trace, path):
    if path:
        with _output(path) as fh:
            csvio.write_trace(trace, fh)
    else:
        csvio.write_trace(trace, sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="msukit", description="MSU bias analysis on synthetic discrete data.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a synthetic dataset as CSV")
    _add_feature_flags(p)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--trial", type=int, default=0, help="trial index of the seed stream")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("measure", help="entropies, SU, total correlation and MSU of a CSV dataset")
    p.add_argument("input", help="CSV path or - for stdin")
    p.add_argument("--class-column", default="class")
    p.add_argument("--columns", help="columns to report (default: all)")
    p.add_argument("--su", action="append", default=[], metavar="A,B")
    p.add_argument("--msu", action="append", default=[], metavar="A,B[,...]")
    p.add_argument("--csv", help="also write the report as CSV")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("sweep", help="Monte Carlo sweep or figure preset to CsvCurve")
    p.add_argument("--figure", choices=harness.FIGURES)
    p.add_argument("--axis", choices=harness.AXES)
    p.add_argument("--values", type=_ints)
    p.add_argument("--class-card", type=int)
    p.add_argument("--xor", type=int, default=0, metavar="M")
    p.add_argument("--informative", type=_ints, default=[], metavar="CARDS")
    p.add_argument("--noninformative", type=_ints, default=[], metavar="CARDS")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--noise", type=float)
    p.add_argument("--rows", type=int, help="fixed sample size")
    p.add_argument("--calculated", action="store_true", default=None,
                   help="size every point by the sample-size rule")
    p.add_argument("--fixed", dest="calculated", action="store_false", help="disable calculated sizing")
    p.add_argument("--factor", type=int)
    p.add_argument("--su-each", action="store_true", help="custom sweeps: add SU of each feature vs class")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("samplesize", help="recommended sample size for a cardinality profile")
    p.add_argument("--class-card", type=int, required=True)
    p.add_argument("--cards", type=_ints, required=True, help="feature cardinalities, e.g. 2,2")
    p.add_argument("--factor", type=int, default=10)
    p.set_defaults(func=cmd_samplesize)

    p = sub.add_parser("stoprule", help="grow the sample until trial-mean MSU settles")
    _add_feature_flags(p)
    p.add_argument("--threshold", type=float, default=0.01)
    p.add_argument("--schedule", type=_ints, default=list(harness.DEFAULT_SCHEDULE))
    p.add_argument("--trials", type=int, default=harness.DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--trace", help="write the (n, mean, delta) trace CSV here (default: stderr)")
    p.set_defaults(func=cmd_stoprule)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except DataError as exc:
        print(f"msukit: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValidationError, MSUError) as exc:
        print(f"msukit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
