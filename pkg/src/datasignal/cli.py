"""Command-line interface.

Subcommands: ``fit``, ``eval``, ``figure``, ``mnist``. Every flag can also
be given in a TOML file (``--config``), either at top level or in a table
named after the subcommand; command-line flags take precedence.

Exit codes: 0 success, 2 usage, 3 data/parse, 4 numeric, 5 network/io.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classifier import (ClassifierModel, decision_boundary_indicator, fit_classifier, one_hot,
                         signal_values)
from .errors import DataSignalError, IoError, ParseError, UsageError
from .kernel import KernelConfig, LabeledPointSet, build_gram, evaluate_signal, fit_signal
from .persistence import load_model, save_model

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

log = logging.getLogger("datasignal")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4, 5


def _num(x) -> str:
    # shortest text that reads back to the same double
    return repr(float(x))


# -- CSV ---------------------------------------------------------------------

def _read_rows(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return list(csv.reader(io.StringIO(text)))


def read_dataset_csv(path, classify: bool = False):
    """Header ``x1,...,xd,<value>``; returns (points, values-or-labels)."""
    rows = _read_rows(path)
    if not rows:
        raise ParseError("empty dataset file", line=1)
    header = rows[0]
    if len(header) < 2:
        raise ParseError("need at least one coordinate column and a value column", line=1)
    d = len(header) - 1
    points, targets = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != d + 1:
            raise ParseError(f"expected {d + 1} fields, found {len(row)}", line=lineno)
        try:
            points.append([float(v) for v in row[:d]])
        except ValueError as exc:
            raise ParseError(f"bad coordinate: {exc}", line=lineno) from None
        if classify:
            targets.append(row[d].strip())
        else:
            try:
                targets.append(float(row[d]))
            except ValueError:
                raise ParseError(f"bad value {row[d]!r}", line=lineno) from None
    if not points:
        raise ParseError("dataset has no rows", line=2)
    points = np.array(points)
    if not np.isfinite(points).all():
        raise ParseError("non-finite coordinate")
    if classify and all(_is_int(t) for t in targets):
        targets = [int(t) for t in targets]
    return points, targets


def _is_int(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def read_queries_csv(path, dim: int) -> np.ndarray:
    """Queries use the first ``dim`` columns; a header row is required unless the file is empty."""
    rows = _read_rows(path)
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) < dim:
            raise ParseError(f"expected at least {dim} fields, found {len(row)}", line=lineno)
        try:
            out.append([float(v) for v in row[:dim]])
        except ValueError as exc:
            raise ParseError(f"bad coordinate: {exc}", line=lineno) from None
    return np.array(out, dtype=float).reshape(-1, dim)


def write_csv(path, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    try:
        Path(path).write_text(buf.getvalue(), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


# -- subcommands -------------------------------------------------------------

def cmd_fit(args) -> int:
    config = KernelConfig(gamma=args.gamma, alpha=args.alpha)
    points, targets = read_dataset_csv(args.csv_in, classify=args.classify)
    if args.classify:
        model = fit_classifier(points, targets, config)
        signal = model.signal
        rhs = one_hot(targets, model.class_labels)
    else:
        model = signal = fit_signal(LabeledPointSet(points, targets), config)
        rhs = np.asarray(targets)[:, None]
    system = build_gram(points, config) + config.alpha * np.eye(len(points))
    residual = float(np.max(np.abs(system @ signal.coefficients - rhs)))
    save_model(model, args.output)
    print(f"centers={len(points)} dim={signal.dim} outputs={signal.n_outputs} "
          f"alpha={_num(config.alpha)} gamma={_num(config.gamma)}")
    print(f"residual_inf={residual:.3e} fitted_min={signal.fitted_values.min():.6g} "
          f"fitted_max={signal.fitted_values.max():.6g}")
    print(f"model written to {args.output}")
    return EXIT_OK


def cmd_eval(args) -> int:
    model = load_model(args.model_in)
    signal = model.signal if isinstance(model, ClassifierModel) else model
    queries = read_queries_csv(args.queries_csv, signal.dim)
    header = [f"x{i + 1}" for i in range(signal.dim)]
    if isinstance(model, ClassifierModel):
        values = signal_values(model, queries)
        winners = decision_boundary_indicator(model, queries)
        header += [f"u_{label}" for label in model.class_labels] + ["prediction"]
        rows = [[_num(v) for v in q] + [_num(v) for v in u] + [model.class_labels[w]]
                for q, u, w in zip(queries, values, winners)]
    else:
        values = evaluate_signal(signal, queries) if len(queries) else np.zeros((0, signal.n_outputs))
        header += ["u"] if signal.n_outputs == 1 else [f"u{j + 1}" for j in range(signal.n_outputs)]
        rows = [[_num(v) for v in q] + [_num(v) for v in u] for q, u in zip(queries, values)]
    write_csv(args.output, header, rows)
    print(f"{len(rows)} rows written to {args.output}")
    return EXIT_OK


def cmd_figure(args) -> int:
    from .figures import build_figure, experiment_ids
    from .svg import emit_svg

    if args.list:
        print("\n".join(experiment_ids()))
        return EXIT_OK
    if not args.experiment_id or not args.output:
        raise UsageError("figure needs an experiment id and --output (or --list)")
    fig = build_figure(args.experiment_id, alpha=args.alpha, seed=args.seed, gamma=args.gamma,
                       resolution=args.resolution)
    emit_svg(fig, args.output)
    print(f"figure {args.experiment_id} written to {args.output}")
    return EXIT_OK


def cmd_mnist(args) -> int:
    from .mnist import fetch_mnist, load_mnist, run_mnist
    from .mnist.fetch import DEFAULT_BASE_URL

    paths = fetch_mnist(args.cache_dir, args.base_url or DEFAULT_BASE_URL)
    train = load_mnist(paths["train_images"], paths["train_labels"])
    test = load_mnist(paths["test_images"], paths["test_labels"])
    report = run_mnist(train, test, KernelConfig(gamma=args.gamma, alpha=args.alpha), k=args.k,
                       use_augmentation=not args.no_augment, limit_test=args.limit_test,
                       with_nn_baseline=args.nn_baseline)
    if args.report == "json":
        text = json.dumps(report.to_dict(timings=not args.no_timings), indent=2) + "\n"
    else:
        text = format_report_text(report, timings=not args.no_timings)
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise IoError(f"cannot write {args.output}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK


def format_report_text(report, timings: bool = True) -> str:
    lines = [f"accuracy {report.accuracy * 100:.2f}% on {report.config['test_size']} test images"]
    if report.nn_accuracy is not None:
        lines.append(f"1-NN baseline accuracy {report.nn_accuracy * 100:.2f}%")
    lines.append("rows: true digit, columns: assigned label")
    lines.append("     " + "".join(f"{j:>6}" for j in range(10)))
    for k, row in enumerate(report.confusion):
        lines.append(f"{k:>4} " + "".join(f"{v:>6}" for v in row))
    cfg = report.config
    lines.append(f"alpha={cfg['alpha']:g} gamma={cfg['gamma']:g} k={cfg['k']} "
                 f"augment={cfg['augment']} train_size={cfg['train_size']}")
    if timings:
        lines.append(" ".join(f"{k}={v:.1f}" for k, v in report.timings.items()))
    return "\n".join(lines) + "\n"


# -- argument handling -------------------------------------------------------

def _nonneg(text):
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _pos(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _pos_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="datasignal",
        description="Laplace-kernel data signals: fitting, evaluation, figures and MNIST runs.",
        epilog="exit codes: 0 success, 2 usage, 3 data/parse, 4 numeric, 5 network/io")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="TOML file with default flag values (flags win)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    fit = sub.add_parser("fit", help="fit a signal or classifier to a CSV data set")
    fit.add_argument("csv_in", help="CSV with header x1,...,xd,value")
    fit.add_argument("-o", "--output", required=True, help="model JSON to write")
    fit.add_argument("--alpha", type=_nonneg, default=1.0, help="regularization (default 1)")
    fit.add_argument("--gamma", type=_pos, default=1.0, help="kernel bandwidth (default 1)")
    fit.add_argument("--classify", action="store_true",
                     help="treat the last column as class labels and fit one-vs-rest signals")
    fit.set_defaults(func=cmd_fit)

    ev = sub.add_parser("eval", help="evaluate a saved model at query points")
    ev.add_argument("model_in", help="model JSON")
    ev.add_argument("queries_csv", help="CSV whose first d columns are coordinates")
    ev.add_argument("-o", "--output", required=True, help="CSV to write")
    ev.set_defaults(func=cmd_eval)

    fig = sub.add_parser("figure", help="render a planar experiment as SVG")
    fig.add_argument("experiment_id", nargs="?", help="e.g. disk-m16, diamond-m32-noise5, gaussians")
    fig.add_argument("-o", "--output", help="SVG file to write")
    fig.add_argument("--alpha", type=_nonneg, default=1.0, help="regularization (default 1)")
    fig.add_argument("--gamma", type=_pos, default=1.0, help="kernel bandwidth (default 1)")
    fig.add_argument("--seed", type=int, default=0, help="seed for noise and sampling (default 0)")
    fig.add_argument("--resolution", type=_pos_int, default=256,
                     help="evaluation raster side (default 256)")
    fig.add_argument("--list", action="store_true", help="list experiment ids and exit")
    fig.set_defaults(func=cmd_figure)

    mn = sub.add_parser("mnist", help="classify MNIST test digits with local class signals")
    mn.add_argument("--alpha", type=_nonneg, default=1.5, help="regularization (default 1.5)")
    mn.add_argument("--gamma", type=_pos, default=1.0, help="kernel bandwidth (default 1)")
    mn.add_argument("--k", type=_pos_int, default=5, help="neighbors per digit class (default 5)")
    mn.add_argument("--limit-test", type=_pos_int, default=None,
                    help="classify only the first N test images")
    mn.add_argument("--no-augment", action="store_true", help="skip training-set augmentation")
    mn.add_argument("--nn-baseline", action="store_true", help="also report 1-NN accuracy")
    mn.add_argument("--cache-dir", default=None,
                    help="MNIST cache directory (default $DATASIGNAL_CACHE or ~/.cache/datasignal/mnist)")
    mn.add_argument("--base-url", default=None, help="download mirror for missing files")
    mn.add_argument("--seed", type=int, default=0, help="accepted for uniformity; the run is deterministic")
    mn.add_argument("--report", choices=("json", "text"), default="text", help="report format")
    mn.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    mn.add_argument("--no-timings", action="store_true",
                    help="omit wall-clock timings so reports are byte-reproducible")
    mn.set_defaults(func=cmd_mnist)
    return parser


def _apply_config_file(parser, argv) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        with open(known.config, "rb") as fh:
            doc = tomllib.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read config {known.config}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"invalid TOML in {known.config}: {exc}") from exc

    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    top = {k: v for k, v in doc.items() if not isinstance(v, dict)}
    all_dests = {a.dest for sp in subparsers.choices.values() for a in sp._actions}
    stray = [k for k in top if k.replace("-", "_") not in all_dests]
    if stray:
        raise UsageError(f"unknown setting(s) {', '.join(map(repr, stray))} in {known.config}")
    for name, sp in subparsers.choices.items():
        values = dict(top)
        values.update(doc.get(name, {}))
        dests = {a.dest for a in sp._actions}
        applied = {}
        for key, value in values.items():
            dest = key.replace("-", "_")
            if dest in dests:
                applied[dest] = value
            elif key in doc.get(name, {}):
                raise UsageError(f"unknown setting {key!r} for {name} in {known.config}")
        sp.set_defaults(**applied)
    unknown = [t for t in doc if isinstance(doc[t], dict) and t not in subparsers.choices]
    if unknown:
        raise UsageError(f"unknown config table(s): {', '.join(unknown)}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        if args.command is None:
            parser.print_help()
            return EXIT_USAGE
        return args.func(args)
    except DataSignalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
