"""Command-line interface.

Exit codes: 0 success, 1 invalid input (arguments, config or file content),
2 runtime failure. Every command that uses randomness takes --seed.
"""
from __future__ import annotations

import argparse
import json
import sys

from .classifiers import ClassifierSpec, train
from .cost import context_from_json, uniform_context
from .data import load_csv, split_dataset
from .errors import JrocError, ValidationError
from .harness import ExperimentConfig, emit_report, run_experiment
from .hull import dominance_regions, lower_hull, select_best
from .lattice import (
    DEFAULT_CEILING,
    enumerate_full_lattice,
    points_from_csv,
    points_to_csv,
)
from .plot import render_plot
from .search import backward_budget, backward_search, random_search
from .stats import ResultMatrix, comparison_report, report_to_json


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2; bad usage is a validation error
        raise ValidationError(message)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _parse_model(text: str) -> ClassifierSpec:
    text = text.strip()
    if text.startswith("{"):
        try:
            return ClassifierSpec.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"--model is not valid JSON: {exc}") from exc
    return ClassifierSpec(kind=text)


def _load_context(args, m: int, c: int):
    if getattr(args, "context", None):
        ctx = context_from_json(_read(args.context), normalize=not args.no_normalize)
        if ctx.m != m or ctx.c != c:
            raise ValidationError(
                f"context is for m={ctx.m}, c={ctx.c}; dataset has m={m}, c={c}"
            )
        return ctx
    return uniform_context(m, c)


def _prepare(args):
    """Shared setup for lattice/search: load, split, train, build context."""
    d = load_csv(args.data, args.missing_token, _label_col(args.label_column))
    frac = args.train_frac
    if not 0.0 < frac <= 1.0:
        raise ValidationError(f"--train-frac must be in (0, 1], got {frac}")
    if frac == 1.0:
        train_part = eval_part = d
    else:
        train_part, eval_part = split_dataset(d, (frac, 1.0 - frac), args.seed)
    model = train(_parse_model(args.model), train_part)
    ctx = _load_context(args, d.m, d.c)
    return d, eval_part, model, ctx


def _label_col(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _add_data_options(p) -> None:
    p.add_argument("--data", required=True, help="CSV dataset (header row required)")
    p.add_argument("--model", required=True,
                   help="classifier kind or JSON spec, e.g. knn or "
                        '\'{"kind":"knn","k":3}\'')
    p.add_argument("--context", help="operating context JSON (default: uniform)")
    p.add_argument("--no-normalize", action="store_true",
                   help="use the context file exactly as stored")
    p.add_argument("--train-frac", type=float, default=0.5,
                   help="fraction used for training; the rest is evaluated (default 0.5)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--missing-token", default="?")
    p.add_argument("--label-column", default="-1",
                   help="label column name or index (default: last)")


def _cmd_lattice(args) -> int:
    _, eval_part, model, ctx = _prepare(args)
    points = enumerate_full_lattice(model, eval_part, ctx, ceiling=args.ceiling)
    _write(args.out, points_to_csv(points))
    print(f"wrote {len(points)} points to {args.out}")
    return 0


def _cmd_search(args) -> int:
    _, eval_part, model, ctx = _prepare(args)
    method = args.method.lower()
    if method != "bjc" and args.alpha is not None:
        raise ValidationError(f"--alpha only applies to bjc, not {method}")
    if method != "rnd" and args.budget is not None:
        raise ValidationError(f"--budget only applies to rnd, not {method}")
    if method == "rnd":
        budget = args.budget if args.budget else backward_budget(eval_part.m)
        trace = random_search(model, eval_part, ctx, budget=budget, seed=args.seed)
    else:
        alpha = args.alpha if args.alpha is not None else ctx.alpha
        trace = backward_search(
            model,
            eval_part,
            ctx,
            criterion=method[1:],
            alpha_for_jc=alpha if method == "bjc" else None,
        )
    _write(args.out, trace.to_json())
    if args.points_out:
        _write(args.points_out, points_to_csv(trace.visited))
    print(f"{trace.method}: visited {trace.budget} configurations; wrote {args.out}")
    return 0


def _cmd_hull(args) -> int:
    points = points_from_csv(_read(args.points))
    hull = lower_hull(points)
    if args.out:
        _write(args.out, hull.to_json())
        print(f"hull has {len(hull)} vertices; wrote {args.out}")
    else:
        print(hull.to_json())
    return 0


def _cmd_select(args) -> int:
    points = points_from_csv(_read(args.points))
    best = select_best(points, args.alpha)
    payload = json.dumps(
        {
            "alpha": args.alpha,
            "model_id": best.model_id,
            "cfg": best.cfg.bits(),
            "mean_tc": best.mean_tc,
            "mean_mc": best.mean_mc,
            "joint_cost": best.joint(args.alpha),
        },
        indent=2,
    )
    if args.out:
        _write(args.out, payload)
    print(payload)
    return 0


def _cmd_plot(args) -> int:
    points = points_from_csv(_read(args.points))
    clouds: dict[str, list] = {}
    for p in points:
        clouds.setdefault(p.model_id, []).append(p)
    hulls = None
    if not args.no_hulls:
        hulls = {mid: lower_hull(pts) for mid, pts in clouds.items()}
    render_plot(clouds, hulls, isometric_alphas=tuple(args.alpha), out=args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_experiment(args) -> int:
    config = ExperimentConfig.from_json(_read(args.config))
    if args.seed is not None:
        config = ExperimentConfig.from_dict({**config.to_dict(), "seed": args.seed})
    report = run_experiment(config)
    written = emit_report(report, args.out)
    print(f"ran {len(report.cells)} cells on backend {report.backend}")
    for path in written:
        print(f"  {path}")
    return 0


def _cmd_stats(args) -> int:
    matrix = ResultMatrix.from_csv(_read(args.matrix))
    report = comparison_report(matrix, significance=args.significance)
    payload = report_to_json(report)
    if args.out:
        _write(args.out, payload)
    print(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="jroc",
        description="Joint misclassification/test-cost evaluation of trained "
        "classifiers over feature-configuration lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="enumerate the full configuration lattice")
    _add_data_options(p)
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    p.add_argument("--out", required=True, help="points CSV to write")
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("search", help="backward or random lattice search")
    _add_data_options(p)
    p.add_argument("--method", required=True, choices=["bmc", "btc", "bjc", "rnd"])
    p.add_argument("--alpha", type=float, help="alpha for the bjc criterion "
                   "(default: the context's alpha)")
    p.add_argument("--budget", type=int, help="rnd only: evaluations (default m(m+1)/2+1)")
    p.add_argument("--out", required=True, help="trace JSON to write")
    p.add_argument("--points-out", help="also write the visited points as CSV")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("hull", help="lower-left hull and dominance regions of a point file")
    p.add_argument("--points", required=True)
    p.add_argument("--out", help="hull JSON to write (default: stdout)")
    p.set_defaults(func=_cmd_hull)

    p = sub.add_parser("select", help="best point of a point file at one alpha")
    p.add_argument("--points", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("plot", help="render a point file to SVG")
    p.add_argument("--points", required=True)
    p.add_argument("--alpha", type=float, action="append", default=[],
                   help="draw the equal-JC isometric at this alpha (repeatable)")
    p.add_argument("--no-hulls", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_plot)

    p = sub.add_parser("experiment", help="run the full comparison protocol")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--out", required=True, help="report directory")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("stats", help="rank statistics over a result matrix CSV")
    p.add_argument("--matrix", required=True)
    p.add_argument("--significance", type=float, default=0.05)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except JrocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
