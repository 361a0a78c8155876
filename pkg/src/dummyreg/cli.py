"""Batch command-line front end.

Subcommands: fit, relevel, encode, predict, selftest. Exit codes:
0 success, 2 usage error (bad flags or formula text), 3 data or model
error (missing files, malformed CSV, rank deficiency, unknown levels).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import oracle
from .dataset import (
    CategoricalColumn,
    Dataset,
    categorical_column,
    listwise_delete,
    numeric_column,
    read_csv,
)
from .encode import (
    build_design,
    design_references,
    relevel,
    simple_labels,
    DesignMatrix,
)
from .errors import (
    DummyregError,
    FormulaSyntaxError,
    IllegalCharacter,
    RankDeficient,
    UnknownFunction,
)
from .formula import parse_formula
from .report import format_value, render_json, render_text
from .solve import fit, one_tailed_p, predict_mean, student_t_cdf

SCHEME_CHOICES = ("treatment", "effect", "weighted")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    data: str | None = None
    formula: str | None = None
    scheme: str = "treatment"
    refs: tuple[tuple[str, str], ...] = ()
    at: tuple[tuple[str, str], ...] = ()
    tail: str = "two"
    output: str = "text"
    rounding: int = 2


def _pair(text: str) -> tuple[str, str]:
    name, sep, value = text.partition("=")
    if not sep or not name or not value:
        raise argparse.ArgumentTypeError(
            f"expected NAME=VALUE, got {text!r}"
        )
    return name, value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dummyreg",
        description="Fit formula-driven OLS models with categorical contrasts.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_model_flags(p: argparse.ArgumentParser, with_output: bool = True):
        p.add_argument("--data", required=True, help="CSV file with a header row")
        p.add_argument("--formula", required=True, help='e.g. "bmi ~ female * edu"')
        p.add_argument("--scheme", choices=SCHEME_CHOICES, default="treatment")
        p.add_argument(
            "--refs",
            action="append",
            type=_pair,
            default=[],
            metavar="VAR=LEVEL",
            help="reference (omitted) level; repeatable",
        )
        if with_output:
            p.add_argument("--output", choices=("text", "json"), default="text")
            p.add_argument("--rounding", type=int, default=2)

    p_fit = sub.add_parser("fit", help="fit a model and print the table")
    add_model_flags(p_fit)
    p_fit.add_argument(
        "--tail",
        default="two",
        metavar="two|less:LABEL|greater:LABEL",
        help="add a one-tailed p-value for one coefficient",
    )

    p_rel = sub.add_parser("relevel", help="fit with changed reference levels")
    add_model_flags(p_rel)
    p_rel.add_argument("--tail", default="two")

    p_enc = sub.add_parser("encode", help="dump the design matrix as CSV")
    add_model_flags(p_enc, with_output=False)

    p_pred = sub.add_parser("predict", help="estimate the mean for one profile")
    add_model_flags(p_pred)
    p_pred.add_argument(
        "--at",
        action="append",
        type=_pair,
        default=[],
        metavar="VAR=VALUE",
        required=True,
        help="one predictor setting; repeat for every model variable",
    )

    sub.add_parser("selftest", help="run the built-in oracle checks")
    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        subcommand=args.subcommand,
        data=getattr(args, "data", None),
        formula=getattr(args, "formula", None),
        scheme=getattr(args, "scheme", "treatment"),
        refs=tuple(getattr(args, "refs", []) or []),
        at=tuple(getattr(args, "at", []) or []),
        tail=getattr(args, "tail", "two"),
        output=getattr(args, "output", "text"),
        rounding=getattr(args, "rounding", 2),
    )


def _tail_request(config: CliConfig) -> tuple[str, str] | None:
    if config.tail == "two":
        return None
    direction, sep, label = config.tail.partition(":")
    if not sep or direction not in ("less", "greater") or not label:
        raise UsageError(
            f"--tail must be 'two', 'less:LABEL', or 'greater:LABEL', "
            f"got {config.tail!r}"
        )
    return label, direction


def _prepare(config: CliConfig, require_refs: bool = False):
    ast = parse_formula(config.formula or "")
    in_formula = set(ast.variables())
    if require_refs and not config.refs:
        raise UsageError("relevel requires at least one --refs VAR=LEVEL")
    for name, _ in config.refs:
        if name not in in_formula:
            raise UsageError(f"--refs variable {name!r} is not in the formula")
    data = read_csv(config.data or "")
    data = listwise_delete(data, [ast.response, *ast.variables()])
    refs: dict[str, str] = {}
    for name, level in config.refs:
        refs = relevel(refs, name, level, data)
    design = build_design(ast, data, config.scheme, refs)
    return ast, data, design


def _emit_fit(config: CliConfig, design, result) -> None:
    refs_meta = design_references(design)
    one_tailed = _tail_request(config)
    if config.output == "json":
        doc = render_json(result, refs_meta, config.scheme)
        if one_tailed is not None:
            label, direction = one_tailed
            doc["one_tailed"] = {
                "label": label,
                "direction": direction,
                "p": one_tailed_p(result, label, direction),
            }
        print(json.dumps(doc, indent=2))
    else:
        print(render_text(result, refs_meta, config.rounding, one_tailed), end="")


def _cmd_fit(config: CliConfig, require_refs: bool = False) -> int:
    _, _, design = _prepare(config, require_refs=require_refs)
    result = fit(design)
    _emit_fit(config, design, result)
    return 0


def _cmd_encode(config: CliConfig) -> int:
    _, _, design = _prepare(config)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow([label.text for label in design.labels]
                    + [design.response_name])
    for i in range(design.n_rows):
        writer.writerow([repr(float(v)) for v in design.values[i]]
                        + [repr(float(design.response[i]))])
    return 0


def _cmd_predict(config: CliConfig) -> int:
    ast, _, design = _prepare(config)
    in_formula = set(ast.variables())
    for name, _ in config.at:
        if name not in in_formula:
            raise UsageError(f"--at variable {name!r} is not in the formula")
    profile = dict(config.at)
    result = fit(design)
    value = predict_mean(result, profile, design)
    if config.output == "json":
        doc = {
            "response": design.response_name,
            "profile": profile,
            "estimate": value,
        }
        print(json.dumps(doc, indent=2))
    else:
        print(format_value(value, config.rounding))
    return 0


# --- selftest ---------------------------------------------------------

def _random_one_factor(rng) -> Dataset:
    k = int(rng.integers(2, 6))
    counts = rng.integers(2, 7, size=k)
    codes = np.repeat(np.arange(k), counts)
    levels = tuple(f"g{i}" for i in range(k))
    y = rng.normal(20.0, 3.0, size=codes.size)
    return Dataset({
        "g": CategoricalColumn(levels, codes),
        "y": numeric_column(y),
    })


def _random_two_factor(rng) -> Dataset:
    ka = int(rng.integers(2, 4))
    kb = int(rng.integers(2, 4))
    a_cells, b_cells, y = [], [], []
    for i in range(ka):
        for j in range(kb):
            count = int(rng.integers(2, 5))
            a_cells.extend([f"a{i}"] * count)
            b_cells.extend([f"b{j}"] * count)
            y.extend(rng.normal(10.0, 2.0, size=count))
    return Dataset({
        "a": categorical_column(a_cells),
        "b": categorical_column(b_cells),
        "y": numeric_column(y),
    })


def _check(name: str, ok: bool, detail: str = "") -> bool:
    if ok:
        print(f"ok: {name}")
    else:
        print(f"FAIL: {name}" + (f" ({detail})" if detail else ""))
    return ok


def _cmd_selftest(config: CliConfig) -> int:
    rng = np.random.default_rng(12345)
    all_ok = True

    worst = 0.0
    for df in (1, 2, 10, 100):
        for t in (-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0):
            worst = max(worst, abs(student_t_cdf(t, df)
                                   - oracle.t_cdf_quadrature(t, df)))
    all_ok &= _check("t-cdf matches quadrature oracle (max |diff| < 1e-8)",
                     worst < 1e-8, f"max diff {worst:.3e}")
    all_ok &= _check("t-cdf closed forms: cdf(0)=.5, Cauchy cdf(1)=.75",
                     abs(student_t_cdf(0.0, 7) - 0.5) < 1e-12
                     and abs(student_t_cdf(1.0, 1) - 0.75) < 1e-12)

    ast = parse_formula("y ~ g")
    ok = True
    for _ in range(20):
        data = _random_one_factor(rng)
        fits = {s: fit(build_design(ast, data, s)) for s in SCHEME_CHOICES}
        base = fits["treatment"].fitted
        ok &= all(np.abs(f.fitted - base).max() < 1e-10 for f in fits.values())
        means = oracle.cell_means(data, ["g"], "y")
        unweighted = sum(means.values()) / len(means)
        grand = float(data["y"].values.mean())
        ok &= abs(fits["effect"].coefficients[0] - unweighted) < 1e-10
        ok &= abs(fits["weighted"].coefficients[0] - grand) < 1e-10
    all_ok &= _check("contrast schemes: shared fit, effect/weighted intercepts", ok)

    ast2 = parse_formula("y ~ a*b")
    ok = True
    for _ in range(20):
        data = _random_two_factor(rng)
        result = fit(build_design(ast2, data))
        means = oracle.cell_means(data, ["a", "b"], "y")
        a_col, b_col = data["a"], data["b"]
        for i in range(data.n_rows):
            key = (a_col.levels[a_col.codes[i]], b_col.levels[b_col.codes[i]])
            ok &= abs(result.fitted[i] - means[key]) < 1e-9
    all_ok &= _check("saturated two-factor fit reproduces cell means", ok)

    n = 12
    codes = np.arange(n) % 3
    dummies = np.zeros((n, 3))
    dummies[np.arange(n), codes] = 1.0
    trap = DesignMatrix(
        np.column_stack([np.ones(n), dummies]),
        simple_labels(["(intercept)", "d0", "d1", "d2"]),
        rng.normal(size=n),
    )
    try:
        fit(trap)
        ok = False
    except RankDeficient:
        ok = True
    all_ok &= _check("intercept plus all k dummies raises RankDeficient", ok)

    spec = oracle.CellMeanSpec(
        {"g": ("u", "v", "w")},
        {("u",): oracle.Cell(4.25, 3), ("v",): oracle.Cell(-1.5, 2),
         ("w",): oracle.Cell(0.125, 5)},
    )
    got = oracle.cell_means(oracle.synthesize(spec, 0.75), ["g"], "y")
    ok = all(abs(got[(lv,)] - spec.cells[(lv,)].mean) < 1e-12
             for lv in ("u", "v", "w"))
    all_ok &= _check("synthesize hits prescribed cell means", ok)

    return 0 if all_ok else 3


def run(config: CliConfig) -> int:
    try:
        if config.subcommand == "fit":
            return _cmd_fit(config)
        if config.subcommand == "relevel":
            return _cmd_fit(config, require_refs=True)
        if config.subcommand == "encode":
            return _cmd_encode(config)
        if config.subcommand == "predict":
            return _cmd_predict(config)
        if config.subcommand == "selftest":
            return _cmd_selftest(config)
        raise UsageError(f"unknown subcommand {config.subcommand!r}")
    except (IllegalCharacter, FormulaSyntaxError, UnknownFunction) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DummyregError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
