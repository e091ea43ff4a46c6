"""Command-line front end: ``lexkernel {features,hierarchy,mgs,stats,export,normalize}``.

Exit codes: 0 ok, 1 search budget exhausted, 2 empty result, 3 no norm
overlap, 64 usage, 65 unparsable input, 74 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import dictionary as dict_io
from .dictionary import associated_graph
from .errors import (
    BudgetExceededError,
    DictionaryError,
    EmptyKernelError,
    EmptyResultError,
    NoOverlapError,
    ParseError,
    StatsError,
)
from .export import adjacency_csv, kernel_dot, quotient_to_dot
from .graph import quotient
from .grounding import (
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_NODE_BUDGET,
    greedy_result,
    minimum_grounding_sets,
)
from .ingest import load_dictionary
from .kernel import analyze, feature_report
from .norms import VARIABLES, join_levels, load_norms, log_frequencies, merge_norms
from .stats import (
    LEVEL_SCALES,
    POSTHOC_METHODS,
    anova,
    correlations,
    level_means,
    means_csv,
    regress,
    regression_csv,
    stars,
)

EXIT_OK = 0
EXIT_BUDGET = 1
EXIT_EMPTY = 2
EXIT_NO_OVERLAP = 3
EXIT_USAGE = 64
EXIT_PARSE = 65
EXIT_IO = 74

HIERARCHIES = ("gk", "scc", "scc-within-gk")
OUTDIR_ENV = "LEXKERNEL_OUTDIR"


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class AnalysisConfig:
    input: Path
    input_format: str = "tsv"
    stem: bool = True
    keep_all_senses: bool = False
    hierarchies: tuple = HIERARCHIES
    norms: tuple = ()
    exact: bool = True
    budget: int = DEFAULT_NODE_BUDGET
    cap: int = DEFAULT_ENUMERATION_CAP
    exclude_levels: tuple = (0,)
    outdir: Path | None = None
    format: str | None = None
    sort: str = "word"
    log_frequency: bool = False
    level_scale: str = "interval"
    posthoc: str = "bonferroni"

    @classmethod
    def from_args(cls, args) -> "AnalysisConfig":
        fmt = args.input_format or ("json" if str(args.input).endswith(".json") else "tsv")
        return cls(
            input=Path(args.input),
            input_format=fmt,
            stem=not args.no_stem,
            keep_all_senses=args.keep_all_senses,
            hierarchies=tuple(getattr(args, "hierarchy", None) or HIERARCHIES),
            norms=tuple(Path(p) for p in getattr(args, "norms", None) or ()),
            exact=not getattr(args, "greedy", False),
            budget=getattr(args, "budget", DEFAULT_NODE_BUDGET),
            cap=getattr(args, "cap", DEFAULT_ENUMERATION_CAP),
            exclude_levels=tuple(getattr(args, "exclude_level", None) or (0,)),
            outdir=Path(args.outdir) if args.outdir else None,
            format=args.format,
            sort=getattr(args, "sort", "word"),
            log_frequency=getattr(args, "log_frequency", False),
            level_scale=getattr(args, "level_scale", "interval"),
            posthoc=getattr(args, "posthoc", "bonferroni"),
        )


# --- helpers -------------------------------------------------------------


def _clean(x):
    """JSON-safe copy: tuples to lists, non-finite floats to strings."""
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def _json(payload) -> str:
    return json.dumps(_clean(payload), indent=1, sort_keys=True) + "\n"


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from exc
    except UnicodeDecodeError as exc:
        raise CliError(f"{path} is not valid UTF-8", EXIT_PARSE) from exc


def _emit(cfg: AnalysisConfig, outputs: dict[str, str], stdout_key: str):
    """Write every output into the outdir, or the chosen one to stdout."""
    if cfg.outdir is None:
        sys.stdout.write(outputs[stdout_key])
        return
    try:
        cfg.outdir.mkdir(parents=True, exist_ok=True)
        for name, text in outputs.items():
            (cfg.outdir / name).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write to {cfg.outdir}: {exc.strerror}", EXIT_IO) from exc


def load_graph(cfg: AnalysisConfig):
    text = _read(cfg.input)
    d, report = load_dictionary(
        text, cfg.input_format, stem=cfg.stem, keep_all_senses=cfg.keep_all_senses
    )
    return d, report, associated_graph(d)


# --- commands --------------------------------------------------------------


def cmd_features(cfg: AnalysisConfig):
    _, _, g = load_graph(cfg)
    feats = feature_report(g)
    outputs = {"features.json": _json(feats)}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["feature", "dictionary", "gk", "kc"])
    for key in ("vertices", "arcs", "density"):
        w.writerow([key] + [feats[part][key] for part in ("dictionary", "gk", "kc")])
    outputs["features.csv"] = buf.getvalue()
    _emit(cfg, outputs, "features.csv" if cfg.format == "csv" else "features.json")


def cmd_hierarchy(cfg: AnalysisConfig):
    _, _, g = load_graph(cfg)
    report = analyze(g)
    outputs = {"hierarchy.csv": report.to_csv(cfg.sort), "hierarchy.json": report.to_json()}
    _emit(cfg, outputs, "hierarchy.json" if cfg.format == "json" else "hierarchy.csv")


def cmd_mgs(cfg: AnalysisConfig):
    _, _, g = load_graph(cfg)
    if cfg.exact:
        try:
            result = minimum_grounding_sets(g, cfg.budget, cfg.cap)
        except BudgetExceededError as exc:
            raise CliError(
                f"{exc}; greedy set: {' '.join(sorted(exc.best_set))}", EXIT_BUDGET
            ) from exc
    else:
        result = greedy_result(g)
    _emit(cfg, {"mgs.json": _json(result.as_dict())}, "mgs.json")


def _attempt(fn, *args, **kwargs):
    """Run one analysis; a statistics error is reported, not raised."""
    try:
        return fn(*args, **kwargs), None
    except StatsError as exc:
        return None, {"error": str(exc)}


def anova_csv(results: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["variable", "F", "df_between", "df_within", "p", "stars"])
    for v, res in results.items():
        if res is not None:
            w.writerow([v, repr(res.f), res.df_between, res.df_within, repr(res.p), stars(res.p)])
    return buf.getvalue()


def cmd_stats(cfg: AnalysisConfig):
    if not cfg.norms:
        raise CliError("stats needs at least one --norms file", EXIT_USAGE)
    for p in cfg.norms:
        if not p.is_file():
            raise CliError(f"norms file not found: {p}", EXIT_USAGE)
    norms = merge_norms([load_norms(_read(p), stem=cfg.stem) for p in cfg.norms])
    if cfg.log_frequency:
        try:
            norms = log_frequencies(norms)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_PARSE) from None
    _, _, g = load_graph(cfg)
    report = analyze(g)

    excl = "_".join(map(str, cfg.exclude_levels))
    summary = {
        "norm_files": [str(p) for p in cfg.norms],
        "norm_words": len(norms),
        "exclude_levels": list(cfg.exclude_levels),
        "log_frequency": cfg.log_frequency,
        "level_scale": cfg.level_scale,
        "posthoc": cfg.posthoc,
        "hierarchies": {},
    }
    outputs = {}
    for name in cfg.hierarchies:
        try:
            levels = report.hierarchy(name)
        except EmptyKernelError as exc:
            summary["hierarchies"][name] = {"error": str(exc)}
            continue
        try:
            obs = join_levels(levels, norms)
        except NoOverlapError:
            raise CliError(f"no overlap between norms and the {name} hierarchy", EXIT_NO_OVERLAP)
        tag = name.replace("-", "_")
        means = level_means(obs)
        outputs[f"{tag}_means.csv"] = means_csv(means)

        regressions = {}
        for label, exclude in (("all_levels", ()), (f"excluding_{excl}", cfg.exclude_levels)):
            res, err = _attempt(regress, obs, exclude_levels=exclude, level_scale=cfg.level_scale)
            regressions[label] = err or res.as_dict()
            if res is not None:
                outputs[f"{tag}_regression_{label}.csv"] = regression_csv(res)

        anovas, anova_json = {}, {}
        for v in VARIABLES:
            res, err = _attempt(anova, obs, v, posthoc=cfg.posthoc)
            anovas[v] = res
            anova_json[v] = err or res.as_dict()
        outputs[f"{tag}_anova.csv"] = anova_csv(anovas)

        summary["hierarchies"][name] = {
            "observations": len(obs),
            "coverage": obs.coverage,
            "norm_words_not_in_graph": obs.dropped,
            "means": [m.__dict__ for m in means],
            "regression": regressions,
            "anova": anova_json,
            "correlations": {f"{a}~{b}": r for (a, b), r in correlations(obs).items()},
        }
    outputs["stats.json"] = _json(summary)
    _emit(cfg, outputs, "stats.json")


def cmd_export(cfg: AnalysisConfig):
    _, _, g = load_graph(cfg)
    report = analyze(g)
    dec = report.decomposition
    outputs = {
        "graph.dot": kernel_dot(g, dec.gk, dec.kc),
        "quotient.dot": quotient_to_dot(g, quotient(g)),
        "adjacency.csv": adjacency_csv(g),
    }
    _emit(cfg, outputs, "adjacency.csv" if cfg.format == "csv" else "graph.dot")


def cmd_normalize(cfg: AnalysisConfig):
    d, report, _ = load_graph(cfg)
    outputs = {
        "dictionary.tsv": dict_io.dumps(d),
        "dictionary.json": dict_io.dumps_json(d),
        "normalization.json": report.to_json(),
    }
    _emit(cfg, outputs, "dictionary.json" if cfg.format == "json" else "dictionary.tsv")


COMMANDS = {
    "features": cmd_features,
    "hierarchy": cmd_hierarchy,
    "mgs": cmd_mgs,
    "stats": cmd_stats,
    "export": cmd_export,
    "normalize": cmd_normalize,
}


# --- argument parsing -----------------------------------------------------


def read_config(path: Path) -> dict[str, str]:
    """``key = value`` lines; ``#`` comments; keys use long option names."""
    out = {}
    for lineno, raw in enumerate(_read(path).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key = value", EXIT_USAGE)
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value.strip('"').strip("'")
    return out


def _coerce(action: argparse.Action, value: str):
    if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
        truth = value.lower() in {"1", "true", "yes", "on"}
        return truth if isinstance(action, argparse._StoreTrueAction) else not truth
    convert = action.type or str
    items = [v.strip() for v in value.split(",") if v.strip()]
    if not isinstance(action, argparse._AppendAction):
        items = [value]
    try:
        out = [convert(v) for v in items]
    except ValueError:
        raise CliError(f"bad config value for {action.dest}: {value!r}", EXIT_USAGE) from None
    if action.choices is not None and any(v not in action.choices for v in out):
        raise CliError(f"config value for {action.dest} must be one of {list(action.choices)}", EXIT_USAGE)
    return out if isinstance(action, argparse._AppendAction) else out[0]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="raw dictionary file (TSV or JSON)")
    common.add_argument("--input-format", choices=("tsv", "json"))
    common.add_argument("--no-stem", action="store_true", help="skip Porter stemming")
    common.add_argument("--keep-all-senses", action="store_true",
                        help="merge every sense instead of keeping the first")
    common.add_argument("--outdir", default=os.environ.get(OUTDIR_ENV),
                        help=f"output directory (default ${OUTDIR_ENV}; stdout if unset)")
    common.add_argument("--config", help="key = value file; command-line flags win")

    parser = _Parser(prog="lexkernel", description="Grounding kernels of dictionary graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("features", parents=[common], help="sizes and densities")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("hierarchy", parents=[common], help="per-word levels")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--sort", choices=("word", "gk", "scc"), default="word")

    p = sub.add_parser("mgs", parents=[common], help="minimum grounding sets")
    p.add_argument("--format", choices=("json",), default="json")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--greedy", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)

    p = sub.add_parser("stats", parents=[common], help="norm statistics by level")
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--norms", action="append", help="norms CSV; repeat, earlier files win")
    p.add_argument("--hierarchy", action="append", choices=HIERARCHIES)
    p.add_argument("--exclude-level", action="append", type=int,
                   help="levels left out of the restricted regression (default 0)")
    p.add_argument("--log-frequency", action="store_true",
                   help="use log10(1 + x) for the frequency norms (bf, tlf)")
    p.add_argument("--level-scale", choices=LEVEL_SCALES, default="interval",
                   help="regress on level values or on their ranks")
    p.add_argument("--posthoc", choices=POSTHOC_METHODS, default="bonferroni")

    p = sub.add_parser("export", parents=[common], help="DOT and adjacency CSV")
    p.add_argument("--format", choices=("dot", "csv"), default="dot")

    p = sub.add_parser("normalize", parents=[common], help="canonical dictionary")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        cfg = read_config(Path(args.config))
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        actions = {a.dest: a for a in subparser._actions}
        unknown = sorted(set(cfg) - set(actions))
        if unknown:
            raise CliError(f"unknown config keys: {', '.join(unknown)}", EXIT_USAGE)
        subparser.set_defaults(**{k: _coerce(actions[k], v) for k, v in cfg.items()})
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    try:
        try:
            args = parse_args(argv)
        except SystemExit as exc:  # argparse usage errors and --help
            return exc.code if isinstance(exc.code, int) else EXIT_USAGE
        cfg = AnalysisConfig.from_args(args)
        COMMANDS[args.command](cfg)
    except CliError as exc:
        print(f"lexkernel: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"lexkernel: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DictionaryError as exc:
        print(f"lexkernel: invalid dictionary: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EmptyResultError as exc:
        print(f"lexkernel: empty result: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
