"""Command-line interface.

Subcommands:
  translit   transliterate text from arguments or stdin
  eval       score a hypotheses file against a reference pairs file
  build-lm   train an n-gram model from a sentence corpus
  serve      start the HTTP service

Exit codes: 0 success, 1 usage error, 2 data error (missing or malformed
files).  The config file path may also come from the XLIT_CONFIG
environment variable; explicit flags override config file values.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .errors import XlitError
from .evaluation import (
    EvalReport,
    ReportFormat,
    evaluate,
    load_hypotheses,
    load_pairs,
    render_report,
)
from .lexicon import ColumnOrder
from .pipeline import (
    DEFAULT_MAX_COMBINATIONS,
    DEFAULT_TOP_K,
    Pipeline,
    PipelineConfig,
)
from .scoring import DEFAULT_BACKOFF, DEFAULT_ORDER, NgramModel, train_ngram

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; remap to 1 (2 means data error here)
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="xlit", description="Reverse transliteration toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    translit = sub.add_parser("translit", help="transliterate text", parents=[_resource_flags()])
    translit.add_argument("text", nargs="*", help="text to transliterate (stdin if omitted)")
    translit.add_argument("--prefix-mode", action="store_true", help="treat a trailing word as incomplete")

    ev = sub.add_parser("eval", help="score hypotheses against references")
    ev.add_argument("--refs", required=True, help="reference pairs TSV")
    ev.add_argument("--hyps", required=True, help="hypotheses file, one sentence per line")
    ev.add_argument("--system", default="system", help="system name for the report row")
    ev.add_argument("--test-set", default="test", help="test set name for the report row")
    ev.add_argument("--format", choices=["text", "json"], default="text")
    ev.add_argument(
        "--dakshina-columns",
        action="store_true",
        help="pairs file is native<TAB>roman instead of roman<TAB>native",
    )

    lm = sub.add_parser("build-lm", help="train an n-gram model")
    lm.add_argument("--corpus", required=True, help="training corpus, one sentence per line")
    lm.add_argument("--order", type=int, default=DEFAULT_ORDER)
    lm.add_argument("--backoff", type=float, default=DEFAULT_BACKOFF)
    lm.add_argument("-o", "--output", required=True, help="model file to write")

    serve = sub.add_parser("serve", help="start the HTTP service", parents=[_resource_flags()])
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8040)

    return parser


def _resource_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--config", help="pipeline config file (or XLIT_CONFIG env var)")
    flags.add_argument("--rules", help="rules TSV path")
    flags.add_argument("--lexicon", help="lexicon TSV path")
    flags.add_argument("--lm", help="n-gram model path")
    flags.add_argument("--scorer-url", help="external scorer endpoint (POST /score)")
    flags.add_argument("--top-k", type=int, default=None)
    flags.add_argument("--max-combinations", type=int, default=None)
    flags.add_argument(
        "--dakshina-columns",
        action="store_true",
        help="lexicon file is native<TAB>roman instead of roman<TAB>native",
    )
    return flags


def _pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    config_path = args.config or os.environ.get("XLIT_CONFIG")
    config = PipelineConfig.load(config_path) if config_path else PipelineConfig()
    if args.rules:
        config.rules_path = args.rules
    if args.lexicon:
        config.lexicon_path = args.lexicon
    if args.lm:
        config.lm_path = args.lm
    if args.scorer_url:
        config.scorer_url = args.scorer_url
    if args.top_k is not None:
        config.top_k = args.top_k
    if args.max_combinations is not None:
        config.max_combinations = args.max_combinations
    if args.dakshina_columns:
        config.lexicon_columns = ColumnOrder.NATIVE_FIRST
    return config


def _cmd_translit(args: argparse.Namespace) -> int:
    config = _pipeline_config(args)
    if config.rules_path is None and config.lexicon_path is None:
        print("xlit translit: error: need --rules and/or --lexicon (or a config file)", file=sys.stderr)
        return USAGE_ERROR
    pipeline = Pipeline.from_config(config)
    if args.text:
        lines = [" ".join(args.text)]
    else:
        lines = sys.stdin.read().splitlines()
    for line in lines:
        if args.prefix_mode:
            result = pipeline.transliterate_prefix(line)
        else:
            result = pipeline.transliterate_sentence(line)
        print(result.output)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    columns = ColumnOrder.NATIVE_FIRST if args.dakshina_columns else ColumnOrder.ROMAN_FIRST
    with open(args.refs, "rb") as fh:
        pairs = load_pairs(fh, columns)
    with open(args.hyps, "rb") as fh:
        hypotheses = load_hypotheses(fh)
    row = evaluate(args.system, hypotheses, pairs, args.test_set)
    fmt = ReportFormat.JSON if args.format == "json" else ReportFormat.TEXT
    print(render_report(EvalReport(rows=(row,)), fmt), end="")
    if fmt is ReportFormat.JSON:
        print()
    return 0


def _cmd_build_lm(args: argparse.Namespace) -> int:
    with open(args.corpus, "r", encoding="utf-8") as fh:
        model = train_ngram(fh, order=args.order, backoff=args.backoff)
    model.save(args.output)
    grams = len(model.counts)
    print(f"wrote order-{model.order} model with {grams} grams to {args.output}", file=sys.stderr)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    config = _pipeline_config(args)
    if config.rules_path is None and config.lexicon_path is None:
        print("xlit serve: error: need --rules and/or --lexicon (or a config file)", file=sys.stderr)
        return USAGE_ERROR
    app = create_app(Pipeline.from_config(config))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


_COMMANDS = {
    "translit": _cmd_translit,
    "eval": _cmd_eval,
    "build-lm": _cmd_build_lm,
    "serve": _cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"xlit {args.command}: error: {exc.filename}: no such file", file=sys.stderr)
        return DATA_ERROR
    except XlitError as exc:
        print(f"xlit {args.command}: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
