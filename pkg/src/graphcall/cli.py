"""Command-line surface: load, reason, infer, prompt-gen, split, train, eval,
catalog, serve.

Exit codes: 0 success, 2 parse failure, 3 execution failure, 4 data failure.
Configuration comes from a JSON file (``--config`` or ``GRAPHCALL_CONFIG``)
with environment overrides; flags win over both.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import metrics, prompts
from .config import load_config
from .errors import GraphCallError, ParseError
from .kg import TransEEmbedder
from .llm import GenerationConfig, annotate
from .recsys import BprRanker
from .runtime import Runtime
from .service import ReasonService
from .store import GraphInstanceSet
from .templates import default_templates

EXIT_PARSE = 2
EXIT_EXECUTION = 3
EXIT_DATA = 4

_DATA_CODES = {"not_found", "schema_error", "invariant_violation"}


def _exit_code_for(code):
    if code == "parse_error":
        return EXIT_PARSE
    if code in _DATA_CODES:
        return EXIT_DATA
    return EXIT_EXECUTION


def _runtime(args):
    cfg = load_config(getattr(args, "config", None))
    if getattr(args, "memory_capacity", None):
        cfg.memory_capacity = args.memory_capacity
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "endpoint", None):
        cfg.endpoint_url = args.endpoint
    return Runtime.from_config(cfg), cfg


def _report_result(result, tolerant):
    print(result.text)
    if not result.diagnostics:
        return 0
    for failure in result.diagnostics:
        print(
            f"diagnostic: {failure.error_code} at {failure.span}: {failure.message}",
            file=sys.stderr,
        )
    if tolerant:
        return 0
    return _exit_code_for(result.diagnostics[0].error_code)


def cmd_reason(args):
    runtime, _ = _runtime(args)
    try:
        result = runtime.reason(args.statement, strict=args.strict)
    except GraphCallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code_for("parse_error" if isinstance(exc, ParseError) else exc.code)
    return _report_result(result, args.tolerant)


def cmd_infer(args):
    runtime, cfg = _runtime(args)
    url = args.endpoint or cfg.endpoint_url
    if not url:
        print("error: no completion endpoint configured (--endpoint)", file=sys.stderr)
        return EXIT_EXECUTION
    try:
        annotated = annotate(args.input, GenerationConfig(endpoint_url=url))
    except GraphCallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXECUTION
    print(f"annotated: {annotated}", file=sys.stderr)
    try:
        result = runtime.reason(annotated, strict=args.strict)
    except GraphCallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code_for("parse_error" if isinstance(exc, ParseError) else exc.code)
    return _report_result(result, args.tolerant)


def cmd_load(args):
    runtime, _ = _runtime(args)
    try:
        dataset = runtime.store.load(args.dataset)
    except GraphCallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    profile = dataset.profile
    summary = {
        "name": profile.name,
        "order": profile.order,
        "size": profile.size,
        "is_directed": profile.is_directed,
        "is_weighted": profile.is_weighted,
        "kind": "graph_set" if isinstance(dataset, GraphInstanceSet) else "graph",
    }
    summary.update(profile.extras)
    print(json.dumps(summary, indent=2, default=str))
    return 0


def cmd_prompt_gen(args):
    runtime, _ = _runtime(args)
    templates = default_templates(args.task)
    seed = args.seed if args.seed is not None else 0
    try:
        pairs = prompts.expand_templates(
            runtime, templates, args.dataset, limit=args.limit, seed=seed
        )
    except GraphCallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA if exc.code == "not_found" else EXIT_EXECUTION
    if args.validate:
        pairs, dropped = prompts.validate_pairs(runtime, pairs)
        for item in dropped:
            print(f"dropped: {item.reason}", file=sys.stderr)
    prompts.write_pairs(args.out, pairs)
    print(f"wrote {len(pairs)} pairs to {args.out}")
    return 0


def cmd_split(args):
    pairs = prompts.read_pairs(args.input)
    try:
        train, test = prompts.split(pairs, seed=args.seed, n_test=args.n_test, train_cap=args.train_cap)
    except GraphCallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    prompts.write_pairs(args.train_out, train)
    prompts.write_pairs(args.test_out, test)
    print(f"wrote {len(train)} train pairs to {args.train_out} and {len(test)} test pairs to {args.test_out}")
    return 0


def cmd_train(args):
    runtime, _ = _runtime(args)
    try:
        dataset = runtime.store.load(args.dataset)
        if args.model == "bpr":
            model = BprRanker(
                dim=args.dim, learning_rate=args.lr, l2=args.l2, epochs=args.epochs, seed=args.seed
            ).fit(dataset)
        else:
            model = TransEEmbedder(
                dim=args.dim, margin=args.margin, learning_rate=args.lr, epochs=args.epochs, seed=args.seed
            ).fit(dataset)
    except GraphCallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA if exc.code == "not_found" else EXIT_EXECUTION
    model.save(args.out)
    print(f"saved {args.model} checkpoint to {args.out}")
    return 0


def cmd_eval(args):
    preds = _read_outputs(args.pred)
    golds = _read_outputs(args.gold)
    try:
        report = metrics.evaluate(preds, golds)
    except GraphCallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    payload = json.dumps(report.as_dict(), indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    print(payload)
    return 0


def _read_outputs(path):
    """Statements from a prompt JSONL file (its output field) or plain lines."""
    texts = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                texts.append(line)
                continue
            if isinstance(record, dict) and "output" in record:
                texts.append(record["output"])
            else:
                texts.append(line)
    return texts


def cmd_catalog(args):
    runtime, _ = _runtime(args)
    print(json.dumps(runtime.registry.catalog(), indent=2))
    return 0


def cmd_serve(args):
    runtime, cfg = _runtime(args)
    service = ReasonService(runtime, endpoint_url=args.endpoint or cfg.endpoint_url)
    print(f"serving on {args.host}:{args.port}")
    service.serve_forever(args.port, host=args.host)
    return 0


def _add_common(parser):
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--seed", type=int, default=None, help="seed override")
    parser.add_argument("--memory-capacity", type=int, default=None, help="working memory capacity")


def build_parser():
    parser = argparse.ArgumentParser(prog="graphcall", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reason", help="parse, execute, and post-process a statement")
    p.add_argument("statement")
    p.add_argument("--strict", action="store_true", help="fail on malformed call spans")
    p.add_argument("--tolerant", action="store_true", help="exit 0 even when calls fail")
    _add_common(p)
    p.set_defaults(func=cmd_reason)

    p = sub.add_parser("infer", help="annotate an input via a completion endpoint, then reason")
    p.add_argument("input")
    p.add_argument("--endpoint", help="completion endpoint URL")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--tolerant", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("load", help="load and validate a dataset, print its profile")
    p.add_argument("dataset")
    _add_common(p)
    p.set_defaults(func=cmd_load)

    p = sub.add_parser("prompt-gen", help="expand prompt templates over a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--task", required=True, help="template family, e.g. property, topic, loading")
    p.add_argument("--limit", type=int, default=None, help="instances per template")
    p.add_argument("--out", required=True)
    p.add_argument("--validate", action="store_true", help="run execute-and-filter before writing")
    _add_common(p)
    p.set_defaults(func=cmd_prompt_gen)

    p = sub.add_parser("split", help="split a prompt file into train/test")
    p.add_argument("--input", required=True)
    p.add_argument("--train-out", required=True)
    p.add_argument("--test-out", required=True)
    p.add_argument("--n-test", type=int, default=160)
    p.add_argument("--train-cap", type=int, default=1600)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train", help="train a ranking or embedding model")
    p.add_argument("model", choices=("bpr", "transe"))
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--lr", type=float, default=None)
    p.add_argument("--l2", type=float, default=0.01)
    p.add_argument("--margin", type=float, default=1.0)
    p.add_argument("--config", help="path to a JSON config file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="score predictions against references")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("catalog", help="dump the registered function catalog")
    _add_common(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--endpoint", help="completion endpoint URL for /infer")
    _add_common(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "train":
        if args.epochs is None:
            args.epochs = 50 if args.model == "bpr" else 100
        if args.dim is None:
            args.dim = 32 if args.model == "bpr" else 50
        if args.lr is None:
            args.lr = 0.05 if args.model == "bpr" else 0.01
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
