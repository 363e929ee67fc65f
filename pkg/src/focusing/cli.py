"""Command-line entry point: ``resolve`` one corpus file, ``eval`` a corpus."""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from importlib import resources
from pathlib import Path

from .corpus import CorpusError, CorpusFile, bundled_text, parse
from .evaluate import MissingGold, evaluate, render_table, table_json
from .filters import FilterConfig, load_oracle
from .rules import RecencyScope, RuleConfig, run_discourse

# Names accepted in place of a path.
BUNDLED = {"segments": "segments.fc", "worked": "worked.fc"}
BUNDLED_ORACLE = "segments.oracle"


def _load(spec: str) -> CorpusFile:
    if spec in BUNDLED and not Path(spec).exists():
        return parse(bundled_text(BUNDLED[spec]))
    if spec == "-":
        return parse(sys.stdin.read())
    return parse(Path(spec).read_text(encoding="utf-8"))


def _oracle(spec: str | None) -> FilterConfig | None:
    if spec is None:
        return None
    if spec == "bundled" and not Path(spec).exists():
        return load_oracle(resources.files("focusing.data").joinpath(BUNDLED_ORACLE))
    return load_oracle(spec)


def _config(args: argparse.Namespace) -> RuleConfig:
    scope = RecencyScope.ALL_POSITIONS if args.recency == "all" else RecencyScope.AGENT_ONLY
    return RuleConfig(recency_scope=scope, paa_modification=args.paa_mod == "on")


def cmd_resolve(args: argparse.Namespace) -> int:
    corpus = _load(args.file)
    cfg = _config(args)
    oracle = _oracle(args.oracle)
    if oracle is not None:
        cfg = RuleConfig(cfg.recency_scope, cfg.paa_modification, oracle)
    discourses = corpus.discourses
    if args.discourse:
        discourses = tuple(d for d in discourses if d.id == args.discourse)
        if not discourses:
            print(f"error: no discourse {args.discourse!r}", file=sys.stderr)
            return 2
    for d in discourses:
        run = run_discourse(d, cfg)
        print(f"# discourse {d.id}")
        for s in d.sentences:
            if args.trace:
                for sid, event in run.events:
                    if sid == s.id:
                        print(f"sentence {s.id} | - | {event.step} | - | {event.detail}")
            for np in s.noun_phrases:
                out = run.outcomes.get(np.id)
                if out is None:
                    continue
                if args.trace:
                    for step in out.trace:
                        print(f"sentence {s.id} | {np.id} | {step}")
                print(f"sentence {s.id} | {np.id} | {out.rule} | {out} | {out.kind.value}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    corpus = _load(args.file)
    report = evaluate(corpus, _config(args), _oracle(args.oracle))
    if args.json:
        print(table_json(report.table))
    else:
        sys.stdout.write(render_table(report.table))
        if args.details:
            for r in report.records:
                print(f"{r.discourse} {r.np_id} {r.text!r} {r.row} -> {r.outcome} [{r.explanation}]")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="focusing", description="Focus-based pronoun resolution.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("file", help="corpus file, '-' for stdin, or a bundled name (segments, worked)")
        p.add_argument("--oracle", help="veto file, or 'bundled' for the corpus oracle")
        p.add_argument("--recency", choices=("agent-only", "all"), default="agent-only")
        p.add_argument("--paa-mod", choices=("on", "off"), default="on")

    r = sub.add_parser("resolve", help="resolve pronouns and print outcomes")
    common(r)
    r.add_argument("--discourse", help="only this discourse id")
    r.add_argument("--trace", action="store_true", help="print every rule step")
    r.set_defaults(func=cmd_resolve)

    e = sub.add_parser("eval", help="score against gold and print the statistics table")
    common(e)
    e.add_argument("--json", action="store_true", help="emit the table as JSON")
    e.add_argument("--details", action="store_true", help="list every pronoun with its column")
    e.set_defaults(func=cmd_eval)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, MissingGold, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
