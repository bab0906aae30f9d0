"""Command line entry point: ``rlm run | examples | laws | selftest | print``."""

from __future__ import annotations

import argparse
import json
import sys

from ..universe import integer_universe
from .emit import summary, to_json, to_text
from .executor import execute
from .parser import DSLError, parse
from .selftest import corpus_source, selftest

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser():
    ap = _Parser(prog="rlm", description="Evaluate relations-language scripts.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="execute a .rl script")
    run.add_argument("file")
    run.add_argument("--json", action="store_true", help="print the JSON report")
    run.add_argument("--seed", type=int, default=0)

    ex = sub.add_parser("examples", help="run the bundled worked-example corpus")
    ex.add_argument("--json", action="store_true")
    ex.add_argument("--seed", type=int, default=0)

    laws = sub.add_parser("laws", help="randomized law suites")
    laws.add_argument("--trials", type=int, default=2000)
    laws.add_argument("--seed", type=int, default=0)
    laws.add_argument("--size", type=int, default=10, help="universe 1..SIZE")
    laws.add_argument("--json", action="store_true")

    st = sub.add_parser("selftest", help="full property suite as JSON")
    st.add_argument("--seed", type=int, default=0)

    pr = sub.add_parser("print", help="parse a script and print it back in canonical form")
    pr.add_argument("file")
    return ap


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        print(f"rlm: cannot read {path}: {exc.strerror}", file=sys.stderr)
        return None


def _parse_or_report(source, path):
    try:
        return parse(source)
    except DSLError as exc:
        print(f"{path}:{exc.line}:{exc.column}: {exc}", file=sys.stderr)
        return None


def _run_script(source, path, seed, as_json):
    script = _parse_or_report(source, path)
    if script is None:
        return EXIT_USAGE
    try:
        reports = execute(script, seed=seed)
    except DSLError as exc:
        print(f"{path}:{exc.line}:{exc.column}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if as_json:
        print(to_json(reports))
    else:
        print(to_text(reports))
        s = summary(reports)
        print(f"\n{s['passed']}/{s['checked']} checks passed, {s['failed']} failing reports")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _laws(args):
    from ..logic import check_laws
    from ..relations import check_relation_laws
    from ..universe import check_set_laws
    if args.trials < 1 or args.size < 1:
        print("rlm: --trials and --size must be positive", file=sys.stderr)
        return EXIT_USAGE
    u = integer_universe(1, args.size)
    suites = [check_laws(u, args.trials, args.seed),
              check_set_laws(u, args.trials, args.seed),
              check_relation_laws(u, args.trials, args.seed)]
    if args.json:
        print(json.dumps({"universe_size": args.size, "trials": args.trials,
                          "suites": [s.to_dict() for s in suites]}, indent=2))
    else:
        for s in suites:
            for law, n in sorted(s.checked.items()):
                bad = len(s.failures_for(law))
                print(f"{'PASS' if not bad else 'FAIL'} {s.name}: {law} ({n} instances, {bad} failures)")
            for note in s.notes:
                print(f"     note: {note}")
    return EXIT_OK if all(s.ok for s in suites) else EXIT_FAIL


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.cmd == "run":
        source = _load(args.file)
        if source is None:
            return EXIT_USAGE
        return _run_script(source, args.file, args.seed, args.json)
    if args.cmd == "examples":
        return _run_script(corpus_source(), "worked_examples.rl", args.seed, args.json)
    if args.cmd == "laws":
        return _laws(args)
    if args.cmd == "selftest":
        result = selftest(args.seed)
        print(json.dumps(result, indent=2))
        return EXIT_OK if result["ok"] else EXIT_FAIL
    if args.cmd == "print":
        source = _load(args.file)
        if source is None:
            return EXIT_USAGE
        script = _parse_or_report(source, args.file)
        if script is None:
            return EXIT_USAGE
        from .ast import print_script
        sys.stdout.write(print_script(script))
        return EXIT_OK
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
