"""``ncham run | repl | selftest``."""

from __future__ import annotations

import argparse
import sys

from ..syntax import ParseError
from .evaluator import Evaluator, run_script
from .parser import parse
from .report import Report, emit, format_entry


def _run(args) -> int:
    try:
        with open(args.script, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"ncham: cannot read {args.script}: {exc.strerror}", file=sys.stderr)
        return 2
    except UnicodeDecodeError:
        print(f"ncham: {args.script} is not UTF-8 text", file=sys.stderr)
        return 2
    report = run_script(text)
    data = emit(report, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0 if report.ok else 1


def _repl(args, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    ev = Evaluator()
    report = Report()
    buffer = ""
    syntax_errors = 0
    interactive = stdin.isatty()
    while True:
        if interactive:
            stdout.write("... " if buffer else "ncham> ")
            stdout.flush()
        line = stdin.readline()
        if not line:
            break
        buffer += line
        if ";" not in line:
            continue
        try:
            script = parse(buffer)
        except ParseError as exc:
            stdout.write(f"  ERROR {exc}\n")
            syntax_errors += 1
            buffer = ""
            continue
        buffer = ""
        for stmt in script.statements:
            entry = ev.execute(stmt)
            report.entries.append(entry)
            stdout.write(format_entry(entry) + "\n")
    if buffer.strip():
        stdout.write("  ERROR incomplete statement (missing ';')\n")
        return 1
    return 0 if report.ok and not syntax_errors else 1


def _selftest(args) -> int:
    from ..verify import run_all

    results = run_all(seed=args.seed)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncham", description="Weyl-algebra calculator and canonical-transformation checker.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="evaluate a script file")
    run.add_argument("script")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--out", help="write the report here instead of stdout")
    sub.add_parser("repl", help="evaluate statements line by line")
    st = sub.add_parser("selftest", help="run the property and acceptance suite")
    st.add_argument("--seed", type=int, default=20240601)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _run(args)
    if args.command == "repl":
        return _repl(args)
    return _selftest(args)


if __name__ == "__main__":
    sys.exit(main())
