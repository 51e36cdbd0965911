"""Command-line front end.

Subcommands: det (one factored determinant), table (stream the whole
determinant table as JSON lines), gram (print a Gram matrix at an exact
parameter value), verify (closed-form action coefficients against diagram
arithmetic), semisimple (semisimplicity test).  Exit codes: 0 success,
1 a verification failed, 2 bad usage or label, 3 parameter value not
sanctioned for verification.

Set BRAUER_CACHE_DIR to persist computed determinants between runs; the
cache is an append-only JSONL file and survives truncated writes (a
corrupt tail is dropped with a warning).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .combinat import all_cell_labels, cell_label
from .diagram import gram_matrix_oracle, is_sanctioned
from .gram import GramResult, gram_det, iter_gram_det_table, semisimple_check
from .ring import fp_from_json, fp_to_json, fp_to_text
from .seminormal import verify_seminormal

SCHEMA_VERSION = 1


def parse_partition(text):
    if text == "-":
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"bad partition {text!r} (want e.g. '3,2,1' or '-')")
    if any(p < 1 for p in parts) or any(
        parts[i] < parts[i + 1] for i in range(len(parts) - 1)
    ):
        raise ValueError(f"bad partition {text!r} (parts must be weakly decreasing)")
    return parts


def format_partition(shape):
    return ",".join(str(p) for p in shape) if shape else "-"


def parse_delta(text, allow_generic=False):
    if allow_generic and text == "generic":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad parameter value {text!r} (want an exact rational)")


def _record_of(result):
    return {
        "schema_version": SCHEMA_VERSION,
        "n": result.label.n,
        "f": result.label.f,
        "lambda": format_partition(result.label.shape),
        "dim": result.dim,
        "det": fp_to_json(result.det),
    }


def _result_of(rec):
    label = cell_label(rec["n"], rec["f"], parse_partition(rec["lambda"]))
    return GramResult(label, int(rec["dim"]), fp_from_json(rec["det"]))


class JsonlCache:
    """Append-only determinant store, one JSON record per line."""

    def __init__(self, path):
        self.path = path
        self.records = {}
        self._load()

    def _load(self):
        try:
            with open(self.path, "rb") as fh:
                raw = fh.read()
        except FileNotFoundError:
            return
        pos = 0
        while pos < len(raw):
            nl = raw.find(b"\n", pos)
            if nl < 0:
                break
            try:
                rec = json.loads(raw[pos:nl])
                version = rec.get("schema_version")
            except (ValueError, AttributeError):
                break
            if version == SCHEMA_VERSION:
                try:
                    result = _result_of(rec)
                except (KeyError, TypeError, ValueError):
                    break
                self.records[result.label] = result
            pos = nl + 1
        if pos < len(raw):
            sys.stderr.write(
                f"warning: dropping corrupt tail of cache file {self.path}\n"
            )
            with open(self.path, "r+b") as fh:
                fh.truncate(pos)

    def get(self, label):
        return self.records.get(label)

    def add(self, result):
        if result.label in self.records:
            return
        self.records[result.label] = result
        with open(self.path, "a", encoding="ascii") as fh:
            fh.write(json.dumps(_record_of(result)) + "\n")


def _cache():
    directory = os.environ.get("BRAUER_CACHE_DIR")
    if not directory:
        return None
    os.makedirs(directory, exist_ok=True)
    return JsonlCache(os.path.join(directory, "gram_dets.jsonl"))


def cmd_det(args):
    label = cell_label(args.n, args.f, parse_partition(args.shape))
    result = gram_det(label, cache=_cache())
    if args.format == "json":
        print(json.dumps(_record_of(result)))
    else:
        print(fp_to_text(result.det))
    return 0


def cmd_table(args):
    out = open(args.out, "w", encoding="ascii") if args.out else sys.stdout
    try:
        for result in iter_gram_det_table(args.n_max, cache=_cache()):
            rec = _record_of(result)
            del rec["schema_version"]
            out.write(json.dumps(rec) + "\n")
    finally:
        if args.out:
            out.close()
    return 0


def cmd_gram(args):
    label = cell_label(args.n, args.f, parse_partition(args.shape))
    delta0 = parse_delta(args.at_delta)
    matrix = gram_matrix_oracle(label, delta0)
    for row in matrix:
        print(" ".join(str(x) for x in row))
    return 0


def cmd_verify(args):
    deltas = [parse_delta(s) for s in args.deltas.split(",")]
    for delta0 in deltas:
        if not is_sanctioned(args.n_max, delta0):
            sys.stderr.write(
                f"delta={delta0} is not sanctioned for n={args.n_max}"
                f" (need an integer with |delta| >= {2 * args.n_max + 1})\n"
            )
            return 3
    ok = True
    for delta0 in deltas:
        for n in range(1, args.n_max + 1):
            for label in all_cell_labels(n):
                report = verify_seminormal(label, delta0)
                verdict = "ok" if report["pass"] else "FAIL"
                print(
                    f"n={label.n} f={label.f} lambda={format_partition(label.shape)}"
                    f" delta={delta0} {verdict}"
                )
                if not report["pass"]:
                    ok = False
                    print(json.dumps(report, indent=1), file=sys.stderr)
    return 0 if ok else 1


def cmd_semisimple(args):
    delta = parse_delta(args.delta, allow_generic=True)
    result = semisimple_check(args.n, delta, args.char)
    print("semisimple" if result else "not semisimple")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="brauer",
        description="Gram determinants of Brauer algebra cell modules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("det", help="factored Gram determinant of one cell")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--lambda", dest="shape", required=True, metavar="SHAPE",
                   help="partition like 3,2,1 or - for empty")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("table", help="all determinants for n <= n-max, JSONL")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("gram", help="Gram matrix at an exact parameter value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--lambda", dest="shape", required=True, metavar="SHAPE")
    p.add_argument("--at-delta", required=True, metavar="DELTA",
                   help="exact rational, e.g. 7 or -3/2")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("verify", help="closed forms vs diagram arithmetic")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--deltas", default="11",
                   help="comma-separated sanctioned integers (default 11)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("semisimple", help="is the algebra semisimple?")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", required=True,
                   help="exact rational or 'generic'")
    p.add_argument("--char", type=int, default=0,
                   help="field characteristic (default 0)")
    p.set_defaults(func=cmd_semisimple)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
