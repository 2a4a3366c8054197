"""Command-line front end: ``markpart <command> [flags]``.

Exit codes: 0 pass, 1 fail, 2 usage error or unknown id, 3 parameter
hypothesis violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .bijections import fishhook_m_trace, fishhook_trace
from .identities import lookup
from .partitions import Partition, enumerate_partitions
from .qseries import ParameterError
from .verify import suite_jobs, verify, witness_sets

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit; we want a return code
        raise UsageError(message)


def _partition(flag: str):
    def parse(text: str) -> Partition:
        try:
            return Partition.parse(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"{flag}: {exc}") from None

    return parse


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--M", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--lambda", dest="lam", type=_partition("--lambda"))
    p.add_argument("--lambda2", dest="lam2", type=_partition("--lambda2"))
    p.add_argument("--theta", type=_partition("--theta"))
    p.add_argument("--family")
    p.add_argument("--params", help="comma separated key=value pairs, e.g. k=3,a=2,M=3")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="markpart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check one identity at one parameter choice")
    v.add_argument("--id", required=True)
    _add_params(v)
    v.add_argument("--cutoff", type=int, help="q-cutoff for series, n_max for partition theorems")

    s = sub.add_parser("suite", help="run the whole registry over its parameter grids")
    s.add_argument("--nmax", type=int, help="override n_max of every partition theorem")
    s.add_argument("--cutoff", type=int, help="override the cutoff of every series identity")
    s.add_argument("--id", action="append", help="restrict to these ids")

    w = sub.add_parser("witness", help="both partition sets at fixed (n, k)")
    w.add_argument("--theorem", required=True)
    _add_params(w)
    w.add_argument("--j", type=int, help="statistic value for theorems where --k is a parameter")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--format", choices=("json", "text"), default="text")

    t = sub.add_parser("table", help="side-by-side table of a partition theorem at weight n")
    t.add_argument("--theorem", required=True)
    _add_params(t)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--format", choices=("json", "text"), default="text")

    b = sub.add_parser("bijection", help="apply the fishhook map or its M-version")
    b.add_argument("--map", choices=("fh", "fhm"), required=True)
    b.add_argument("--M", type=int)
    b.add_argument("--input", type=_partition("--input"), required=True)
    b.add_argument("--trace", action="store_true")

    e = sub.add_parser("series", help="dump both sides of a series identity")
    e.add_argument("--id", required=True)
    _add_params(e)
    e.add_argument("--cutoff", type=int)
    e.add_argument("--side", choices=("lhs", "rhs"), default="lhs")
    return parser


_PARAM_FLAGS = {"M": "M", "N": "N", "k": "k", "a": "a", "q": "q",
                "lam": "lam", "lam2": "lam2", "theta": "theta", "family": "family"}


def _collect_params(args: argparse.Namespace, spec, skip: tuple[str, ...] = ()) -> dict:
    params = {}
    if args.params:
        for item in args.params.split(","):
            key, sep, value = item.partition("=")
            key = key.strip().lstrip("-")
            if not sep or key not in _PARAM_FLAGS:
                raise UsageError(f"--params: cannot read {item!r}")
            if key in ("lam", "lam2", "theta"):
                params[key] = Partition.parse(value.replace(" ", ",").replace(";", ","))
            elif key == "family":
                params[key] = value
            else:
                try:
                    params[key] = int(value)
                except ValueError:
                    raise UsageError(f"--params: {key} must be an integer") from None
    for key, attr in _PARAM_FLAGS.items():
        value = getattr(args, attr, None)
        if value is not None and key not in skip:
            params[key] = value
    missing = [p for p in spec.params if p not in params]
    if missing:
        flags = {"lam": "--lambda", "lam2": "--lambda2"}
        raise UsageError("missing " + ", ".join(flags.get(m, "--" + m) for m in missing)
                         + f" for {spec.id}")
    return params


def _lookup(identity: str):
    try:
        return lookup(identity)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _fmt(lam: Partition, text: bool) -> str | list[int]:
    return (lam.compact() or "()") if text else list(lam)


def _cmd_verify(args, out: TextIO) -> int:
    spec = _lookup(args.id)
    params = _collect_params(args, spec)
    report = verify(spec, params, args.cutoff)
    print(report.to_json(), file=out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_suite(args, out: TextIO) -> int:
    if args.id:
        for i in args.id:
            _lookup(i)
    reports = []
    for spec, params in suite_jobs(args.id):
        size = args.cutoff if spec.kind in ("series", "marked-sum", "inequality") else args.nmax
        reports.append(verify(spec, params, size))
    print("id\tparams\tkind\tsize\tstatus\telapsed_ms", file=out)
    for r in reports:
        params = ",".join(f"{k}={_param_text(v)}" for k, v in r.params.items()) or "-"
        print(f"{r.id}\t{params}\t{r.kind}\t{r.size}\t{r.status}\t{r.elapsed_ms:.1f}", file=out)
    failed = sum(not r.passed for r in reports)
    print(f"# {len(reports)} jobs, {len(reports) - failed} passed, {failed} failed", file=out)
    return EXIT_PASS if failed == 0 else EXIT_FAIL


def _param_text(v) -> str:
    return v.compact() if isinstance(v, Partition) else str(v)


def _witness_k(args, spec) -> tuple[int, tuple[str, ...]]:
    if "k" in spec.params:
        if args.j is None:
            raise UsageError(f"--j: {spec.id} uses --k as a parameter, give the count with --j")
        return args.j, ()
    if args.j is not None:
        return args.j, ("k",)
    return (args.k if args.k is not None else 0), ("k",)


def _cmd_witness(args, out: TextIO) -> int:
    spec = _lookup(args.theorem)
    if spec.pair is None:
        raise UsageError(f"--theorem: {spec.id} is not a partition theorem")
    k, skip = _witness_k(args, spec)
    params = _collect_params(args, spec, skip)
    if "lam" in spec.params and args.M is not None and args.M != sum(params["lam"]):
        raise UsageError("--M must equal the weight of --lambda")
    left, right = witness_sets(spec, params, args.n, k)
    text = args.format == "text"
    if text:
        print(f"{spec.pair.left_label} ({len(left)}): " + " ".join(_fmt(x, True) for x in left), file=out)
        print(f"{spec.pair.right_label} ({len(right)}): " + " ".join(_fmt(x, True) for x in right), file=out)
    else:
        print(json.dumps({"theorem": spec.id, "n": args.n, "k": k,
                          "left": [list(x) for x in left], "right": [list(x) for x in right]}), file=out)
    return EXIT_PASS if len(left) == len(right) else EXIT_FAIL


def _cmd_table(args, out: TextIO) -> int:
    spec = _lookup(args.theorem)
    if spec.pair is None:
        raise UsageError(f"--theorem: {spec.id} is not a partition theorem")
    params = spec.check_params(_collect_params(args, spec))
    pair = spec.pair
    rows = []
    for side, family, key in (("left", pair.left(params), pair.left_key),
                              ("right", pair.right(params), pair.right_key)):
        col = []
        for lam in enumerate_partitions(args.n, family):
            value = key(lam, params)
            if value is not None:
                col.append((lam, value))
        rows.append(col)
    left, right = rows
    if args.format == "json":
        print(json.dumps({"theorem": spec.id, "n": args.n,
                          "left": [[list(p), v] for p, v in left],
                          "right": [[list(p), v] for p, v in right]}), file=out)
    else:
        print(f"{pair.left_label}\tvalue\t{pair.right_label}\tvalue", file=out)
        for i in range(max(len(left), len(right))):
            l = left[i] if i < len(left) else (None, "")
            r = right[i] if i < len(right) else (None, "")
            ltxt = str(l[0]) if l[0] is not None else ""
            rtxt = str(r[0]) if r[0] is not None else ""
            print(f"{ltxt}\t{l[1]}\t{rtxt}\t{r[1]}", file=out)
    same = sorted(v for _, v in left) == sorted(v for _, v in right)
    return EXIT_PASS if same else EXIT_FAIL


def _cmd_bijection(args, out: TextIO) -> int:
    try:
        if args.map == "fh":
            trace = fishhook_trace(args.input)
        else:
            if args.M is None:
                raise UsageError("--M is required for --map fhm")
            if args.M < 1 or args.M % 2 == 0:
                raise ParameterError("fhm needs M odd and positive")
            trace = fishhook_m_trace(args.input, args.M)
    except ValueError as exc:
        if isinstance(exc, ParameterError):
            raise
        raise UsageError(f"--input: {exc}") from None
    if args.trace:
        print(json.dumps(trace.as_json()), file=out)
    else:
        print(str(trace.output), file=out)
    return EXIT_PASS


def _cmd_series(args, out: TextIO) -> int:
    spec = _lookup(args.id)
    if spec.kind != "series":
        raise UsageError(f"--id: {spec.id} is not a series identity")
    params = spec.check_params(_collect_params(args, spec))
    cutoff = spec.size if args.cutoff is None else args.cutoff
    builder = spec.lhs if args.side == "lhs" else spec.rhs
    series = builder(params, cutoff)
    print(json.dumps({"id": spec.id, "side": args.side, "cutoff": cutoff,
                      "coefficients": series.to_machine()}), file=out)
    return EXIT_PASS


COMMANDS = {
    "verify": _cmd_verify,
    "suite": _cmd_suite,
    "witness": _cmd_witness,
    "table": _cmd_table,
    "bijection": _cmd_bijection,
    "series": _cmd_series,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(list(sys.argv[1:] if argv is None else argv))
        for flag in ("cutoff", "nmax", "n"):
            value = getattr(args, flag, None)
            if value is not None and value < 0:
                raise UsageError(f"--{flag} must be non-negative")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_HYPOTHESIS


def main() -> None:
    sys.exit(run())
