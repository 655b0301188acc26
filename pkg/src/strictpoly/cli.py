"""Command line interface: ``strictpoly <command> [options]``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 a resource cap refused the job.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from .algebra import ResourceError
from .homalg import ext_dims
from .partitions import blocks, is_prime, parse_partition
from .symchar import dim_schur, graded_dim_Ai, graded_dim_schur, lr_coeff
from .verify import basic_census, cauchy_experiment, cy_experiment, duality_experiment, frobenius_ext_experiment

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _partition(text):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _prime(text):
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _nonneg(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {n}")
    return n


def _positive(text):
    n = _nonneg(text)
    if n == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--max-tensor-dim", type=_positive, default=None,
                        help="cap on the tensor space used to build Schur algebras")
    common.add_argument("--out", default=None, help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(prog="strictpoly", description="Strict polynomial functor workbench.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("blocks", parents=[common], help="p-core blocks of diagrams of weight d")
    s.add_argument("--d", type=_nonneg, required=True)
    s.add_argument("--p", type=_prime, required=True)

    s = sub.add_parser("dims", parents=[common], help="dimension of a Schur/Weyl functor")
    s.add_argument("--lambda", dest="lam", type=_partition, required=True)
    s.add_argument("--n", type=_nonneg, required=True)
    s.add_argument("--p", type=_prime)
    s.add_argument("--i", type=_positive)

    s = sub.add_parser("lr", parents=[common], help="Littlewood-Richardson coefficient")
    s.add_argument("--lambda", dest="lam", type=_partition, required=True)
    s.add_argument("--mu", type=_partition, required=True)
    s.add_argument("--nu", type=_partition, required=True)

    s = sub.add_parser("ext", parents=[common], help="Ext table of a Frobenius twisted simple")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--i", type=_positive, required=True)
    s.add_argument("--lambda", dest="lam", type=_partition, required=True)
    s.add_argument("--smax", type=_nonneg)
    s.add_argument("--n", type=_positive)

    s = sub.add_parser("duality-check", parents=[common], help="palindromic Ext tables for basic diagrams")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--i", type=_positive, required=True)
    s.add_argument("--lambda", dest="lam", type=_partition)

    s = sub.add_parser("cy-check", parents=[common], help="graded dimension of the corner algebra")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--i", type=_positive, required=True)
    s.add_argument("--lambda", dest="lam", type=_partition, required=True)

    s = sub.add_parser("cauchy-check", parents=[common], help="Cauchy filtration dimension count")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--m", type=_positive, required=True)
    s.add_argument("--d", type=_nonneg, required=True)
    s.add_argument("--p", type=_prime, required=True)

    s = sub.add_parser("basic-census", parents=[common], help="degrees with basic blocks")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--dmax", type=_positive, required=True)

    for name in ("frobenius-ext", "cor56"):
        s = sub.add_parser(name, parents=[common], help="self-extensions of L(p^i) against A_i")
        s.add_argument("--p", type=_prime, required=True)
        s.add_argument("--i", type=_positive, required=True)
    return parser


# -- rendering ---------------------------------------------------------------

def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _aligned(rows) -> str:
    rows = [[str(x) for x in r] for r in rows]
    widths = [max(len(r[k]) for r in rows if k < len(r)) for k in range(max(len(r) for r in rows))]
    return "\n".join("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def render_report(rep, fmt) -> str:
    if fmt == "json":
        return rep.to_json(indent=2) + "\n"
    if fmt == "csv":
        rows = [["name", "pass", "lhs", "rhs"]]
        rows += [[a.name, a.passed, json.dumps(a.lhs), json.dumps(a.rhs)] for a in rep.assertions]
        return _csv(rows)
    return rep.summary() + "\n"


def render_blocks(table, fmt) -> str:
    if fmt == "json":
        return json.dumps(table.to_dict(), indent=2) + "\n"
    rows = [["core", "weight", "basic", "members"]]
    for b in table.to_dict()["blocks"]:
        rows.append([b["core"], b["weight"], b["basic"], " ".join(b["members"])])
    return _csv(rows) if fmt == "csv" else _aligned(rows)


def render_ext(table, fmt) -> str:
    if fmt == "json":
        return json.dumps(table.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        return table.to_csv()
    head = f"Ext^s(L({table.source}), L(mu))  p={table.p} d={table.d} i={table.i}  D={table.duality_degree}\n"
    rows = [["mu"] + [f"s{s}" for s in range(table.s_max + 1)]]
    rows += [[str(mu)] + row for mu, row in table.rows.items()]
    return head + _aligned(rows)


def render_value(data: dict, fmt) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    rows = [list(data), list(data.values())]
    return _csv(rows) if fmt == "csv" else _aligned([[k, v] for k, v in data.items()])


def write_output(text: str, path=None):
    if path is None:
        sys.stdout.write(text)
        return
    # write to a sibling temp file and rename, so readers never see half a file
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".strictpoly-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- dispatch ----------------------------------------------------------------

def run(args) -> tuple[str, int]:
    fmt, cap = args.format, args.max_tensor_dim
    cmd = args.command
    if cmd == "blocks":
        return render_blocks(blocks(args.d, args.p), fmt), EXIT_OK
    if cmd == "dims":
        data = {"lambda": str(args.lam), "n": args.n, "dim": dim_schur(args.lam, args.n)}
        if (args.p is None) != (args.i is None):
            raise ValueError("--p and --i go together")
        if args.p is not None:
            g = graded_dim_schur(args.lam, graded_dim_Ai(args.p, args.i).copies(args.n))
            data.update({"p": args.p, "i": args.i, "graded_dim": g.to_dict(), "total": g.total()})
        return render_value(data, fmt), EXIT_OK
    if cmd == "lr":
        data = {"lambda": str(args.lam), "mu": str(args.mu), "nu": str(args.nu),
                "coefficient": lr_coeff(args.lam, args.mu, args.nu)}
        return render_value(data, fmt), EXIT_OK
    if cmd == "ext":
        table = ext_dims(args.lam, args.p, args.d, args.i, s_max=args.smax, n=args.n, max_tensor_dim=cap)
        return render_ext(table, fmt), EXIT_OK
    if cmd == "duality-check":
        rep = duality_experiment(args.p, args.d, args.i, args.lam, max_tensor_dim=cap)
    elif cmd == "cy-check":
        rep = cy_experiment(args.p, args.d, args.i, args.lam)
    elif cmd == "cauchy-check":
        rep = cauchy_experiment(args.n, args.m, args.d, args.p)
    elif cmd == "basic-census":
        rep = basic_census(args.p, args.dmax)
    elif cmd in ("frobenius-ext", "cor56"):
        rep = frobenius_ext_experiment(args.p, args.i, max_tensor_dim=cap)
    else:  # pragma: no cover - argparse rejects unknown commands
        raise ValueError(cmd)
    return render_report(rep, fmt), EXIT_OK if rep.passed else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = run(args)
    except ResourceError as exc:
        print(f"strictpoly: refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"strictpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    write_output(text, args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
