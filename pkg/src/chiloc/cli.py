"""Command-line front end.

Exit status: 0 on success, 1 on a usage error, 2 when an internal
cross-check fails (validation discrepancy, interpolation mismatch,
negative chi^1).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Callable, Sequence, TextIO

from . import euler, hyperbolicity, klyachko, polytopes
from .exact import format_rational, qpoly_to_genfun, series_coefficients

log = logging.getLogger("chiloc")

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2
FLAG_NOTE = "published table omits this entry"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


CHI_LOC_METHODS: dict[str, Callable[[int, int], int]] = {
    "closed": euler.chi_loc_closed,
    "genfun": euler.chi_loc_genfun_value,
    "delta": euler.chi_loc_delta,
    "weighted": euler.chi_loc_weighted,
}
CHI0_METHODS: dict[str, Callable[[int, int], int]] = {
    "direct": euler.chi0_direct,
    "polytopes": euler.chi0_polytopes,
    "qpoly": euler.chi0_qpoly_value,
}


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _emit_json(out: TextIO, obj) -> None:
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _emit_record(args, out: TextIO, record: dict, key: str) -> None:
    if args.format == "json":
        _emit_json(out, record)
    elif args.format == "csv":
        out.write(",".join(record) + "\n")
        out.write(",".join(str(v) for v in record.values()) + "\n")
    else:
        out.write(f"{record[key]}\n")


def _piece(args) -> polytopes.HalfOpenPolytope:
    pieces = polytopes.an_pieces(args.n)
    if args.piece == "C":
        return pieces.C
    i = args.i if args.i is not None else args.n
    if not 1 <= i <= args.n:
        raise UsageError(f"--i must lie in [1, {args.n}]")
    return pieces.P[i - 1]


# --- verbs -----------------------------------------------------------------


def cmd_chi_loc(args, out):
    value = CHI_LOC_METHODS[args.method](args.n, args.m)
    _emit_record(args, out, {"n": args.n, "m": args.m, "chi_loc": value}, "chi_loc")


def cmd_chi0(args, out):
    value = CHI0_METHODS[args.method](args.n, args.m)
    _emit_record(args, out, {"n": args.n, "m": args.m, "chi0": value}, "chi0")


def cmd_chi1(args, out):
    report = euler.chi_report(args.n, args.m)
    if not report.methods_agreed:
        raise euler.NegativeChi1Error(f"methods disagree at n={args.n}, m={args.m}")
    if args.format == "json":
        _emit_json(out, report.to_json())
    else:
        _emit_record(args, out, report.to_json(), "chi1")


def _qpoly_for(args):
    return euler.chi_loc_qpoly(args.n) if args.kind == "chi-loc" else euler.chi0_qpoly(args.n)


def cmd_qpoly(args, out):
    q = _qpoly_for(args)
    if args.format == "json":
        _emit_json(out, {"n": args.n, "kind": args.kind, **q.to_json()})
        return
    out.write(f"period {q.period}\n")
    for r in range(q.period):
        out.write(f"m = {r} mod {q.period}: {q.row_polynomial(r)}\n")


def cmd_genfun(args, out):
    if args.kind == "chi-loc" and args.shift == 0:
        f = euler.chi_loc_genfun(args.n)
    else:
        f = qpoly_to_genfun(_qpoly_for(args), args.shift)
    coeffs = series_coefficients(f, args.terms) if args.terms else []
    if args.format == "json":
        _emit_json(
            out,
            {
                "n": args.n,
                "kind": args.kind,
                "shift": args.shift,
                "numerator": [format_rational(c) for c in f.num.coeffs],
                "denominator": [format_rational(c) for c in f.den.coeffs],
                "series": [format_rational(c) for c in coeffs],
            },
        )
        return
    out.write(f"({f.num}) / ({f.den})\n")
    if coeffs:
        out.write(" ".join(format_rational(c) for c in coeffs) + "\n")


def cmd_ehrhart(args, out):
    P = _piece(args)
    q = polytopes.ehrhart(P)
    if args.t is not None:
        _emit_record(args, out, {"piece": P.name, "t": args.t, "count": polytopes.count_lattice(P, args.t)}, "count")
        return
    if args.format == "json":
        _emit_json(out, {"piece": P.name, **q.to_json()})
        return
    out.write(f"{P.name}: period {q.period}\n")
    for r in range(q.period):
        out.write(f"t = {r} mod {q.period}: {q.row_polynomial(r)}\n")


def cmd_describe(args, out):
    P = _piece(args)
    if args.format == "json":
        _emit_json(out, {"name": P.name, **P.to_json(), "volume": format_rational(polytopes.volume(P))})
        return
    out.write(f"{P.name}\n")
    for k, v in enumerate(P.vertices):
        out.write(f"  v{k} = ({', '.join(format_rational(c) for c in v)})\n")
    for face in P.removed_faces:
        out.write(f"  removed face {list(face)}\n")
    out.write(f"  volume {format_rational(polytopes.volume(P))}\n")


def _rdn_markdown(table) -> str:
    cells = [[str(c.r) + ("*" if c.flagged else "") for c in row] for row in table]
    header = ["d\\n"] + [str(c.n) for c in table[0]]
    body = [[str(row[0].d)] + cs for row, cs in zip(table, cells)]
    width = max(len(x) for line in [header] + body for x in line)
    fmt = lambda line: "| " + " | ".join(x.rjust(width) for x in line) + " |"  # noqa: E731
    lines = [fmt(header), "|" + "|".join("-" * (width + 1) + ":" for _ in header) + "|"]
    lines += [fmt(line) for line in body]
    if any(c.flagged for row in table for c in row):
        lines.append("")
        lines.append(f"* {FLAG_NOTE}")
    return "\n".join(lines) + "\n"


def _rdn_tex(table) -> str:
    ncols = len(table[0])
    lines = [
        "\\begin{tabular}{c|" + "c" * ncols + "}",
        "$d \\backslash n$ & " + " & ".join(str(c.n) for c in table[0]) + " \\\\",
        "\\hline",
    ]
    for row in table:
        entries = [f"{c.r}^{{*}}" if c.flagged else str(c.r) for c in row]
        entries = [f"${e}$" if c.flagged else e for e, c in zip(entries, row)]
        lines.append(f"{row[0].d} & " + " & ".join(entries) + " \\\\")
    lines.append("\\end{tabular}")
    if any(c.flagged for row in table for c in row):
        lines.append(f"% * {FLAG_NOTE}")
    return "\n".join(lines) + "\n"


def cmd_rdn(args, out, err):
    table = hyperbolicity.rdn_table(args.dmax, args.nmax)
    flagged = [c for row in table for c in row if c.flagged]
    if args.format == "json":
        _emit_json(
            out,
            [
                {"d": c.d, "n": c.n, "r": c.r, **({"note": FLAG_NOTE} if c.flagged else {})}
                for row in table
                for c in row
            ],
        )
    elif args.format == "csv":
        out.write("d,n,r\n")
        for row in table:
            for c in row:
                out.write(f"{c.d},{c.n},{c.r}\n")
        for c in flagged:
            err.write(f"note: (d,n)=({c.d},{c.n}) r={c.r}: {FLAG_NOTE}\n")
    elif args.format == "tex":
        out.write(_rdn_tex(table))
    else:
        out.write(_rdn_markdown(table))


def cmd_check_surface(args, out):
    verdict = hyperbolicity.check_surface(hyperbolicity.SurfaceProfile(args.d, args.n, args.r))
    record = verdict.to_json()
    if args.m is not None:
        record["m"] = args.m
        record["h0_lower_bound"] = hyperbolicity.h0_lower_bound(hyperbolicity.SurfaceProfile(args.d, args.n, args.r), args.m)
    if args.format == "json":
        _emit_json(out, record)
    else:
        word = "big" if verdict.big else "not decided"
        out.write(f"d={args.d} n={args.n} r={args.r}: required {verdict.required}, "
                  f"at most {verdict.miyaoka_max} possible; cotangent bundle {word}\n")
        if args.m is not None:
            out.write(f"h0(S^{args.m}) >= {record['h0_lower_bound']}\n")


def cmd_labs(args, out):
    v = hyperbolicity.labs_check(args.k)
    if args.format == "json":
        _emit_json(out, v.to_json())
    else:
        out.write(f"k={v.k}: degree {v.d}, {v.available} singularities of type A_{v.n}, "
                  f"required {v.required}: {'big' if v.verdict else 'not enough'}\n")


def cmd_validate(args, out):
    report = euler.validate(args.nmax, args.mmax, reference_n_max=args.reference_nmax)
    if args.format == "json":
        _emit_json(out, report.to_json())
    elif report.ok:
        out.write(f"ok: {report.cells} cells agree for n <= {args.nmax}, m <= {args.mmax}\n")
    else:
        out.write(f"FAILED: {report.discrepancy or report.error}\n")
    return EXIT_OK if report.ok else EXIT_CHECK


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chiloc", description="Local Euler characteristics of S^m Omega at A_n singularities.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, formats=("plain", "json", "csv"), help=None):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=formats, default="plain")
        p.set_defaults(fn=fn)
        return p

    p = verb("chi-loc", cmd_chi_loc, help="chi_loc(n, m)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--method", choices=sorted(CHI_LOC_METHODS), default="closed")

    p = verb("chi0", cmd_chi0, help="chi^0(n, m)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--method", choices=sorted(CHI0_METHODS), default="direct")

    p = verb("chi1", cmd_chi1, help="chi^1(n, m) with both components")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_nonneg, required=True)

    for name, fn in (("qpoly", cmd_qpoly), ("genfun", cmd_genfun)):
        p = verb(name, fn, formats=("plain", "json"))
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--kind", choices=("chi-loc", "chi0"), default="chi-loc")
    p.add_argument("--shift", type=int, choices=(0, 1), default=0,
                   help="1 emits sum_m Q(m+1) t^m")
    p.add_argument("--terms", type=_nonneg, default=0, help="also print this many series coefficients")

    for name, fn in (("ehrhart", cmd_ehrhart), ("describe", cmd_describe)):
        p = verb(name, fn, formats=("plain", "json") if name == "describe" else ("plain", "json", "csv"))
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--piece", choices=("C", "P"), default="C")
        p.add_argument("--i", type=_positive, help="index of the P piece (default n)")
    p = sub.choices["ehrhart"]
    p.add_argument("--t", type=_positive, help="count lattice points of this dilate instead")

    p = verb("rdn", None, formats=("plain", "json", "csv", "tex"), help="threshold table r(d, n)")
    p.add_argument("--dmax", type=int, default=10)
    p.add_argument("--nmax", type=_positive, default=6)

    p = verb("check-surface", cmd_check_surface, formats=("plain", "json"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--r", type=_nonneg, required=True)
    p.add_argument("--m", type=int, help="also report the h0 lower bound at this m (m >= 3)")

    p = verb("labs", cmd_labs, formats=("plain", "json"))
    p.add_argument("--k", type=int, required=True)

    p = verb("validate", cmd_validate, formats=("plain", "json"))
    p.add_argument("--nmax", type=_positive, default=4)
    p.add_argument("--mmax", type=_nonneg, default=20)
    p.add_argument("--reference-nmax", type=_nonneg, default=5,
                   help="compare Ehrhart generating functions with the tabulated ones up to this n")
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=err)
    try:
        if args.verb == "rdn":
            cmd_rdn(args, out, err)
            return EXIT_OK
        status = args.fn(args, out)
    except UsageError as exc:
        err.write(f"chiloc {args.verb}: {exc}\n")
        return EXIT_USAGE
    except (ArithmeticError, klyachko.SentinelError) as exc:
        err.write(f"chiloc {args.verb}: cross-check failed: {exc}\n")
        return EXIT_CHECK
    except ValueError as exc:
        err.write(f"chiloc {args.verb}: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK if status is None else status


def main() -> None:
    sys.exit(run())
