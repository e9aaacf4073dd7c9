"""Command line front end: ``lcpalg {check,example,extend,lee,lattice}``.

Exit codes: 0 success or pass, 1 verification failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions as cons
from .errors import LcpError
from .geometry import Metric, check_cflat_identities
from .io import (
    format_report,
    parse_document,
    parse_metric_algebra,
    report_document,
    serialize_candidate,
)
from .lattice import companion_conjugacy
from .linalg import format_rational, parse_rational
from .verify import (
    cflat_fingerprint,
    enumerate_lee_candidates,
    verify,
    weyl_kernel,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageExit(f"{self.prog}: error: {message}")


class _UsageExit(Exception):
    pass


def _rationals(text):
    try:
        return tuple(parse_rational(s) for s in text.split(",") if s.strip())
    except LcpError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _rational(text):
    try:
        return parse_rational(text)
    except LcpError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lcpalg", description="LCP structures on metric Lie algebras")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("check", help="verify candidate documents")
    c.add_argument("files", nargs="+", metavar="FILE")
    c.add_argument("--json", action="store_true", help="machine-readable report")

    e = sub.add_parser("example", help="write a built-in example document")
    e.add_argument("name", choices=["rp", "su2r", "sol3", "so3", "sld"])
    e.add_argument("--p", type=int, default=1, help="rp: dimension, 1 or 2")
    e.add_argument("--theta", type=_rationals, help="rp: comma-separated Lee form")
    e.add_argument("--mu", type=_rational, default=parse_rational("1"), help="su2r")
    e.add_argument("--lam", type=_rational, default=parse_rational("1"), help="su2r")
    e.add_argument("--x0", type=_rationals, default=(0, 0, 0), help="su2r: vector in su(2)")
    e.add_argument("--d", type=int, default=2, help="sld: matrix size")
    e.add_argument("-o", "--output", metavar="FILE", help="output file (default stdout)")

    x = sub.add_parser("extend", help="LCP extension of a metric Lie algebra")
    x.add_argument("--h", required=True, metavar="FILE", dest="h_file")
    x.add_argument("--q", required=True, type=int)
    x.add_argument("--beta", choices=["zero"], default="zero")
    x.add_argument("-o", "--output", metavar="FILE")

    le = sub.add_parser("lee", help="enumerate admissible Lee forms")
    le.add_argument("file", metavar="FILE")
    le.add_argument("--tol", type=float, default=1e-9)

    lt = sub.add_parser("lattice", help="lattice conjugacy certificate")
    lt.add_argument("--m", type=int, required=True)
    lt.add_argument("--blocks", type=int, default=1)
    lt.add_argument("--json", action="store_true")
    return p


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text, path, out):
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _extras(cand, report) -> dict:
    """Follow-up checks that only make sense once the basic verdict is in."""
    extras = {}
    if report.is_conformally_flat:
        ident = check_cflat_identities(cand.algebra, cand.metric, cand.theta)
        extras["cflat_identities"] = ident.ok
        K, kr = weyl_kernel(cand.algebra, cand.metric, cand.theta)
        extras["weyl_kernel_dim"] = K.dim
        extras["kernel_equivalence"] = kr.equivalence
        if report.unimodular:
            extras["fingerprint"] = cflat_fingerprint(cand.algebra).name
    return extras


def _cmd_check(args, out, err) -> int:
    status = EXIT_OK
    docs = []
    for path in args.files:
        try:
            cand = parse_document(_read(path)).candidate
            report = verify(cand)
            extras = _extras(cand, report)
        except (LcpError, OSError) as e:
            status = EXIT_INPUT
            if args.json:
                docs.append({"file": path, "error": str(e), "exit_status": EXIT_INPUT})
            else:
                err.write(f"{path}: error: {e}\n")
            continue
        if not report.is_lcp and status == EXIT_OK:
            status = EXIT_FAIL
        if args.json:
            d = report_document(report, path)
            d["extras"] = extras
            docs.append(d)
        else:
            out.write(format_report(report, path) + "\n")
            for k, v in extras.items():
                out.write(f"  {k}: {str(v).lower() if isinstance(v, bool) else v}\n")
    if args.json:
        out.write(json.dumps(docs[0] if len(docs) == 1 else docs, indent=2) + "\n")
    return status


def _cmd_example(args, out, err) -> int:
    meta = {"name": args.name}
    if args.name == "rp":
        theta = args.theta if args.theta is not None else (1,) * args.p
        cand = cons.example_rp(args.p, Metric.identity(args.p), theta)
        meta.update(p=str(args.p))
    elif args.name == "su2r":
        cand = cons.example_su2r(args.mu, args.lam, args.x0)
        meta.update(
            mu=format_rational(args.mu),
            lam=format_rational(args.lam),
            x0=",".join(format_rational(v) for v in args.x0),
        )
    elif args.name == "sol3":
        cand = cons.example_sol3()
    elif args.name == "so3":
        cand = cons.example_so3()
    else:
        cand = cons.example_sld(args.d)
        meta.update(d=str(args.d))
    _write(serialize_candidate(cand, meta), args.output, out)
    return EXIT_OK


def _cmd_extend(args, out, err) -> int:
    H, h, meta = parse_metric_algebra(_read(args.h_file))
    beta = cons.OrthogonalRep.zero(H.dim, args.q)
    cand = cons.lcp_extension(H, h, beta, args.q)
    meta = {"name": "extension", "q": str(args.q), "source": args.h_file}
    _write(serialize_candidate(cand, meta), args.output, out)
    return EXIT_OK


def _cmd_lee(args, out, err) -> int:
    cand = parse_document(_read(args.file)).candidate
    en = enumerate_lee_candidates(cand.algebra, args.tol)
    theta = [float(x) for x in cand.theta]
    hits = 0
    out.write(f"{len(en)} candidates\n")
    for k, lc in enumerate(en):
        mark = lc.distance(theta) <= args.tol
        hits += mark
        coeffs = ", ".join(f"{x:.10g}" for x in lc.coeffs)
        qs = ",".join(map(str, lc.qs))
        out.write(f"{'*' if mark else ' '} {k:4d}  q={qs}  ({coeffs})\n")
    out.write(f"theta of {args.file}: {'found' if hits else 'not found'}\n")
    return EXIT_OK


def _cmd_lattice(args, out, err) -> int:
    cert = companion_conjugacy(args.m, args.blocks)
    if args.json:
        out.write(json.dumps(cert.as_dict(), indent=2) + "\n")
    else:
        out.write(
            f"m = {cert.m}\n"
            f"t_m = {cert.t_m:.10f}\n"
            f"E = {[list(r) for r in cert.E]}  det = {cert.det_E}  trace = {cert.trace_E}\n"
            f"C = {cert.C.tolist()}\n"
            f"residual = {cert.residual:.3e}\n"
            f"blocks = {cert.blocks}  block residual = {cert.block_residual:.3e}"
            f"  (tolerance {cert.tolerance:g})\n"
            f"ok = {str(cert.ok).lower()}\n"
        )
    return EXIT_OK if cert.ok else EXIT_FAIL


_COMMANDS = {
    "check": _cmd_check,
    "example": _cmd_example,
    "extend": _cmd_extend,
    "lee": _cmd_lee,
    "lattice": _cmd_lattice,
}


def cli_main(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageExit as e:
        err.write(f"{e}\n")
        return EXIT_INPUT
    except SystemExit as e:  # --help
        return EXIT_OK if not e.code else EXIT_INPUT
    try:
        return _COMMANDS[args.command](args, out, err)
    except (LcpError, OSError) as e:
        err.write(f"lcpalg {args.command}: error: {e}\n")
        return EXIT_INPUT


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
