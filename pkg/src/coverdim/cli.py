"""``coverdim`` command line.

Exit status: 0 success, 1 verified negative (certificate rejected, no
subdivision found), 2 usage or input error, 3 failed or infeasible extraction.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import comb

from . import __version__
from .dimension import chi_coloring, dim_exact, dim_star_exact
from .errors import CoverDimError
from .extractor import BEST_EFFORT, PAPER, ExtractParams, auto_params, default_jobs, extract, kk_constants, paper_constants
from .generators import FAMILIES, GenSpec, corpus
from .kk import KKParams, kk_extract
from .minor import SubdivisionCertificate, UGraph, find_clique_subdivision, verify_subdivision
from .poset import Poset, format_poset, parse_poset
from .report import certificate_dot, poset_dot, unfolding_dot
from .unfolding import unfold

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _read_poset(path: str) -> Poset:
    try:
        return parse_poset(_read_text(path))
    except (ValueError, CoverDimError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    p = corpus(GenSpec(args.family, args.d, args.n, args.k, args.prob, args.seed))
    _emit(args, format_poset(p, f"family={args.family} seed={args.seed}"))
    return EXIT_OK


def cmd_dim(args) -> int:
    p = _read_poset(args.input)
    value, cert = dim_star_exact(p) if args.cmd == "dimstar" else dim_exact(p)
    if args.json:
        _emit(args, _dump({"value": value, "certificate": cert.to_dict()}))
    else:
        _emit(args, f"{value}\n")
    return EXIT_OK


def cmd_chi(args) -> int:
    p = _read_poset(args.input)
    a = args.a if args.a is not None else sorted(p.minimals())
    b = args.b if args.b is not None else sorted(p.maximals())
    value, colouring = chi_coloring(p, a, b)
    if args.json:
        _emit(args, _dump({"value": value, "coloring": [[x, y, c] for (x, y), c in sorted(colouring.items())]}))
    else:
        _emit(args, f"{value}\n")
    return EXIT_OK


def cmd_unfold(args) -> int:
    p = _read_poset(args.input)
    a = args.a if args.a is not None else sorted(p.minimals())
    b = args.b if args.b is not None else sorted(p.maximals())
    root = args.root if args.root is not None else min(a)
    u = unfold(p, a, b, root)
    if args.json:
        _emit(args, _dump(u.to_dict()))
    else:
        lines = []
        for i in range(u.m):
            lines.append(f"A{i}: {' '.join(map(str, sorted(u.A(i))))}")
            lines.append(f"B{i + 1}: {' '.join(map(str, sorted(u.B(i + 1))))}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _thresholds(args, p: Poset):
    if args.mode == PAPER:
        return (), 0
    if args.thresholds:
        return tuple(args.thresholds), args.cap if args.cap is not None else comb(args.n, 2)
    auto = auto_params(p, args.n, None, args.cap)
    return auto.thresholds, auto.cap


def _finish_report(args, report) -> int:
    _emit(args, report.to_json(indent=2) + "\n" if args.json or args.output else _summary(report))
    return EXIT_OK if report.ok else EXIT_FAILED


def _summary(report) -> str:
    lines = [f"status: {report.status}"]
    if report.certificate:
        lines.append(f"principals: {' '.join(map(str, report.certificate.principals))}")
        for (u, v), path in report.certificate.paths.items():
            lines.append(f"path {u}-{v}: {' '.join(map(str, path))}")
    if report.failure:
        lines.append(f"failed: {report.failure['guarantee']} at {report.failure['stage']} step {report.failure['step']}")
        lines.append(f"reason: {report.failure['message']}")
    if report.constants:
        for key, val in report.constants.items():
            lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def cmd_extract(args) -> int:
    p = _read_poset(args.input)
    thresholds, cap = _thresholds(args, p)
    params = ExtractParams(args.n, args.h if args.h is not None else max(p.height, 2), args.mode, thresholds, cap,
                           args.jobs)
    return _finish_report(args, extract(p, params, check=args.check_invariants))


def cmd_kk_extract(args) -> int:
    p = _read_poset(args.input)
    thresholds, cap = _thresholds(args, p)
    params = KKParams(args.n, args.k, args.mode, thresholds, cap)
    return _finish_report(args, kk_extract(p, params, check=args.check_invariants))


def _load_cert(path: str) -> SubdivisionCertificate:
    data = json.loads(_read_text(path))
    if "certificate" in data:
        data = data["certificate"]
    if not data:
        raise UsageError(f"{path}: no certificate present")
    return SubdivisionCertificate.from_dict(data)


def cmd_verify(args) -> int:
    p = _read_poset(args.input)
    try:
        cert = _load_cert(args.cert)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{args.cert}: {exc}") from None
    n = args.n if args.n is not None else len(cert.principals)
    ok, why = verify_subdivision(UGraph(p.n, p.cover_arcs()), cert, n)
    _emit(args, "valid\n" if ok else f"invalid: {why}\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_oracle(args) -> int:
    p = _read_poset(args.input)
    cert = find_clique_subdivision(UGraph(p.n, p.cover_arcs()), args.n, args.limit)
    if args.json:
        _emit(args, _dump({"found": cert is not None, "certificate": cert.to_dict() if cert else None}))
    else:
        _emit(args, "none\n" if cert is None else json.dumps(cert.to_dict()) + "\n")
    return EXIT_OK if cert is not None else EXIT_NEGATIVE


def cmd_export_dot(args) -> int:
    p = _read_poset(args.input)
    if args.report:
        _emit(args, certificate_dot(p, _load_cert(args.report)))
    elif args.root is not None:
        u = unfold(p, sorted(p.minimals()), sorted(p.maximals()), args.root)
        _emit(args, unfolding_dot(p, u))
    else:
        _emit(args, poset_dot(p))
    return EXIT_OK


def cmd_constants(args) -> int:
    consts = kk_constants(args.n, args.k) if args.k is not None else paper_constants(args.n, args.h)
    if args.json:
        _emit(args, _dump({k: (str(v) if isinstance(v, int) and v.bit_length() > 60 else v) for k, v in consts.items()}))
    else:
        _emit(args, "".join(f"{k}={v}\n" for k, v in consts.items()))
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coverdim", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True, metavar="COMMAND")

    def add(name, func, help_, inp=True):
        sp = sub.add_parser(name, help=help_)
        if inp:
            sp.add_argument("input", nargs="?", default="-", help="poset file (default: stdin)")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = add("gen", cmd_gen, "generate a poset in the text format", inp=False)
    sp.add_argument("--family", required=True, choices=FAMILIES)
    sp.add_argument("--d", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--prob", type=float)
    sp.add_argument("--seed", type=int, default=0)

    for name, text in (("dim", "exact dimension"), ("dimstar", "exact dimension over min-max pairs")):
        sp = add(name, cmd_dim, text)
        sp.add_argument("--json", action="store_true")

    sp = add("chi", cmd_chi, "minimum reversible partition of Inc(A, B)")
    sp.add_argument("--a", type=_int_list, help="minimal points (default: all)")
    sp.add_argument("--b", type=_int_list, help="maximal points (default: all)")
    sp.add_argument("--json", action="store_true")

    sp = add("unfold", cmd_unfold, "layers of the unfolding from a root")
    sp.add_argument("--a", type=_int_list)
    sp.add_argument("--b", type=_int_list)
    sp.add_argument("--root", type=int)
    sp.add_argument("--json", action="store_true")

    for name, func, help_ in (
        ("extract", cmd_extract, "extract a clique subdivision from a bounded-height poset"),
        ("kk-extract", cmd_kk_extract, "extract a clique subdivision from a (k+k)-free poset"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("--n", type=int, default=3, help="clique size (default 3)")
        if name == "extract":
            sp.add_argument("--h", type=int, help="height bound (default: input height, at least 2)")
            sp.add_argument("--jobs", type=int, default=default_jobs(), help="parallel scans (env COVERDIM_JOBS)")
        else:
            sp.add_argument("--k", type=int, required=True, help="chain length k for (k+k)-freeness")
        sp.add_argument("--mode", choices=(BEST_EFFORT, PAPER), default=BEST_EFFORT)
        sp.add_argument("--thresholds", type=_int_list, help="per-iteration thresholds, non-increasing")
        sp.add_argument("--cap", type=int, help="collection size (default C(n, 2))")
        sp.add_argument("--check-invariants", dest="check_invariants", action="store_true", default=True)
        sp.add_argument("--no-check-invariants", dest="check_invariants", action="store_false")
        sp.add_argument("--json", action="store_true")

    sp = add("verify", cmd_verify, "check a subdivision certificate against a poset's cover graph")
    sp.add_argument("--cert", required=True, help="certificate or report JSON")
    sp.add_argument("--n", type=int)

    sp = add("oracle", cmd_oracle, "brute-force search for a clique subdivision")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--limit", type=int, default=12)
    sp.add_argument("--json", action="store_true")

    sp = add("export-dot", cmd_export_dot, "DOT drawing of a poset, unfolding or certificate")
    sp.add_argument("--report", help="highlight the certificate in this report")
    sp.add_argument("--root", type=int, help="draw the unfolding from this root")

    sp = add("constants", cmd_constants, "exact constants for the given parameters", inp=False)
    sp.add_argument("--n", type=int, required=True)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--h", type=int)
    group.add_argument("--k", type=int)
    sp.add_argument("--json", action="store_true")
    return ap


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CoverDimError, OSError) as exc:
        print(f"coverdim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
