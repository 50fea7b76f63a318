"""Command-line front end.

Subcommands:

    krthin invariants (--pq P Q | --cf A1,A2,... | --pd FILE | --sweep PMAX)
    krthin hkr        (--pq P Q | --cf ... | --pd FILE) --N N [--unreduced]
    krthin certify    (--pq P Q | --sweep PMAX) --N N [--out DIR]

Exit codes: 0 success, 1 certificate verification failure, 2 invalid input,
3 resource limit, 4 N <= 4 without --conjectural, 5 internal assertion failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .diagram import (
    TwoBridgeCode,
    cf_to_pq,
    normalize_code,
    parse_pd_file,
    plat_from_cf,
    trace_components,
)
from .errors import (
    InternalInconsistency,
    InvalidParameter,
    KrthinError,
    NotAlternating,
    ResourceLimit,
)
from .homfly import CACHE_ENV, HomflyEngine, jones
from .invariants import complex_det
from .laurent import LaurentPoly, RationalInvariant
from .thinness import (
    LinkData,
    certify_two_bridge,
    crossing_change_candidates,
    euler_check,
    is_alternating,
    two_bridge_codes,
    verify_certificate,
    ThinCertificate,
    _Producer,
)
from .unreduced import (
    dimension,
    e1_bound_ok,
    euler_identity,
    gornik_slice_ok,
    unreduced_fig8,
    unreduced_torus2n,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_GATE = 4
EXIT_ASSERT = 5

CSV_COLUMNS = ["p", "q", "cf", "components", "det", "sigma", "homfly_json", "pN_json", "thin_verdict", "orientation"]


class GateError(Exception):
    """N <= 4 requested without --conjectural."""


# ---------------------------------------------------------------------------
# input handling

class LinkInput:
    """One link taken from the command line: a two-bridge code or a PD diagram."""

    def __init__(self, diagram, code: TwoBridgeCode | None = None, bit: int = 0, source: str = ""):
        self.diagram = diagram
        self.code = code
        self.bit = bit
        self.source = source


def _parse_cf(text: str) -> tuple:
    try:
        cf = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise InvalidParameter(f"bad continued fraction {text!r}") from exc
    if not cf or any(a == 0 for a in cf[1:]):
        raise InvalidParameter("continued fraction entries after the first must be nonzero")
    return cf


def _code_input(code: TwoBridgeCode, bit: int) -> LinkInput:
    if code.p == 0:
        raise InvalidParameter("K(0, 1) is the two-component unlink; it has no plat code here")
    if code.p % 2 == 1 and bit:
        raise InvalidParameter("--orientation 1 only applies to two-component links (even p)")
    return LinkInput(plat_from_cf(code.cf, bit), code, bit, f"K({code.p},{code.q})")


def read_inputs(args) -> list:
    """Resolve --pq / --cf / --pd / --sweep into a list of :class:`LinkInput`."""
    bit = getattr(args, "orientation", 0)
    if bit not in (0, 1):
        raise InvalidParameter("--orientation must be 0 or 1")
    if getattr(args, "pq", None):
        p, q = args.pq
        if p < 0:
            raise InvalidParameter("p must be nonnegative")
        return [_code_input(normalize_code(p, q), bit)]
    if getattr(args, "cf", None):
        p, q = cf_to_pq(_parse_cf(args.cf))
        return [_code_input(normalize_code(abs(p), q if p >= 0 else -q), bit)]
    if getattr(args, "pd", None):
        try:
            diagrams = parse_pd_file(args.pd)
        except OSError as exc:
            raise InvalidParameter(f"cannot read {args.pd}: {exc}") from exc
        return [LinkInput(D, None, 0, f"{args.pd}#{i}") for i, D in enumerate(diagrams)]
    if getattr(args, "sweep", None) is not None:
        if args.sweep < 1:
            raise InvalidParameter("--sweep needs pmax >= 1")
        return [LinkInput(plat_from_cf(code.cf, b), code, b, f"K({code.p},{code.q})")
                for code, b in two_bridge_codes(args.sweep)]
    raise InvalidParameter("give one of --pq, --cf, --pd, --sweep")


def make_engine(args) -> HomflyEngine:
    if args.node_budget is not None and args.node_budget < 1:
        raise InvalidParameter("--node-budget must be positive")
    kw = {"cache_dir": args.cache_dir}
    if args.node_budget is not None:
        kw["node_budget"] = args.node_budget
    return HomflyEngine(**kw)


def _check_N(args):
    if args.N < 2:
        raise InvalidParameter("N must be at least 2")
    if args.N <= 4 and not args.conjectural:
        raise GateError(f"N = {args.N} is outside the proven range; pass --conjectural")


# ---------------------------------------------------------------------------
# per-link reports

def thin_verdict(link: LinkInput, ld: LinkData) -> str:
    """'thin' for two-bridge links, 'not thin' when the HOMFLY polynomial is
    not alternating, 'inconclusive' otherwise."""
    if ld.diagram.is_singular:
        return "inconclusive"
    if link.code is not None and ld.det:
        return "thin"
    if ld.components == 1 and not is_alternating(ld.homfly):
        return "not thin"
    return "inconclusive"


def _poincare_or_none(ld: LinkData, N: int):
    if not ld.det or ld.components > 2:
        return None
    try:
        return ld.poincare(N)
    except NotAlternating:
        return None


def invariants_report(link: LinkInput, ld: LinkData, N: int, engine=None) -> dict:
    cdet = complex_det(ld.homfly)
    lc = trace_components(ld.diagram)
    PN = _poincare_or_none(ld, N)
    row = {
        "source": link.source,
        "p": link.code.p if link.code else None,
        "q": link.code.q if link.code else None,
        "cf": list(link.code.cf) if link.code else None,
        "orientation": link.bit if link.code else None,
        "singular": ld.diagram.is_singular,
        "components": ld.components,
        "homfly": ld.homfly.to_json_obj(),
        "jones": jones(ld.homfly).to_json_obj(),
        "Det": [cdet.re, cdet.im],
        "det": ld.det,
        "phase": ld.sig.phase_pow,
        "sigma": ld.sigma,
        "i_parity": lc.i_parity,
        "twice_lk": ld.twice_lk,
        "N": N,
        "poincare": PN.to_json_obj() if PN is not None else None,
        "thin_verdict": thin_verdict(link, ld),
    }
    if link.code is None and not ld.diagram.is_singular and ld.components == 1 and ld.det:
        row["crossing_change"] = [
            {"crossing": i, "det_L1": v["det_L1"], "det_L0": v["det_L0"], "det_Ls": v["det_Ls"]}
            for i, v in crossing_change_candidates(ld.diagram, engine)
        ]
    return row


def _closed_form(link: LinkInput, N: int):
    """Unreduced closed form when the link is a positive (2, n) torus knot or
    the figure-eight."""
    code = link.code
    if code is None or code.p % 2 == 0:
        return None, None
    if code.cf == (code.p,) and code.p > 0:
        return f"T(2,{code.p})", unreduced_torus2n(N, code.p)
    if (code.p, code.q) == (5, 2):
        return "4_1", unreduced_fig8(N)
    return None, None


def hkr_report(link: LinkInput, ld: LinkData, N: int, unreduced: bool) -> dict:
    PN = _poincare_or_none(ld, N)
    verdict = thin_verdict(link, ld)
    row = {
        "source": link.source,
        "N": N,
        "components": ld.components,
        "det": ld.det,
        "sigma": ld.sigma,
        "thin_verdict": verdict,
        "poincare": None,
        "poincare_if_thin": None,
    }
    if PN is None:
        return row
    key = "poincare" if verdict == "thin" else "poincare_if_thin"
    row[key] = PN.to_json_obj()
    row["poincare_text"] = str(PN)
    row["euler_check"] = euler_check(PN, ld.homfly, N)
    want = ld.det if ld.components == 1 else ld.det + N - 2
    row["dimension"] = PN.total()
    row["dimension_check"] = PN.total() == want
    if verdict == "thin" and not (row["euler_check"] and row["dimension_check"]):
        raise InternalInconsistency(f"{link.source}: Euler or dimension check failed")
    if unreduced:
        name, U = _closed_form(link, N) if N > 4 else (None, None)
        row["unreduced"] = None if U is None else {
            "family": name,
            "poincare": U.to_json_obj(),
            "poincare_text": str(U),
            "dimension": dimension(U),
            "gornik_slice": gornik_slice_ok(U, N),
            "euler_identity": euler_identity(U, ld.homfly, N),
            "e1_bound": e1_bound_ok(U, PN, N),
        }
        u = row["unreduced"]
        if u and not (u["gornik_slice"] and u["euler_identity"] and u["e1_bound"]):
            raise InternalInconsistency(f"{link.source}: unreduced consistency check failed")
    return row


# ---------------------------------------------------------------------------
# output

def _csv_row(r: dict) -> dict:
    return {
        "p": r.get("p"),
        "q": r.get("q"),
        "cf": ",".join(map(str, r["cf"])) if r.get("cf") is not None else "",
        "components": r.get("components"),
        "det": r.get("det"),
        "sigma": r.get("sigma"),
        "homfly_json": json.dumps(r["homfly"], sort_keys=True) if "homfly" in r else "",
        "pN_json": json.dumps(r["poincare"], sort_keys=True) if r.get("poincare") else "",
        "thin_verdict": r.get("thin_verdict"),
        "orientation": r.get("orientation"),
    }


def _as_text(v):
    if isinstance(v, dict) and "terms" in v:
        cls = RationalInvariant if "dpow" in v else LaurentPoly
        return str(cls.from_json_obj(v))
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return v


def _plain(r: dict) -> str:
    return "\n".join(f"{k}: {_as_text(v)}" for k, v in r.items() if not k.endswith("_text"))


def emit(rows: list, fmt: str, out) -> None:
    if fmt == "json":
        payload = rows[0] if len(rows) == 1 else rows
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(_csv_row(r))
        out.write(buf.getvalue())
    else:
        out.write("\n\n".join(_plain(r) for r in rows) + "\n")


# ---------------------------------------------------------------------------
# commands

def cmd_invariants(args, out) -> int:
    engine = args.engine
    rows = [invariants_report(link, LinkData(link.diagram, engine), args.N, engine) for link in read_inputs(args)]
    emit(rows, args.format, out)
    return EXIT_OK


def cmd_hkr(args, out) -> int:
    _check_N(args)
    engine = args.engine
    rows = [hkr_report(link, LinkData(link.diagram, engine), args.N, args.unreduced) for link in read_inputs(args)]
    emit(rows, args.format, out)
    return EXIT_OK


def _cert_name(code: TwoBridgeCode, bit: int) -> str:
    return f"K{code.p}_{code.q}" + (f"_o{bit}" if code.p % 2 == 0 else "") + ".json"


def cmd_certify(args, out) -> int:
    _check_N(args)
    if args.pd:
        raise InvalidParameter("certify takes two-bridge codes only (--pq, --cf or --sweep)")
    engine = args.engine
    links = read_inputs(args)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    producer = _Producer(args.N, engine)
    memo = {}
    rows = []
    failed = 0
    for link in links:
        cert = certify_two_bridge(link.code, args.N, link.bit, engine, args.conjectural, producer)
        path = outdir / _cert_name(link.code, link.bit)
        path.write_text(cert.to_json() + "\n")
        if args.verify:
            # re-read from disk so the check covers the serialized certificate
            cert = ThinCertificate.from_json(path.read_text())
        report = verify_certificate(cert, args.N, engine, memo)
        failed += not report.ok
        rows.append({
            "source": link.source,
            "p": link.code.p,
            "q": link.code.q,
            "orientation": link.bit,
            "file": str(path),
            "nodes": cert.count(),
            "verified": report.ok,
            "failures": report.failures[:5],
        })
    summary = {"produced": len(rows), "verified": len(rows) - failed, "failed": failed, "N": args.N}
    if args.format == "json":
        out.write(json.dumps({"summary": summary, "links": rows}, sort_keys=True, indent=2) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["p", "q", "orientation", "nodes", "verified", "file"])
        for r in rows:
            w.writerow([r["p"], r["q"], r["orientation"], r["nodes"], r["verified"], r["file"]])
    else:
        for r in rows:
            if not r["verified"]:
                out.write(f"FAILED {r['source']}: {r['failures']}\n")
        out.write(f"produced {summary['produced']}, verified {summary['verified']}, failed {failed}\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser

def _add_link_args(sp, sweep: bool = True, pd: bool = True):
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--pq", nargs=2, type=int, metavar=("P", "Q"), help="two-bridge link K(p, q)")
    g.add_argument("--cf", metavar="A1,A2,...", help="continued fraction expansion of p/q")
    if pd:
        g.add_argument("--pd", metavar="FILE", help="file of PD codes, one diagram per line")
    if sweep:
        g.add_argument("--sweep", type=int, metavar="PMAX", help="every two-bridge link with p <= PMAX")
    sp.add_argument("--orientation", type=int, default=0, help="orientation bit for two-component links")


def _add_common(sp):
    sp.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    sp.add_argument("--cache-dir", default=None, help=f"result cache directory (or ${CACHE_ENV})")
    sp.add_argument("--node-budget", type=int, default=None, help="skein expansions allowed per link")
    sp.add_argument("--verify", action="store_true", help="re-check results from serialized output")
    sp.add_argument("--conjectural", action="store_true", help="allow N <= 4")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krthin", description="HOMFLY, signature and thin sl(N) homology of links.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("invariants", help="HOMFLY, Jones, determinant, signature")
    _add_link_args(sp)
    sp.add_argument("--N", type=int, default=5, help="N for the Poincare polynomial column")
    _add_common(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("hkr", help="reduced (and unreduced) sl(N) Poincare polynomial")
    _add_link_args(sp)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--unreduced", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=cmd_hkr)

    sp = sub.add_parser("certify", help="produce and verify thinness certificates")
    _add_link_args(sp)
    sp.add_argument("--N", type=int, default=5)
    sp.add_argument("--out", default="certificates", help="directory for certificate JSON")
    _add_common(sp)
    sp.set_defaults(func=cmd_certify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        args.engine = make_engine(args)
        return args.func(args, out)
    except GateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GATE
    except ResourceLimit as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InternalInconsistency as exc:
        print(f"error: internal check failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except (KrthinError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
