"""Command-line entry point: ``mdsforge <command> ...``.

Every record printed names its field, including the modulus.  Exit status is
0 for success or a true predicate, 1 for a false predicate or a count that
disagrees, 2 for usage errors and 3 for domain errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional, Sequence

from . import counting
from .decomp import certify, compose, decompose, involutory_member, InvolutoryCertificate
from .enumerate import EnumSpec, Kind, Mode, count, iter_blocks, DEFAULT_STREAM_LIMIT
from .errors import DomainError, UsageError
from .gf import Field, parse_field
from .matlin import SquareMatrix, has_ones_border, matrix_from_json, parse_matrix
from .mdscheck import check_r, is_involutory, is_mds, is_representative_mds

SCHEMA_VERSION = 1
FIELD_ENV = "MDSFORGE_FIELD"

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on its own errors; route them through UsageError
    def error(self, message):
        raise UsageError(message)


def _record(command: str, field: str, payload, status: int) -> dict:
    return {"schema": SCHEMA_VERSION, "command": command, "field": field,
            "payload": payload, "status": status}


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _field(args) -> Field:
    text = args.field or os.environ.get(FIELD_ENV)
    if not text:
        raise UsageError(f"no field given: pass --field or set {FIELD_ENV}")
    return parse_field(text)


def _matrix(args, field: Field) -> SquareMatrix:
    if args.matrix is not None and args.input is not None:
        raise UsageError("give the matrix either positionally or with --in, not both")
    if args.input is not None:
        with open(args.input) as fh:
            text = fh.read().strip()
    elif args.matrix is not None:
        text = args.matrix.strip()
    else:
        raise UsageError("no matrix given")
    if text.startswith("{"):
        try:
            return matrix_from_json(text, field)
        except json.JSONDecodeError as exc:
            raise UsageError(f"matrix JSON: {exc.msg} at position {exc.pos}") from None
    return parse_matrix(text, field)


def _codes(field: Field, text: str) -> list[int]:
    return [field.parse_element(t) for t in text.split(",")]


# --- commands ------------------------------------------------------------------------

def cmd_check(args, out) -> int:
    f = _field(args)
    m = _matrix(args, f)
    wanted = [k for k in ("mds", "involutory", "representative") if getattr(args, k)]
    if not wanted:
        wanted = ["mds"]
    payload = {}
    for k in wanted:
        if k == "mds":
            payload["mds"] = is_mds(m)
        elif k == "involutory":
            payload["involutory"] = is_involutory(m)
        else:
            if not has_ones_border(m):
                raise UsageError("--representative needs an all-ones first row and column")
            payload["representative"] = is_representative_mds(m)
            if m.n > 1:
                payload["violations"] = [v.to_json() for v in check_r(m.interior())]
    status = EXIT_OK if all(payload[k] for k in wanted) else EXIT_FALSE
    _emit(_record("check", f.spec_string(), payload, status), out)
    return status


def cmd_decompose(args, out) -> int:
    f = _field(args)
    m = _matrix(args, f)
    t = decompose(m)
    if compose(t) != m:
        raise DomainError("decomposition does not recompose to the input")
    _emit(_record("decompose", f.spec_string(), t.to_json(), EXIT_OK), out)
    return EXIT_OK


def cmd_invcert(args, out) -> int:
    f = _field(args)
    m = _matrix(args, f)
    outcome = certify(m)
    status = EXIT_OK if outcome.certificate is not None else EXIT_FALSE
    _emit(_record("invcert", f.spec_string(), outcome.to_json(), status), out)
    return status


def cmd_member(args, out) -> int:
    f = _field(args)
    m1 = _matrix(args, f)
    if args.alphas:
        cert = InvolutoryCertificate(f, tuple(_codes(f, args.alphas)))
    else:
        cert = certify(m1).certificate
        if cert is None:
            raise DomainError("matrix has no involution certificate")
    if args.negate:
        cert = cert.negated()
    member = involutory_member(m1, cert, _codes(f, args.lambdas))
    payload = {"matrix": member.to_json()["rows"], "certificate": cert.to_json()["alphas"],
               "involutory": is_involutory(member)}
    status = EXIT_OK if payload["involutory"] else EXIT_FALSE
    _emit(_record("member", f.spec_string(), payload, status), out)
    return status


def _kind(text: str) -> Kind:
    return Kind(text)


def cmd_enum(args, out) -> int:
    f = _field(args)
    spec = EnumSpec(f, args.order, _kind(args.kind), Mode.STREAM, args.limit)
    blocks = iter_blocks(spec)
    fs = f.spec_string()
    fmt = f.format
    n = args.order
    if args.format == "jsonl":
        for arr in blocks:
            for m in arr.tolist():
                out.write(json.dumps({"field": fs, "rows": [[fmt(c) for c in r] for r in m]})
                          + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["field"] + [f"m{i + 1}{j + 1}" for i in range(n) for j in range(n)])
        for arr in blocks:
            for m in arr.reshape(len(arr), -1).tolist():
                w.writerow([fs] + [fmt(c) for c in m])
    else:
        mats = [[[fmt(c) for c in r] for r in m] for arr in blocks for m in arr.tolist()]
        _emit(_record("enum", fs, {"order": n, "kind": spec.kind.value, "count": len(mats),
                                   "matrices": mats}, EXIT_OK), out)
    return EXIT_OK


def cmd_count(args, out) -> int:
    f = _field(args)
    spec = EnumSpec(f, args.order, _kind(args.kind), Mode.COUNT_ONLY)
    res = count(spec, workers=args.jobs, checkpoint=args.checkpoint, max_blocks=args.stop_after)
    _emit(_record("count", f.spec_string(), res.to_json(stable=args.stable), EXIT_OK), out)
    return EXIT_OK


def cmd_count_formula(args, out) -> int:
    value = counting.FORMULAS[args.what](args.m)
    payload = {"m": args.m, "what": args.what, "value": str(value)}
    _emit(_record("count-formula", f"2^{args.m}", payload, EXIT_OK), out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    f = _field(args)
    rep = counting.verify(f, args.order, _kind(args.kind), workers=args.jobs,
                          checkpoint=args.checkpoint)
    if rep.source is counting.Source.ENUMERATION_ONLY:
        # nothing to compare against; only the multiplicative structure is checked
        status = EXIT_OK if rep.structure_ok and rep.enumerated_value is not None else EXIT_FALSE
    else:
        status = EXIT_OK if rep.agrees else EXIT_FALSE
    _emit(_record("verify", f.spec_string(), rep.to_json(), status), out)
    return status


# --- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mdsforge",
                description="MDS and involutory MDS matrices over finite fields.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def field_opt(sp):
        sp.add_argument("--field", help=f"field spec p^m/modulus, e.g. 2^4/0x13 "
                                        f"(default: ${FIELD_ENV})")
        sp.add_argument("--format", choices=["json", "jsonl", "csv"], default="json")

    def matrix_opt(sp):
        sp.add_argument("matrix", nargs="?", help="matrix text 'a,b;c,d' or matrix JSON")
        sp.add_argument("--in", dest="input", help="read the matrix from a file")

    def order_opts(sp):
        sp.add_argument("--order", "-n", type=int, required=True)
        sp.add_argument("--kind", choices=[k.value for k in Kind], default="representatives")

    def job_opts(sp):
        sp.add_argument("--jobs", type=int, default=1, help="worker threads")
        sp.add_argument("--checkpoint", help="checkpoint file; resumed if it exists")

    sp = sub.add_parser("check", help="MDS / involution / representative-interior tests")
    field_opt(sp)
    matrix_opt(sp)
    sp.add_argument("--mds", action="store_true", help="every square sub-matrix non-singular")
    sp.add_argument("--involutory", action="store_true", help="M^2 = I")
    sp.add_argument("--representative", action="store_true",
                    help="all-ones bordered matrix whose interior passes the MDS conditions")
    sp.set_defaults(run=cmd_check)

    sp = sub.add_parser("decompose", help="factor M = D1 * M1 * D2 with M1 all-ones bordered")
    field_opt(sp)
    matrix_opt(sp)
    sp.set_defaults(run=cmd_decompose)

    sp = sub.add_parser("invcert",
                        help="alpha-vector making a diagonal sandwich of M1 involutory")
    field_opt(sp)
    matrix_opt(sp)
    sp.set_defaults(run=cmd_invcert)

    sp = sub.add_parser("member", help="involutory matrix diag(a1,l..) M1 diag(1,a/l..)")
    field_opt(sp)
    matrix_opt(sp)
    sp.add_argument("--lambdas", required=True, help="comma list of n-1 nonzero elements")
    sp.add_argument("--alphas", help="comma list of n certificate elements "
                                     "(default: the canonical certificate)")
    sp.add_argument("--negate", action="store_true",
                    help="use the negated certificate (a different family in odd characteristic)")
    sp.set_defaults(run=cmd_member)

    sp = sub.add_parser("enum", help="stream representative, MDS or involutory MDS matrices")
    field_opt(sp)
    order_opts(sp)
    sp.add_argument("--limit", type=int, default=DEFAULT_STREAM_LIMIT,
                    help="refuse streams larger than this many matrices")
    sp.set_defaults(run=cmd_enum, format="jsonl")

    sp = sub.add_parser("count", help="exact count by block enumeration, optionally parallel")
    field_opt(sp)
    order_opts(sp)
    job_opts(sp)
    sp.add_argument("--stop-after", type=int, help="stop after this many blocks (resumable)")
    sp.add_argument("--stable", action="store_true", help="omit timing from the output")
    sp.set_defaults(run=cmd_count)

    sp = sub.add_parser("count-formula", help="closed-form order-3 counts over F_{2^m}")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--what", choices=sorted(counting.FORMULAS), required=True)
    sp.add_argument("--format", choices=["json", "jsonl"], default="json")
    sp.set_defaults(run=cmd_count_formula)

    sp = sub.add_parser("verify", help="compare an enumerated count with its closed form "
                                       "or census value")
    field_opt(sp)
    order_opts(sp)
    job_opts(sp)
    sp.set_defaults(run=cmd_verify)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command != "enum" and getattr(args, "format", "json") == "csv":
            raise UsageError("csv output is only available for enum")
        return args.run(args, out)
    except UsageError as exc:
        err.write(f"mdsforge: usage error: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        err.write(f"mdsforge: domain error: {exc}\n")
        return EXIT_DOMAIN
    except OSError as exc:
        err.write(f"mdsforge: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
