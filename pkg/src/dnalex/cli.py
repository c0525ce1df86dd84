"""Command-line interface for construction, verification, distances, bounds
and reference-table reproduction.

Determinism contract: the same command line produces byte-identical payload
outputs.  Wall-clock information goes to ``*.log`` sidecar files only, which
are excluded from that contract.  Exit codes: 0 success, 2 usage/parse
error, 3 instance over budget.  FINDING lines are science output and never
change the exit code.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

from . import bounds as bounds_mod
from . import tables as tables_mod
from .bounds import BoundKey, BudgetExceeded, exact_max_code, save_record
from .lexicode import (NonMultiplicativeProperty, OrderedBasis, build_lexicode,
                       read_code_file, verify_lexicode, write_code_file)
from .metrics import UNIT, CostModel, edit_distance, edit_distance_with_transcript
from .properties import parse_property
from .z4 import DnaStrand, Z4Vector, phi, phi_inv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _outdir(args) -> str:
    out = getattr(args, "out", None) or os.environ.get("DNALEX_OUT") or "."
    os.makedirs(out, exist_ok=True)
    return out


def _cost_model(args) -> CostModel:
    path = getattr(args, "cost_file", None)
    if path:
        return CostModel.from_file(path)
    return UNIT


def _detect(token: str) -> tuple[str, Z4Vector]:
    """Classify a token as a Z4 digit string or a DNA strand."""
    if token and all(ch in "0123" for ch in token):
        return "z4", Z4Vector.from_string(token)
    return "dna", phi_inv(token)


def _fmt(value) -> str:
    return "-" if value is None else str(value)


def _sanitize(text: str) -> str:
    text = text.replace(">=", "ge").replace("<=", "le").replace("&", "_and_")
    return re.sub(r"[^A-Za-z0-9._-]", "", text)


def cmd_construct(args) -> int:
    cm = _cost_model(args)
    prop = parse_property(args.property, cm)
    if args.basis == "canonical":
        basis = OrderedBasis.canonical(args.n)
    else:
        basis = OrderedBasis.from_file(args.basis)
        if basis.n != args.n:
            raise ValueError(f"basis length {basis.n} != -n {args.n}")
    t0 = time.monotonic()
    code = build_lexicode(
        basis, prop, args.mode,
        stop_after_empty=args.stop_after_empty,
        allow_non_multiplicative=args.allow_non_multiplicative,
    )
    elapsed_ms = (time.monotonic() - t0) * 1000
    fmt = "fasta" if args.fasta else ("dna" if args.dna else "z4")
    name = args.output or (
        f"code_n{args.n}_{_sanitize(args.property)}_{args.mode}"
        + {"z4": ".txt", "dna": ".dna.txt", "fasta": ".fasta"}[fmt])
    path = os.path.join(_outdir(args), name)
    write_code_file(path, code, fmt)
    with open(path + ".log", "w") as fh:
        fh.write(f"runtime_ms={elapsed_ms:.1f} seed={args.seed}\n")
    rep = code.verify_report
    summary = {
        "n": code.n, "size": code.size, "dH": rep.min_hamming,
        "minGC": rep.min_gc_nonzero, "gens": len(code.generators),
        "file": path,
    }
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    else:
        print(f"n={code.n} size={code.size} dH={_fmt(rep.min_hamming)} "
              f"minGC={_fmt(rep.min_gc_nonzero)} gens={len(code.generators)}")
    return EXIT_OK


def cmd_tables(args) -> int:
    report = tables_mod.reproduce(args.which)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for line in tables_mod.render_report(report):
            print(line)
    return EXIT_OK


def cmd_distance(args) -> int:
    cm = _cost_model(args)
    kind_s, vs = _detect(args.s) if args.s else ("dna", Z4Vector(()))
    kind_t, vt = _detect(args.t) if args.t else ("dna", Z4Vector(()))
    s, t = str(phi(vs)), str(phi(vt))
    if args.metric == "hamming":
        if len(s) != len(t):
            raise ValueError("hamming distance needs equal lengths")
        value = sum(1 for a, b in zip(s, t) if a != b)
        transcript = None
    elif args.transcript:
        value, transcript = edit_distance_with_transcript(s, t, cm)
    else:
        value, transcript = edit_distance(s, t, cm), None
    if args.json:
        payload = {"s": args.s, "t": args.t, "metric": args.metric,
                   "distance": value}
        if transcript is not None:
            payload["transcript"] = [
                {"op": op.kind, "src": op.src, "dst": op.dst,
                 "src_pos": op.src_pos, "dst_pos": op.dst_pos,
                 "cost": op.cost}
                for op in transcript.ops
            ]
        print(json.dumps(payload, sort_keys=True))
    else:
        print(value)
        if transcript is not None:
            for op in transcript.ops:
                print(f"  {op.kind} src={_fmt(op.src)}@{_fmt(op.src_pos)} "
                      f"dst={_fmt(op.dst)}@{_fmt(op.dst_pos)} cost={op.cost}")
    return EXIT_OK


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def cmd_bounds(args) -> int:
    cm = _cost_model(args)
    ns = _parse_range(args.n)
    ds = _parse_range(args.d)
    records = []
    outdir = _outdir(args) if args.out else None
    t0 = time.monotonic()
    for n in ns:
        if args.w == "all":
            ws: list[int | None] = list(range(0, n + 1))
        elif args.w in ("unconstrained", "none"):
            ws = [None]
        else:
            ws = [w for w in _parse_range(args.w) if w <= n]
        for d in ds:
            if d > n:
                continue
            for w in ws:
                key = BoundKey(n, d, w, args.metric, args.variant)
                rec = exact_max_code(key, cm, budget=args.budget,
                                     allow_gap=args.allow_gap)
                records.append(rec)
                if outdir:
                    save_record(outdir, rec)
                if args.json:
                    print(json.dumps(rec.to_json_dict(), sort_keys=True))
                else:
                    print(f"{key.label()} = {rec.lower}"
                          + ("" if rec.status == "exact"
                             else f"..{rec.upper} ({rec.status})")
                          + f" [{rec.method}]")
    if args.check_relations:
        report = bounds_mod.check_relations(
            n_max=max(ns), metrics=(args.metric,), budget=args.budget)
        for line in report.lines():
            print(line)
        print(f"relations: {len(report.passes())} pass, "
              f"{len(report.failures())} fail, "
              f"{len(report.findings())} findings")
    if args.export_table:
        print(bounds_mod.render_bounds_table(records), end="")
    if outdir:
        with open(os.path.join(outdir, "run.log"), "w") as fh:
            fh.write(f"runtime_ms={(time.monotonic() - t0) * 1000:.1f} "
                     f"seed={args.seed}\n")
    return EXIT_OK


def cmd_convert(args) -> int:
    kind, vec = _detect(args.token)
    if args.to == "z4":
        print(vec)
    elif args.to == "dna":
        print(phi(vec))
    else:
        print(f">cw0\n{phi(vec)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cm = _cost_model(args)
    code = read_code_file(args.code_file)
    prop = parse_property(args.property, cm)
    rep = verify_lexicode(code, prop)
    payload = {
        "file": args.code_file, "size": rep.size, "n": rep.n,
        "linear": rep.is_linear, "property": prop.spec(),
        "property_ok": rep.property_ok, "dH": rep.min_hamming,
        "minGC": rep.min_gc_nonzero,
        "linearity_witnesses": [
            tuple(str(x) for x in wit) for wit in rep.linearity_witnesses],
        "property_witnesses": [str(w) for w in rep.property_witnesses],
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"size={rep.size} n={rep.n} linear={rep.is_linear} "
              f"property_ok={rep.property_ok} dH={_fmt(rep.min_hamming)} "
              f"minGC={_fmt(rep.min_gc_nonzero)}")
        for wit in rep.linearity_witnesses:
            print(f"  linearity violation: {' '.join(str(x) for x in wit)}")
        for w in rep.property_witnesses:
            print(f"  property violation: {w}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dnalex",
        description="linear DNA codes over Z4: greedy construction, "
                    "verification, edit distances, and exact size bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="single-line JSON output")
        p.add_argument("--out", help="output directory (default: "
                                     "$DNALEX_OUT or the working directory)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized searches (recorded; the "
                            "bundled algorithms are deterministic)")

    p = sub.add_parser("construct", help="build a lexicode")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-P", "--property", default="true",
                   help="e.g. 'gc>=4 & hw>=5'")
    p.add_argument("--basis", default="canonical",
                   help="'canonical' or a basis file (one digit string per line)")
    p.add_argument("--mode", default="full-check",
                   choices=["full-check", "skip-two", "as-written"])
    p.add_argument("--stop-after-empty", action="store_true",
                   help="halt at the first unproductive block after a hit")
    p.add_argument("--allow-non-multiplicative", action="store_true")
    p.add_argument("--cost-file")
    p.add_argument("-o", "--output", help="code file name")
    p.add_argument("--dna", action="store_true", help="emit nucleotide strings")
    p.add_argument("--fasta", action="store_true", help="emit FASTA records")
    common(p)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("tables", help="reproduce a bundled reference table")
    p.add_argument("which", type=int, choices=[1, 2, 3, 4])
    common(p)
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("distance", help="edit/hamming distance between words")
    p.add_argument("s")
    p.add_argument("t")
    p.add_argument("--metric", default="edit", choices=["edit", "hamming"])
    p.add_argument("--cost-file")
    p.add_argument("--transcript", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_distance)

    p = sub.add_parser("bounds", help="exact maximum code sizes")
    p.add_argument("--n", required=True, help="e.g. 3 or 1..4")
    p.add_argument("--d", required=True, help="e.g. 2 or 1..3")
    p.add_argument("--w", default="all",
                   help="GC weight: INT, A..B, 'all', or 'unconstrained'")
    p.add_argument("--metric", default="edit", choices=["edit", "hamming"])
    p.add_argument("--variant", default="plain", choices=["plain", "r", "rc"])
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--allow-gap", action="store_true")
    p.add_argument("--check-relations", action="store_true")
    p.add_argument("--export-table", action="store_true")
    p.add_argument("--cost-file")
    common(p)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("convert", help="convert between digit strings and strands")
    p.add_argument("token")
    p.add_argument("--to", required=True, choices=["z4", "dna", "fasta"])
    common(p)
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("verify", help="re-verify a code file against a property")
    p.add_argument("code_file")
    p.add_argument("property")
    p.add_argument("--cost-file")
    common(p)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError, NonMultiplicativeProperty) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
