"""Command-line front end.

Subcommands: validate, mn, simulate, audit, table1, table2, envelope,
rate-point.  Exit codes: 0 on success, 1 on a domain violation (invalid PDA,
bad parameters, a leak found by an audit, a failed decode), 2 on I/O errors.

Shared flags: --json for machine-readable output, --csv on the table
commands for delimited output, --out to write to a file instead of stdout,
--plot to render a figure next to the tabular output, --seed and
--field-poly where randomness or a custom field applies.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .analysis import (
    fmt_rational,
    convex_envelope,
    mn_endpoint,
    mn_rate_point,
    mn_rate_points,
    table1_rows,
    table2_rows,
)
from .audit import (
    EAVESDROPPER,
    AuditFault,
    Scenario,
    SystemAuditor,
    audit_summary,
    demand_space,
)
from .gf2 import GF2m
from .pda import PdaFormatError, derive_params, mn_pda, parse_pda, serialize_pda, validate
from .sim import (
    PlacementError,
    baseline_decode_all,
    baseline_deliver,
    baseline_setup,
    decode_all,
    deliver,
    measure,
    minimum_field,
    run_report,
    setup,
    system_config,
)

SCHEMA_PREFIX = "pdacache"


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(args, text: str, json_obj: Optional[dict] = None, csv_text: Optional[str] = None):
    if getattr(args, "json", False) and json_obj is not None:
        body = json.dumps(json_obj, indent=2) + "\n"
    elif getattr(args, "csv", False) and csv_text is not None:
        body = csv_text
    else:
        body = text
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)


def _load_pda(args):
    pda = parse_pda(_read_text(args.pda))
    report = validate(pda)
    return pda, report


def _resolve_field(args, pda):
    poly = getattr(args, "field_poly", None)
    gf = getattr(args, "gf", None)
    if poly is not None:
        poly = int(poly, 0)
        field = GF2m(poly.bit_length() - 1, poly)
    elif gf is not None:
        field = GF2m(gf)
    else:
        field = minimum_field(pda)
    return field


def _parse_demand(text: str, users: int) -> tuple[int, ...]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != users:
        raise ValueError(f"demand has {len(parts)} entries, expected {users}")
    return tuple(int(p) for p in parts)


def _parse_injection(path: str) -> dict:
    raw = json.loads(_read_text(path))

    def conv(v):
        return int(v, 16) if isinstance(v, str) else int(v)

    out = {}
    if "files" in raw:
        out["files"] = [conv(v) for v in raw["files"]]
    if "key_vectors" in raw:
        out["key_vectors"] = [[conv(v) for v in vec] for vec in raw["key_vectors"]]
    if "slot_keys" in raw:
        out["slot_keys"] = [conv(v) for v in raw["slot_keys"]]
    return out


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        pda = parse_pda(_read_text(args.pda))
    except PdaFormatError as exc:
        _emit(args, f"parse error: {exc}\n", {"valid": False, "error": str(exc)})
        return 1
    report = validate(pda)
    g = pda.regularity()
    obj = {
        "schema": f"{SCHEMA_PREFIX}-validate-v1",
        "K": pda.K,
        "F": pda.F,
        "Z": pda.Z,
        "S": pda.S,
        "g": g,
        "relabeling": pda.relabeling,
        **report.to_json(),
    }
    lines = [f"(K,F,Z,S) = ({pda.K},{pda.F},{pda.Z},{pda.S})" + (f", g={g}" if g else "")]
    if pda.relabeling:
        lines.append(f"labels remapped: {pda.relabeling}")
    if report.valid:
        lines.append("valid PDA")
    else:
        lines.append("INVALID:")
        for v in report.violations:
            cells = " ".join(f"({j},{k})" for j, k in v.cells)
            lines.append(f"  {v.condition}: {v.detail}" + (f" [{cells}]" if cells else ""))
    _emit(args, "\n".join(lines) + "\n", obj)
    return 0 if report.valid else 1


def cmd_mn(args) -> int:
    pda = mn_pda(args.K, args.t)
    text = serialize_pda(pda)
    obj = {
        "schema": f"{SCHEMA_PREFIX}-pda-v1",
        "K": pda.K,
        "F": pda.F,
        "Z": pda.Z,
        "S": pda.S,
        "g": pda.regularity(),
        "grid": text,
    }
    _emit(args, text, obj)
    return 0


def cmd_simulate(args) -> int:
    pda, report = _load_pda(args)
    if not report.valid:
        sys.stderr.write("PDA is invalid; run `pdacache validate` for details\n")
        return 1
    users = pda.K
    library_size = args.N if args.N is not None else users
    field = _resolve_field(args, pda)
    demand = (
        _parse_demand(args.demand, users)
        if args.demand
        else tuple((k % library_size) + 1 for k in range(users))
    )

    if args.plain:
        file_bits = args.B if args.B is not None else pda.F
        state = baseline_setup(pda, library_size, file_bits, seed=args.seed)
        transcript = baseline_deliver(state, demand)
        decodes = baseline_decode_all(state, transcript)
        obj = {
            "schema": f"{SCHEMA_PREFIX}-run-report-v1",
            "scheme": "plain",
            "config": {
                "users": users,
                "library_size": library_size,
                "file_bits": state.file_bits,
                "padded_file_bits": state.padded_bits,
                "seed": args.seed,
            },
            "params": derive_params(pda, library_size).to_json(),
            "caches": [
                {"user": k + 1, "subfile_rows": sorted({j + 1 for (_, j) in state.caches[k]})}
                for k in range(users)
            ],
            "transcript": transcript.to_json(),
            "rate": measure(transcript, state).to_json(),
            "decode": decodes,
        }
    else:
        injected = _parse_injection(args.inject_randomness) if args.inject_randomness else {}
        secret_len = pda.F - pda.Z
        file_bits = args.B if args.B is not None else secret_len * field.r
        cfg = system_config(pda, library_size, file_bits, seed=args.seed, field=field)
        state = setup(
            cfg,
            files=injected.get("files"),
            key_vectors=injected.get("key_vectors"),
            slot_keys=injected.get("slot_keys"),
        )
        transcript = deliver(state, demand)
        decodes = decode_all(state, transcript)
        audit_obj = None
        if args.audit:
            auditor = SystemAuditor(pda, library_size, state.G)
            audit_obj = audit_summary(auditor.audit([demand]))
        obj = run_report(state, transcript, decodes, audit=audit_obj)

    ok = all(d["ok"] for d in obj["decode"])
    args.json = True  # the run report is the output format
    _emit(args, "", obj)
    return 0 if ok else 1


def cmd_audit(args) -> int:
    pda, report = _load_pda(args)
    if not report.valid:
        sys.stderr.write("PDA is invalid; run `pdacache validate` for details\n")
        return 1
    library_size = args.N if args.N is not None else pda.K
    field = _resolve_field(args, pda)
    cfg = system_config(pda, library_size, pda.F - pda.Z, field=field)
    state = setup(cfg)
    scenario = Scenario(
        name=args.scenario_name
        or (
            "intact"
            if not (args.ablate_key or args.grant_key)
            else "ablated"
        ),
        omit_slot_keys=frozenset(args.ablate_key or ()),
        grant_slot_keys=frozenset(args.grant_key or ()),
    )
    demands = demand_space(library_size, pda.K, seed=args.seed)
    if args.demand:
        demands = [_parse_demand(args.demand, pda.K)]
    auditor = SystemAuditor(pda, library_size, state.G, scenario)
    reports = auditor.audit(demands)
    obj = audit_summary(reports)
    obj["scenario"] = scenario.name
    obj["demands_checked"] = len(demands)
    obj["observers"] = [f"user-{k}" for k in range(1, pda.K + 1)] + [EAVESDROPPER]
    lines = [
        f"scenario {scenario.name}: {obj['certificates']} certificates over "
        f"{len(demands)} demand vectors",
        "no leakage found" if obj["leak_free"] else f"LEAKS: {len(obj['leaks'])}",
    ]
    for leak in obj["leaks"][:10]:
        lines.append(f"  {leak['observer']} demand={leak['demand']}")
    _emit(args, "\n".join(lines) + "\n", obj)
    return 0 if obj["leak_free"] else 1


def cmd_table1(args) -> int:
    rows = table1_rows(tuple(args.q or (3,)), tuple(args.n or (4,)), args.N)
    header = ["pda", "param", "K", "M", "R_mn", "R_pda", "F_mn", "F_pda", "flags"]
    table = [
        [
            r.label,
            r.parameter,
            str(r.K),
            fmt_rational(r.M),
            fmt_rational(r.R_mn),
            fmt_rational(r.R_pda),
            str(r.F_mn),
            str(r.F_pda),
            ",".join(r.discrepancies) or "-",
        ]
        for r in rows
    ]
    obj = {
        "schema": f"{SCHEMA_PREFIX}-table1-v1",
        "library_size": args.N,
        "rows": [r.to_json() for r in rows],
    }
    if args.plot:
        from .plots import plot_table1

        plot_table1(rows, args.plot)
    _emit(args, _format_table(header, table), obj, _format_csv(header, table))
    return 0


def cmd_table2(args) -> int:
    qs = args.q or [2]
    ms = args.m or [2]
    if len(qs) != len(ms):
        raise ValueError(f"got {len(qs)} values of q but {len(ms)} of m")
    rows = table2_rows(list(zip(qs, ms)), args.N)
    header = [
        "q", "m", "K",
        "memory plain", "memory keyed",
        "subpkt plain", "subpkt keyed",
        "rate plain", "rate keyed",
    ]
    table = [
        [
            str(r.q),
            str(r.m),
            str(r.K),
            fmt_rational(r.memory_plain),
            fmt_rational(r.memory_secret),
            str(r.subpkt_plain),
            str(r.subpkt_secret),
            fmt_rational(r.rate_plain),
            fmt_rational(r.rate_secret),
        ]
        for r in rows
    ]
    obj = {
        "schema": f"{SCHEMA_PREFIX}-table2-v1",
        "library_size": args.N,
        "rows": [r.to_json() for r in rows],
    }
    if args.plot:
        from .plots import plot_table2

        plot_table2(rows, args.plot)
    _emit(args, _format_table(header, table), obj, _format_csv(header, table))
    return 0


def cmd_envelope(args) -> int:
    points = mn_rate_points(args.K, args.N)
    env = convex_envelope(points)
    header = ["M", "R"]
    table = [[fmt_rational(m), fmt_rational(r)] for m, r in env.breakpoints]
    obj = {
        "schema": f"{SCHEMA_PREFIX}-envelope-v1",
        "K": args.K,
        "N": args.N,
        "points": [p.to_json() for p in points],
        **env.to_json(),
    }
    lines = [_format_table(header, table).rstrip("\n")]
    if args.eval is not None:
        m = Fraction(args.eval)
        value = env.value(m)
        obj["evaluated"] = {"M": str(m), "R": {"exact": str(value), "decimal": f"{float(value):.4f}"}}
        lines.append(f"R({m}) = {fmt_rational(value)}")
    if args.plot:
        from .plots import plot_envelope

        plot_envelope(points, env, args.plot)
    _emit(args, "\n".join(lines) + "\n", obj, _format_csv(header, table))
    return 0


def cmd_rate_point(args) -> int:
    if args.endpoint:
        point = mn_endpoint(args.K, args.N)
    else:
        if args.t is None:
            raise ValueError("provide --t or --endpoint")
        point = mn_rate_point(args.K, args.N, args.t)
    text = f"M = {fmt_rational(point.M)}, R = {fmt_rational(point.R)}"
    if point.subpacketization is not None:
        text += f", subpacketization = {point.subpacketization}"
    obj = {"schema": f"{SCHEMA_PREFIX}-rate-point-v1", **point.to_json()}
    _emit(args, text + "\n", obj)
    return 0


# ----------------------------------------------------------------------
# table formatting
# ----------------------------------------------------------------------

def _format_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i]) for i in range(len(header))]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)),
        "  ".join("-" * w for w in widths),
    ]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def _format_csv(header: list[str], rows: list[list[str]]) -> str:
    def esc(value: str) -> str:
        return f'"{value}"' if ("," in value or '"' in value) else value

    lines = [",".join(esc(h) for h in header)]
    lines.extend(",".join(esc(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdacache",
        description="Keyed coded caching from placement delivery arrays",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False, field=False, csv=False, plot=False):
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--out", help="write output to this file")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if field:
            p.add_argument("--field-poly", help="field polynomial bits, e.g. 0xb")
            p.add_argument("--gf", type=int, help="extension degree of the default field")
        if csv:
            p.add_argument("--csv", action="store_true", help="emit comma-separated values")
        if plot:
            p.add_argument("--plot", help="render a figure to this file")

    p = sub.add_parser("validate", help="parse and validate a PDA file")
    p.add_argument("pda")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("mn", help="generate the subset-based PDA for K users")
    p.add_argument("K", type=int)
    p.add_argument("t", type=int)
    common(p)
    p.set_defaults(func=cmd_mn)

    p = sub.add_parser("simulate", help="run placement, delivery and decoding")
    p.add_argument("pda")
    p.add_argument("--N", type=int, help="library size (default: number of users)")
    p.add_argument("--B", type=int, help="file size in bits (default: minimal aligned size)")
    p.add_argument("--demand", help="comma-separated demand vector")
    p.add_argument("--plain", action="store_true", help="run the unkeyed baseline")
    p.add_argument("--audit", action="store_true", help="attach leakage certificates")
    p.add_argument("--inject-randomness", help="JSON file pinning files/key vectors/slot keys")
    common(p, seed=True, field=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("audit", help="run leakage certificates over a demand space")
    p.add_argument("pda")
    p.add_argument("--N", type=int, help="library size (default: number of users)")
    p.add_argument("--demand", help="audit only this demand vector")
    p.add_argument("--ablate-key", type=int, action="append", help="deliver slot unkeyed")
    p.add_argument("--grant-key", type=int, action="append", help="hand this slot key to observers")
    p.add_argument("--scenario-name")
    common(p, seed=True, field=True)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("table1", help="PDA families versus the subset scheme")
    p.add_argument("--q", type=int, action="append")
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--N", type=int, default=6, help="library size used for the memory column")
    common(p, csv=True, plot=True)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("table2", help="keyed versus unkeyed scheme on the q-ary family")
    p.add_argument("--q", type=int, action="append")
    p.add_argument("--m", type=int, action="append")
    p.add_argument("--N", type=int, default=6)
    common(p, csv=True, plot=True)
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("envelope", help="memory-sharing envelope of the corner points")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--eval", help="evaluate the envelope at this memory (fraction ok)")
    common(p, csv=True, plot=True)
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("rate-point", help="one corner point of the subset scheme")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--endpoint", action="store_true")
    common(p)
    p.set_defaults(func=cmd_rate_point)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 2
    except (PdaFormatError, PlacementError, AuditFault, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
