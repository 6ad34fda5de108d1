"""``triqent`` command line: figure-ready sweeps, thresholds and QEC grids."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import dynamics, qec
from .config import ENV_VAR, get_tolerances

SWEEP_HEADER = ("family", "q", "kappa_t", "quantity", "value")
QEC_HEADER = ("alpha", "p", "mode", "record", "value")
VERIFY_HEADER = ("family", "quantity", "status", "max_abs_diff", "passed")

VERIFY_Q = tuple(round(0.1 * i, 10) for i in range(1, 11))
VERIFY_KT = tuple(round(0.1 * i, 10) for i in range(0, 31))
VERIFY_TOL = 1e-10


class UsageError(Exception):
    pass


def parse_grid(text: str, lo: float, hi: float, name: str) -> list[float]:
    """Parse ``start:stop:step``, a comma list, or a single number."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [float(x) for x in text.split(":")]
            if len(parts) != 3:
                raise ValueError
            start, stop, step = parts
            if step <= 0 or stop < start:
                raise UsageError(f"--{name}: need start <= stop and step > 0, got {text!r}")
            n = int(math.floor((stop - start) / step + 0.5))
            values = [start + i * step for i in range(n + 1)]
            values = [round(v, 12) for v in values]
        else:
            values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--{name}: cannot parse grid {text!r}") from None
    if not values:
        raise UsageError(f"--{name}: empty grid")
    for v in values:
        if not (lo <= v <= hi) or math.isnan(v):
            raise UsageError(f"--{name}: value {v} outside [{lo}, {hi}]")
    return values


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if x is None:
        return "never"
    return format(float(x), ".17g")


def _json_scalar(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, float, np.floating)) and not isinstance(x, bool):
        x = float(x)
        if not math.isfinite(x):
            return json.dumps(str(x))
        return format(x, ".17g")
    if x is None:
        return "null"
    return json.dumps(x)


def _json_dump(obj, indent: int = 0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_json_dump(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _json_dump(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return _json_scalar(obj)


@dataclass
class Table:
    header: tuple[str, ...]
    rows: list[tuple]

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        lines += [",".join(fmt(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return _json_dump([dict(zip(self.header, row)) for row in self.rows]) + "\n"

    def render(self, fmt_name: str) -> str:
        return self.to_csv() if fmt_name == "csv" else self.to_json()


def _write(text: str, path: str) -> None:
    if path in ("-", ""):
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def cmd_sweep(args) -> str:
    family = args.command.upper()
    qs = parse_grid(args.q, 0.0, 1.0, "q")
    kts = parse_grid(args.kt, 0.0, dynamics.KAPPA_T_MAX, "kt")
    quantities = None
    if args.quantities:
        quantities = [x.strip() for x in args.quantities.split(",") if x.strip()]
        allowed = dynamics.quantities_for(family)
        bad = [x for x in quantities if x not in allowed]
        if bad:
            raise UsageError(f"--quantities: {bad} not available for {family}; choose from {allowed}")
    samples = dynamics.sweep(family, qs, kts, quantities)
    table = Table(SWEEP_HEADER, [(s.family, s.q, s.kappa_t, s.quantity, s.value) for s in samples])
    return table.render(args.format)


def cmd_qec(args) -> str:
    alphas = parse_grid(args.alpha, 0.0, 1.0, "alpha")
    ps = parse_grid(args.p, 0.0, 1.0, "p")
    rows = []
    for a in sorted(set(alphas)):
        for p in sorted(set(ps)):
            records = qec.run(a, p, args.mode, args.error_qubit).records()
            rows += [(a, p, args.mode, name, records[name]) for name in qec.RECORDS]
    return Table(QEC_HEADER, rows).render(args.format)


def cmd_thresholds(args) -> str:
    family = args.family.upper()
    if family not in dynamics.FAMILIES:
        raise UsageError(f"--family must be one of {[f.lower() for f in dynamics.FAMILIES]}")
    q_thr = {}
    for name in dynamics.quantities_for(family):
        try:
            q_thr[name] = dynamics.q_threshold(family, name)
        except ValueError:
            q_thr[name] = None
    out = {"family": family, "kappa_t": 0.0, "q_thresholds": q_thr}
    if family == "GB":
        out["theta_deg"] = math.degrees(dynamics.gb_theta())
    if args.q:
        esd = []
        for q in parse_grid(args.q, 0.0, 1.0, "q"):
            for name in dynamics.quantities_for(family):
                r = dynamics.esd_threshold(family, name, q)
                esd.append({
                    "q": q,
                    "quantity": name,
                    "kappa_t_star": "never" if r.never else r.kappa_t_star,
                    "bracket_width": r.bracket_width,
                })
        out["esd"] = esd
    if args.format == "csv":
        rows = [(family, name, v) for name, v in q_thr.items()]
        text = Table(("family", "quantity", "q_threshold"), rows).to_csv()
        if args.q:
            rows = [(family, e["q"], e["quantity"], e["kappa_t_star"]) for e in out["esd"]]
            text += Table(("family", "q", "quantity", "kappa_t_star"), rows).to_csv()
        return text
    return _json_dump(out) + "\n"


def verify_tables() -> list[tuple]:
    """Max |numeric - closed form| for every closed-form cell on the check grid."""
    q = np.asarray(VERIFY_Q)[:, None]
    kt = np.asarray(VERIFY_KT)[None, :]
    rows = []
    for (family, quantity), status in dynamics.CELL_STATUS.items():
        numeric = dynamics.value(family, quantity, q, kt)
        exact = dynamics.closed_form(family, quantity, q, kt)
        diff = float(np.max(np.abs(numeric - exact)))
        rows.append((family, quantity, status, diff, diff <= VERIFY_TOL))
    return rows


def cmd_verify(args) -> tuple[str, int]:
    rows = verify_tables()
    ok = all(r[4] for r in rows)
    table = Table(VERIFY_HEADER, [r[:4] + ("yes" if r[4] else "no",) for r in rows])
    if args.format == "json":
        text = _json_dump({"tolerance": VERIFY_TOL, "passed": ok,
                           "cells": [dict(zip(VERIFY_HEADER, r)) for r in rows]}) + "\n"
    else:
        text = table.to_csv()
    return text, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triqent",
        description="Three-qubit dephasing, entanglement witnesses and phase-flip QEC data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="csv"):
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.add_argument("--output", "-o", default="-", help="output file (default: stdout)")

    for name in ("ghz", "w", "gb"):
        p = sub.add_parser(name, help=f"sweep the {name.upper()} family over q and kappa*t")
        p.add_argument("--q", default="1.0", help="mixing weight grid (start:stop:step or list)")
        p.add_argument("--kt", default="0:3:0.05", help="kappa*t grid (start:stop:step or list)")
        p.add_argument("--quantities", help="comma list, default: all for the family")
        common(p)

    p = sub.add_parser("qec", help="phase-flip code grid over alpha and p")
    p.add_argument("--alpha", default="0:1:0.05")
    p.add_argument("--p", default="0:1:0.05")
    p.add_argument("--mode", choices=qec.MODES, default="all")
    p.add_argument("--error-qubit", type=int, choices=(1, 2, 3), default=1)
    common(p)

    p = sub.add_parser("thresholds", help="q thresholds at t=0 and optional ESD times")
    p.add_argument("--family", required=True, type=str.lower, choices=("ghz", "w", "gb"))
    p.add_argument("--q", help="also locate sudden-death times at these q values")
    common(p, "json")

    p = sub.add_parser("verify-tables", help="check every closed form against the numerics")
    common(p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        get_tolerances()
        status = 0
        if args.command in ("ghz", "w", "gb"):
            text = cmd_sweep(args)
        elif args.command == "qec":
            text = cmd_qec(args)
        elif args.command == "thresholds":
            text = cmd_thresholds(args)
        else:
            text, status = cmd_verify(args)
    except UsageError as exc:
        print(f"triqent: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        if ENV_VAR in str(exc):
            print(f"triqent: error: {exc}", file=sys.stderr)
            return 2
        raise
    _write(text, args.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
