"""Command-line front end: tables, identity verification, convergence runs.

Exit codes are a stable contract: 0 = success / all verdicts as expected,
1 = verification mismatch, 2 = usage error.  All data output goes to
stdout (UTF-8); diagnostics go to stderr.

JSON output is one ``OutputRecord`` object per invocation; coefficients
serialize as exact decimal-free rational strings in ascending-power
arrays, so records round-trip losslessly.  Set ``QEULER_CACHE_DIR`` to
persist computed sequence tables between runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction

from . import bernstein, euler
from .exactq import QPoly, QRatFn, XPoly, poly_str
from .padic import DEFAULT_PRECISION, QChoice, convergence_report, is_odd_prime

TABLE_KINDS = ("qeuler", "frobenius", "weighted", "qeuler-poly")
SUITES = (
    "all",
    "thm1",
    "thm2",
    "thm3",
    "thm4",
    "thm5",
    "thm6",
    "thm7",
    "thm8",
    "cor3",
    "classical",
    "erratum",
    "weighted",
)


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OutputRecord:
    """Machine-readable result: kind, parameters used, canonical payload."""

    kind: str  # number | polynomial | report | convergence
    metadata: dict
    payload: list

    def serialize(self) -> str:
        return json.dumps(
            {"kind": self.kind, "metadata": self.metadata, "payload": self.payload},
            sort_keys=True,
            indent=2,
        )

    @classmethod
    def parse(cls, text: str) -> "OutputRecord":
        data = json.loads(text)
        if set(data) != {"kind", "metadata", "payload"}:
            raise ValueError(f"malformed record keys: {sorted(data)}")
        if data["kind"] not in ("number", "polynomial", "report", "convergence"):
            raise ValueError(f"unknown record kind {data['kind']!r}")
        return cls(data["kind"], data["metadata"], data["payload"])


def _ratfn_payload(f: QRatFn) -> dict:
    return {
        "num": [str(c) for c in f.num.coeffs],
        "den": [str(c) for c in f.den.coeffs],
    }


def _number_row(n: int, f: QRatFn) -> dict:
    row = {"n": n}
    row.update(_ratfn_payload(f))
    return row


def _poly_row(n: int, p: XPoly) -> dict:
    return {"n": n, "x_coeffs": [_ratfn_payload(c) for c in p.coeffs]}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _row_ratfn_str(row: dict) -> str:
    num = QPoly(Fraction(s) for s in row["num"])
    den = QPoly(Fraction(s) for s in row["den"])
    return f"({num})/({den})"


def _row_poly_str(row: dict) -> str:
    parts = []
    for k, c in enumerate(row["x_coeffs"]):
        body = _row_ratfn_str(c)
        if k == 0:
            parts.append(body)
        elif k == 1:
            parts.append(f"{body}*x")
        else:
            parts.append(f"{body}*x^{k}")
    return " + ".join(parts) if parts else "0"


def latex_poly(coeffs: "list[Fraction]", var: str = "q") -> str:
    """Single-line LaTeX for a polynomial, ascending powers, balanced braces."""
    if not coeffs:
        return "0"
    parts: list[str] = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mag = -c if c < 0 else c
        if mag.denominator == 1:
            mag_s = str(mag.numerator)
        else:
            mag_s = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        if k == 0:
            body = mag_s
        else:
            power = var if k == 1 else f"{var}^{{{k}}}"
            body = power if mag == 1 else f"{mag_s} {power}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def latex_ratfn(row: dict) -> str:
    num = [Fraction(s) for s in row["num"]]
    den = [Fraction(s) for s in row["den"]]
    if den == [Fraction(1)]:
        return latex_poly(num)
    return f"\\frac{{{latex_poly(num)}}}{{{latex_poly(den)}}}"


_LATEX_LHS = {
    "qeuler": "\\tilde{{E}}_{{{n}}}",
    "frobenius": "H_{{{n}}}",
    "weighted": "\\tilde{{E}}^{{({alpha})}}_{{{n}}}",
    "qeuler-poly": "\\tilde{{E}}_{{{n}}}(x)",
}


def _latex_row(kind: str, row: dict, alpha: "int | None") -> str:
    lhs = _LATEX_LHS[kind].format(n=row["n"], alpha=alpha)
    if kind == "qeuler-poly":
        terms = []
        for k, c in enumerate(row["x_coeffs"]):
            body = latex_ratfn(c)
            if k == 0:
                terms.append(body)
            else:
                power = "x" if k == 1 else f"x^{{{k}}}"
                terms.append(f"\\left( {body} \\right) {power}")
        rhs = " + ".join(terms) if terms else "0"
    else:
        rhs = latex_ratfn(row)
    return f"{lhs} = {rhs}"


# ---------------------------------------------------------------------------
# sequence cache (QEULER_CACHE_DIR)
# ---------------------------------------------------------------------------

_CACHE_VERSION = 1


def _cache_path(kind: str, alpha: "int | None") -> "str | None":
    root = os.environ.get("QEULER_CACHE_DIR")
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    name = kind if alpha is None else f"{kind}-a{alpha}"
    return os.path.join(root, f"{name}.json")


def _cache_load(kind: str, alpha: "int | None", n_max: int) -> "list[dict] | None":
    path = _cache_path(kind, alpha)
    if path is None or not os.path.exists(path):
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if data.get("version") != _CACHE_VERSION or data.get("kind") != kind:
            return None
        rows = data["rows"]
        if len(rows) < n_max + 1:
            return None
        return rows[: n_max + 1]
    except (OSError, ValueError, KeyError):
        return None


def _cache_store(kind: str, alpha: "int | None", rows: "list[dict]") -> None:
    path = _cache_path(kind, alpha)
    if path is None:
        return
    payload = {"version": _CACHE_VERSION, "kind": kind, "alpha": alpha, "rows": rows}
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


# ---------------------------------------------------------------------------
# table command
# ---------------------------------------------------------------------------

def _compute_table_rows(kind: str, n_max: int, alpha: "int | None") -> list[dict]:
    if kind == "qeuler":
        seq = euler.q_euler_numbers(n_max)
        return [_number_row(n, seq[n]) for n in range(n_max + 1)]
    if kind == "frobenius":
        seq = euler.frobenius_numbers(euler.MINUS_Q_INV, n_max)
        return [_number_row(n, seq[n]) for n in range(n_max + 1)]
    if kind == "weighted":
        values = euler.q_euler_numbers_weighted(alpha, n_max)
        return [_number_row(n, values[n]) for n in range(n_max + 1)]
    if kind == "qeuler-poly":
        return [_poly_row(n, euler.q_euler_polynomial(n)) for n in range(n_max + 1)]
    raise ValueError(kind)


def cmd_table(args, parser) -> int:
    if args.kind == "weighted" and args.alpha is None:
        parser.error("--alpha is required for kind 'weighted'")
    if args.kind != "weighted" and args.alpha is not None:
        parser.error("--alpha only applies to kind 'weighted'")
    if args.n_max < 0:
        parser.error("--n-max must be >= 0")
    alpha = args.alpha
    rows = _cache_load(args.kind, alpha, args.n_max)
    if rows is None:
        try:
            rows = _compute_table_rows(args.kind, args.n_max, alpha)
        except ValueError as exc:
            parser.error(str(exc))
        _cache_store(args.kind, alpha, rows)

    if args.format == "json":
        meta = {"kind_param": args.kind, "n_max": args.n_max}
        if alpha is not None:
            meta["alpha"] = alpha
        record_kind = "polynomial" if args.kind == "qeuler-poly" else "number"
        print(OutputRecord(record_kind, meta, rows).serialize())
    elif args.format == "latex":
        for row in rows:
            print(_latex_row(args.kind, row, alpha))
    else:
        for row in rows:
            form = _row_poly_str(row) if args.kind == "qeuler-poly" else _row_ratfn_str(row)
            print(f"{row['n']}\t{form}")
    return 0


# ---------------------------------------------------------------------------
# verify command
# ---------------------------------------------------------------------------

def _reports_for_suite(suite: str, n_max: int) -> list[euler.IdentityReport]:
    euler_ids = {
        "thm1": "thm1",
        "thm2": "thm2",
        "thm3": "cor3",  # the third numbered result is a corollary
        "thm4": "thm4",
        "thm5": "thm5",
        "thm6": "thm6",
        "thm7": "thm7",
        "cor3": "cor3",
        "classical": "classical",
        "weighted": "weighted",
    }
    if suite in euler_ids:
        return [euler.verify_identity(euler_ids[suite], n_max)]
    if suite == "thm8":
        if n_max < 1:
            return [euler.IdentityReport("thm8", ())]
        return [bernstein.verify_theorem8(n_max)]
    if suite == "erratum":
        return [
            euler.verify_identity("k0-remark", max(n_max, 1)),
            euler.verify_identity("thm7", max(n_max, 1)),
        ]
    if suite == "all":
        out = []
        for ident in ("thm1", "thm2", "cor3", "thm4", "thm5", "thm6", "thm7",
                      "classical", "weighted", "k0-remark"):
            out.append(euler.verify_identity(ident, n_max))
        if n_max >= 1:
            out.append(bernstein.verify_theorem8(n_max))
        return out
    raise ValueError(f"unknown suite {suite!r}")


def _report_payload(report: euler.IdentityReport) -> dict:
    instances = []
    for inst in report.instances:
        entry: dict = {
            "params": list(inst.params),
            "verdict": inst.verdict,
            "expected": inst.expected,
        }
        if inst.note:
            entry["note"] = inst.note
        if inst.left is not None:
            entry["left"] = str(inst.left)
            entry["right"] = str(inst.right)
        instances.append(entry)
    good, total = report.counts
    return {
        "identity": report.identity_id,
        "ok": report.ok,
        "in_order": good,
        "total": total,
        "instances": instances,
    }


def _print_report_text(report: euler.IdentityReport) -> None:
    good, total = report.counts
    expected_fails = [i for i in report.instances if i.expected == euler.FAIL]
    if report.ok and expected_fails and all(i.expected == euler.FAIL for i in report.instances):
        print(f"{report.identity_id}: FAIL (expected) [{good}/{total} instances]")
    elif report.ok:
        print(f"{report.identity_id}: PASS [{good}/{total} instances]")
    else:
        print(f"{report.identity_id}: MISMATCH [{good}/{total} instances in order]")
    for inst in report.instances:
        if inst.expected == euler.FAIL and inst.ok:
            note = f" ({inst.note})" if inst.note else ""
            print(f"  params={inst.params}: FAIL (expected){note}")
        elif not inst.ok:
            print(f"  params={inst.params}: got {inst.verdict}, expected {inst.expected}")
            if inst.left is not None:
                print(f"    left  = {inst.left}")
                print(f"    right = {inst.right}")


def cmd_verify(args, parser) -> int:
    if args.n_max < 0:
        parser.error("--n-max must be >= 0")
    reports = _reports_for_suite(args.suite, args.n_max)
    all_ok = all(r.ok for r in reports)
    if args.json:
        meta = {"suite": args.suite, "n_max": args.n_max, "ok": all_ok}
        payload = [_report_payload(r) for r in reports]
        print(OutputRecord("report", meta, payload).serialize())
    else:
        for report in reports:
            _print_report_text(report)
        print(f"suite {args.suite}: {'OK' if all_ok else 'MISMATCH'}")
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# padic command
# ---------------------------------------------------------------------------

def _odd_prime_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if not is_odd_prime(value):
        raise argparse.ArgumentTypeError("p must be an odd prime")
    return value


def cmd_padic(args, parser) -> int:
    if args.n < 0:
        parser.error("--n must be >= 0")
    if args.N_max < 1:
        parser.error("--N-max must be >= 1")
    if args.K < 1:
        parser.error("--K must be >= 1")
    q = Fraction(1 + args.q_offset * args.p)
    try:
        qc = QChoice(args.p, q)
    except ValueError as exc:
        parser.error(str(exc))
    report = convergence_report(args.n, qc, args.K, range(1, args.N_max + 1))
    if args.json:
        meta = {
            "n": args.n,
            "p": args.p,
            "q": str(q),
            "q_offset": args.q_offset,
            "K": args.K,
            "N_max": args.N_max,
            "ok": report.ok,
        }
        payload = [
            {"N": r.N, "valuation": r.valuation, "exact": r.exact} for r in report.rows
        ]
        print(OutputRecord("convergence", meta, payload).serialize())
    else:
        print(f"moment n={args.n}, p={args.p}, q={q}, precision K={args.K}")
        for r in report.rows:
            tag = " (exact at this precision)" if r.exact else ""
            print(f"N={r.N}\tdefect valuation >= {r.valuation}{tag}")
        print(f"monotone growth: {'OK' if report.ok else 'VIOLATED'}")
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeuler",
        description="Exact q-Euler / Frobenius-Euler tables, identity verification, "
        "and p-adic convergence experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="print a sequence or polynomial table")
    p_table.add_argument("kind", choices=TABLE_KINDS)
    p_table.add_argument("--n-max", type=int, required=True)
    p_table.add_argument("--alpha", type=int, default=None,
                         help="integer weight >= 1 (kind 'weighted' only)")
    p_table.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="run an identity suite")
    p_verify.add_argument("--suite", choices=SUITES, default="all")
    p_verify.add_argument("--n-max", type=int, default=20)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_padic = sub.add_parser("padic", help="finite-level fermionic integral convergence")
    p_padic.add_argument("--n", type=int, required=True, help="moment index")
    p_padic.add_argument("--p", type=_odd_prime_arg, required=True)
    p_padic.add_argument("--q-offset", type=int, default=1, help="q = 1 + offset*p")
    p_padic.add_argument("--K", type=int, default=DEFAULT_PRECISION)
    p_padic.add_argument("--N-max", dest="N_max", type=int, default=6)
    p_padic.add_argument("--json", action="store_true")
    p_padic.set_defaults(func=cmd_padic)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
