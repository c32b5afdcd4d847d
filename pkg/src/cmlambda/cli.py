"""Command line interface.

Subcommands: table, theorem1, gold, scan-ordinary, sequences. Every one
supports --format text|json|csv. JSON output is one object per line with
field names drawn from the fixed vocabulary kind, d, p, lambda_gt_one,
count_mod_p2, agree, witnesses, status. Exit codes: 0 success (and
agreement where applicable), 1 mathematical disagreement, 2 usage or
precondition error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .ellcurve import (
    catalog_entry,
    j_invariant,
    scan_ordinary_prime,
    theorem1_check,
)
from .gold import gold_scan, gold_test
from .modmath import primes_up_to
from .quadfield import make_field, splits
from .sequences import equivalence_check

FIELD_ORDER = (
    "kind",
    "d",
    "p",
    "lambda_gt_one",
    "count_mod_p2",
    "agree",
    "witnesses",
    "status",
)

KIND_FIELDS = {
    "table_row": ("kind", "d", "p", "count_mod_p2", "status"),
    "theorem1": ("kind", "d", "p", "lambda_gt_one", "count_mod_p2", "agree",
                 "status"),
    "gold": ("kind", "d", "p", "lambda_gt_one"),
    "scan_ordinary": ("kind", "p", "witnesses"),
    "sequences": ("kind", "d", "p", "lambda_gt_one", "count_mod_p2", "agree"),
}

_BOOL_FIELDS = {"lambda_gt_one", "agree"}
_INT_FIELDS = {"d", "p", "count_mod_p2"}


@dataclass(frozen=True)
class OutputRecord:
    kind: str
    payload: dict

    def fields(self) -> tuple[str, ...]:
        return KIND_FIELDS[self.kind]


def _cell(value) -> str:
    """One CSV or text cell; lists of witness triples join as j:A:B;..."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ";".join(":".join(str(c) for c in w) for w in value)
    return str(value)


def _uncell(field: str, text: str):
    if field == "witnesses":
        if text == "":
            return []
        return [[int(c) for c in w.split(":")] for w in text.split(";")]
    if text == "":
        return None
    if field in _BOOL_FIELDS:
        return text == "true"
    if field in _INT_FIELDS:
        return int(text)
    return text


def render_records(records: list[OutputRecord], fmt: str) -> str:
    if fmt == "json":
        lines = []
        for r in records:
            obj = {"kind": r.kind}
            obj.update({f: r.payload.get(f) for f in r.fields()[1:]})
            lines.append(json.dumps(obj, separators=(",", ":")))
        return "\n".join(lines) + ("\n" if lines else "")
    if fmt == "csv":
        if not records:
            return ""
        fields = records[0].fields()
        if any(r.kind != records[0].kind for r in records):
            raise ValueError("csv output requires records of a single kind")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for r in records:
            writer.writerow(
                [r.kind] + [_cell(r.payload.get(f)) for f in fields[1:]]
            )
        return buf.getvalue()
    if fmt == "text":
        lines = []
        for r in records:
            parts = [r.kind]
            for f in r.fields()[1:]:
                value = r.payload.get(f)
                parts.append(f"{f}={_cell(value) if value is not None else '-'}")
            lines.append(" ".join(parts))
        return "\n".join(lines) + ("\n" if lines else "")
    raise ValueError(f"unknown format {fmt!r}")


def parse_records(text: str, fmt: str) -> list[OutputRecord]:
    """Inverse of render_records; parse(render(r)) == r for every format."""
    if fmt == "json":
        out = []
        for line in text.splitlines():
            obj = json.loads(line)
            kind = obj.pop("kind")
            out.append(OutputRecord(kind=kind, payload=obj))
        return out
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows:
            return []
        header = rows[0]
        out = []
        for row in rows[1:]:
            kind = row[0]
            payload = {
                f: _uncell(f, cell) for f, cell in zip(header[1:], row[1:])
            }
            out.append(OutputRecord(kind=kind, payload=payload))
        return out
    if fmt == "text":
        out = []
        for line in text.splitlines():
            tokens = line.split(" ")
            kind = tokens[0]
            payload = {}
            for token in tokens[1:]:
                f, _, cell = token.partition("=")
                # values never contain "-": it is reserved for None
                payload[f] = None if cell == "-" else _uncell(f, cell)
            out.append(OutputRecord(kind=kind, payload=payload))
        return out
    raise ValueError(f"unknown format {fmt!r}")


def _split_primes(field, p_max: int) -> list[int]:
    return [p for p in primes_up_to(p_max) if p > 3 and splits(field, p)]


def _witness_list(scan) -> list[list[int]]:
    return [[j_invariant(c), c.A, c.B] for c in scan.witnesses]


def records_table(d: int, p_max: int, catalog: str | None) -> list[OutputRecord]:
    entry = catalog_entry(d, catalog)
    field = make_field(d)
    records = []
    for p in _split_primes(field, p_max):
        if (4 * entry.A**3 + 27 * entry.B**2) % p == 0:
            payload = {"d": d, "p": p, "count_mod_p2": None,
                       "status": "skipped"}
        else:
            verdict = theorem1_check(field, entry, p)
            payload = {"d": d, "p": p,
                       "count_mod_p2": verdict.count_residue.value,
                       "status": "ok"}
        records.append(OutputRecord(kind="table_row", payload=payload))
    return records


def records_theorem1(
    d: int, p_max: int, catalog: str | None
) -> tuple[list[OutputRecord], bool]:
    entry = catalog_entry(d, catalog)
    field = make_field(d)
    records, all_agree = [], True
    for p in _split_primes(field, p_max):
        if (4 * entry.A**3 + 27 * entry.B**2) % p == 0:
            payload = {"d": d, "p": p, "lambda_gt_one": None,
                       "count_mod_p2": None, "agree": None,
                       "status": "skipped"}
        else:
            v = theorem1_check(field, entry, p)
            all_agree = all_agree and v.agree
            payload = {"d": d, "p": p, "lambda_gt_one": v.gold,
                       "count_mod_p2": v.count_residue.value,
                       "agree": v.agree, "status": "ok"}
        records.append(OutputRecord(kind="theorem1", payload=payload))
    return records, all_agree


def _gold_record(v) -> OutputRecord:
    return OutputRecord(
        kind="gold",
        payload={"d": v.d, "p": v.p, "lambda_gt_one": v.lambda_gt_one},
    )


def cmd_table(args, out) -> int:
    records = records_table(args.d, args.pmax, args.catalog)
    out.write(render_records(records, args.format))
    return 0


def cmd_theorem1(args, out) -> int:
    records, all_agree = records_theorem1(args.d, args.pmax, args.catalog)
    out.write(render_records(records, args.format))
    return 0 if all_agree else 1


def cmd_gold(args, out) -> int:
    field = make_field(args.d)
    if args.p is not None:
        records = [_gold_record(gold_test(field, args.p))]
    else:
        records = [_gold_record(v) for v in gold_scan(field, args.pmax)]
    out.write(render_records(records, args.format))
    return 0


def cmd_scan_ordinary(args, out) -> int:
    scan = scan_ordinary_prime(args.p, cap=args.cap)
    record = OutputRecord(
        kind="scan_ordinary",
        payload={"p": scan.p, "witnesses": _witness_list(scan)},
    )
    out.write(render_records([record], args.format))
    return 0


def cmd_sequences(args, out) -> int:
    verdict = equivalence_check(args.p, args.m)
    record = OutputRecord(
        kind="sequences",
        payload={
            "d": 3 if args.m == 3 else 1,
            "p": verdict.p,
            "lambda_gt_one": verdict.product_is_one,
            "count_mod_p2": verdict.curve_residue.value,
            "agree": verdict.agree,
        },
    )
    out.write(render_records([record], args.format))
    return 0 if verdict.agree else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmlambda",
        description="lambda_p > 1 tests for imaginary quadratic fields: "
        "unit powers mod p**2 cross-checked against CM point counts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, catalog=False):
        sp.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
        if catalog:
            sp.add_argument("--catalog", default=None,
                            help="path overriding the bundled CM model table")

    sp = sub.add_parser("table", help="count_mod_p2 residues at split primes")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--pmax", type=int, default=70)
    common(sp, catalog=True)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser(
        "theorem1",
        help="agreement of the unit-power and point-count verdicts",
    )
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--pmax", type=int, default=70)
    common(sp, catalog=True)
    sp.set_defaults(func=cmd_theorem1)

    sp = sub.add_parser("gold", help="unit-power verdict only")
    sp.add_argument("--d", type=int, required=True)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=int)
    group.add_argument("--pmax", type=int)
    common(sp)
    sp.set_defaults(func=cmd_gold)

    sp = sub.add_parser(
        "scan-ordinary",
        help="ordinary j-invariants with count = 0 mod p**2",
    )
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--cap", type=int, default=100)
    common(sp)
    sp.set_defaults(func=cmd_scan_ordinary)

    sp = sub.add_parser(
        "sequences",
        help="product criterion vs special sequence vs curve count",
    )
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, choices=(3, 4), required=True)
    common(sp)
    sp.set_defaults(func=cmd_sequences)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except (ValueError, KeyError) as exc:
        # str(KeyError) wraps the message in quotes, so unwrap args
        msg = exc.args[0] if exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
