"""Command-line entry point: ``blrings <command> ...``."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import logging
import re
import sys
from pathlib import Path

from .axioms import CSV_COLUMNS, classify
from .errors import BLRingError
from .harness import PROPOSITIONS, CorpusSpec, ProfileCache, SuiteConfig, generate_corpus, render_runs, run_theorem_suite
from .ideals import DEFAULT_IDEAL_CAP, enumerate_ideals
from .ring_core import DEFAULT_ORDER_CAP
from .ringspec import load_ring, read_corpus_file
from .spectrum import decompose, factor_label, is_spir_or_field
from .structure import check_subirr_structure


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _corpus(args) -> list:
    if getattr(args, "corpus", None):
        spec = CorpusSpec.from_specs(read_corpus_file(args.corpus), args.order_cap)
    else:
        spec = CorpusSpec(order_cap=args.order_cap)
    return generate_corpus(spec, args.ideal_cap)


def cmd_classify(args) -> int:
    R = load_ring(args.ring, args.order_cap)
    report = classify(R, args.ideal_cap)
    if args.format == "csv":
        sys.stdout.write(_csv_text([CSV_COLUMNS, report.csv_row()]))
    elif args.format == "records":
        sys.stdout.write(report.to_record())
    else:
        sys.stdout.write(report.to_record())
        for v in report.verdicts.values():
            sys.stdout.write(v.render() + "\n")
    return 0


def cmd_ideals(args) -> int:
    R = load_ring(args.ring, args.order_cap)
    sys.stdout.write(enumerate_ideals(R, args.ideal_cap).dump())
    return 0


def cmd_verify(args) -> int:
    corpus = _corpus(args)
    config = SuiteConfig(ideal_cap=args.ideal_cap, threads=args.threads)
    runs = run_theorem_suite(corpus, args.prop or None, config)
    if args.format == "csv":
        rows = [("prop", "status", "tested", "not_applicable", "failures")]
        rows += [(r.prop, "pass" if r.passed else "fail", len(r.rings), r.skipped, len(r.failures)) for r in runs]
        sys.stdout.write(_csv_text(rows))
    else:
        sys.stdout.write(f"corpus: {len(corpus)} rings\n")
        sys.stdout.write(render_runs(runs))
    return 0 if all(r.passed for r in runs) else 1


def _filename(index: int, label: str) -> str:
    return f"{index:04d}_{re.sub(r'[^A-Za-z0-9]+', '_', label).strip('_')}.txt"


def cmd_corpus(args) -> int:
    corpus = _corpus(args)
    cache = ProfileCache(args.ideal_cap)
    profiles = [cache.get(R) for R in corpus]
    if args.threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(args.threads) as pool:
            reports = list(pool.map(lambda P: P.report, profiles))
    else:
        reports = [P.report for P in profiles]
    rows = [CSV_COLUMNS]
    out = Path(args.emit) if args.emit else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    for i, (R, rep) in enumerate(zip(corpus, reports)):
        # a cached profile may carry the label of an equal-table twin
        rep = dataclasses.replace(rep, label=R.label)
        rows.append(rep.csv_row())
        if out is not None:
            (out / _filename(i, R.label)).write_text(rep.to_record(), encoding="utf-8")
    summary = _csv_text(rows)
    if out is not None:
        (out / "summary.csv").write_text(summary, encoding="utf-8")
        sys.stdout.write(f"wrote {len(corpus)} records and summary.csv to {out}\n")
    else:
        sys.stdout.write(summary)
    return 0


def cmd_decompose(args) -> int:
    R = load_ring(args.ring, args.order_cap)
    factors = decompose(R)
    lines = [f"ring: {R.label}", f"factors: {' x '.join(factor_label(S) for _, S in factors) or '(none)'}"]
    for e, S in factors:
        L = enumerate_ideals(S, args.ideal_cap)
        s = check_subirr_structure(S, L)
        lines.append(f"factor e={e}: {factor_label(S)} order={S.order} ideals={L.size} spir_or_field={str(is_spir_or_field(S, L)).lower()}")
        if s.applicable:
            lines.append(f"  mv_center: L{s.lukasiewicz_rank} dense={len(s.dense)} ordinal_sum_iso={str(s.ordinal_sum_iso).lower()} quotient_iso_mv={str(s.quotient_iso_mv).lower()}")
        else:
            lines.append(f"  ordinal-sum analysis: n/a ({s.note})")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP, help="largest ring order to build")
    common.add_argument("--ideal-cap", type=int, default=DEFAULT_IDEAL_CAP, help="largest ideal count to enumerate")
    common.add_argument("--threads", type=int, default=1, help="worker threads for corpus-level work")
    common.add_argument("--format", choices=("text", "csv", "records"), default="text")

    parser = argparse.ArgumentParser(prog="blrings", description="BL-ring checks on finite commutative rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classification report for one ring")
    p.add_argument("ring", help="ring spec such as Z12, nil2(2), Z4xZ3/(2) or a table file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ideals", parents=[common], help="dump the ideal lattice")
    p.add_argument("ring")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("verify", parents=[common], help="run theorem suites over a corpus")
    p.add_argument("--prop", action="append", choices=PROPOSITIONS, help="proposition id (repeatable); default all")
    p.add_argument("--corpus", help="file with one ring spec per line")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", parents=[common], help="classify a corpus and write reports")
    p.add_argument("--emit", help="directory for record files and summary.csv")
    p.add_argument("--corpus", help="file with one ring spec per line")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("decompose", parents=[common], help="local factors and ordinal-sum analysis")
    p.add_argument("ring")
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BLRingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
