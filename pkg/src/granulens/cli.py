"""Command-line surface: granulens <subcommand> over the library.

Exit codes: 0 success, 1 usage error, 2 data/file error. Human-readable
summaries go to stdout; machine output is written only to --out/--svg
paths, atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import GranulensError
from .table import load_table, discretize, partition_by, GranulationScheme
from .rough import approximate, regions, ConceptSet
from .entropy import granular_entropy
from .sweep import sweep, convergence_summary
from .reduction import greedy_reduct, entropy_rank
from .harness import load_run, evaluate_run, compare_runs
from .curvefile import write_curve, write_atomic, fmt
from .svg import emit_svg


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _r9(x) -> float:
    return float(f"{float(x):.9f}")


def _attrs_list(text: str) -> list[str]:
    return [a for a in (s.strip() for s in text.split(",")) if a]


def _bits_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    b = int(text)
    return b, b


def _default_threads() -> int:
    env = os.environ.get("GRANULENS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def build_parser() -> _Parser:
    parser = _Parser(prog="granulens",
                     description="Granular entropy / rough-set data and model evaluation")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def table_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("table", help="input CSV (header row; empty or '?' = missing)")
        p.add_argument("--decision", required=True, help="decision column name")
        return p

    p = table_cmd("inspect", "summarize a table's attributes and decision classes")
    p.add_argument("--out", help="write JSON report to this path")
    p.set_defaults(func=cmd_inspect)

    p = table_cmd("rough", "lower/upper/boundary approximation report")
    p.add_argument("--attrs", required=True, help="comma-separated attribute subset")
    p.add_argument("--bits", type=int, default=0, help="bits for numeric attributes")
    p.add_argument("--class", dest="cls", help="single decision class to approximate")
    p.add_argument("--out", help="write JSON report to this path")
    p.set_defaults(func=cmd_rough)

    p = table_cmd("entropy", "granule-wise entropy report for one partition")
    p.add_argument("--attrs", required=True)
    p.add_argument("--bits", type=int, default=0)
    p.add_argument("--out", help="write JSON report to this path")
    p.set_defaults(func=cmd_entropy)

    p = table_cmd("sweep", "entropy/boundary curve over a bits range")
    p.add_argument("--attrs", required=True)
    p.add_argument("--bits", required=True, help="range A..B (or single level)")
    p.add_argument("--out", help="write curve CSV (or JSON with --format json)")
    p.add_argument("--svg", help="write an SVG chart of the curve")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--threads", type=int, default=None,
                   help="worker pool size (default: GRANULENS_THREADS or CPU count)")
    p.set_defaults(func=cmd_sweep)

    p = table_cmd("reduce", "greedy attribute reduct and information-gain ranking")
    p.add_argument("--bits", type=int, required=True,
                   help="bits level fixing the discrete view reduction runs on")
    p.add_argument("--out", help="write JSON report to this path")
    p.set_defaults(func=cmd_reduce)

    p = table_cmd("evaluate", "evaluate one model-run CSV against the table")
    p.add_argument("run", help="run CSV: object_index,predicted[,granule]")
    p.add_argument("--out", help="write JSON report to this path")
    p.set_defaults(func=cmd_evaluate)

    p = table_cmd("compare", "rank model runs: accuracy band, then granular metrics")
    p.add_argument("runs", nargs="+", help="run CSV files")
    p.add_argument("--tolerance", type=float, default=0.005,
                   help="accuracy band below the best run (default 0.005)")
    p.add_argument("--rank-by", choices=["boundary-first", "entropy-first"],
                   default="boundary-first",
                   help="metric order inside the band (default boundary-first)")
    p.add_argument("--out", help="write JSON verdict to this path")
    p.set_defaults(func=cmd_compare)
    return parser


def _load(args):
    path = Path(args.table)
    return load_table(path.read_bytes(), args.decision, table_id=path.name)


def _emit_json(args, payload) -> None:
    if getattr(args, "out", None):
        write_atomic(args.out, json.dumps(payload, indent=2) + "\n")


def cmd_inspect(args) -> int:
    table = _load(args)
    classes = sorted(set(table.decision_labels), key=str)
    print(f"{table.table_id or args.table}: n={table.n}, "
          f"{len(table.condition_attributes)} condition attributes, "
          f"decision {table.decision!r} with {len(classes)} classes")
    payload_attrs = []
    for a in table.attributes:
        line = f"  {a.name}: {a.kind}"
        if a.observed_range is not None:
            line += f" range [{a.observed_range[0]:g}, {a.observed_range[1]:g}]"
        if a.name == table.decision:
            line += " (decision)"
        print(line)
        payload_attrs.append({"name": a.name, "kind": a.kind,
                              "observed_range": list(a.observed_range) if a.observed_range else None})
    _emit_json(args, {"table_id": table.table_id, "n": table.n,
                      "decision": table.decision,
                      "classes": [str(c) for c in classes],
                      "attributes": payload_attrs})
    return 0


def _partition_for(args, table):
    attrs = _attrs_list(args.attrs)
    scheme = GranulationScheme.uniform(table, args.bits, attrs=attrs or None)
    return attrs, partition_by(discretize(table, scheme), attrs)


def _approx_payload(a):
    return {"lower": sorted(a.lower), "upper": sorted(a.upper),
            "boundary": sorted(a.boundary), "accuracy_alpha": _r9(a.accuracy_alpha)}


def cmd_rough(args) -> int:
    table = _load(args)
    attrs, part = _partition_for(args, table)
    labels = table.decision_labels
    if args.cls is not None:
        members = frozenset(i for i, v in enumerate(labels) if str(v) == args.cls)
        approx = approximate(part, ConceptSet(members, table.n, label=args.cls))
        print(f"class {args.cls!r} under attrs={','.join(attrs) or '(none)'} "
              f"bits={args.bits}: |lower|={len(approx.lower)} "
              f"|upper|={len(approx.upper)} |boundary|={len(approx.boundary)} "
              f"alpha={fmt(float(approx.accuracy_alpha))}")
        print(f"  lower={sorted(approx.lower)}")
        print(f"  boundary={sorted(approx.boundary)}")
        _emit_json(args, {"class": args.cls, **_approx_payload(approx)})
    else:
        rep = regions(part, labels)
        print(f"regions under attrs={','.join(attrs) or '(none)'} bits={args.bits}: "
              f"gamma={fmt(float(rep.gamma))} "
              f"boundary_fraction={fmt(float(rep.boundary_fraction))}")
        for cls, approx in rep.per_class.items():
            print(f"  class {cls!r}: |lower|={len(approx.lower)} "
                  f"|boundary|={len(approx.boundary)} "
                  f"alpha={fmt(float(approx.accuracy_alpha))}")
        _emit_json(args, {
            "per_class": {str(c): _approx_payload(a) for c, a in rep.per_class.items()},
            "positive": sorted(rep.positive),
            "boundary_overall": sorted(rep.boundary_overall),
            "negative_by_class": {str(c): sorted(s) for c, s in rep.negative_by_class.items()},
            "gamma": _r9(rep.gamma),
            "boundary_fraction": _r9(rep.boundary_fraction)})
    return 0


def cmd_entropy(args) -> int:
    table = _load(args)
    attrs, part = _partition_for(args, table)
    rep = granular_entropy(part, table.decision_labels)
    print(f"granular entropy under attrs={','.join(attrs) or '(none)'} "
          f"bits={args.bits}: blocks={part.block_count} "
          f"conditional_bits={fmt(rep.conditional_bits)} "
          f"boundary_fraction={fmt(float(rep.boundary_fraction))} "
          f"normalized={fmt(rep.normalized_conditional)}")
    _emit_json(args, {
        "per_block": [[b, _r9(w), _r9(h)] for b, w, h in rep.per_block],
        "conditional_bits": _r9(rep.conditional_bits),
        "boundary_fraction": _r9(rep.boundary_fraction),
        "class_count": rep.class_count,
        "normalized_conditional": _r9(rep.normalized_conditional)})
    return 0


def cmd_sweep(args) -> int:
    table = _load(args)
    attrs = _attrs_list(args.attrs)
    lo, hi = _bits_range(args.bits)
    threads = args.threads if args.threads is not None else _default_threads()
    curve = sweep(table, attrs, lo, hi, threads=threads)
    summary = convergence_summary(curve)
    print(f"sweep attrs={','.join(attrs) or '(none)'} bits {lo}..{hi}: "
          f"{len(curve.points)} points"
          + (" (saturated early)" if curve.saturated else ""))
    for p in curve.points:
        print(f"  b={p.bits_level}: blocks={p.block_count} "
              f"H={fmt(p.conditional_bits)} BF={fmt(p.boundary_fraction)}")
    print(f"  violations={summary.monotonicity_violations} "
          f"terminal H={fmt(summary.terminal_entropy)} "
          f"terminal BF={fmt(summary.terminal_boundary)}")
    if args.out:
        if args.format == "json":
            payload = [{"bits_level": p.bits_level, "block_count": p.block_count,
                        "conditional_bits": _r9(p.conditional_bits),
                        "normalized_conditional": _r9(p.normalized_conditional),
                        "boundary_fraction": _r9(p.boundary_fraction),
                        "gamma": _r9(p.gamma)} for p in curve.points]
            write_atomic(args.out, json.dumps(payload, indent=2) + "\n")
        else:
            write_curve(curve, args.out)
    if args.svg:
        emit_svg(curve, args.svg)
    return 0


def cmd_reduce(args) -> int:
    table = _load(args)
    view = discretize(table, GranulationScheme.uniform(table, args.bits))
    result = greedy_reduct(view, table.decision_labels)
    ranking = entropy_rank(view, table.decision_labels)
    print(f"reduct at bits={args.bits}: selected={result.selected} "
          f"gamma={fmt(float(result.gamma_selected))} "
          f"(full {fmt(float(result.gamma_full))})")
    for step in result.trace:
        print(f"  + {step.attribute}: gamma={fmt(float(step.gamma_after))} "
              f"H(D|P)={fmt(step.conditional_bits_after)}")
    print("information gain ranking:")
    for name, gain in ranking:
        print(f"  {name}: {fmt(gain)}")
    _emit_json(args, {
        "selected": result.selected,
        "gamma_selected": _r9(result.gamma_selected),
        "gamma_full": _r9(result.gamma_full),
        "trace": [{"attribute": s.attribute, "gamma_after": _r9(s.gamma_after),
                   "conditional_bits_after": _r9(s.conditional_bits_after)}
                  for s in result.trace],
        "entropy_rank": [[name, _r9(gain)] for name, gain in ranking]})
    return 0


def _eval_payload(rep):
    return {"run_id": rep.run_id, "accuracy": _r9(rep.accuracy),
            "model_conditional_bits": _r9(rep.model_conditional_bits),
            "model_boundary_fraction": _r9(rep.model_boundary_fraction),
            "model_gamma": _r9(rep.model_gamma),
            "block_count": rep.block_count,
            "used_fallback_partition": rep.used_fallback_partition}


def _evaluate_file(table, path: str):
    p = Path(path)
    run = load_run(p.read_bytes(), table, run_id=p.stem)
    return evaluate_run(table, run)


def cmd_evaluate(args) -> int:
    table = _load(args)
    rep = _evaluate_file(table, args.run)
    print(f"run {rep.run_id}: accuracy={fmt(rep.accuracy)} "
          f"H(D|model)={fmt(rep.model_conditional_bits)} "
          f"BF={fmt(rep.model_boundary_fraction)} gamma={fmt(rep.model_gamma)} "
          f"blocks={rep.block_count}"
          + (" (fallback: predicted-label partition)"
             if rep.used_fallback_partition else ""))
    _emit_json(args, _eval_payload(rep))
    return 0


def cmd_compare(args) -> int:
    table = _load(args)
    reports = [_evaluate_file(table, path) for path in args.runs]
    verdict = compare_runs(reports, tolerance=args.tolerance, rank_by=args.rank_by)
    print(f"selected: {verdict.selected} (tolerance {verdict.tolerance_used})")
    for r in verdict.ranked:
        band = "in band" if r.candidate else "outside band"
        print(f"  {r.run_id}: acc={fmt(r.accuracy)} BF={fmt(r.boundary_fraction)} "
              f"H={fmt(r.conditional_bits)} blocks={r.block_count} ({band})")
    _emit_json(args, {
        "selected": verdict.selected,
        "tolerance_used": verdict.tolerance_used,
        "ranked": [{"run_id": r.run_id, "accuracy": _r9(r.accuracy),
                    "boundary_fraction": _r9(r.boundary_fraction),
                    "conditional_bits": _r9(r.conditional_bits),
                    "block_count": r.block_count,
                    "candidate": r.candidate} for r in verdict.ranked]})
    return 0


def run_cli(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GranulensError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
