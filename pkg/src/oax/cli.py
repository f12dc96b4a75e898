"""``oax`` command line.

Exit codes: 0 success / Compatible / Confirmed / Yes, 1 Conflict / Refuted /
No / findings, 2 usage, parse or environment error, 3 Unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .bench import (
    PROVERS,
    concordance_report,
    load_manifest,
    resolve_prover,
    run_suite,
    suite_summary,
    write_suite,
)
from .composition import CompositionResult, load_labeled_verdicts
from .config import Config, load_config
from .encoding import Relation, emit_axiom_files, emit_smt, emit_tptp, problem_for_pair
from .errors import ConfigError, NotSubmittableError, OaxError, PolicyParseError, ProverNotFoundError
from .evaluation import evaluate_conflict, evaluate_request, evaluate_subsumption
from .fileio import atomic_write
from .model import compact_iri, expand_iri, parse_context, parse_policy
from .quality import Severity, check_refinement, lint, validate
from .interval import Interval
from .verdict import BoxResult, SubsumptionVerdict, Verdict3

EXIT_VERDICT = {
    Verdict3.COMPATIBLE: 0,
    Verdict3.CONFLICT: 1,
    Verdict3.UNKNOWN: 3,
    SubsumptionVerdict.CONFIRMED: 0,
    SubsumptionVerdict.REFUTED: 1,
    SubsumptionVerdict.UNKNOWN: 3,
}


class UsageError(OaxError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _policy(path: str):
    try:
        return parse_policy(_read(path))
    except PolicyParseError as exc:
        raise PolicyParseError(f"{path}: {exc}") from None


def _emit(args, data: dict, text: str) -> None:
    if args.format == "json":
        out = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    else:
        out = text if text.endswith("\n") else text + "\n"
    if getattr(args, "output", None):
        atomic_write(args.output, out)
    else:
        sys.stdout.write(out)


# -- text renderers -----------------------------------------------------------------

def _axes_table(axes: dict, right_label: str = "right") -> List[str]:
    if not axes:
        return []
    width = max(len(k) for k in axes) + 2
    lines = [f"  {'axis':<{width}}{'left':<18}{right_label:<18}{'intersection':<18}verdict"]
    for name, d in axes.items():
        lines.append(f"  {name:<{width}}{d['left']:<18}{d['right']:<18}{d['intersection']:<18}{d['verdict']}")
    return lines


def _conflict_text(report) -> str:
    d = report.to_dict()
    lines = [f"verdict: {d['verdict']}"]
    for pair in d["pairs"]:
        lines.append(f"pair {pair['left']} x {pair['right']} ({pair['action']}, {pair['connective']}): {pair['verdict']}")
        dim = pair.get("dimensional")
        if dim and "axes" in dim:
            lines += _axes_table(dim["axes"])
        elif dim:
            lines.append(f"  branch matrix: {dim['pairs']} -> {dim['verdict']}")
        for op in pair["operands"]:
            if op["source"] != "dimensional":
                note = f" ({op['note']})" if op["note"] else ""
                lines.append(f"  {op['source']:<11} {op['operand']}: {op['verdict']}{note}")
    for dd in d["deontic"]:
        lines.append(f"deontic {dd['permission']} vs {dd['prohibition']}: {dd['verdict']}")
    if d["sole_conflicting_axis"]:
        lines.append(f"{d['sole_conflicting_axis']} is the sole conflicting axis")
    elif d["conflicting_axes"]:
        lines.append("conflicting axes: " + ", ".join(d["conflicting_axes"]))
    return "\n".join(lines)


def _subsume_text(d: dict, title: str) -> str:
    lines = [f"{title}: {d['verdict']}"]
    for pair in d["pairs"]:
        lines.append(f"pair {pair['left']} within {pair['right']}: {pair['verdict']}")
        lines += _axes_table(pair["axes"])
    for u in d.get("unmatched", []):
        lines.append(f"unmatched: {u}")
    for f in d.get("findings", []):
        lines.append(f"{f['severity']:<7} {f['kind']} {f['location']}: {f['message']}")
    return "\n".join(lines)


def _request_text(d: dict) -> str:
    lines = [f"satisfied: {d['satisfied']}"]
    for rule in d["rules"]:
        lines.append(f"rule {rule['rule']} ({rule['connective']}): {rule['satisfied']}")
        for name, a in rule["axes"].items():
            mark = "ok" if a["ok"] else "VIOLATED"
            note = f"  {a['note']}" if a["note"] else ""
            lines.append(f"  {name:<36}{a['interval']:<18}{str(a['value']):<10}{mark}{note}")
    if d["unevaluated"]:
        lines.append("not evaluated (no axis semantics): " + ", ".join(d["unevaluated"]))
    return "\n".join(lines)


def _findings_text(findings) -> str:
    if not findings:
        return "no findings"
    return "\n".join(str(f) for f in findings)


# -- commands -------------------------------------------------------------------------

def cmd_validate(args, cfg: Config) -> int:
    try:
        policy = _policy(args.policy)
    except OaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    findings = validate(policy, cfg.profile())
    _emit(args, {"findings": [f.to_dict() for f in findings]}, _findings_text(findings))
    return 1 if findings else 0


def cmd_lint(args, cfg: Config) -> int:
    findings = lint(_policy(args.policy), cfg.profile())
    _emit(args, {"findings": [f.to_dict() for f in findings]}, _findings_text(findings))
    return 1 if any(f.severity is not Severity.INFO for f in findings) else 0


def cmd_conflict(args, cfg: Config) -> int:
    p1, p2 = _policy(args.left), _policy(args.right)
    external = load_labeled_verdicts(_read(args.external)) if args.external else ()
    report = evaluate_conflict(p1, p2, cfg.profile(), external, full_axes=args.axes == "full")
    if args.plot:
        _plot_conflict(report, args.plot)
    _emit(args, report.to_dict(), _conflict_text(report))
    return EXIT_VERDICT[report.verdict]


def _tail(label: str) -> str:
    return label.rstrip("/").rsplit("/", 1)[-1]


def _plot_conflict(report, path) -> None:
    from .figures import box_figure

    pair = next((p for p in report.pairs if p.dimensional is not None), None)
    if pair is None:
        raise UsageError("--plot: no dimensional comparison to draw")
    dim = pair.dimensional
    if isinstance(dim, BoxResult):
        cells = [(dim, "left", "right")]
    elif isinstance(dim, CompositionResult):
        rows = dim.matrix.rows
        cells = [(rows[i][0], f"left {i + 1}", None) for i in range(len(rows))]
        cells += [(rows[0][j], None, f"right {j + 1}") for j in range(len(rows[0]))]
    else:
        raise UsageError("--plot: unsupported comparison")
    details = list(cells[0][0].axes.values())
    if not details:
        raise UsageError("--plot: no axes to draw")
    xa = details[0]
    ya = details[1] if len(details) > 1 else None
    boxes = []
    for res, left, right in cells:
        dx = res.axes[xa.operand.iri]
        dy = res.axes[ya.operand.iri] if ya else None
        unit = Interval.closed(0, 1)
        if left:
            boxes.append((left, dx.left, dy.left if dy else unit))
        if right:
            boxes.append((right, dx.right, dy.right if dy else unit))
    box_figure(
        boxes,
        path,
        xlabel=xa.operand.short,
        ylabel=ya.operand.short if ya else "",
        title=f"{_tail(pair.left)} vs {_tail(pair.right)}: {report.verdict.value}",
    )


def cmd_subsume(args, cfg: Config) -> int:
    report = evaluate_subsumption(_policy(args.narrow), _policy(args.wide), cfg.profile())
    d = report.to_dict()
    _emit(args, d, _subsume_text(d, "subsumption"))
    return EXIT_VERDICT[report.verdict]


def cmd_refine(args, cfg: Config) -> int:
    result = check_refinement(_policy(args.upstream), _policy(args.downstream), cfg.profile())
    d = result.to_dict()
    _emit(args, d, _subsume_text(d, "refinement"))
    return EXIT_VERDICT[result.verdict]


def cmd_request(args, cfg: Config) -> int:
    profile = cfg.profile()
    policy = _policy(args.policy)
    text = args.context
    if text == "-" or (text.strip() and Path(text).is_file()):
        text = _read(text)
    context = parse_context(text, profile)
    action = expand_iri(args.action) if args.action else None
    report = evaluate_request(policy, context, profile, action)
    d = report.to_dict()
    if context.outside_domain:
        d["outside_domain"] = sorted(compact_iri(i) for i in context.outside_domain)
    _emit(args, d, _request_text(d))
    return report.exit_code


def cmd_emit(args, cfg: Config) -> int:
    relation = Relation.SUBSUMPTION if args.relation == "subsume" else Relation.CONFLICT
    try:
        problem = problem_for_pair(_policy(args.left), _policy(args.right), relation, cfg.profile(),
                                   args.pair, args.id)
    except NotSubmittableError as exc:
        print(f"not submitted: {exc}", file=sys.stderr)
        return 3
    text = emit_tptp(problem) if args.encoding == "tptp" else emit_smt(problem)
    if args.output:
        atomic_write(args.output, text)
        if args.encoding == "tptp" and args.axioms:
            for name, body in emit_axiom_files().items():
                atomic_write(Path(args.axioms) / name, body)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args, cfg: Config) -> int:
    if args.action == "generate":
        manifest = write_suite(args.dir)
        data = {"dir": str(args.dir), "total": len(manifest.problems), "counts": manifest.counts,
                "version": manifest.version}
        _emit(args, data, suite_summary(manifest) + f"written to {args.dir}")
        return 0
    root = Path(args.dir)
    if not (root / "manifest.json").is_file():
        print(f"error: {root}/manifest.json not found; run 'oax bench generate' first", file=sys.stderr)
        return 2
    requested = [p.strip() for p in args.provers.split(",")] if args.provers else list(PROVERS)
    unknown = set(requested) - set(PROVERS)
    if unknown:
        raise UsageError(f"unknown prover(s): {sorted(unknown)}")
    explicit = {"vampire": args.vampire, "z3": args.z3}
    executables = {}
    for kind in requested:
        try:
            executables[kind] = resolve_prover(kind, explicit[kind], cfg.provers)
        except ProverNotFoundError as exc:
            if args.provers or explicit[kind]:
                print(f"error: {exc}", file=sys.stderr)
                return 2
            print(f"note: {exc}; its column is skipped", file=sys.stderr)
    timeout = args.timeout if args.timeout is not None else cfg.timeout
    jobs = args.jobs if args.jobs is not None else cfg.jobs
    results = run_suite(root, executables, timeout=timeout, jobs=jobs)
    report = concordance_report(load_manifest(root), results, list(executables))
    if args.report:
        _write_bench_report(report, results, Path(args.report))
    # wall times stay in the report files so stdout JSON is reproducible
    _emit(args, report.to_dict(), report.to_text())
    return report.exit_code


def _write_bench_report(report, results, out: Path) -> None:
    from .figures import concordance_figure

    data = report.to_dict()
    data["results"] = [r.to_dict() for r in results]
    atomic_write(out / "concordance.json", json.dumps(data, indent=2) + "\n")
    atomic_write(out / "concordance.txt", report.to_text())
    atomic_write(out / "concordance.csv", report.to_csv())
    ran = ", ".join(report.provers) or "no external prover"
    concordance_figure(report.by_category(), out / "concordance.png",
                       title=f"{report.matched}/{report.total} concordant ({ran})")


def cmd_profile(args, cfg: Config) -> int:
    rows = cfg.profile().dump()
    lines = [f"{'operand':<40}{'base':<30}{'axis':<11}{'domain':<14}density"]
    for r in rows:
        lines.append(f"{r['iri']:<40}{r['base']:<30}{r['axis']:<11}{r['domain']:<14}{r['density']}")
    _emit(args, {"operands": rows}, "\n".join(lines))
    return 0


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="oax.toml path (default: ./oax.toml if present)")
    common.add_argument("--discrete", help="comma-separated operands to treat as integer-valued")
    formats = argparse.ArgumentParser(add_help=False)
    formats.add_argument("--format", choices=("json", "text"), help="output format (default from config: text)")
    formats.add_argument("-o", "--output", help="write the report to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="oax", description="ODRL spatial axis reasoning")
    parser.add_argument("--version", action="version", version=f"oax {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common, formats], help="bound validation and ambiguity lint")
    p.add_argument("policy")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("lint", parents=[common, formats], help="all design-time lints")
    p.add_argument("policy")
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("conflict", parents=[common, formats], help="box and cross-domain verdicts")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--external", help="JSON list of operand verdicts from other reasoners")
    p.add_argument("--axes", choices=("targeted", "full"), default="targeted",
                   help="axis set: axes either side targets (default) or their whole families")
    p.add_argument("--plot", help="draw the first two axes of the first pair to this PNG")
    p.set_defaults(func=cmd_conflict)

    p = sub.add_parser("subsume", parents=[common, formats], help="does NARROW lie inside WIDE")
    p.add_argument("narrow")
    p.add_argument("wide")
    p.set_defaults(func=cmd_subsume)

    p = sub.add_parser("refine", parents=[common, formats], help="supply-chain refinement check")
    p.add_argument("upstream")
    p.add_argument("downstream")
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("request", parents=[common, formats], help="request satisfaction")
    p.add_argument("policy")
    p.add_argument("context", help="'width=1200,height=400', a JSON object, or a file holding either")
    p.add_argument("--action", help="only rules with this action")
    p.set_defaults(func=cmd_request)

    p = sub.add_parser("emit", parents=[common], help="TPTP or SMT-LIB problem for a rule pair")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--format", dest="encoding", choices=("tptp", "smt"), default="tptp")
    p.add_argument("--relation", choices=("conflict", "subsume"), default="conflict")
    p.add_argument("--pair", type=int, default=0, help="index of the same-action rule pair")
    p.add_argument("--id", help="problem id (default derived from the policy uids)")
    p.add_argument("-o", "--output")
    p.add_argument("--axioms", help="also write the two axiom files into this directory")
    p.set_defaults(func=cmd_emit, format="text")

    p = sub.add_parser("bench", parents=[common, formats], help="benchmark suite")
    p.add_argument("action", choices=("generate", "run"))
    p.add_argument("--dir", default="bench", help="suite directory (default: bench)")
    p.add_argument("--provers", help="comma-separated subset of vampire,z3 (default: whatever is installed)")
    p.add_argument("--vampire", help="Vampire executable")
    p.add_argument("--z3", help="z3 executable")
    p.add_argument("--timeout", type=float, help="seconds per problem (default 10)")
    p.add_argument("--jobs", type=int, help="parallel prover processes (default 4)")
    p.add_argument("--report", help="directory for concordance.{json,txt,csv,png}")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("profile", parents=[common, formats], help="the axis operand registry")
    p.add_argument("--dump", action="store_true", help="print every operand (the default)")
    p.set_defaults(func=cmd_profile)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        discrete = tuple(d.strip() for d in args.discrete.split(",") if d.strip()) if args.discrete else None
        cfg = cfg.override(discrete=discrete, format=getattr(args, "format", None))
        args.format = cfg.format
        return args.func(args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
