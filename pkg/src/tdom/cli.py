"""Command-line front door: validate, segment, cluster, project, graph,
bend, dataset export, and a combined report.

Exit status: 0 success, 1 validation errors or failed analysis on valid
input, 2 usage error, 3 input I/O or parse failure. All output is
deterministic for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

from .baselines import has_deformable_contact, to_bullock, to_paulius
from .clustering import (
    cluster,
    dataset_styles,
    emit_dot,
    load_palette,
    stats_table,
)
from .codes import Dataset, mask_deformation
from .corpus import CANONICAL_TEXT
from .diagnostics import Severity, format_diagnostic
from .geometry import (
    BucketMap,
    DEFAULT_BUCKETS,
    DegenerateProjectionError,
    assess_1d,
    assess_2d,
    parse_cloth_state,
    parse_polyline,
)
from .lang import DatasetParseError, parse_dataset
from .rules import validate
from .segmentation import TaxonomyView, lane_report

ALL_VIEWS = tuple(TaxonomyView)
PALETTE_ENV = "TDOM_PALETTE"


class _Failure(Exception):
    """Carries an exit code and the stderr lines explaining it."""

    def __init__(self, code: int, *lines: str) -> None:
        super().__init__(lines[0] if lines else "")
        self.code = code
        self.lines = lines


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Failure(3, f"cannot read {path}: {exc}") from exc


def _load_dataset(path: str) -> Dataset:
    text = _read_text(path)
    try:
        return parse_dataset(text)
    except DatasetParseError as exc:
        lines = [f"{path}: parse failed"]
        lines.extend(format_diagnostic(d) for d in exc.diagnostics)
        raise _Failure(3, *lines) from exc


def _gate(dataset: Dataset) -> None:
    """Refuse analysis on datasets with rule errors."""
    errors = [d for d in validate(dataset) if d.severity is Severity.ERROR]
    if errors:
        lines = ["dataset has rule errors; fix them before analysis:"]
        lines.extend(format_diagnostic(d) for d in errors)
        raise _Failure(1, *lines)


def _write_output(text: str, out_path) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out_path:
        try:
            Path(out_path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise _Failure(3, f"cannot write {out_path}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _parse_views(arg: str):
    views = []
    for token in arg.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            views.append(TaxonomyView.parse(token))
        except ValueError as exc:
            raise _Failure(2, str(exc)) from exc
    if not views:
        raise _Failure(2, "no views given")
    return tuple(views)


def _masked(dataset: Dataset) -> Dataset:
    tasks = []
    for task in dataset.tasks:
        actions = tuple(
            dataclasses.replace(action, code=mask_deformation(action.code))
            for action in task.actions
        )
        tasks.append(dataclasses.replace(task, actions=actions))
    return dataclasses.replace(dataset, tasks=tuple(tasks))


def _cmd_validate(args) -> int:
    dataset = _load_dataset(args.file)
    diagnostics = validate(dataset)
    for diag in diagnostics:
        print(format_diagnostic(diag))
    errors = sum(1 for d in diagnostics if d.severity is Severity.ERROR)
    warnings = len(diagnostics) - errors
    if errors:
        print(f"{errors} error(s), {warnings} warning(s)")
        return 1
    print(
        f"ok: {len(dataset.tasks)} task(s), {dataset.action_count} action(s), "
        f"{warnings} warning(s)"
    )
    return 0


def _cmd_segment(args) -> int:
    dataset = _load_dataset(args.file)
    _gate(dataset)
    views = _parse_views(args.views)
    if args.task:
        try:
            tasks = [dataset.task(args.task)]
        except KeyError:
            raise _Failure(1, f"no task with id {args.task!r}") from None
    else:
        tasks = list(dataset.tasks)
    chunks = [lane_report(task, views) for task in tasks]
    _write_output("\n\n".join(chunks), args.output)
    return 0


def _multi_member_listing(report) -> str:
    lines = []
    multi = [c for c in report.clusters if c.size > 1]
    lines.append(f"multi-member clusters: {len(multi)}")
    for entry in multi:
        lines.append("  " + " ".join(entry.members))
        lines.append("    code: " + entry.code)
    return "\n".join(lines)


def _resolve_palette(palette_path):
    if palette_path is None:
        palette_path = os.environ.get(PALETTE_ENV) or None
    if palette_path is None:
        return None
    text = _read_text(palette_path)
    try:
        return load_palette(text)
    except ValueError as exc:
        raise _Failure(3, f"malformed palette {palette_path}: {exc}") from exc


def _require_explicit_sink(args, what: str) -> None:
    if not args.output and not args.stdout:
        raise _Failure(2, f"{what} needs -o <path> or --stdout")


def _cmd_cluster(args) -> int:
    dataset = _load_dataset(args.file)
    _gate(dataset)
    try:
        view = TaxonomyView.parse(args.view)
    except ValueError as exc:
        raise _Failure(2, str(exc)) from exc
    if args.mask_deformation:
        dataset = _masked(dataset)
    report = cluster(dataset, view)
    if args.format == "dot":
        _require_explicit_sink(args, "DOT output")
        styles = dataset_styles(dataset)
        text = emit_dot(report, styles, palette=_resolve_palette(args.palette))
    elif args.format == "csv":
        text = stats_table([report], fmt="csv")
    else:
        text = stats_table([report]) + "\n\n" + _multi_member_listing(report)
    _write_output(text, args.output)
    return 0


_PROJECTED_VIEWS = ("bullock", "paulius-cluster", "paulius-segment")


def _cmd_project(args) -> int:
    dataset = _load_dataset(args.file)
    _gate(dataset)
    view = TaxonomyView.parse(args.view)
    width = max(len(a.id) for _t, a in dataset.iter_actions()) + 2
    lines = []
    for task in dataset.tasks:
        flag = has_deformable_contact(task)
        for action in task.actions:
            if view is TaxonomyView.BULLOCK:
                code = str(to_bullock(action.code))
            elif view is TaxonomyView.PAULIUS_CLUSTER:
                code = to_paulius(action.code, flag).cluster_key()
            else:
                code = to_paulius(action.code, flag).segment_key()
            lines.append(f"{action.id:<{width}}{code}")
    _write_output("\n".join(lines), args.output)
    return 0


def _cmd_graph(args) -> int:
    dataset = _load_dataset(args.file)
    _gate(dataset)
    try:
        view = TaxonomyView.parse(args.view)
    except ValueError as exc:
        raise _Failure(2, str(exc)) from exc
    _require_explicit_sink(args, "DOT output")
    report = cluster(dataset, view)
    styles = dataset_styles(dataset)
    text = emit_dot(report, styles, palette=_resolve_palette(args.palette))
    _write_output(text, args.output)
    return 0


def _parse_direction(arg: str):
    parts = arg.split(",")
    if len(parts) != 3:
        raise _Failure(2, f"direction needs 3 comma-separated numbers, got {arg!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise _Failure(2, f"malformed direction {arg!r}") from None


def _format_level(level) -> str:
    return level.token()


def _cmd_bend_polyline(args) -> int:
    text = _read_text(args.file)
    try:
        polyline = parse_polyline(text)
    except ValueError as exc:
        raise _Failure(3, f"{args.file}: {exc}") from exc
    direction = _parse_direction(args.direction)
    buckets = DEFAULT_BUCKETS
    if args.buckets:
        bucket_text = _read_text(args.buckets)
        try:
            buckets = BucketMap.parse(bucket_text)
        except ValueError as exc:
            raise _Failure(3, f"{args.buckets}: {exc}") from exc
    try:
        result = assess_1d(polyline, direction, buckets=buckets)
    except DegenerateProjectionError as exc:
        raise _Failure(1, f"degenerate projection: {exc}") from exc
    except ValueError as exc:
        raise _Failure(2, str(exc)) from exc
    shape = "closed" if polyline.closed else "open"
    print(f"polyline: {len(polyline.vertices)} vertices, {shape}")
    print(
        f"crossings: {result.raw_removed_crossings + result.raw_irreducible_crossings}"
        f" raw, {result.raw_removed_crossings} removed,"
        f" {result.raw_irreducible_crossings} irreducible"
    )
    print(f"structured: {_format_level(result.structured)}")
    print(f"unstructured: {_format_level(result.unstructured)}")
    return 0


def _cmd_bend_cloth(args) -> int:
    text = _read_text(args.file)
    try:
        state = parse_cloth_state(text)
    except ValueError as exc:
        raise _Failure(3, f"{args.file}: {exc}") from exc
    result = assess_2d(state)
    yn = {True: "yes", False: "no"}
    print(
        f"cloth: {state.keypoint_count} keypoint(s), "
        f"{state.accessible_count} accessible, gfolds {state.gfolds}, "
        f"wrinkled {yn[state.wrinkled]}, transition {yn[state.in_transition_bend]}"
    )
    print(f"structured: {_format_level(result.structured)}")
    print(f"unstructured: {_format_level(result.unstructured)}")
    return 0


def _cmd_dataset_export(args) -> int:
    _write_output(CANONICAL_TEXT, args.output)
    return 0


def _cmd_report(args) -> int:
    dataset = _load_dataset(args.file)
    _gate(dataset)
    reports = [cluster(dataset, view) for view in ALL_VIEWS]
    lines = [
        f"dataset: {len(dataset.tasks)} task(s), {dataset.action_count} action(s)",
        "",
        stats_table(reports),
    ]
    _write_output("\n".join(lines), args.output)
    return 0


def _add_output_flags(parser, stdout_flag: bool = False) -> None:
    parser.add_argument("-o", "--output", metavar="PATH", default=None)
    if stdout_flag:
        parser.add_argument("--stdout", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdom",
        description="Annotate and analyze deformable-object manipulation actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a dataset against the tag rules")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("segment", help="print per-task segmentation lanes")
    p.add_argument("file")
    p.add_argument("--task", default=None, metavar="ID")
    p.add_argument(
        "--views",
        default=",".join(str(v) for v in ALL_VIEWS),
        metavar="V1,V2,...",
    )
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_segment)

    p = sub.add_parser("cluster", help="group actions by identical view code")
    p.add_argument("file")
    p.add_argument("--view", default="tdom", metavar="VIEW")
    p.add_argument("--format", choices=("table", "csv", "dot"), default="table")
    p.add_argument("--mask-deformation", action="store_true")
    p.add_argument("--palette", default=None, metavar="PATH")
    _add_output_flags(p, stdout_flag=True)
    p.set_defaults(handler=_cmd_cluster)

    p = sub.add_parser("project", help="print baseline codes per action")
    p.add_argument("file")
    p.add_argument("--view", choices=_PROJECTED_VIEWS, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_project)

    p = sub.add_parser("graph", help="emit a DOT cluster graph")
    p.add_argument("file")
    p.add_argument("--view", default="tdom", metavar="VIEW")
    p.add_argument("--palette", default=None, metavar="PATH")
    _add_output_flags(p, stdout_flag=True)
    p.set_defaults(handler=_cmd_graph)

    p = sub.add_parser("bend", help="assess bending levels from geometry files")
    bend_sub = p.add_subparsers(dest="kind", required=True)
    bp = bend_sub.add_parser("polyline", help="1D object: 3D polyline file")
    bp.add_argument("file")
    bp.add_argument("--direction", default="0,0,1", metavar="X,Y,Z")
    bp.add_argument("--buckets", default=None, metavar="PATH")
    bp.set_defaults(handler=_cmd_bend_polyline)
    bc = bend_sub.add_parser("cloth", help="2D object: keypoint state file")
    bc.add_argument("file")
    bc.set_defaults(handler=_cmd_bend_cloth)

    p = sub.add_parser("dataset", help="bundled reference dataset operations")
    data_sub = p.add_subparsers(dest="kind", required=True)
    dp = data_sub.add_parser("export", help="write the bundled corpus")
    _add_output_flags(dp)
    dp.set_defaults(handler=_cmd_dataset_export)

    p = sub.add_parser("report", help="stats table across every view")
    p.add_argument("file")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except _Failure as failure:
        for line in failure.lines:
            print(line, file=sys.stderr)
        return failure.code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
