"""Equivalence-class clustering of actions by their (projected) code string,
with graph emission and summary statistics.

Two actions land in the same cluster exactly when their code strings under
the chosen view are equal. Cluster order follows the first member's position
in the dataset, so output is deterministic.
"""

from __future__ import annotations

import colorsys
import hashlib
import json
from dataclasses import dataclass
from enum import Enum

from .codes import ActionCode, Dataset
from .baselines import has_deformable_contact
from .segmentation import TaxonomyView, view_code


@dataclass(frozen=True)
class Cluster:
    code: str
    members: tuple  # action ids in dataset order

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ClusterReport:
    view: TaxonomyView
    clusters: tuple

    @property
    def total_actions(self) -> int:
        return sum(c.size for c in self.clusters)

    @property
    def distinct_codes(self) -> int:
        return len(self.clusters)

    @property
    def multi_member_count(self) -> int:
        return sum(1 for c in self.clusters if c.size >= 2)

    @property
    def largest_size(self) -> int:
        return max((c.size for c in self.clusters), default=0)

    def cluster_of(self, action_id: str) -> Cluster:
        for c in self.clusters:
            if action_id in c.members:
                return c
        raise KeyError(action_id)


def cluster(dataset: Dataset, view: TaxonomyView) -> ClusterReport:
    """Group all actions of the dataset by view-projected code equality.

    The dataset is expected to be free of Error-level rule violations; the
    command-line front end checks that before calling in here.
    """
    order = []
    groups = {}
    for task in dataset.tasks:
        flag = has_deformable_contact(task)
        for action in task.actions:
            key = view_code(action.code, view, flag)
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append(action.id)
    clusters = tuple(Cluster(code=key, members=tuple(groups[key])) for key in order)
    return ClusterReport(view=view, clusters=clusters)


class NodeShape(Enum):
    CIRCLE = "circle"
    TRIANGLE_UP = "triangle"
    TRIANGLE_DOWN = "invtriangle"
    SQUARE = "square"


@dataclass(frozen=True)
class NodeStyle:
    shape: NodeShape
    color_key: str


def node_style(code: ActionCode) -> NodeStyle:
    """Style for one action: the shape encodes which bending kinds are set
    (circle none, triangle-up structured, triangle-down unstructured, square
    both) and the color key is the deformation-combination string."""
    s = code.structured.level is not None
    u = code.unstructured.level is not None
    if s and u:
        shape = NodeShape.SQUARE
    elif s:
        shape = NodeShape.TRIANGLE_UP
    elif u:
        shape = NodeShape.TRIANGLE_DOWN
    else:
        shape = NodeShape.CIRCLE
    return NodeStyle(shape=shape, color_key=code.deformation.token())


def dataset_styles(dataset: Dataset) -> dict:
    """Node styles for every action, keyed by action id."""
    return {a.id: node_style(a.code) for _t, a in dataset.iter_actions()}


def hash_color(key: str) -> str:
    """Deterministic readable color for a key, as #rrggbb."""
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    hue = digest[0] / 255.0
    light = 0.45 + 0.25 * (digest[1] / 255.0)
    sat = 0.5 + 0.4 * (digest[2] / 255.0)
    r, g, b = colorsys.hls_to_rgb(hue, light, sat)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


def load_palette(text: str) -> dict:
    """Parse a palette file: a JSON object mapping color keys to colors."""
    obj = json.loads(text)
    if not isinstance(obj, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in obj.items()
    ):
        raise ValueError("palette must be a JSON object mapping strings to colors")
    return obj


def emit_dot(report: ClusterReport, styles: dict, palette: dict | None = None) -> str:
    """Render the clustering as DOT graph text.

    Every action becomes a node (named and labeled by its id); each
    multi-member cluster contributes a path of size-1 edges over its members
    in dataset order, so one edge links each consecutive pair and singletons
    stay isolated. Raises ValueError when a member has no style.
    """
    palette = palette or {}

    def color(key: str) -> str:
        return palette.get(key, hash_color(key))

    lines = [f'graph "{report.view}" {{', "  node [style=filled];"]
    for c in report.clusters:
        for mid in c.members:
            style = styles.get(mid)
            if style is None:
                raise ValueError(f"no style for action {mid!r}")
            lines.append(
                f'  "{mid}" [shape={style.shape.value},'
                f' fillcolor="{color(style.color_key)}"];'
            )
    for c in report.clusters:
        for prev, nxt in zip(c.members, c.members[1:]):
            lines.append(f'  "{prev}" -- "{nxt}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


_STATS_COLUMNS = ("view", "distinct codes", "multi-member clusters", "largest size")


def stats_rows(reports) -> list:
    return [
        (
            str(r.view),
            str(r.distinct_codes),
            str(r.multi_member_count),
            str(r.largest_size),
        )
        for r in reports
    ]


def stats_table(reports, fmt: str = "table") -> str:
    """Summary statistics, one row per report, as aligned text or CSV."""
    rows = stats_rows(reports)
    if fmt == "csv":
        header = ",".join(c.replace(" ", "_") for c in _STATS_COLUMNS)
        return "\n".join([header] + [",".join(row) for row in rows]) + "\n"
    if fmt != "table":
        raise ValueError(f"unknown stats format {fmt!r}")
    widths = [len(c) for c in _STATS_COLUMNS]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    def line(cells):
        return "  ".join(cell.ljust(w) for cell, w in zip(cells, widths)).rstrip()
    out = [line(_STATS_COLUMNS)]
    out.append("  ".join("-" * w for w in widths))
    out.extend(line(row) for row in rows)
    return "\n".join(out) + "\n"
