"""Timeline segmentation of a task under a taxonomy view.

A boundary falls between two consecutive actions whenever their codes differ
under the chosen view; maximal runs of equal codes merge into one segment.
Since every view is a function of the full action code, coarser views can
only lose boundaries, never add them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .codes import ActionCode, Task, action_id, mask_deformation
from .baselines import has_deformable_contact, to_bullock, to_paulius


class TaxonomyView(Enum):
    TDOM = "tdom"
    TDOM_NODEF = "tdom-nodef"
    BULLOCK = "bullock"
    PAULIUS_SEGMENT = "paulius-segment"
    PAULIUS_CLUSTER = "paulius-cluster"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "TaxonomyView":
        for member in cls:
            if member.value == name:
                return member
        raise ValueError(f"unknown taxonomy view {name!r}")


def view_code(code: ActionCode, view: TaxonomyView, deformable_contact: bool) -> str:
    """The code string an action presents under a view.

    ``deformable_contact`` is the task-level context flag used by the two
    engagement/outcome views; the other views ignore it.
    """
    if view is TaxonomyView.TDOM:
        return action_id(code)
    if view is TaxonomyView.TDOM_NODEF:
        return action_id(mask_deformation(code))
    if view is TaxonomyView.BULLOCK:
        return str(to_bullock(code))
    projected = to_paulius(code, deformable_contact)
    if view is TaxonomyView.PAULIUS_SEGMENT:
        return projected.segment_key()
    return projected.cluster_key()


@dataclass(frozen=True)
class Segment:
    """A maximal run of equal codes; indices are 1-based and inclusive."""

    start: int
    end: int
    code: str


@dataclass(frozen=True)
class Segmentation:
    task_id: str
    view: TaxonomyView
    segments: tuple

    @property
    def boundaries(self) -> frozenset:
        """Indices b such that a boundary sits between actions b and b+1."""
        return frozenset(seg.start - 1 for seg in self.segments[1:])


def segment(task: Task, view: TaxonomyView) -> Segmentation:
    flag = has_deformable_contact(task)
    codes = [view_code(a.code, view, flag) for a in task.actions]
    segments = []
    start = 1
    for i in range(1, len(codes) + 1):
        if i == len(codes) or codes[i] != codes[i - 1]:
            segments.append(Segment(start=start, end=i, code=codes[i - 1]))
            start = i + 1
    return Segmentation(task_id=task.id, view=view, segments=tuple(segments))


def compare(task: Task, a: TaxonomyView, b: TaxonomyView):
    """Split the two views' boundary sets into (only in a, only in b, shared)."""
    ba = segment(task, a).boundaries
    bb = segment(task, b).boundaries
    return ba - bb, bb - ba, ba & bb


def lane_report(task: Task, views) -> str:
    """Text lanes, one per view: each cell is the segment ordinal of that
    action, "|" marks boundaries. Constant lanes are printed and marked
    rather than omitted."""
    views = list(views)
    n = len(task.actions)
    cell = max(3, max(len(a.id) for a in task.actions) + 1)
    name_width = max(len(str(v)) for v in views) if views else 0
    name_width = max(name_width, len("action"))

    def row(label: str, cells, seps) -> str:
        out = [label.ljust(name_width), " "]
        for i, text in enumerate(cells):
            out.append(text.rjust(cell))
            if i < len(cells) - 1:
                out.append(f" {seps[i]} ")
        return "".join(out)

    lines = [f'task {task.id} {task.name!r}: {n} action(s)']
    lines.append(row("action", [a.id for a in task.actions], [" "] * max(0, n - 1)))
    for view in views:
        seg = segment(task, view)
        ordinals = [""] * n
        for k, s in enumerate(seg.segments, start=1):
            for idx in range(s.start, s.end + 1):
                ordinals[idx - 1] = str(k)
        bset = seg.boundaries
        seps = ["|" if (i + 1) in bset else " " for i in range(n - 1)]
        count = len(seg.segments)
        suffix = f"   {count} segment(s)"
        if count == 1:
            suffix += ", constant"
        lines.append(row(str(view), ordinals, seps) + suffix)
    return "\n".join(lines) + "\n"
