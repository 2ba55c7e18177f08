"""Bending-level assessment from geometric object descriptions.

For 1D objects (ropes, cables) the input is a 3D polyline. Projecting it
along a view direction gives a planar diagram whose transverse
self-intersections carry over/under flags from depth. Local Reidemeister
moves I and II on the resulting Gauss sequence strip kinks (loops) and
cancelling crossing pairs (removable tangles); what survives is counted as
irreducible. Loops removed set the structured level, irreducible crossings
map to the unstructured level through a configurable bucket map.

For 2D objects (cloth) the assessment is declarative: the caller supplies
keypoint accessibility, a g-fold count, and wrinkle/transition flags.

All tolerances are absolute, in meters; inputs are desk-scale.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .codes import BendLevel

GEOM_TOL = 1e-9


class DegenerateProjectionError(ValueError):
    """The projected curve is not in generic position within tolerance."""


@dataclass(frozen=True)
class Polyline3D:
    """An open or closed 3D polyline; coordinates in meters.

    For closed curves the wrap-around segment is implicit: the first vertex
    is not repeated at the end.
    """

    vertices: tuple
    closed: bool = False

    def __post_init__(self) -> None:
        verts = tuple(
            (float(x), float(y), float(z)) for (x, y, z) in self.vertices
        )
        if len(verts) < 2:
            raise ValueError("a polyline needs at least 2 vertices")
        for a, b in zip(verts, verts[1:]):
            if a == b:
                raise ValueError("consecutive vertices must be distinct")
        if self.closed:
            if len(verts) < 3:
                raise ValueError("a closed polyline needs at least 3 vertices")
            if verts[0] == verts[-1]:
                raise ValueError(
                    "closed polylines must not repeat the first vertex at the end"
                )
        object.__setattr__(self, "vertices", verts)

    @property
    def segment_count(self) -> int:
        return len(self.vertices) if self.closed else len(self.vertices) - 1


@dataclass(frozen=True)
class Crossing:
    """One transverse self-intersection of the projected curve."""

    label: int
    over_segment: int
    under_segment: int
    handedness: int  # +1 or -1, sign of cross(over tangent, under tangent)
    point: tuple

    def __post_init__(self) -> None:
        if self.over_segment == self.under_segment:
            raise ValueError("a crossing needs two distinct segments")
        if self.handedness not in (-1, 1):
            raise ValueError("handedness must be +1 or -1")


@dataclass(frozen=True)
class GaussVisit:
    """One visit of a crossing while walking the curve."""

    label: int
    over: bool
    sign: int


@dataclass(frozen=True)
class CrossingDiagram:
    """Crossings plus the Gauss sequence of their visits along the curve."""

    crossings: tuple
    gauss: tuple
    cyclic: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "gauss", tuple(self.gauss))
        labels = [c.label for c in self.crossings]
        if len(set(labels)) != len(labels):
            raise ValueError("crossing labels must be unique")
        seen = {}
        for visit in self.gauss:
            seen.setdefault(visit.label, []).append(visit.over)
        if set(seen) != set(labels):
            raise ValueError("gauss labels must match the crossing list")
        for label, flags in seen.items():
            if sorted(flags) != [False, True]:
                raise ValueError(
                    f"crossing {label} must appear exactly once over and once under"
                )

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)


def _basis(direction):
    w = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(w)
    if norm < GEOM_TOL:
        raise ValueError("projection direction must be a nonzero vector")
    w = w / norm
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(w)))] = 1.0
    v = np.cross(w, axis)
    v = v / np.linalg.norm(v)
    u = np.cross(v, w)
    return u, v, w


def _point_segment_distance(p, a, b) -> float:
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0.0 else float((p - a) @ ab) / denom
    t = min(1.0, max(0.0, t))
    return float(np.linalg.norm(p - (a + t * ab)))


def _cross2(a, b) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


def project_and_cross(
    polyline: Polyline3D, direction, tol: float = GEOM_TOL
) -> CrossingDiagram:
    """Project along ``direction`` and find all transverse self-crossings.

    The strand with the larger coordinate along the direction is the over
    strand. Raises :class:`DegenerateProjectionError` when the projection is
    not generic: a segment (nearly) parallel to the direction, an endpoint
    touching another segment, strands crossing at equal depth, or two
    crossing points closer than tolerance (triple points).
    """
    u, v, w = _basis(direction)
    verts = np.asarray(polyline.vertices, dtype=float)
    uv = np.stack([verts @ u, verts @ v], axis=1)
    depth = verts @ w
    n = len(verts)
    nseg = polyline.segment_count
    seg_idx = [(i, (i + 1) % n) for i in range(nseg)]

    for k, (a, b) in enumerate(seg_idx):
        if np.linalg.norm(uv[b] - uv[a]) < tol:
            raise DegenerateProjectionError(
                f"segment {k} projects below tolerance (parallel to the direction)"
            )

    hits = []  # (segment, param, crossing index, over flag)
    records = []  # dicts, one per crossing, in discovery order
    for i in range(nseg):
        ia, ib = seg_idx[i]
        p1, p2 = uv[ia], uv[ib]
        for j in range(i + 1, nseg):
            if j == i + 1 or (polyline.closed and i == 0 and j == nseg - 1):
                continue
            ja, jb = seg_idx[j]
            q1, q2 = uv[ja], uv[jb]
            for point, seg_a, seg_b in (
                (p1, q1, q2),
                (p2, q1, q2),
                (q1, p1, p2),
                (q2, p1, p2),
            ):
                if _point_segment_distance(point, seg_a, seg_b) < tol:
                    raise DegenerateProjectionError(
                        f"segments {i} and {j} touch at an endpoint within tolerance"
                    )
            r = p2 - p1
            s = q2 - q1
            d1 = _cross2(s, p1 - q1)
            d2 = _cross2(s, p2 - q1)
            d3 = _cross2(r, q1 - p1)
            d4 = _cross2(r, q2 - p1)
            if d1 * d2 >= 0 or d3 * d4 >= 0:
                continue
            t = d1 / (d1 - d2)
            uq = d3 / (d3 - d4)
            point = p1 + t * r
            depth_i = depth[ia] + t * (depth[ib] - depth[ia])
            depth_j = depth[ja] + uq * (depth[jb] - depth[ja])
            if abs(depth_i - depth_j) < tol:
                raise DegenerateProjectionError(
                    f"segments {i} and {j} cross at equal depth within tolerance"
                )
            i_over = bool(depth_i > depth_j)
            over_tangent, under_tangent = (r, s) if i_over else (s, r)
            handedness = 1 if _cross2(over_tangent, under_tangent) > 0 else -1
            idx = len(records)
            records.append(
                {
                    "over_segment": i if i_over else j,
                    "under_segment": j if i_over else i,
                    "handedness": handedness,
                    "point": (float(point[0]), float(point[1])),
                }
            )
            hits.append((i, t, idx, i_over))
            hits.append((j, uq, idx, not i_over))

    for a in range(len(records)):
        for b in range(a + 1, len(records)):
            pa = np.asarray(records[a]["point"])
            pb = np.asarray(records[b]["point"])
            if np.linalg.norm(pa - pb) < tol:
                raise DegenerateProjectionError(
                    "two crossings coincide within tolerance (triple point)"
                )

    hits.sort(key=lambda h: (h[0], h[1]))
    labels = {}
    for seg, t, idx, over in hits:
        if idx not in labels:
            labels[idx] = len(labels) + 1
    crossings = [None] * len(records)
    for idx, rec in enumerate(records):
        label = labels[idx]
        crossings[label - 1] = Crossing(label=label, **rec)
    gauss = tuple(
        GaussVisit(label=labels[idx], over=over, sign=records[idx]["handedness"])
        for _seg, _t, idx, over in hits
    )
    return CrossingDiagram(
        crossings=tuple(crossings), gauss=gauss, cyclic=polyline.closed
    )


def _adjacent_pairs(count: int, cyclic: bool):
    pairs = [(k, k + 1) for k in range(count - 1)]
    if cyclic and count > 1:
        pairs.append((count - 1, 0))
    return pairs


def _find_r1(entries, cyclic: bool):
    for i, j in _adjacent_pairs(len(entries), cyclic):
        if entries[i].label == entries[j].label:
            return i, j
    return None


def _find_r2(entries, cyclic: bool):
    n = len(entries)
    position = {}
    for pos, visit in enumerate(entries):
        position.setdefault(visit.label, []).append(pos)
    for i, j in _adjacent_pairs(n, cyclic):
        a, b = entries[i], entries[j]
        if a.label == b.label or a.over != b.over or a.sign == b.sign:
            continue
        other_a = next(p for p in position[a.label] if p != i)
        other_b = next(p for p in position[b.label] if p != j)
        neighbors = (other_a + 1 == other_b) or (other_b + 1 == other_a)
        if cyclic and not neighbors:
            neighbors = {other_a, other_b} == {0, n - 1}
        if neighbors:
            return i, j, other_a, other_b
    return None


def _simplify(diagram: CrossingDiagram):
    entries = list(diagram.gauss)
    kinks = 0
    pairs = 0
    while True:
        hit = _find_r1(entries, diagram.cyclic)
        if hit is not None:
            drop = set(hit)
            entries = [e for k, e in enumerate(entries) if k not in drop]
            kinks += 1
            continue
        hit = _find_r2(entries, diagram.cyclic)
        if hit is not None:
            drop = set(hit)
            entries = [e for k, e in enumerate(entries) if k not in drop]
            pairs += 1
            continue
        break
    survivors = {e.label for e in entries}
    reduced = CrossingDiagram(
        crossings=tuple(c for c in diagram.crossings if c.label in survivors),
        gauss=tuple(entries),
        cyclic=diagram.cyclic,
    )
    return reduced, kinks, pairs


def simplify(diagram: CrossingDiagram) -> CrossingDiagram:
    """Apply Reidemeister moves I and II until none applies.

    Scans left to right and prefers a kink removal (move I) over a pair
    removal (move II) in every pass, so the result is deterministic. Move II
    asks for two adjacent same-flag visits of different crossings with
    opposite handedness whose partner visits are also adjacent; planarity
    beyond this local test is not checked. Never increases the crossing
    count and is idempotent.
    """
    return _simplify(diagram)[0]


@dataclass(frozen=True)
class BucketMap:
    """Maps an irreducible crossing count (>= 1) to an unstructured level.

    ``buckets`` lists (minimum count, level) pairs in increasing order; the
    last pair whose minimum is reached wins. Counts below the first minimum
    map to level 0.
    """

    buckets: tuple = ((1, 1), (4, 2))

    def __post_init__(self) -> None:
        buckets = tuple((int(m), int(level)) for m, level in self.buckets)
        previous = 0
        for minimum, level in buckets:
            if minimum <= previous:
                raise ValueError("bucket minima must be positive and increasing")
            if level < 0:
                raise ValueError("bucket levels must be >= 0")
            previous = minimum
        object.__setattr__(self, "buckets", buckets)

    def level_for(self, crossings: int) -> int:
        level = 0
        for minimum, bucket_level in self.buckets:
            if crossings >= minimum:
                level = bucket_level
        return level

    @classmethod
    def parse(cls, text: str) -> "BucketMap":
        obj = json.loads(text)
        if not isinstance(obj, dict) or "buckets" not in obj:
            raise ValueError('bucket map must be a JSON object with a "buckets" list')
        return cls(tuple((int(m), int(l)) for m, l in obj["buckets"]))


DEFAULT_BUCKETS = BucketMap()


@dataclass(frozen=True)
class BendingAssessment:
    structured: BendLevel
    unstructured: BendLevel
    raw_removed_crossings: int = 0
    raw_irreducible_crossings: int = 0


def _is_straight(polyline: Polyline3D, tol: float) -> bool:
    if polyline.closed:
        return False
    verts = np.asarray(polyline.vertices, dtype=float)
    chord = verts[-1] - verts[0]
    length = np.linalg.norm(chord)
    if length < tol:
        return False
    axis = chord / length
    offsets = verts - verts[0]
    perp = offsets - np.outer(offsets @ axis, axis)
    return float(np.max(np.linalg.norm(perp, axis=1))) <= tol


def assess_1d(
    polyline: Polyline3D,
    direction,
    buckets: BucketMap = DEFAULT_BUCKETS,
    tol: float = GEOM_TOL,
) -> BendingAssessment:
    """Bending levels of a 1D object seen along ``direction``.

    Structured bending counts complete loops: crossings removed as
    Reidemeister-I kinks. A straight, crossing-free curve has no structured
    level at all; a curved one without loops sits at L0. Unstructured
    bending reflects knotting: irreducible crossings bucketed to a level;
    with zero irreducible crossings it is L0 when cancelling pairs
    (removable tangles) were stripped and unset otherwise.
    """
    diagram = project_and_cross(polyline, direction, tol=tol)
    reduced, kinks, pairs = _simplify(diagram)
    irreducible = reduced.crossing_count
    removed = kinks + 2 * pairs

    if diagram.crossing_count == 0 and _is_straight(polyline, tol):
        structured = BendLevel(None)
    else:
        structured = BendLevel(kinks)

    if irreducible == 0:
        unstructured = BendLevel(0) if pairs > 0 else BendLevel(None)
    else:
        unstructured = BendLevel(buckets.level_for(irreducible))

    return BendingAssessment(
        structured=structured,
        unstructured=unstructured,
        raw_removed_crossings=removed,
        raw_irreducible_crossings=irreducible,
    )


@dataclass(frozen=True)
class ClothState:
    """Declarative bending state of a 2D object.

    ``keypoints`` are (name, accessible) pairs for the object's graspable
    features (corners, edges); ``gfolds`` counts completed gravity-stable
    folds; ``wrinkled`` marks chaotic surface state; ``in_transition_bend``
    marks a bend in progress that has not yet produced a fold.
    """

    keypoints: tuple
    gfolds: int = 0
    wrinkled: bool = False
    in_transition_bend: bool = False

    def __post_init__(self) -> None:
        keypoints = tuple((str(n), bool(a)) for n, a in self.keypoints)
        if not keypoints:
            raise ValueError("a cloth state needs at least one keypoint")
        names = [n for n, _a in keypoints]
        if len(set(names)) != len(names):
            raise ValueError("keypoint names must be unique")
        if self.gfolds < 0:
            raise ValueError("gfolds must be >= 0")
        object.__setattr__(self, "keypoints", keypoints)

    @property
    def keypoint_count(self) -> int:
        return len(self.keypoints)

    @property
    def accessible_count(self) -> int:
        return sum(1 for _n, accessible in self.keypoints if accessible)


def assess_2d(state: ClothState) -> BendingAssessment:
    """Bending levels of a 2D object from its declarative state.

    Structured level equals the g-fold count when at least one fold exists,
    L0 during a transition bend, otherwise unset. Unstructured level equals
    the number of inaccessible keypoints whenever the object is wrinkled or
    any keypoint is inaccessible (a wrinkled object with every keypoint
    accessible sits at L0), otherwise unset.
    """
    if state.gfolds >= 1:
        structured = BendLevel(state.gfolds)
    elif state.in_transition_bend:
        structured = BendLevel(0)
    else:
        structured = BendLevel(None)

    hidden = state.keypoint_count - state.accessible_count
    if state.wrinkled or hidden > 0:
        unstructured = BendLevel(hidden)
    else:
        unstructured = BendLevel(None)

    return BendingAssessment(structured=structured, unstructured=unstructured)


def parse_polyline(text: str) -> Polyline3D:
    """Read the polyline file format: one "x y z" per line, an optional
    "closed" directive line, "#" comments."""
    vertices = []
    closed = False
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "closed":
            closed = True
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 coordinates, found {len(parts)}")
        try:
            vertices.append(tuple(float(p) for p in parts))
        except ValueError:
            raise ValueError(f"line {lineno}: malformed coordinate") from None
    if len(vertices) < 2:
        raise ValueError("polyline file needs at least 2 vertices")
    return Polyline3D(vertices=tuple(vertices), closed=closed)


_BOOL_WORDS = {"true": True, "false": False}


def parse_cloth_state(text: str) -> ClothState:
    """Read the cloth state file format: "keypoint <name> accessible|occluded"
    lines plus "gfolds <k>", "wrinkled true|false", "transition true|false"."""
    keypoints = []
    gfolds = 0
    wrinkled = False
    transition = False
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "keypoint":
            if len(parts) != 3 or parts[2] not in ("accessible", "occluded"):
                raise ValueError(
                    f"line {lineno}: expected 'keypoint <name> accessible|occluded'"
                )
            keypoints.append((parts[1], parts[2] == "accessible"))
        elif kind == "gfolds":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ValueError(f"line {lineno}: expected 'gfolds <count>'")
            gfolds = int(parts[1])
        elif kind in ("wrinkled", "transition"):
            if len(parts) != 2 or parts[1] not in _BOOL_WORDS:
                raise ValueError(f"line {lineno}: expected '{kind} true|false'")
            if kind == "wrinkled":
                wrinkled = _BOOL_WORDS[parts[1]]
            else:
                transition = _BOOL_WORDS[parts[1]]
        else:
            raise ValueError(f"line {lineno}: unknown directive {kind!r}")
    if not keypoints:
        raise ValueError("cloth state file needs at least one keypoint")
    return ClothState(
        keypoints=tuple(keypoints),
        gfolds=gfolds,
        wrinkled=wrinkled,
        in_transition_bend=transition,
    )
