"""Core tag vocabulary and composite action codes for dual-arm manipulation
of deformable objects.

An :class:`ActionCode` bundles everything one annotation row records: per-arm
motion and grasp tags, environment and per-arm agent contacts, the three
contact-sliding slots, the deformation set, and the two bending levels
(structured and unstructured). Values are immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Generic, Iterator, TypeVar

from .diagnostics import SourceSpan

T = TypeVar("T")


class TagEnum(Enum):
    """Enum base whose members print as their canonical token."""

    def __str__(self) -> str:
        return self.value

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def parse(cls, token: str):
        try:
            return cls(token)
        except ValueError:
            raise ValueError(f"unknown {cls.__name__} token {token!r}") from None


class ArmSide(Enum):
    LEFT = "left"
    RIGHT = "right"


class MotionTag(TagEnum):
    """How an arm moves: none, gravity-bounded, gravity plus elastic rebound,
    elastic only, or inertia-dominated (kinetic/dynamic)."""

    NONE = "N"
    GRAVITY = "G"
    GRAVITY_ELASTIC = "GE"
    ELASTIC = "E"
    KINETIC = "K"


class GraspTag(TagEnum):
    """Prehensile constraint applied by a gripper: none, a point, or a line."""

    NONE = "N"
    POINT = "P"
    LINE = "L"


class EnvContactTag(TagEnum):
    """Non-prehensile contact between object and environment."""

    NONE = "N"
    RIGID = "R"
    SOFT = "S"
    RIGID_SOFT = "RS"


class AgentContactTag(TagEnum):
    """Single-sided (non-prehensile) contact between one arm and the object."""

    NONE = "N"
    RIGID = "R"
    SOFT = "S"


class SlidingTag(TagEnum):
    """Translational motion at a contact: active (end-effector moves over the
    object) or passive (object slides through a static contact)."""

    NONE = "N"
    ACTIVE = "A"
    PASSIVE = "P"


class Deformation(TagEnum):
    COMPRESSION = "C"
    TENSION = "TN"
    TORSION = "TR"
    SHEAR = "SH"


_DEFORMATION_ORDER = (
    Deformation.COMPRESSION,
    Deformation.TENSION,
    Deformation.TORSION,
    Deformation.SHEAR,
)


@dataclass(frozen=True)
class DeformationSet:
    """Subset of deformation kinds affecting the object during an action.

    Prints in the fixed order C, TN, TR, SH joined by "+"; the empty set
    prints as "N". Bending is not a member here; it is carried by the two
    BendLevel fields of the action code.
    """

    members: frozenset = frozenset()

    def __post_init__(self) -> None:
        members = frozenset(self.members)
        for m in members:
            if not isinstance(m, Deformation):
                raise ValueError(f"not a deformation: {m!r}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *members: Deformation) -> "DeformationSet":
        return cls(frozenset(members))

    @classmethod
    def parse(cls, text: str) -> "DeformationSet":
        """Parse a combination token such as "N", "C" or "TN+TR".

        "S" is accepted as an alias for shear ("SH") because annotation
        tables reuse the bare letter inside the deformation column.
        """
        if text == "N":
            return cls()
        if not text or text.startswith("+") or text.endswith("+"):
            raise ValueError(f"malformed deformation expression {text!r}")
        seen = []
        for term in text.split("+"):
            if term == "S":
                term = "SH"
            kind = Deformation.parse(term)
            if kind in seen:
                raise ValueError(f"duplicate deformation term {term!r}")
            seen.append(kind)
        return cls(frozenset(seen))

    def token(self) -> str:
        if not self.members:
            return "N"
        return "+".join(d.value for d in _DEFORMATION_ORDER if d in self.members)

    def __contains__(self, kind: Deformation) -> bool:
        return kind in self.members

    def __iter__(self) -> Iterator[Deformation]:
        return iter(d for d in _DEFORMATION_ORDER if d in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return self.token()


@dataclass(frozen=True)
class BendLevel:
    """A bending level: either unset (None) or Level(k) with k >= 0.

    None means no bending of that kind at all; L0 is a distinct state marking
    curvature or transition without a complete fold, loop, or knot.
    """

    level: int | None = None

    def __post_init__(self) -> None:
        if self.level is not None and self.level < 0:
            raise ValueError("bend level must be >= 0")

    @classmethod
    def parse(cls, token: str) -> "BendLevel":
        if token == "N":
            return cls(None)
        m = re.fullmatch(r"L(\d+)", token)
        if not m:
            raise ValueError(f"unknown BendLevel token {token!r}")
        return cls(int(m.group(1)))

    def token(self) -> str:
        return "N" if self.level is None else f"L{self.level}"

    def __str__(self) -> str:
        return self.token()


@dataclass(frozen=True)
class PerArm(Generic[T]):
    """One value per arm, addressable by :class:`ArmSide`."""

    left: T
    right: T

    def __getitem__(self, side: ArmSide) -> T:
        return self.left if side is ArmSide.LEFT else self.right

    def __iter__(self) -> Iterator[T]:
        yield self.left
        yield self.right


@dataclass(frozen=True)
class SlidingSlots:
    """The three contact-sliding slots: environment, left arm, right arm."""

    env: SlidingTag = SlidingTag.NONE
    left: SlidingTag = SlidingTag.NONE
    right: SlidingTag = SlidingTag.NONE


@dataclass(frozen=True)
class ActionCode:
    """The full tag tuple describing one manipulation action."""

    motion: PerArm
    grasp: PerArm
    env: EnvContactTag
    agent: PerArm
    sliding: SlidingSlots
    deformation: DeformationSet
    structured: BendLevel
    unstructured: BendLevel

    @classmethod
    def idle(cls) -> "ActionCode":
        """The all-None code: no motion, no contact, no deformation."""
        return cls(
            motion=PerArm(MotionTag.NONE, MotionTag.NONE),
            grasp=PerArm(GraspTag.NONE, GraspTag.NONE),
            env=EnvContactTag.NONE,
            agent=PerArm(AgentContactTag.NONE, AgentContactTag.NONE),
            sliding=SlidingSlots(),
            deformation=DeformationSet(),
            structured=BendLevel(None),
            unstructured=BendLevel(None),
        )


def action_id(code: ActionCode) -> str:
    """Canonical pipe-separated identity string of a code.

    Two codes are equal exactly when their identity strings are equal.
    """
    return " | ".join(
        (
            f"M {code.motion.left} {code.motion.right}",
            f"G {code.grasp.left} {code.grasp.right}",
            f"NPE {code.env}",
            f"NPA {code.agent.left} {code.agent.right}",
            f"CS {code.sliding.env} {code.sliding.left} {code.sliding.right}",
            f"D {code.deformation.token()}",
            f"S {code.structured.token()}",
            f"US {code.unstructured.token()}",
        )
    )


def code_diff(a: ActionCode, b: ActionCode) -> frozenset:
    """Names of the field positions where two codes differ.

    Per-arm fields report per side ("motion.left"); sliding slots report as
    "sliding.env" / "sliding.left" / "sliding.right". Empty iff a equals b.
    """
    out = set()
    for side in ("left", "right"):
        if getattr(a.motion, side) != getattr(b.motion, side):
            out.add(f"motion.{side}")
        if getattr(a.grasp, side) != getattr(b.grasp, side):
            out.add(f"grasp.{side}")
        if getattr(a.agent, side) != getattr(b.agent, side):
            out.add(f"agent.{side}")
    if a.env != b.env:
        out.add("env")
    for slot in ("env", "left", "right"):
        if getattr(a.sliding, slot) != getattr(b.sliding, slot):
            out.add(f"sliding.{slot}")
    if a.deformation != b.deformation:
        out.add("deformation")
    if a.structured != b.structured:
        out.add("structured")
    if a.unstructured != b.unstructured:
        out.add("unstructured")
    return frozenset(out)


def mask_deformation(code: ActionCode) -> ActionCode:
    """Drop all object-deformation information from a code.

    Clears the deformation set and both bending levels, leaving motion,
    grasps, contacts, and sliding untouched. Idempotent.
    """
    return ActionCode(
        motion=code.motion,
        grasp=code.grasp,
        env=code.env,
        agent=code.agent,
        sliding=code.sliding,
        deformation=DeformationSet(),
        structured=BendLevel(None),
        unstructured=BendLevel(None),
    )


class ObjectDim(TagEnum):
    D1 = "1D"
    D2 = "2D"
    D3 = "3D"


_IDENT_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9_.-]*")


def _check_ident(value: str, what: str) -> None:
    if not _IDENT_RE.fullmatch(value):
        raise ValueError(f"{what} {value!r} is not a bare identifier")


def _check_text(value: str, what: str) -> None:
    if "\n" in value or "\r" in value:
        raise ValueError(f"{what} must not contain line breaks")


@dataclass(frozen=True)
class Action:
    """One annotated action: an id, a human verb label, and its code."""

    id: str
    verb: str
    code: ActionCode
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        _check_ident(self.id, "action id")
        if not self.verb:
            raise ValueError("action verb must be non-empty")
        _check_text(self.verb, "action verb")


@dataclass(frozen=True)
class Task:
    """An ordered list of actions on one object."""

    id: str
    name: str
    actions: tuple
    object_label: str = ""
    object_dim: ObjectDim = ObjectDim.D2

    def __post_init__(self) -> None:
        _check_ident(self.id, "task id")
        _check_text(self.name, "task name")
        _check_text(self.object_label, "object label")
        actions = tuple(self.actions)
        if not actions:
            raise ValueError(f"task {self.id} has no actions")
        seen = set()
        for a in actions:
            if not a.id.startswith(self.id + "-"):
                raise ValueError(
                    f"action id {a.id} does not carry the task prefix {self.id}-"
                )
            if a.id in seen:
                raise ValueError(f"duplicate action id {a.id}")
            seen.add(a.id)
        object.__setattr__(self, "actions", actions)


@dataclass(frozen=True)
class Dataset:
    """A versioned collection of tasks; the unit of parsing and analysis."""

    tasks: tuple = ()
    version: tuple = (1, 0)

    def __post_init__(self) -> None:
        tasks = tuple(self.tasks)
        version = tuple(self.version)
        if len(version) != 2 or any(not isinstance(v, int) or v < 0 for v in version):
            raise ValueError(f"bad version {version!r}")
        ids = set()
        for t in tasks:
            if t.id in ids:
                raise ValueError(f"duplicate task id {t.id}")
            ids.add(t.id)
        action_ids = set()
        for t in tasks:
            for a in t.actions:
                if a.id in action_ids:
                    raise ValueError(f"duplicate action id {a.id}")
                action_ids.add(a.id)
        object.__setattr__(self, "tasks", tasks)
        object.__setattr__(self, "version", version)

    def task(self, task_id: str) -> Task:
        for t in self.tasks:
            if t.id == task_id:
                return t
        raise KeyError(task_id)

    def iter_actions(self) -> Iterator[tuple]:
        for t in self.tasks:
            for a in t.actions:
                yield t, a

    @property
    def action_count(self) -> int:
        return sum(len(t.actions) for t in self.tasks)
