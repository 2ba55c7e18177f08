"""Lowering of action codes into two coarser baseline tag spaces.

The first baseline describes each gripper by contact kind, in-hand motion,
and slippage-at-contact; it is blind to environment contacts and to object
deformation. The second describes per-arm engagement with the deformable,
whether each arm moves, and the deformation outcome class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import (
    ActionCode,
    AgentContactTag,
    GraspTag,
    MotionTag,
    PerArm,
    SlidingTag,
    TagEnum,
    Task,
)


class BullockContact(TagEnum):
    PREHENSILE = "C P"
    NON_PREHENSILE = "C NP"
    NO_CONTACT = "NC"


class BullockMotion(TagEnum):
    WITHIN_HAND = "M W"
    NOT_WITHIN_HAND = "M NW"
    NO_MOTION = "NM"


class BullockSlippage(TagEnum):
    MOTION_AT_CONTACT = "A"
    NO_MOTION_AT_CONTACT = "NA"
    NO_CONTACT = "-"


@dataclass(frozen=True)
class BullockArm:
    contact: BullockContact
    motion: BullockMotion
    slippage: BullockSlippage

    def __post_init__(self) -> None:
        dash = self.slippage is BullockSlippage.NO_CONTACT
        nc = self.contact is BullockContact.NO_CONTACT
        if dash != nc:
            raise ValueError("slippage is dash exactly when there is no contact")

    def __str__(self) -> str:
        return f"{self.contact} | {self.motion} | {self.slippage}"


@dataclass(frozen=True)
class BullockCode:
    left: BullockArm
    right: BullockArm

    def __str__(self) -> str:
        l, r = self.left, self.right
        return (
            f"L({l.contact}, {l.motion}, {l.slippage})"
            f" R({r.contact}, {r.motion}, {r.slippage})"
        )


def _bullock_arm(motion, grasp, agent, sliding) -> BullockArm:
    if grasp is not GraspTag.NONE:
        contact = BullockContact.PREHENSILE
    elif agent is not AgentContactTag.NONE:
        contact = BullockContact.NON_PREHENSILE
    else:
        contact = BullockContact.NO_CONTACT
    if motion is not MotionTag.NONE:
        arm_motion = BullockMotion.NOT_WITHIN_HAND
    else:
        arm_motion = BullockMotion.NO_MOTION
    if contact is BullockContact.NO_CONTACT:
        slippage = BullockSlippage.NO_CONTACT
    elif sliding is not SlidingTag.NONE:
        slippage = BullockSlippage.MOTION_AT_CONTACT
    else:
        slippage = BullockSlippage.NO_MOTION_AT_CONTACT
    return BullockArm(contact, arm_motion, slippage)


def to_bullock(code: ActionCode) -> BullockCode:
    """Project a code onto per-gripper contact/motion/slippage tags.

    Environment contacts are ignored (the target space has no slot for
    them), and the dataset never exercises within-hand motion, so the motion
    tag is effectively binary here.
    """
    return BullockCode(
        left=_bullock_arm(
            code.motion.left, code.grasp.left, code.agent.left, code.sliding.left
        ),
        right=_bullock_arm(
            code.motion.right, code.grasp.right, code.agent.right, code.sliding.right
        ),
    )


class PauliusEngagement(TagEnum):
    NO_ENGAGE = "NE"
    RIGID_DISCONTINUOUS = "RD"
    SOFT_DISCONTINUOUS = "SD"
    SOFT_CONTINUOUS = "SC"


class PauliusOutcome(TagEnum):
    NO_DEFORM = "ND"
    TEMPORARY = "DT"
    PERMANENT = "DP"


@dataclass(frozen=True)
class PauliusCode:
    engagement: PerArm
    moving: PerArm
    outcome: PauliusOutcome

    def cluster_key(self) -> str:
        """Full code string, including which arms move."""
        ml = "Y" if self.moving.left else "N"
        mr = "Y" if self.moving.right else "N"
        return (
            f"ENG {self.engagement.left} {self.engagement.right}"
            f" | MOV {ml} {mr} | OUT {self.outcome}"
        )

    def segment_key(self) -> str:
        """Code string without the moving flags.

        Continuous robot motion with unchanged engagement does not split a
        timeline under this taxonomy's segmentation convention, so the
        segment view uses this reduced key.
        """
        return (
            f"ENG {self.engagement.left} {self.engagement.right}"
            f" | OUT {self.outcome}"
        )

    def __str__(self) -> str:
        return self.cluster_key()


def _engagement(grasp, agent) -> PauliusEngagement:
    if grasp is not GraspTag.NONE:
        return PauliusEngagement.SOFT_CONTINUOUS
    if agent is not AgentContactTag.NONE:
        return PauliusEngagement.SOFT_DISCONTINUOUS
    return PauliusEngagement.NO_ENGAGE


def to_paulius(code: ActionCode, any_deformable_contact: bool) -> PauliusCode:
    """Project a code onto engagement/moving/outcome tags.

    ``any_deformable_contact`` is task-level context: when any action in the
    task touches the deformable, the whole task's outcome class is temporary
    deformation, otherwise no deformation. A grasped deformable counts as
    continuous soft engagement, a one-sided agent contact as discontinuous
    soft engagement. Rigid-discontinuous engagement (agent on a rigid
    surface) is unreachable from action codes, which only record contacts
    with the object itself.
    """
    outcome = (
        PauliusOutcome.TEMPORARY if any_deformable_contact else PauliusOutcome.NO_DEFORM
    )
    return PauliusCode(
        engagement=PerArm(
            _engagement(code.grasp.left, code.agent.left),
            _engagement(code.grasp.right, code.agent.right),
        ),
        moving=PerArm(
            code.motion.left is not MotionTag.NONE,
            code.motion.right is not MotionTag.NONE,
        ),
        outcome=outcome,
    )


def has_deformable_contact(task: Task) -> bool:
    """True when any action in the task grasps or touches the object."""
    for action in task.actions:
        code = action.code
        if (
            code.grasp.left is not GraspTag.NONE
            or code.grasp.right is not GraspTag.NONE
            or code.agent.left is not AgentContactTag.NONE
            or code.agent.right is not AgentContactTag.NONE
        ):
            return True
    return False
