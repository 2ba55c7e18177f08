"""Semantic consistency rules over parsed datasets.

Two structural rules are Errors: a sliding slot only makes sense where the
matching contact exists. Four force-consistency rules are Warnings: they
flag deformation claims that the recorded contacts cannot obviously produce,
which may simply mean the annotation under-reports environment forces.
"""

from __future__ import annotations

from enum import Enum

from .codes import (
    Action,
    AgentContactTag,
    Dataset,
    Deformation,
    EnvContactTag,
    GraspTag,
    SlidingTag,
)
from .diagnostics import Diagnostic, Severity


class RuleId(Enum):
    R1_SLIDING_REQUIRES_CONTACT = "R1_SlidingRequiresContact"
    R2_ENV_SLIDING_REQUIRES_ENV = "R2_EnvSlidingRequiresEnv"
    R3_TENSION_NEEDS_TWO_CONSTRAINTS = "R3_TensionNeedsTwoConstraints"
    R4_TORSION_NEEDS_TWO_CONSTRAINTS = "R4_TorsionNeedsTwoConstraints"
    R5_COMPRESSION_NEEDS_CONTACT = "R5_CompressionNeedsContact"
    R6_SHEAR_NEEDS_TWO_CONSTRAINTS = "R6_ShearNeedsTwoConstraints"

    def __str__(self) -> str:
        return self.value


RULE_SEVERITY = {
    RuleId.R1_SLIDING_REQUIRES_CONTACT: Severity.ERROR,
    RuleId.R2_ENV_SLIDING_REQUIRES_ENV: Severity.ERROR,
    RuleId.R3_TENSION_NEEDS_TWO_CONSTRAINTS: Severity.WARNING,
    RuleId.R4_TORSION_NEEDS_TWO_CONSTRAINTS: Severity.WARNING,
    RuleId.R5_COMPRESSION_NEEDS_CONTACT: Severity.WARNING,
    RuleId.R6_SHEAR_NEEDS_TWO_CONSTRAINTS: Severity.WARNING,
}


def constraint_sources(code) -> int:
    """How many independent places hold the object: each non-None grasp,
    each non-None agent contact, and the environment contact. Gravity is
    implicit and never counted."""
    return sum(
        (
            code.grasp.left is not GraspTag.NONE,
            code.grasp.right is not GraspTag.NONE,
            code.agent.left is not AgentContactTag.NONE,
            code.agent.right is not AgentContactTag.NONE,
            code.env is not EnvContactTag.NONE,
        )
    )


def _arm_contact_count(code) -> int:
    return sum(
        (
            code.grasp.left is not GraspTag.NONE,
            code.grasp.right is not GraspTag.NONE,
            code.agent.left is not AgentContactTag.NONE,
            code.agent.right is not AgentContactTag.NONE,
        )
    )


def _check_action(action: Action) -> list:
    code = action.code
    found = []

    def report(rule: RuleId, message: str) -> None:
        found.append(
            Diagnostic(
                severity=RULE_SEVERITY[rule],
                rule=rule.value,
                message=message,
                span=action.span,
                action_id=action.id,
            )
        )

    bare = []
    for side in ("left", "right"):
        sliding = getattr(code.sliding, side)
        grasp = getattr(code.grasp, side)
        agent = getattr(code.agent, side)
        if (
            sliding is not SlidingTag.NONE
            and grasp is GraspTag.NONE
            and agent is AgentContactTag.NONE
        ):
            bare.append(side)
    if bare:
        report(
            RuleId.R1_SLIDING_REQUIRES_CONTACT,
            f"contact sliding on the {' and '.join(bare)} arm requires a grasp"
            " or agent contact on that arm",
        )

    if code.sliding.env is not SlidingTag.NONE and code.env is EnvContactTag.NONE:
        report(
            RuleId.R2_ENV_SLIDING_REQUIRES_ENV,
            "environment sliding requires an environment contact",
        )

    sources = constraint_sources(code)
    if Deformation.TENSION in code.deformation and sources < 2:
        report(
            RuleId.R3_TENSION_NEEDS_TWO_CONSTRAINTS,
            f"tension needs at least 2 constraint sources, found {sources}",
        )
    if Deformation.TORSION in code.deformation and sources < 2:
        report(
            RuleId.R4_TORSION_NEEDS_TWO_CONSTRAINTS,
            f"torsion needs at least 2 constraint sources, found {sources}",
        )
    if Deformation.COMPRESSION in code.deformation and _arm_contact_count(code) < 1:
        report(
            RuleId.R5_COMPRESSION_NEEDS_CONTACT,
            "compression needs at least one grasp or agent contact",
        )
    if Deformation.SHEAR in code.deformation and sources < 2:
        report(
            RuleId.R6_SHEAR_NEEDS_TWO_CONSTRAINTS,
            f"shear needs at least 2 constraint sources, found {sources}",
        )
    return found


def validate(dataset: Dataset) -> list:
    """Run all rules; returns diagnostics in task order, action order, then
    rule order. At most one diagnostic per action and rule. Pure: repeated
    calls return identical results."""
    diags = []
    for _task, action in dataset.iter_actions():
        diags.extend(_check_action(action))
    return diags
