import pytest
from hypothesis import given, strategies as st

from tdom import (
    Action,
    ActionCode,
    AgentContactTag,
    ArmSide,
    BendLevel,
    Dataset,
    Deformation,
    DeformationSet,
    EnvContactTag,
    GraspTag,
    MotionTag,
    ObjectDim,
    PerArm,
    SlidingSlots,
    SlidingTag,
    Task,
    action_id,
    code_diff,
    mask_deformation,
)

bend_levels = st.one_of(
    st.just(BendLevel(None)),
    st.integers(min_value=0, max_value=9).map(BendLevel),
)

codes = st.builds(
    ActionCode,
    motion=st.builds(PerArm, st.sampled_from(MotionTag), st.sampled_from(MotionTag)),
    grasp=st.builds(PerArm, st.sampled_from(GraspTag), st.sampled_from(GraspTag)),
    env=st.sampled_from(EnvContactTag),
    agent=st.builds(
        PerArm, st.sampled_from(AgentContactTag), st.sampled_from(AgentContactTag)
    ),
    sliding=st.builds(
        SlidingSlots,
        st.sampled_from(SlidingTag),
        st.sampled_from(SlidingTag),
        st.sampled_from(SlidingTag),
    ),
    deformation=st.frozensets(st.sampled_from(Deformation)).map(DeformationSet),
    structured=bend_levels,
    unstructured=bend_levels,
)


class TestTagParsing:
    @pytest.mark.parametrize(
        "enum_cls",
        [MotionTag, GraspTag, EnvContactTag, AgentContactTag, SlidingTag, ObjectDim],
    )
    def test_token_round_trip(self, enum_cls):
        for member in enum_cls:
            assert enum_cls.parse(member.token) is member
            assert str(member) == member.token

    def test_unknown_token_rejected(self):
        with pytest.raises(ValueError, match="unknown MotionTag token 'Q'"):
            MotionTag.parse("Q")
        with pytest.raises(ValueError):
            GraspTag.parse("")
        with pytest.raises(ValueError):
            EnvContactTag.parse("SR")

    def test_motion_vocabulary(self):
        assert [m.token for m in MotionTag] == ["N", "G", "GE", "E", "K"]

    def test_contact_vocabularies(self):
        assert [m.token for m in EnvContactTag] == ["N", "R", "S", "RS"]
        assert [m.token for m in AgentContactTag] == ["N", "R", "S"]
        # agent contacts have no combined rigid+soft tag
        with pytest.raises(ValueError):
            AgentContactTag.parse("RS")


class TestDeformationSet:
    def test_empty_prints_n(self):
        assert DeformationSet().token() == "N"
        assert str(DeformationSet.parse("N")) == "N"
        assert len(DeformationSet()) == 0

    def test_canonical_order(self):
        ds = DeformationSet.of(
            Deformation.SHEAR, Deformation.COMPRESSION, Deformation.TORSION
        )
        assert ds.token() == "C+TR+SH"
        assert list(ds) == [
            Deformation.COMPRESSION,
            Deformation.TORSION,
            Deformation.SHEAR,
        ]

    def test_parse_accepts_any_order(self):
        assert DeformationSet.parse("TR+C").token() == "C+TR"
        assert DeformationSet.parse("SH+TN+TR+C").token() == "C+TN+TR+SH"

    def test_shear_alias(self):
        assert DeformationSet.parse("S") == DeformationSet.of(Deformation.SHEAR)
        assert DeformationSet.parse("C+S").token() == "C+SH"

    @pytest.mark.parametrize("bad", ["", "+", "C+", "+C", "C+C", "S+SH", "X", "C++TN"])
    def test_malformed_rejected(self, bad):
        with pytest.raises(ValueError):
            DeformationSet.parse(bad)

    def test_membership(self):
        ds = DeformationSet.parse("C+TN")
        assert Deformation.COMPRESSION in ds
        assert Deformation.SHEAR not in ds

    @given(st.frozensets(st.sampled_from(Deformation)))
    def test_token_round_trip(self, members):
        ds = DeformationSet(members)
        assert DeformationSet.parse(ds.token()) == ds


class TestBendLevel:
    def test_none_vs_l0_distinct(self):
        assert BendLevel(None) != BendLevel(0)
        assert BendLevel.parse("N").level is None
        assert BendLevel.parse("L0").level == 0

    def test_tokens(self):
        assert BendLevel(None).token() == "N"
        assert BendLevel(0).token() == "L0"
        assert BendLevel(12).token() == "L12"

    @pytest.mark.parametrize("bad", ["", "L", "L-1", "0", "l1", "L1.5", "NL"])
    def test_malformed_rejected(self, bad):
        with pytest.raises(ValueError):
            BendLevel.parse(bad)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            BendLevel(-1)

    @given(st.one_of(st.none(), st.integers(min_value=0, max_value=99)))
    def test_round_trip(self, level):
        assert BendLevel.parse(BendLevel(level).token()) == BendLevel(level)


class TestPerArm:
    def test_indexed_by_side(self):
        pa = PerArm(GraspTag.POINT, GraspTag.NONE)
        assert pa[ArmSide.LEFT] is GraspTag.POINT
        assert pa[ArmSide.RIGHT] is GraspTag.NONE
        assert list(pa) == [GraspTag.POINT, GraspTag.NONE]


class TestActionCode:
    def test_idle_identity(self):
        idle = ActionCode.idle()
        assert action_id(idle) == (
            "M N N | G N N | NPE N | NPA N N | CS N N N | D N | S N | US N"
        )

    def test_identity_format(self):
        code = ActionCode(
            motion=PerArm(MotionTag.GRAVITY_ELASTIC, MotionTag.NONE),
            grasp=PerArm(GraspTag.POINT, GraspTag.LINE),
            env=EnvContactTag.RIGID_SOFT,
            agent=PerArm(AgentContactTag.NONE, AgentContactTag.SOFT),
            sliding=SlidingSlots(SlidingTag.PASSIVE, SlidingTag.ACTIVE, SlidingTag.NONE),
            deformation=DeformationSet.of(Deformation.TENSION, Deformation.COMPRESSION),
            structured=BendLevel(2),
            unstructured=BendLevel(0),
        )
        assert action_id(code) == (
            "M GE N | G P L | NPE RS | NPA N S | CS P A N | D C+TN | S L2 | US L0"
        )

    @given(codes, codes)
    def test_identity_is_injective(self, a, b):
        assert (action_id(a) == action_id(b)) == (a == b)

    @given(codes, codes)
    def test_diff_empty_iff_equal(self, a, b):
        diff = code_diff(a, b)
        assert (not diff) == (a == b)
        assert diff == code_diff(b, a)

    def test_diff_names_positions(self):
        a = ActionCode.idle()
        b = ActionCode(
            motion=PerArm(MotionTag.GRAVITY, MotionTag.NONE),
            grasp=PerArm(GraspTag.NONE, GraspTag.POINT),
            env=EnvContactTag.RIGID,
            agent=PerArm(AgentContactTag.NONE, AgentContactTag.NONE),
            sliding=SlidingSlots(left=SlidingTag.ACTIVE),
            deformation=DeformationSet.of(Deformation.COMPRESSION),
            structured=BendLevel(None),
            unstructured=BendLevel(1),
        )
        assert code_diff(a, b) == frozenset(
            {
                "motion.left",
                "grasp.right",
                "env",
                "sliding.left",
                "deformation",
                "unstructured",
            }
        )

    @given(codes)
    def test_mask_clears_only_deformation(self, code):
        masked = mask_deformation(code)
        assert masked.deformation == DeformationSet()
        assert masked.structured == BendLevel(None)
        assert masked.unstructured == BendLevel(None)
        assert masked.motion == code.motion
        assert masked.grasp == code.grasp
        assert masked.env == code.env
        assert masked.agent == code.agent
        assert masked.sliding == code.sliding
        assert mask_deformation(masked) == masked

    @given(codes)
    def test_codes_are_hashable(self, code):
        assert len({code, code}) == 1


def _action(aid="T1-1", verb="pull"):
    return Action(id=aid, verb=verb, code=ActionCode.idle())


class TestStructure:
    def test_action_invariants(self):
        with pytest.raises(ValueError):
            Action(id="", verb="pull", code=ActionCode.idle())
        with pytest.raises(ValueError):
            Action(id="a b", verb="pull", code=ActionCode.idle())
        with pytest.raises(ValueError):
            Action(id="T1-1", verb="", code=ActionCode.idle())
        with pytest.raises(ValueError):
            Action(id="T1-1", verb="pu\nll", code=ActionCode.idle())

    def test_task_requires_prefixed_unique_actions(self):
        with pytest.raises(ValueError, match="no actions"):
            Task(id="T1", name="x", actions=())
        with pytest.raises(ValueError, match="prefix"):
            Task(id="T1", name="x", actions=(_action("T2-1"),))
        with pytest.raises(ValueError, match="duplicate"):
            Task(id="T1", name="x", actions=(_action(), _action()))
        task = Task(id="T1", name="x", actions=[_action()])
        assert isinstance(task.actions, tuple)
        assert task.object_dim is ObjectDim.D2
        assert task.object_label == ""

    def test_task_name_no_newline(self):
        with pytest.raises(ValueError):
            Task(id="T1", name="a\nb", actions=(_action(),))
        with pytest.raises(ValueError):
            Task(id="T1", name="ok", object_label="a\rb", actions=(_action(),))

    def test_dataset_invariants(self):
        t1 = Task(id="T1", name="x", actions=(_action("T1-1"),))
        with pytest.raises(ValueError, match="duplicate task"):
            Dataset(tasks=(t1, t1))
        with pytest.raises(ValueError, match="bad version"):
            Dataset(tasks=(t1,), version=(1,))
        with pytest.raises(ValueError, match="bad version"):
            Dataset(tasks=(t1,), version=(1, -1))
        ds = Dataset(tasks=(t1,))
        assert ds.version == (1, 0)
        assert ds.action_count == 1
        assert ds.task("T1") is t1
        with pytest.raises(KeyError):
            ds.task("T9")
        assert [(t.id, a.id) for t, a in ds.iter_actions()] == [("T1", "T1-1")]

    def test_dataset_rejects_cross_task_action_collision(self):
        # "A" and "A.B" are distinct task ids, but both can own "A.B-1"
        # if the id of the first embeds a dash path; ensure real collisions die
        t1 = Task(id="A", name="", actions=(Action("A-1", "v", ActionCode.idle()),))
        t2 = Task(id="B", name="", actions=(Action("B-1", "v", ActionCode.idle()),))
        Dataset(tasks=(t1, t2))  # fine
        t3 = Task(
            id="A-1x",
            name="",
            actions=(Action("A-1x-1", "v", ActionCode.idle()),),
        )
        Dataset(tasks=(t1, t3))  # still distinct ids

    def test_empty_dataset_allowed_in_memory(self):
        assert Dataset().action_count == 0
