"""Annotation language and analysis toolkit for deformable-object
manipulation actions.

The package covers the full pipeline: tag vocabulary and action codes
(:mod:`tdom.codes`), the text format parser and serializer
(:mod:`tdom.lang`), consistency rules (:mod:`tdom.rules`), projections
into baseline taxonomies (:mod:`tdom.baselines`), task segmentation and
clustering (:mod:`tdom.segmentation`, :mod:`tdom.clustering`), geometric
bending assessment (:mod:`tdom.geometry`), the bundled reference corpus
(:mod:`tdom.corpus`), and a command-line front end (:mod:`tdom.cli`).
"""

from .codes import (
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
from .diagnostics import (
    Diagnostic,
    Severity,
    SourceSpan,
    format_diagnostic,
    has_errors,
)
from .lang import (
    DatasetParseError,
    dataset_from_json,
    dataset_to_json,
    dumps_dataset,
    emit_dataset,
    loads_dataset,
    parse_code,
    parse_dataset,
)
from .rules import RuleId, constraint_sources, validate
from .baselines import (
    BullockArm,
    BullockCode,
    BullockContact,
    BullockMotion,
    BullockSlippage,
    PauliusCode,
    PauliusEngagement,
    PauliusOutcome,
    has_deformable_contact,
    to_bullock,
    to_paulius,
)
from .segmentation import (
    Segment,
    Segmentation,
    TaxonomyView,
    compare,
    lane_report,
    segment,
    view_code,
)
from .clustering import (
    Cluster,
    ClusterReport,
    NodeShape,
    NodeStyle,
    cluster,
    dataset_styles,
    emit_dot,
    hash_color,
    load_palette,
    node_style,
    stats_rows,
    stats_table,
)
from .geometry import (
    BendingAssessment,
    BucketMap,
    ClothState,
    Crossing,
    CrossingDiagram,
    DegenerateProjectionError,
    GaussVisit,
    Polyline3D,
    assess_1d,
    assess_2d,
    parse_cloth_state,
    parse_polyline,
    project_and_cross,
    simplify,
)
from .corpus import (
    CANONICAL_SHA256,
    CANONICAL_TEXT,
    ChecksumMismatchError,
    corpus_checksum,
    load_canonical,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionCode",
    "AgentContactTag",
    "ArmSide",
    "BendLevel",
    "BendingAssessment",
    "BucketMap",
    "BullockArm",
    "BullockCode",
    "BullockContact",
    "BullockMotion",
    "BullockSlippage",
    "CANONICAL_SHA256",
    "CANONICAL_TEXT",
    "ChecksumMismatchError",
    "ClothState",
    "Cluster",
    "ClusterReport",
    "Crossing",
    "CrossingDiagram",
    "Dataset",
    "DatasetParseError",
    "Deformation",
    "DeformationSet",
    "DegenerateProjectionError",
    "Diagnostic",
    "EnvContactTag",
    "GaussVisit",
    "GraspTag",
    "MotionTag",
    "NodeShape",
    "NodeStyle",
    "ObjectDim",
    "PauliusCode",
    "PauliusEngagement",
    "PauliusOutcome",
    "PerArm",
    "Polyline3D",
    "RuleId",
    "Segment",
    "Segmentation",
    "Severity",
    "SlidingSlots",
    "SlidingTag",
    "SourceSpan",
    "Task",
    "TaxonomyView",
    "action_id",
    "assess_1d",
    "assess_2d",
    "cluster",
    "code_diff",
    "compare",
    "constraint_sources",
    "corpus_checksum",
    "dataset_from_json",
    "dataset_styles",
    "dataset_to_json",
    "dumps_dataset",
    "emit_dataset",
    "emit_dot",
    "format_diagnostic",
    "has_deformable_contact",
    "has_errors",
    "hash_color",
    "lane_report",
    "load_canonical",
    "load_palette",
    "loads_dataset",
    "mask_deformation",
    "node_style",
    "parse_cloth_state",
    "parse_code",
    "parse_dataset",
    "parse_polyline",
    "project_and_cross",
    "segment",
    "simplify",
    "stats_rows",
    "stats_table",
    "to_bullock",
    "to_paulius",
    "validate",
    "view_code",
    "__version__",
]
