"""The bundled reference corpus: 10 dual-arm manipulation tasks, 60 actions.

The document below is the canonical annotation table for the toolkit's
analysis features (validation, projection, segmentation, clustering). One
action per line: per-arm motion (M), per-arm grasp (G), environment contact
(NPE), per-arm agent contact (NPA), contact sliding slots env/left/right
(CS), deformation set (D), structured bending (S), unstructured bending
(US). It is embedded verbatim, kept in the exact form the emitter produces
so emit(parse(text)) is byte-identical, and guarded by a content hash so a
corrupted install fails loudly instead of skewing statistics.
"""

from __future__ import annotations

import hashlib

from .codes import Dataset
from .lang import parse_dataset

PROVENANCE = "T-DOM reference task annotations, 10 tasks / 60 actions, revision 1.0"

CANONICAL_TEXT = """\
task "Fold towel" id T1
object "towel" dim 2D
action T1-1 "approach" M: G N | G: N N | NPE: R | NPA: N N | CS: N N N | D: N | S: L1 | US: N
action T1-2 "slide(under)" M: G N | G: N N | NPE: R | NPA: R N | CS: N A N | D: N | S: L1 | US: N
action T1-3 "grasp" M: N N | G: P N | NPE: R | NPA: N N | CS: N N N | D: C | S: L1 | US: N
action T1-4 "fold" M: GE N | G: P N | NPE: R | NPA: N N | CS: N N N | D: C | S: L2 | US: N
action T1-5 "ungrasp" M: N N | G: N N | NPE: R | NPA: R N | CS: N N N | D: N | S: L2 | US: N
action T1-6 "slide(out)" M: G N | G: N N | NPE: R | NPA: R N | CS: N A N | D: N | S: L2 | US: N

task "Transport towel" id T2
object "towel" dim 2D
action T2-1 "approach" M: G N | G: N N | NPE: R | NPA: N N | CS: N N N | D: N | S: L2 | US: N
action T2-2 "slide(under)" M: G N | G: N N | NPE: R | NPA: R N | CS: N A N | D: N | S: L2 | US: N
action T2-3 "grasp" M: N N | G: P N | NPE: R | NPA: N N | CS: N N N | D: C | S: L2 | US: N
action T2-4 "transport" M: G N | G: P N | NPE: N | NPA: N N | CS: N N N | D: C | S: L2 | US: N
action T2-5 "place" M: GE N | G: P N | NPE: S | NPA: N N | CS: N N N | D: C | S: L2 | US: N
action T2-6 "ungrasp" M: N N | G: N N | NPE: S | NPA: R N | CS: N N N | D: N | S: L2 | US: N
action T2-7 "slide(out)" M: G N | G: N N | NPE: S | NPA: R N | CS: N A N | D: N | S: L2 | US: N

task "Wring out towel" id T3
object "towel" dim 2D
action T3-1 "approach(dual)" M: G G | G: N N | NPE: R | NPA: N N | CS: N N N | D: N | S: N | US: N
action T3-2 "slide(under-dual)" M: G G | G: N N | NPE: R | NPA: R R | CS: N A A | D: N | S: N | US: N
action T3-3 "grasp(dual)" M: N N | G: P P | NPE: R | NPA: N N | CS: N N N | D: N | S: N | US: N
action T3-4 "lift(dual)" M: G G | G: P P | NPE: N | NPA: N N | CS: N N N | D: TN | S: L0 | US: N
action T3-5 "twist(dual)" M: GE GE | G: P P | NPE: N | NPA: N N | CS: N N N | D: TN+TR | S: N | US: N

task "Edge tracing" id T4
object "cloth" dim 2D
action T4-1 "grasp(dual)" M: N N | G: P P | NPE: R | NPA: N N | CS: N N N | D: N | S: N | US: L2
action T4-2 "tracing(static)" M: GE N | G: P P | NPE: R | NPA: N N | CS: N N P | D: TN | S: L0 | US: L2
action T4-3 "tracing(motion)" M: N GE | G: P P | NPE: R | NPA: N N | CS: N N A | D: TN | S: L0 | US: L1

task "Transport meat" id T5
object "meat piece" dim 3D
action T5-1 "approach" M: G N | G: N N | NPE: R | NPA: N N | CS: N N N | D: N | S: N | US: N
action T5-2 "slide(under)" M: G N | G: N N | NPE: R | NPA: R N | CS: N A N | D: N | S: N | US: N
action T5-3 "grasp" M: N N | G: P N | NPE: R | NPA: N N | CS: N N N | D: C | S: N | US: N
action T5-4 "transport" M: G N | G: P N | NPE: N | NPA: N N | CS: N N N | D: C | S: L0 | US: N
action T5-5 "place" M: G N | G: P N | NPE: R | NPA: N N | CS: N N N | D: C | S: N | US: N
action T5-6 "ungrasp" M: N N | G: N N | NPE: R | NPA: R N | CS: N N N | D: N | S: N | US: N
action T5-7 "slide(out)" M: N N | G: N N | NPE: R | NPA: R N | CS: N A N | D: N | S: N | US: N

task "Flatten cloth" id T6
object "cloth" dim 2D
action T6-1 "approach" M: G N | G: N N | NPE: R | NPA: N N | CS: N N N | D: N | S: N | US: L2
action T6-2 "grasp" M: N N | G: P N | NPE: R | NPA: N N | CS: N N N | D: N | S: N | US: L2
action T6-3 "lift" M: G N | G: P N | NPE: R | NPA: N N | CS: N N N | D: N | S: N | US: L2
action T6-4 "place" M: G N | G: P N | NPE: R | NPA: N N | CS: N N N | D: N | S: L1 | US: L1
action T6-5 "slide(out)" M: N N | G: N N | NPE: R | NPA: R N | CS: N A N | D: N | S: L1 | US: L1

task "Unfold gown" id T7
object "medical gown" dim 2D
action T7-1 "grasp(dual)" M: N N | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: L2
action T7-2 "unfold(dynamic)" M: K K | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: L1

task "Bag opening" id T8
object "bag" dim 2D
action T8-1 "grasp(dual)" M: N N | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: L0
action T8-2 "unfold(dynamic)" M: K K | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: L0
action T8-3 "grasp(dual)" M: N N | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: N
action T8-4 "offer" M: N N | G: P P | NPE: R | NPA: N N | CS: N N N | D: N | S: N | US: N

task "Open glove" id T9
object "surgical glove" dim 2D
action T9-1 "approach" M: N G | G: N N | NPE: RS | NPA: N N | CS: N N N | D: N | S: N | US: L1
action T9-2 "contact" M: N G | G: N N | NPE: RS | NPA: N R | CS: N N N | D: N | S: N | US: L1
action T9-3 "grasp" M: N N | G: N P | NPE: RS | NPA: N R | CS: N N N | D: TN | S: N | US: L1
action T9-4 "lift" M: N G | G: N P | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: L1
action T9-5 "approach(second)" M: G N | G: N P | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: L1
action T9-6 "grasp(dual)" M: N N | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: L1
action T9-7 "ungrasp(second)" M: N N | G: P N | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: L0
action T9-8 "approach(second)" M: N G | G: P N | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: L0
action T9-9 "grasp(dual)" M: N N | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: N | US: L0
action T9-10 "open" M: GE GE | G: P P | NPE: N | NPA: N N | CS: N N N | D: TN | S: L0 | US: N

task "Cable looping" id T10
object "cable" dim 1D
action T10-1 "grasp" M: N N | G: N P | NPE: N | NPA: N N | CS: N N N | D: N | S: L0 | US: N
action T10-2 "hang" M: N GE | G: N P | NPE: N | NPA: N N | CS: N N N | D: N | S: L0 | US: N
action T10-3 "grasp(dual)" M: N N | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: L0 | US: N
action T10-4 "ungrasp(second)" M: N N | G: P N | NPE: N | NPA: N N | CS: N N N | D: N | S: L0 | US: N
action T10-5 "approach(second)" M: G G | G: P N | NPE: N | NPA: N N | CS: N N N | D: N | S: L0 | US: N
action T10-6 "grasp(dual)" M: N N | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: L0 | US: N
action T10-7 "fold(cable)" M: GE GE | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: L1 | US: N
action T10-8 "ungrasp(hold)" M: N N | G: N P | NPE: N | NPA: R N | CS: N N N | D: N | S: L1 | US: N
action T10-9 "hang" M: N GE | G: N P | NPE: N | NPA: R N | CS: N N N | D: N | S: L1 | US: N
action T10-10 "grasp(dual)" M: N N | G: P P | NPE: N | NPA: N N | CS: N N N | D: N | S: L1 | US: N
action T10-11 "ungrasp(second)" M: N N | G: P N | NPE: N | NPA: N N | CS: N N N | D: N | S: L1 | US: N
"""

CANONICAL_SHA256 = "a2603083c2139bd326a1bc5b3aa2cc4e61278196f47a05b50b4d053dbbceff08"


class ChecksumMismatchError(RuntimeError):
    """The embedded corpus text does not match its recorded hash."""


def corpus_checksum(text: str | None = None) -> str:
    if text is None:
        text = CANONICAL_TEXT
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def load_canonical() -> Dataset:
    """Parse and return the reference corpus after verifying its hash."""
    digest = corpus_checksum()
    if digest != CANONICAL_SHA256:
        raise ChecksumMismatchError(
            f"corpus hash {digest} does not match recorded {CANONICAL_SHA256}"
        )
    return parse_dataset(CANONICAL_TEXT)
