"""Combinatorial similarity of mappings on X x X and the relation semigroups of their fibers."""

from .errors import (
    CapExceededError,
    CombsimError,
    GroundMismatchError,
    InvalidPseudometricError,
    NotABijectionError,
    NotAGroupError,
    NotAHomomorphismError,
    NotASemigroupError,
    NotEquivalenceError,
    PreconditionError,
    UnknownSymbolError,
)
from .mapkit import SymMapping, coherence_point, fiber_partition, fibers, is_coherent
from .pmetric import Pseudometric, metric_identification, validate
from .relcore import BinaryRelation, Partition, SquarePartition, rect_tensor, sym_tensor_s1
from .semigrp import FiniteSemigroup, RelationSemigroup, generate
from .simdec import decide_comb_similar, pseudometric_similar
from .verdict import Verdict

__version__ = "0.1.0"
