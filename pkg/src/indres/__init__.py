"""Independent resolutions of semilattices and the K-theory of their crossed products."""

from .action import (Affine, Cyclic, EnvElem, Envelope, FreeWord, GeneratorAction, GlobalAction,
                     Move, Partition, PartialAction, dilate, env_product, equivalent,
                     free_action_check, orbits, trivial_action)
from .covers import (CoverSystem, Record, Report, ResolutionGenerators, build_resolution,
                     check_all, check_condition_i, check_condition_ii, check_condition_iii,
                     check_condition_iv)
from .errors import (BasisError, CapabilityError, ClosureError, ConditionError, IndresError,
                     StructureError, UnsupportedError, ValidationError)
from .homology import (AbGroup, ChainComplex, IntMatrix, boundary_from_expansions, homology,
                       koszul_complex, smith_normal_form)
from .ktheory import Extension, KResult, assemble, direct_sum
from .zlattice import ONE, ZERO, FiniteSemilattice, Semilattice, ZComb, is_finite_cover, join, product, support

__version__ = "0.1.0"
