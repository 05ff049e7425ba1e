"""Character degree graphs of finite solvable groups.

Permutation groups are enumerated into sorted numpy arrays; character
degrees come from class matrices reduced modulo a suitable prime; the
prime graph, disconnected-type classifier and square-graph decomposition
verifier are built on top.
"""

from .characters import DegreeMultiset, character_degrees, conjugacy_classes, rho
from .constructions import (ActionSpec, agammal, cyclic, dihedral, direct_product, elementary_abelian,
                            extraspecial, extraspecial_by_cyclic, named, natural_semidirect, quaternion8,
                            quotient, semidirect, shuffle_generators)
from .disconnected import TypeReport, classify_disconnected, small_isomorphic
from .errors import CapExceeded, CdGraphError, DomainError, HypothesisError, InputError, InternalError
from .graph import PrimeGraph, build_graph, dot_export, feasibility_filter, is_square, shape
from .limits import Limits, limits, use_limits
from .perm import PermGroup, Permutation, symmetric
from .square import (CheckReport, Counterexample, DecompositionCertificate, check_frattini_invariance,
                     check_h2_corollary, check_h_bound, check_two_nonab_corollary,
                     find_direct_factorizations, verify_hypothesis1, verify_main_theorem)
from .structure import (FittingData, center, derived_subgroup, fitting, frattini, is_nilpotent,
                        is_solvable, minimal_normal_subgroups, normal_subgroups, p_core, sylow)

__version__ = "0.1.0"
