"""Exact computations in the Heisenberg vertex operator algebra M(1), its
orbifold M(1)^+, and the Whittaker modules M(1, zeta) and M(1, zeta)(theta)."""

from .errors import (DegenerateInput, DegenerateType, InvariantError, IrrationalParameter,
                     M1PlusError, NotWhittaker, ParseError, SectorError)
from .fock import (FockVector, Sector, annihilate, basis, create, graded_dim, monomial,
                   partition_count, theta, vacuum, weight_decompose)
from .grammar import format_element, parse_element
from .identities import (JAY, OMEGA, VAC, RelationReport, assemble_relation, central_charge,
                         generator, verify_determinant_lemma, verify_jj_commutator,
                         verify_lie_oj)
from .vertex_ops import (CommutatorExpansion, commutator_expansion, nth_product,
                         verify_borcherds)
from .weak_modules import (CmnTable, ModuleVector, WhittakerParams, WhittakerType, cmn_table,
                           exp_delta, j_eigenvalues, module_mode_action, whittaker_type_of)
from .whittaker import ModuleDescriptor, canonicalize, classify, fiber_check, params_from_type

__version__ = "0.1.0"
