"""braidcoh: exact Hochschild cohomology for braided presented algebras.

Computes H^*(A, k) with trivial coefficients for finitely presented
Z-graded algebras carrying an action of t (Jordan plane, super Jordan
plane, or user presentations) and mechanically verifies, in exact rational
arithmetic, the graded braided commutativity of the opposite cup product,
the strict identities behind cocommutativity of the deconcatenation
coproduct, and the coduoid interchange square on small free resolutions.
"""

from .algebra import (BUILTIN_PRESENTATIONS, Generator, Presentation,
                      complete_overlaps, jordan, load_presentation,
                      presentation_from_json, presentation_to_json,
                      super_jordan)
from .braided import (braid, braid_inverse, braided_square_multiply,
                      check_bimonoid_axioms, coproduct, counit)
from .complexes import (ChainMap, ComplexOfGVS, GradedVectorSpace, LinearMap,
                        find_homotopy, lift_chain_map)
from .cup import (CochainFunctional, ComparisonF, ComparisonG,
                  act_on_functional, braid_bar_segment, cup_opposite,
                  cup_table, dual_functionals, make_comparisons,
                  unit_functional, verify_braided_commutativity)
from .duoidal import (AlgebraComplex, OdotComplex, TensorOverAComplex,
                      interchange_graded_sign, verify_coduoid, zeta_apply)
from .errors import (BraidcohError, InvalidComplexError, LiftingError,
                     NotBimonoidError, NotConfluentError, PresentationError,
                     SchemaError, TruncationError)
from .linalg import ExactSolver, QuotientSpace, image_basis, kernel_basis, rref
from .resolutions import (FreeBimoduleResolution, FreeResolutionComplex,
                          builtin_jordan, builtin_super_jordan,
                          cohomology_dims, induced_trivial_cochain,
                          parse_resolution, serialize_resolution, validate)
from .scalars import QQ
from .simplicial import (aw, aw_twisted, bar_contracting_homotopy,
                         bar_differential, dec, degeneracy, face, g_map,
                         simplicial_differential, verify_dec_cocommutativity,
                         verify_dec_window)

__version__ = "0.1.0"
