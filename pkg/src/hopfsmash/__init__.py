"""Exact computations with smash products of graded algebras and Hopf algebras."""

from .actions import (ActionError, HAction, SmashAlgebra, action_from_grading,
                      covering_presentation, smash_fd, smash_product, trivial_action,
                      verify_covering_iso, verify_module_algebra)
from .dg import (DGAlgebraSC, DGError, cohomology_algebra, dg_algebra, dg_smash,
                 dg_smash_cohomology_check, verify_dg)
from .ext import (ExtAlgebraSC, h_action_on_ext, verify_cor_ext, verify_thm_koszul_transfer,
                  yoneda_ext_algebra)
from .fdalgebra import AlgebraError, FDAlgebra, truncated_algebra
from .frobenius import cy_check, graded_symmetric_check
from .groups import FiniteGroup, cyclic, direct_product, from_table
from .hopf import (HopfAlgebraSC, dual_group_algebra, from_structure_constants, ground_field,
                   group_algebra, left_integral, verify_hopf_axioms)
from .io import BundleError, ProblemBundle, load_bundle
from .linalg import kernel_basis, rank, rref
from .modules import adjoint_phi, hom_action, hom_space, regular_module, resolution_piece, theta
from .quiver import (PathElement, Presentation, Quiver, commutative_polynomial, free_algebra,
                     hilbert_function, normal_form, one_vertex_presentation)
from .report import Report
from .resolution import (d_koszul_check, gorenstein_check_bounded, minimal_resolution,
                         trivial_module)
from .superpotential import (Superpotential, cyclic_derivative, ideal_equality_check,
                             jacobian_presentation, lift_superpotential)

__version__ = "0.1.0"
