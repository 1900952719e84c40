"""Exact engine for free eigenfunction modules on glued rational varieties
and the commuting matrix differential operators they produce."""

from .gaussq import GaussQ, parse_gaussq, format_gaussq
from .exprat import ExpContext, ExpRat
from .biform import BiForm, MatrixP, parse_form, t_monomials, bidegree_monomials
from .spectral import (FlowForm, GammaData, OmegaData, GenericityReport,
                       validate, validate_gamma, validate_omega,
                       require_generic, solve_flow_space,
                       solve_flow_space_omega, eigenvalues_distinct,
                       check_eigenvector_nonvanishing,
                       check_flow_discriminants)
from .bamodule import (ModuleElement, ModuleBasis, grade_basis,
                       expected_rank, multi_indices, in_span)
from .mero import (MeroFunc, check_descent, require_admissible, mero_basis,
                   mero_one, mero_dimension, mero_span_contains)
from .diffop import (DiffOp, apply_row, expand, build_operator, commutator,
                     eigen_relation_holds)
from .embedding import (ProjPoint, phi1, phi2, check_phi1_equations,
                        phi2_vanishing_ok, injectivity_probe,
                        gamma_identified, omega_identified, ProbeReport)
from . import errors

__version__ = "0.1.0"
