"""Exact combinatorics of symmetric divisors on the moduli space of
n-pointed rational curves: F-nef functions on cyclic groups, cyclic
quadratic forms, weightings, divisor expressions, semiampleness criteria
and the symmetric F-cone."""

from .criteria import (ClassificationRow, CriterionReport, cyclic_effectivity,
                       cyclic_semiample_test, democratic_test, emit_certificates,
                       new_nef_divisor, second_criterion_test, semiample_test,
                       weak_cyclic_effectivity)
from .divisors import (DivisorExpression, SymmetricDivisor, is_fnef_divisor, keel_rewrite,
                       parasymmetric, parse_divisor, psi_minus_delta, to_symmetric_class)
from .errors import *  # noqa: F401,F403
from .fcone import extreme_rays, fcone_inequalities, fcone_rays, ray_counts
from .groupfn import (SymmetricFunction, associated_fnef_function, is_fnef, lambda_fnef,
                      m_of, make_symmetric_function, parse_function, standard_function, tilde)
from .quadforms import (CyclicQuadraticForm, form_from_generator, is_balanced,
                        is_ell_balanced, is_weakly_balanced, min_on_zero_sum, named_form,
                        q_from_function)
from .trees import CyclicOrdering, LabeledTree, all_binary_trees, parse_newick, planar_orderings
from .verdict import Verdict
from .weightings import (Weighting, build_tree_weighting, cyclic_weighting,
                         democratic_weighting, effectivity_oracle, verify_effectivity)

__version__ = "0.1.0"
