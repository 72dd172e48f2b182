"""Exact computations in the quantum matrix algebra O_q(M_{m,n})."""

from .coeff import LaurentPoly, Q, RationalFunction, specialize_q
from .errors import *  # noqa: F401,F403
from .pbw import (AlgebraShape, Element, ExactField, QuantumMatrixAlgebra, SpecializedField,
                  multiply, straighten_word)
from .minors import (b_element, complement, gamma, gamma_images, normal_from_polynomial,
                     quantum_determinant, quantum_minor)
from .morphisms import (GeneratorMap, MapReport, TorusParam, apply_map, check_map, compose,
                        diagonal_scalars, identity_map, recognize_torus, scalar_ratio,
                        torus_automorphism, transpose_automorphism)
from .linalg import LinearSpace, compare_spaces
from .analysis import (DerivationCandidate, TwistCertificate, center_basis, conjugate_past_normal,
                       graded_derivation_space, inner_derivation, inner_derivation_space,
                       is_central, is_normal_qcentral, q_commutation_twist, right_divide_by_normal)
from .expr import evaluate, evaluate_text, parse_expression
from .verify import SuiteReport, replay_n3_proof, run_identity_suite

__version__ = "0.1.0"
