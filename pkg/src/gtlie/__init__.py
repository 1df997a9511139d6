"""Exact computations in graded loop algebras of surfaces.

Truncated tensor (Hopf) algebras over the rationals, Fox pairings and
quasi-derivations with their induced brackets and cobrackets on cyclic
words, relative 2-cocycles and Lie algebra extensions, and presented
graded Lie algebras covering the framed Drinfeld-Kohno family and the
kernels of its strand deletion maps.
"""

from .errors import (GTError, ContextMismatch, IncompleteTable, WrongSide,
                     NonAugmentedInput, InhomogeneousInput, NotSurjective,
                     NotGroupLike, IncompatiblePair, NonGeneratorWord,
                     IndexOutOfRange)
from .core import (Alphabet, Context, TensorElt, TensorSq, CyclicElt,
                   CyclicSq, lyndon_words, lyndon_basis, lyndon_tree,
                   tree_expand, min_rotation, coproduct, antipode, counit,
                   lie_bracket, exp_truncated, inverse, is_group_like,
                   require_group_like, cyclic_project)
from .fox import (AlgebraMap, FoxPairing, QuasiDerivation, FoxDerivative,
                  fox_D, fox_eval, pairing_eval, qder_eval, D_map,
                  make_exact_pairing, make_inner_pairing, make_exact_qder,
                  transpose_fox, transpose_pairing, transpose_qder,
                  solve_two_sided_derivatives)
from .brackets import (double_bracket, bracket_lift, bracket_cyclic,
                       cobracket_lift, cobracket_cyclic, BracketFast,
                       CobracketFast, adjoint_action, dq_map)
from .cocycles import (RelativeCocycle, ClosednessReport, ExtensionElement,
                       e_functor, check_relative_closed, extension_bracket,
                       check_fox_morphism)
from .surfaces import (SurfaceContext, Framing, make_rho_G, make_q_framing,
                       kappa_table, cyc_left, mu_r_oracle, verify_bialgebra,
                       bernoulli_series, bernoulli_phi, BernoulliData,
                       ConjugationData, conjugation_defect)
from .braids import (GradedPresentation, DegreeComponent, LieHomomorphism,
                     component, normal_form, dims, dims_csv,
                     check_homomorphism, dk_algebra, dk_compose,
                     string_split, string_delete, face_map, kernel_dims,
                     presented_deletion_kernel,
                     presented_double_deletion_kernel,
                     presented_pure_deletion_kernel,
                     presented_pure_double_deletion_kernel,
                     bracket_square_quotient, goldman_extension_algebra,
                     verify_phi, lie_combine, lie_add, lie_scale, lie_br,
                     lie_equal, lie_text, tree_degree, tree_text)
from .cli import parse_element, run

__version__ = "0.1.0"
