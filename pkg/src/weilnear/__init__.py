"""Exact calculus on near-point manifolds over Weil algebras.

Core layers:

* :mod:`weilnear.weil` -- local algebras, exact element/matrix arithmetic;
* :mod:`weilnear.poly` -- polynomial function models and the prolongation;
* :mod:`weilnear.ops` -- order-one differential operators and their bracket;
* :mod:`weilnear.forms` -- A-valued exterior calculus;
* :mod:`weilnear.jacobi` -- the Jacobi bracket constructions;
* :mod:`weilnear.cli` -- the ``weilnear`` verification command.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import (AlgebraError, DegenerateFormError, MismatchError,
                     NotInvertibleError, ParseError, ProblemError,
                     StructureError, WeilnearError)
from .forms import (AForm, RForm, d_A, d_alpha, d_alpha_base, d_base,
                    evaluate, interior, lie_derivative, prolong_form,
                    wedge, wedge_base)
from .jacobi import (ABracket, JacobiData, LcsData, SymplecticEngine,
                     advisory_jacobi_check, check_jacobi_axioms,
                     check_prolongation_coincidence,
                     generic_symplectic_bracket, hamiltonian_at,
                     hamiltonian_field, jacobi_from_lcs, lcs_bracket,
                     prolong_jacobi, tau_apply_definition, tau_operator)
from .ops import DiffOp, bracket, check_lie_rinehart, module_action
from .poly import APoly, NearPoint, Poly, prolong, taylor_value
from .weil import (AElement, WeilAlgebra, dual_numbers, jet_algebra,
                   nil_matrix_invert, rational_matrix_inverse,
                   truncated_algebra, validate_local)

__all__ = [
    "KERNEL_BACKEND",
    "WeilnearError", "AlgebraError", "MismatchError", "NotInvertibleError",
    "DegenerateFormError", "StructureError", "ParseError", "ProblemError",
    "WeilAlgebra", "AElement", "truncated_algebra", "dual_numbers",
    "jet_algebra", "validate_local", "nil_matrix_invert",
    "rational_matrix_inverse",
    "Poly", "APoly", "NearPoint", "prolong", "taylor_value",
    "DiffOp", "bracket", "module_action", "check_lie_rinehart",
    "RForm", "AForm", "prolong_form", "d_A", "d_alpha", "d_base",
    "d_alpha_base", "wedge", "wedge_base", "interior", "lie_derivative",
    "evaluate",
    "LcsData", "JacobiData", "ABracket", "SymplecticEngine",
    "lcs_bracket", "prolong_jacobi", "generic_symplectic_bracket",
    "hamiltonian_field", "hamiltonian_at", "jacobi_from_lcs",
    "tau_operator", "tau_apply_definition",
    "check_jacobi_axioms", "check_prolongation_coincidence",
    "advisory_jacobi_check",
]

__version__ = "0.1.0"
