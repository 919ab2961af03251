"""Permutation statistics, labeled Motzkin paths and a fourteen-parameter J-fraction.

Submodules:

* ``poly``          sparse multivariate polynomials with exact rational coefficients
* ``perms``         permutations, the fourteen statistics, length-3 patterns
* ``motzkin``       labeled Motzkin paths and the bijection with permutations
* ``cfrac``         the continued fraction and its moment expansion
* ``moments``       Hankel determinants, classification, orthogonal polynomials
* ``colored``       k-colored permutations
* ``arrangements``  k-arrangements, their forms and the open conjectures
* ``catalog``       named specializations with reference data
* ``cli``           the ``permfrac`` command
"""
from .cfrac import PARAMETERS, JacobiCoefficients, ParamAssignment
from .motzkin import LabeledMotzkinPath, eta, eta_inverse
from .perms import Permutation, parse_permutation, stats
from .poly import Poly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "PARAMETERS",
    "JacobiCoefficients",
    "ParamAssignment",
    "LabeledMotzkinPath",
    "eta",
    "eta_inverse",
    "Permutation",
    "parse_permutation",
    "stats",
    "Poly",
    "parse_poly",
    "__version__",
]
