"""Exact cohomology calculator for parametrised topological complexity of
Fadell-Neuwirth bundles F(R^k, n+m) -> F(R^k, m), k odd."""

from .basis import PoincarePolynomial, enumerate_basis, iter_basis, poincare_polynomial, top_grade
from .bounds import (
    BoundKind,
    BoundRecord,
    TcCertificate,
    cup_length_lower_bound,
    exhaustive_zero_divisor_search,
    lemma_95_expand,
    product_inequality_combine,
    theorem_product,
    upper_bound_dimension,
    verify_theorem,
)
from .diagonal import diagonal_apply, kernel_generators
from .expr import evaluate, parse
from .ring import (
    Element,
    Generator,
    Monomial,
    Side,
    Space,
    SpaceSpec,
    add,
    grade_of,
    make_generator,
    multiply,
    scalar_multiply,
)

__version__ = "0.1.0"
