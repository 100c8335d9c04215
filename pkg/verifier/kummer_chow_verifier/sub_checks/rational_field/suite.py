# rational_field/suite.py
from ...checks import CheckSuite
from . import tools

DESCRIPTION = """
Exact arithmetic in the function field Q(i)(a,b)[sqrt(a), sqrt(1-a), sqrt(b), sqrt(1-b)].

**Checks:**
- field axioms, inverses and the Leibniz rule hold exactly on random elements
- pullback homomorphisms are multiplicative
- numeric evaluation agrees with exact arithmetic and exact derivatives
- the 16 square-root monomials are linearly independent
"""

rational_field_suite = CheckSuite(
    name="rational_field",
    description=DESCRIPTION,
    checks=[
        tools.check_field_axioms,
        tools.check_inverse,
        tools.check_leibniz,
        tools.check_hom_multiplicative,
        tools.check_eval_compatible,
        tools.check_derivative_fd,
        tools.check_monomial_independence,
    ],
)
