# diffop_engine/suite.py
from ...checks import CheckSuite
from . import tools

DESCRIPTION = """
Linear differential operators over B and the equivariance of the Picard-Fuchs pair.

**Checks:**
- the Picard-Fuchs operators D_1, D_2 and the Leibniz rule
- associativity of composition and agreement with application
- phi^3 D phi^-1 = D^tau on all 576 elements of G_T
- the three literal transformed operators and the chain rule for a/(a-1)
- pullback functoriality and D^tau(tau^# f) = tau^#(D f)
- Psi linearization, D(Psi f) = Theta(D f) and the rho^a, rho^b images
"""

diffop_engine_suite = CheckSuite(
    name="diffop_engine",
    description=DESCRIPTION,
    checks=[
        tools.check_pf_operators,
        tools.check_operator_ring,
        tools.check_transformation_all,
        tools.check_transformed_operators,
        tools.check_pullback_laws,
        tools.check_theta_psi,
    ],
)
