# period_numerics/suite.py
from ...checks import CheckSuite
from . import tools

DESCRIPTION = """
Numerical side of the Picard-Fuchs system.

**Checks:**
- tanh-sinh quadrature against the Beta integral and closed forms
- P_1 against pi 2F1(1/2, 1/2; 1; c) and the hypergeometric equation for P_1, P_2
- linear independence of P_1, P_2
- the regulator integral L by two routes, and L(a,b) + L(b,a) = 2 P_1(a) P_1(b)
- D annihilates the four products 2 P_i(a) P_j(b)
- D(L) matches the closed form (finite differences and the 1-D reduction)
- D_1 of the integrand equals dH/dx
"""

period_numerics_suite = CheckSuite(
    name="period_numerics",
    description=DESCRIPTION,
    checks=[
        tools.check_quadrature_oracles,
        tools.check_period_ode,
        tools.check_period_independence,
        tools.check_triangle_routes,
        tools.check_pf_homogeneous,
        tools.check_pf_inhomogeneous,
        tools.check_reduction,
        tools.check_h_identity,
    ],
)
