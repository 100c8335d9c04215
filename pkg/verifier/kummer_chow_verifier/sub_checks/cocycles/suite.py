# cocycles/suite.py
from ...checks import CheckSuite
from . import tools

DESCRIPTION = """
1-cocycles of G_X with values in the units of B.

**Checks:**
- chi(rho)^2 = eta(rho) for every element of G_X
- eta_i = sgn * phi_i^2 on every class of G_Y
- phi_1, phi_2 separate variables and take the expected unit values
- the cocycle identity for chi and eta (random pairs plus all generator pairs) and for phi_1, phi_2 (all of G_T)
- chi(rho^-1) agrees with the inverse pulled back
"""

cocycles_suite = CheckSuite(
    name="cocycles",
    description=DESCRIPTION,
    checks=[
        tools.check_eta_square,
        tools.check_eta_sign_square,
        tools.check_phi_separation,
        tools.check_phi_values,
        tools.check_chi_cocycle,
        tools.check_eta_cocycle,
        tools.check_phi_cocycles,
        tools.check_chi_inverse,
    ],
)
