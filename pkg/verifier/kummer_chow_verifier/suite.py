# kummer_chow_verifier/suite.py
from .checks import CheckSuite
from .sub_checks.rational_field import rational_field_suite
from .sub_checks.group_engine import group_engine_suite
from .sub_checks.cocycles import cocycles_suite
from .sub_checks.diffop_engine import diffop_engine_suite
from .sub_checks.period_numerics import period_numerics_suite
from .sub_checks.rank_certificate import rank_certificate_suite

ROOT_DESCRIPTION = """
Verification engine for the higher Chow cycles on the Kummer family.

🧮 SUB-SUITES, in dependency order:
- rational_field: exact arithmetic in Q(i)(a,b)[sqrt(a), sqrt(1-a), sqrt(b), sqrt(1-b)]
- group_engine: the action table, the automorphisms of S' and G_T, G_Y, G_X
- cocycles: eta, phi, chi and their cocycle identities
- diffop_engine: the Picard-Fuchs operators, their transformation law, Theta and Psi
- period_numerics: periods, the regulator integral and the Picard-Fuchs residuals
- rank_certificate: canonical images, the lifted table, rank 18

Every check is independent; a failing check never stops the rest.
"""

SUB_SUITES = [
    rational_field_suite,
    group_engine_suite,
    cocycles_suite,
    diffop_engine_suite,
    period_numerics_suite,
    rank_certificate_suite,
]

root_suite = CheckSuite(
    name="kummer_chow_verifier",
    description=ROOT_DESCRIPTION,
    checks=[check for suite in SUB_SUITES for check in suite.checks],
)
