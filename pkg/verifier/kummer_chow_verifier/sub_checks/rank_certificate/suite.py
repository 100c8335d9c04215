# rank_certificate/suite.py
from ...checks import CheckSuite
from . import tools

DESCRIPTION = """
Lower bound on the rank of the higher Chow classes via their images under D.

**Checks:**
- the three canonical images follow from the seed D(xi_1 - xi_0) and the elements rho^a, rho^b
- the six lifts are valid and reproduce the 18 tabulated images up to fourth roots of unity
- the catalog factorization and the SVD rank at three independent point sets both give 18
- Theta respects the group law on the canonical images
- the full orbit has rank 18, the H- and I-orbits rank 3
"""

rank_certificate_suite = CheckSuite(
    name="rank_certificate",
    description=DESCRIPTION,
    checks=[
        tools.check_canonical_images,
        tools.check_lifts,
        tools.check_lift_table,
        tools.check_structural_rank,
        tools.check_numeric_rank,
        tools.check_theta_action,
        tools.check_orbit_ranks,
    ],
)

MODE_CHECKS = {
    "table": [
        tools.check_canonical_images,
        tools.check_lifts,
        tools.check_lift_table,
        tools.check_structural_rank,
        tools.check_numeric_rank,
    ],
    "full-orbit": [
        tools.check_canonical_images,
        tools.check_theta_action,
        tools.check_orbit_ranks,
    ],
    "canonical": [tools.check_canonical_images],
}


def rank_suite_for(mode: str) -> CheckSuite:
    """The checks behind one rank mode of the CLI."""
    return CheckSuite(name=f"rank_certificate[{mode}]", description=DESCRIPTION, checks=MODE_CHECKS[mode])
