# group_engine/suite.py
from ...checks import CheckSuite
from . import tools

DESCRIPTION = """
Finite groups acting on the Kummer family.

**Checks:**
- the 24-record action table of the four sections is closed under composition
- the automorphisms of S' form a group with the signature of S_4 and act faithfully on the octahedron
- |G_T| = 576, |G_Y| = 9216, |G_X| = 18432 and the group law is associative with inverses
- the subgroups H and I have orders 32 and 96, meet trivially, and |G_X/HI| = 6
"""

group_engine_suite = CheckSuite(
    name="group_engine",
    description=DESCRIPTION,
    checks=[
        tools.check_sigma_table,
        tools.check_gt_factor,
        tools.check_octahedral,
        tools.check_group_orders,
        tools.check_gx_laws,
        tools.check_generators,
        tools.check_subgroups,
    ],
)
