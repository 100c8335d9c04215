"""group_engine: the permutation tables, the 24 automorphisms of S' and the groups G_T, G_Y, G_X"""

from .suite import group_engine_suite
