"""diffop_engine: the operator ring, pullbacks, the transformation formula and Theta/Psi"""

from .suite import diffop_engine_suite
