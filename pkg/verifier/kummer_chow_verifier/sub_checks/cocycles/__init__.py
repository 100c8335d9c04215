"""cocycles: eta, phi_1, phi_2 and chi with their cocycle identities"""

from .suite import cocycles_suite
