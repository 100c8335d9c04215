"""rank_certificate: canonical images, the lifted table and the rank certificate"""

from .suite import rank_certificate_suite, rank_suite_for
