"""rational_field: exact arithmetic in Q(i)(a,b) extended by four square roots"""

from .suite import rational_field_suite
