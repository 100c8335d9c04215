"""period_numerics: tanh-sinh periods, the regulator integral and the Picard-Fuchs residuals"""

from .suite import period_numerics_suite
