"""kummer_chow_verifier: machine checks for the higher Chow cycles on a family of Kummer surfaces"""

from . import suite
from .suite import root_suite
