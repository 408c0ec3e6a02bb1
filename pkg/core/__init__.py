"""
Core computation for ER Pointlikes
No CLI dependencies - can be used from any interface
"""

from .semigroup import Semigroup
from .power import Complex, Subset
from .construct import construct_ER
from .verifier import certify, VerificationReport
from .export import ExportManager

__all__ = ['Semigroup', 'Complex', 'Subset', 'construct_ER', 'certify', 'VerificationReport',
           'ExportManager']
