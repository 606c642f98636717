"""
Verification reporting for bracketlab.
"""
from .generators import *

__all__ = [
    'CheckRecord',
    'VerificationReport',
    'BaseReportGenerator',
    'JsonLinesReportGenerator',
    'SummaryTableGenerator',
]
