"""Exact arithmetic with one-dimensional formal group laws over Q-algebras.

Submodules: ``rings`` (polynomial coefficient rings), ``series`` (truncated
power series and residues), ``fgl`` (formal group laws and their symmetric
data), ``idempotents`` (the two maps onto odd laws), ``witt`` (sequence
groups), ``involutions`` (formal involutions and cosets), ``verify`` and
``cli``.
"""

from .fgl import FormalGroupLaw, additive, multiplicative, universal
from .rings import GeneratorTable, Polynomial, universal_table
from .series import LaurentSeries, TruncSeries

__version__ = "0.1.0"

__all__ = [
    "FormalGroupLaw",
    "GeneratorTable",
    "LaurentSeries",
    "Polynomial",
    "TruncSeries",
    "additive",
    "multiplicative",
    "universal",
    "universal_table",
]
