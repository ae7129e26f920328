"""Direct-limit groups of integer multiplication sequences and toroidal sets."""

from toroidal.arith import FactoredNat, PrimeSet, factor, radical, valuation

__version__ = "0.1.0"

__all__ = ["FactoredNat", "PrimeSet", "factor", "radical", "valuation", "__version__"]
