"""Certified level bounds for perfect complexes over graded quotients.

The package computes commutative algebra invariants (dimension, depth,
heights, free rank, Koszul homology) over F_p[x1..xn]/J and assembles
certified lower and upper bounds for the level of a perfect complex.
"""

__version__ = "0.1.0"
