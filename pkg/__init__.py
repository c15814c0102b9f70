"""Orbifold fusion toolkit: exact fusion rings of the 2-cycle permutation orbifold of a rank-one lattice VOA"""

__version__ = "1.0.0"
__author__ = "Orbifold Fusion Team"
