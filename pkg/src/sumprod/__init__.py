"""Exact verification engine for extremal sum-product sets.

Subpackages:
    sets        exact rational set arithmetic (sumsets, product sets, progressions)
    lattice     small-doubling search over integer points and similarity tools
    poly        bivariate integer polynomials: gcd, resultants, rational roots
    collisions  power-collision sweeps and exceptional ratio pairs
    verifier    end-to-end certification of the extremal bounds
    cli         command line front end
"""

__version__ = "0.1.0"
