"""Cartan-type graded Lie algebras over F_p and their low-degree cohomology.

Submodules, roughly bottom-up:

    multiindex         exponent-tuple arithmetic
    fp_linalg          exact sparse elimination over F_p
    truncated_algebra  the divided-power-free truncated polynomial ring
    cartan_lie         the contact and hamiltonian families, gradings, tori
    cocycles           named cochains from the classification
    cohomology         Chevalley-Eilenberg complexes, filters, dimensions
    verification_suite machine checks of the published statements
    cli                command-line front end
"""

__version__ = "0.1.0"
