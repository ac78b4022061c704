"""cohomkit: exact cohomology of finite groups and Lie algebras, central
extensions as concrete multiplication tables, Minkowski wedge geometry, and
finite-dimensional Tomita-Takesaki modular theory.

Subpackages are independent layers:

    exactmat   exact rank / kernel / Smith-form linear algebra
    liealg     Lie algebras over Q by structure constants
    liecoh     Chevalley-Eilenberg cohomology, Lie central extensions
    grpcoh     finite-group cochain complex, Z^n / B^n / H^n, splittings
    ext        central extension tables, sections, equivalence
    modular    modular objects (S, Delta, J) of matrix algebras
    spacetime  wedges, boosts, boost generators
    cli        command-line front end
"""

__version__ = "0.1.0"
