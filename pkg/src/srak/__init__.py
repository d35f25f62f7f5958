"""srak: exact computer algebra for symplectic reflection algebras.

Subpackages: ``coeffs`` (rationals, parameter polynomials), ``groups``
(finite symplectic matrix groups), ``sra`` (PBW engine, center, Poisson,
trace lattice), ``centralizer`` (coset-matrix construction),
``cherednik`` (pairing presentation, lowering-operator modules, type-A
reports), ``completion`` (truncated completions and the point
isomorphism), ``cli`` (command line).
"""

__version__ = "0.1.0"
