"""Exact-arithmetic certificates for torsion in H^4 of finite groups of Lie type.

Subpackages are plain modules:

rootsys
    split simple root systems in fundamental-weight coordinates
symsq
    the lattice Sym^2(P) and the Killing element
liecount
    order formulas, valuations, tame primes and order-n certificates
cohomology
    bar-resolution cohomology of small finite groups, transfer maps
symspace
    real-form rank bookkeeping
cli
    JSON command line front end
"""

__version__ = "0.1.0"

from .errors import BudgetExceeded, CertificateError, DomainError

__all__ = ["BudgetExceeded", "CertificateError", "DomainError", "__version__"]
