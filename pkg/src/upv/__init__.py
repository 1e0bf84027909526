"""Exact-arithmetic verification toolkit for a parallel-unprojection family
of surfaces with fundamental group Z/2 x Q8 and its (P^1)^4 double-cover
model.

The package constructs the ideals of the 4-fold, the key 3-fold and the
surface family in the weighted space P(1^8, 2^8), realizes the finite group
actions downstairs and on the cover, and machine-checks every structural
claim with exact arithmetic: generator censuses, pullback identities, fixed
loci, freeness and smoothness over finite fields, Hilbert functions,
intersection numbers and the special-pencil identities.  See ``upv.cli`` for
the command-line front end and ``upv.checks`` for the catalog.
"""

__version__ = "0.1.0"

from .report import CheckReport  # noqa: F401
from .scalars import GF, QI, QQ, GaussianRational  # noqa: F401
