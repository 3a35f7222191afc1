"""Polymatroid cones on finite lattices of functionally dependent variables.

Builds the cone of polymatroid functions on a finite lattice, enumerates
its extreme rays exactly, tests Zhang-Yeung / Ingleton-type inequalities,
and certifies rays as entropic via explicit group and distribution
constructions.
"""

from .lattice import Lattice, canonical_form, catalog, classify, from_covers

__all__ = ["Lattice", "canonical_form", "catalog", "classify", "from_covers"]
__version__ = "0.1.0"
