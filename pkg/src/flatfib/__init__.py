"""flatfib: exact-arithmetic co-Seifert fibration engine for flat orbifolds."""

from .exactlin import Lattice, Mat, Rat, Subspace, Vec, rat

__all__ = ["Lattice", "Mat", "Rat", "Subspace", "Vec", "rat"]
