"""Exact invariants of graded quotient rings: Groebner bases, Koszul homology,
multiplicities and almost-complete-intersection checks."""

__version__ = "0.1.0"
