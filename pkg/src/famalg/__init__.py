"""Exact checks for family and relative nonassociative algebras over finite commutative semigroups."""

__version__ = "0.1.0"
