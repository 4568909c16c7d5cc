"""Exact algebra for split Jordan algebras, their conformal Lie algebras,
the minimal representation and the attached theta correspondence."""

__version__ = "0.1.0"
SCHEMA_VERSION = 1
