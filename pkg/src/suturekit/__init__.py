"""Computable shadows of instanton knot homology: traceless SU(2) representations,
Alexander polynomials, sutured-manifold closure arithmetic and eigenspace splitting."""

__version__ = "0.1.0"
SCHEMA = "suturekit/1"
