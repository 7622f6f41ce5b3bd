"""Exact and numerical verification tools for generator tables of Gamma0(N) and converse-theorem identities."""

__version__ = "0.1.0"
