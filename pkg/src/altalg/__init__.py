"""Exact-arithmetic toolkit for identities in alternative algebras and superalgebras."""

__version__ = "0.1.0"
