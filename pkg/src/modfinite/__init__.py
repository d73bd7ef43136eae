"""Exact computational algebra for module-finite algebras over Z and Z/m:
scalar rings of bilinear maps, equation-system certificates, and decision
procedures."""

__version__ = "0.1.0"
