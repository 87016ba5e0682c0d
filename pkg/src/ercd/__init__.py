"""Numerical verification of the extended real Clifford-Dirac algebra and the
Fermi-Bose duality of the massive Dirac equation."""

__version__ = "0.1.0"
