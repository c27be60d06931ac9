"""Provable rational torsion subgroups of plane quartic Jacobians.

The package computes #J(F_p) by direct counting, bounds the rational torsion
through reduction injectivity, finds rational torsion points by CRT lifting
of modular data, accounts for fake divisibility with torsion points over
number fields, and emits certificates that a fast verifier can recheck
independently.
"""

__version__ = "0.1.0"
