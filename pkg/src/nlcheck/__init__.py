"""Exact graded Jacobian-ring computations for surfaces in P^3 meeting the coordinate triangle."""

__version__ = "0.1.0"
