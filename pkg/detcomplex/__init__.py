"""
Exact evaluation of permanent-like polynomials, cycle-cover determinantal representations
compiled from graded posets, and Hessian-rank lower bounds on determinantal complexity.
"""
__version__ = "0.1.0"
