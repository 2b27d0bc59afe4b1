"""regusolve: Tikhonov solvers for discrete ill-posed problems."""

__version__ = "1.0.0"
__author__ = "regusolve"
