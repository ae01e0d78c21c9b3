"""Exact Tate cohomology of finite-dimensional symmetric Hopf algebras over F_p."""

__version__ = "0.1.0"
