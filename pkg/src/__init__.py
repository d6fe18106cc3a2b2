"""weil-jacobi - exact Weil algebras of simplicial infinitesimal objects and a Jacobi-identity harness."""

__version__ = "1.0.0"

__all__ = ["__version__"]
