"""Exact calculus for elementary locally compact abelian groups, the
two-term-complex envelope of their category, and the dense-subgroup
correspondence, with machine-checkable rewriting certificates."""

__version__ = "0.1.0"
