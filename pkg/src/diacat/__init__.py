"""diacat: exact-arithmetic structure calculator for diassociative (dialgebra),
Leibniz, associative and Lie algebras, their actions and crossed modules,
cat1-objects and internal categories, and truncated enveloping functors.

Everything is finite dimensional over Q or a prime field, all arithmetic is
exact, and every claimed identity is re-checked on the nose rather than
assumed.
"""

from .fields import QQ, GF, Field, PrimeField, Rationals

__all__ = ["QQ", "GF", "Field", "PrimeField", "Rationals"]

__version__ = "0.1.0"
