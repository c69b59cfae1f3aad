"""Exact, finite computations with algebraic theories.

Modules:

* ``finset``: canonical finite sets and maps, products, pullbacks.
* ``spancat``: spans of finite sets and their fiber-count matrices.
* ``theory``: presentations, terms, normal forms, the syntactic category.
* ``models``: finite models, homomorphisms, free models, functor checks.
* ``semimat``: semirings and matrix categories over them.
* ``kronecker``: Kronecker products of presentations and bimodels.
* ``gsets``: finite groups, G-sets, marks, Burnside semirings.
* ``dsl`` and ``cli``: the theory file format and the ``lawvere`` command.
"""

from .errors import (BudgetExceeded, CompositionMismatch, ConfigurationError, ContextError,
                     LawvereError, NoNormalizer, PullbackMismatch, StructureError)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "CompositionMismatch", "ConfigurationError", "ContextError",
    "LawvereError", "NoNormalizer", "PullbackMismatch", "StructureError", "__version__",
]
