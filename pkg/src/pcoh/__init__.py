"""Exact finite-scale probabilistic coherence spaces.

Submodules: ``polytope`` (geometry), ``pcs`` (spaces and cone elements),
``category`` (matrices, implication, products), ``tensor``, ``bang``
(truncated exponential and stable maps), ``limits``, ``kernel``,
``oracles``, ``suites`` and ``cli``.
"""

from .pcs import Pcs, ConeElem, biorth_closure, elem, one, snat, snat_dual, top
from .polytope import Polytope

__all__ = ["Pcs", "ConeElem", "Polytope", "biorth_closure", "elem", "one", "snat", "snat_dual", "top"]

__version__ = "0.1.0"
