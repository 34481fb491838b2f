"""Exact arithmetic for the Diestel-Leader groups Gamma_d(q).

Submodules: ``params`` and ``ring`` (the coefficient ring and its
decomposition), ``group`` and ``lampstand`` (elements, words, normal
forms), ``graph`` (DL_d(q) vertex labels and Cayley balls), ``aut``
(automorphism triples and Phi), ``twisted`` (Reidemeister numbers and
R_infinity certificates), ``textio`` and ``cli``.
"""

from .errors import DLGroupError
from .group import GroupElement, Generator
from .params import GroupParams, validate_params
from .ring import RingElem, decompose, laurent_expand
from .textio import parse_ring_expr, parse_element

__all__ = [
    "DLGroupError", "GroupElement", "Generator", "GroupParams", "validate_params",
    "RingElem", "decompose", "laurent_expand", "parse_ring_expr", "parse_element",
]
