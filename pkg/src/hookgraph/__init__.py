"""Lambda-Bruhat graphs, equivariant localizations and minuscule heaps."""
from .errors import (
    AdmissibilityError,
    CartanError,
    HookgraphError,
    InvariantError,
    ParseError,
    PoleError,
    PreconditionError,
)
from .rootsys import CartanDatum, build_cartan, parse_type
from .weyl import WeylElt, bruhat_leq, interval, parse_element
from .symfrac import FactoredFraction, LinForm, Poly
from .lgraph import build_lgraph, path_sum, hook_product, smooth_via_hook
from .localize import billey_loc, eq_mult_richardson, kumar_smooth, sm_cell_loc, smlr
from .heaps import excited_diagrams, filter_of, heap_of_word, is_dominant_minuscule, smoothness_equiv

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError", "CartanError", "HookgraphError", "InvariantError", "ParseError",
    "PoleError", "PreconditionError", "CartanDatum", "build_cartan", "parse_type", "WeylElt",
    "bruhat_leq", "interval", "parse_element", "FactoredFraction", "LinForm", "Poly",
    "build_lgraph", "path_sum", "hook_product", "smooth_via_hook", "billey_loc",
    "eq_mult_richardson", "kumar_smooth", "sm_cell_loc", "smlr", "excited_diagrams",
    "filter_of", "heap_of_word", "is_dominant_minuscule", "smoothness_equiv",
]
