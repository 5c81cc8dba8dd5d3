"""Exact computations with Milnor and Somekawa K-groups over finite fields.

Submodules: finite_field, abelian, function_field, milnor, semiabelian,
somekawa, homotopy, bloch, literals, cli.
"""
from .abelian import FinAbGroup, GroupElement, RelationLattice, TensorProduct, snf
from .errors import KGroupsError
from .finite_field import FFElement, FieldExtension, Tower, make_extension, prime_field, standard_field
from .function_field import Pic0, divisor, elliptic_curve, ord_, rational_line
from .milnor import MilnorSymbol, steinberg_k2_oracle, tame, weil_check
from .semiabelian import SemiAbelian, extended_tame
from .somekawa import SymbolTerm, TruncationConfig, build, check_r1_collapse

__version__ = "0.1.0"
