"""Ringel-Hall algebras of quiver representations over finite fields.

The package counts representations of small Dynkin quivers over F_p, turns
the counts into Hall polynomials, and builds on them:

* ``hallalg``: the constructible-function Hall algebra (values at q = 1)
* ``quantumhall``: the generic Hall algebra over Q(P), L = P^2
* ``twistedalg``: the explicit algebras A, B and C of a biadditive form
"""

from .coeffring import RatFunc, parse_ratfunc, P, L
from .quiver import Quiver, EulerForm, load_quiver, read_quiver_file
from .hallnum import HallTable, build_hall_table
from .hallalg import CFElem, delta, cf_mult
from .quantumhall import SFElem, s, dbar, sf_mult
from .twistedalg import AElem, BElem, CElem, a_mult, b_mult, c_mult
from .grammar import parse_element

__version__ = "0.1.0"

__all__ = [
    "RatFunc", "parse_ratfunc", "P", "L", "Quiver", "EulerForm", "load_quiver",
    "read_quiver_file", "HallTable", "build_hall_table", "CFElem", "delta", "cf_mult",
    "SFElem", "s", "dbar", "sf_mult", "AElem", "BElem", "CElem", "a_mult", "b_mult",
    "c_mult", "parse_element",
]
