"""Completed finite period map: motivic lifts of supercongruences."""
from .core import DenominatorDivisibleByP, mhs_eval, stuffle
from .expr import expand, lift, parse
from .galois import degree0, delta, gm_act, granville_check
from .mhs import MHSSeries
from .motivic import motivic_binomial, motivic_mhs, zeta_to_mhs
from .mzv import AElement, BasisForm, RelationTable, load_relation_table
from .poly import expand_poly_mhs
from .prover import Claim, NotProven, Proven, TableInsufficient, numeric_check, prove
from .series import ASeries
from .summand import expand_summand

__all__ = [
    "AElement", "ASeries", "BasisForm", "Claim", "DenominatorDivisibleByP", "MHSSeries",
    "NotProven", "Proven", "RelationTable", "TableInsufficient", "degree0", "delta", "expand",
    "expand_poly_mhs", "expand_summand", "gm_act", "granville_check", "lift",
    "load_relation_table", "mhs_eval", "motivic_binomial", "motivic_mhs", "numeric_check",
    "parse", "prove", "stuffle", "zeta_to_mhs",
]
