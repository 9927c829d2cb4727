"""Exact computations in the structure algebra of the stable moment graph of affine sl2."""

from .poly import ALPHA, C, FinPoly, LinearForm, Poly2, divides_product, divrem_linear, homogeneous_components, specialize_c0
from .graph import MomentGraph, bruhat_leq, build_parabolic, build_regular, build_stable, export_dot, parabolic_label
from .sections import Section, check_section, is_section, restrict, vertex_generator
from .basis import BasisId, Decomposition, coeff_ab, coeff_k, decompose, make_u, make_v
from .czero import (
    FinPair, RowFamily, check_congruences, closure_check, ideal_member, identity_suite, make_u_bar, make_v_bar,
    oracle_compare, oracle_solution_space, specialize_section,
)

__version__ = "0.1.0"
