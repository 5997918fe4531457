"""Groebner bases of polynomial ideals with a cyclic variable symmetry."""

from .coeff import QQ, NoRootError, PrimeField, farey_reconstruct, primitive_kth_root
from .corpus import IdealSpec, gen_cyclic, gen_swiss_francs, parse_ideal, parse_ideal_file, print_ideal
from .groebner import GroebnerBasis, buchberger, interreduce, is_groebner_basis, normal_form, s_polynomial
from .modular import LiftConfig, ModularSnapshot, sy_mod_std, sy_mod_std_run
from .permutation import (
    Permutation,
    apply_to_polynomial,
    check_symmetry,
    decompose,
    order,
    parse_cycles,
    symmetrize_generators,
)
from .polynomial import Ordering, ParseError, Polynomial, Ring
from .symm import SymmStdReport, symm_std
from .transform import (
    NotApplicableError,
    UnsupportedExtensionError,
    apply_map,
    build_tau,
    build_tau_inverse,
    diagonal_action,
)

__version__ = "0.1.0"
