"""Exact computation of rowmotion, Coxeter matrices and grade bijections for
incidence algebras of finite posets and Auslander algebras of Dynkin quivers."""

from .algebra import BQAlgebra, QuiverRep, hom_dim, hom_space, incidence_algebra, path_algebra
from .dynkin import (
    ARQuiverData,
    auslander_coxeter,
    dynkin_path_algebra,
    endomorphism_grade_bijection,
    knit,
    verify_nrf_identity,
)
from .fields import QQ, PrimeField, field_for
from .homology import (
    cartan_matrix,
    cograde,
    coxeter_matrix,
    grade,
    grade_bijection,
    injective_coresolution,
    is_auslander_regular,
    k0_class,
    projective_resolution,
    rowmotion_coxeter_report,
)
from .io import Report, parse_dynkin_spec, parse_nrf, parse_poset, ship_corpus
from .linalg import IntPolynomial, PermutationMatrix, RationalMatrix, coxeter_from_cartan, minimal_polynomial
from .poset import (
    OrderIdealLattice,
    Poset,
    build_poset,
    complement_ideal,
    ideal_of_antichain,
    join_irreducibles,
    lattice_tests,
    max_antichain,
    order_ideals,
    rowmotion,
    rowmotion_matrix,
    zeta_and_mobius,
)

__version__ = "0.1.0"
