"""Exact verification of finite-dimensional Hopf algebras, twists and their degeneracy."""

from .linalg import QQ, PrimeField, RationalField, SparseTensor, field_from_spec
from .report import CheckReport, CheckResult, ConsistencyError
from .hopf import (AlgebraPresentation, CoalgebraPresentation, HopfPresentation, check_algebra,
                   check_coalgebra, check_hopf, check_hopf_map, dual, tensor_hopf, trivial_hopf)
from .plie import PLiePresentation, check_plie, enveloping, reduced_enveloping
from .twists import (apply_twist, check_triangular, check_twist, minimality_rank, r_matrix,
                     twisted_coalgebra)
from .degeneracy import analyze, is_nondegenerate, is_simple_matrix, radical
from .commutative import GroupTable, constant_hopf, enumerate_twists, heisenberg_twist
from .isocat import run_pipeline, verify_isocategorical

__version__ = "0.1.0"
