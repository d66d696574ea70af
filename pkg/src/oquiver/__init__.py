"""Exact computation of the quiver with relations behind the regular block
of BGG category O, with an intersection-cohomology module toolkit."""

from .cache import Pipeline, build_pipeline, load_pipeline
from .homspace import HomBasis, arrow_count, hom_basis
from .icmod import ICModule, QuiverRep, from_quiver_rep, total_cohomology, validate, verdier_dual
from .kl import ih_poincare, kl_polynomial, mu
from .linalg import QMatrix, in_span, nullspace, rref, solve
from .quiver import PathCombo, Quiver, build_quiver
from .rootsystem import RootSystem, WeylElement, WeylGroup, build, generate_weyl
from .schubert import CohClass, CohRing, build_ring
from .soergel import GradedModule, ModuleFamily, build_all, extend, trivial_module, word_module

__version__ = "0.1.0"
