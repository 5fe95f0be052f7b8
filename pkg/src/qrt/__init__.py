"""Exact representation theory of bound quiver algebras and their relation extensions."""
from .algebra import FDAlgebra, ext_quiver, from_bound_quiver
from .checks import CHECKS, CheckReport, check, run_suite
from .corpus import build_corpus, load_corpus
from .errors import InputError, InvariantViolation, QrtError
from .formats import load_algebra, load_module, module_document
from .homological import (ext_dim, gl_dim, injective_dimension, projective_dimension, syzygy, cosyzygy, tau,
                          tau_inverse)
from .linalg import GF, QQ, Field, Matrix, Subspace
from .modules import RightModule, decompose, direct_sum, hom_dim, hom_space, is_isomorphic, picture
from .quiver import Quiver
from .relext import RelationExtensionBundle, build_relation_extension, coinduct, embed, induct
from .tau import (TauProfile, ext_to_gen_vanishes, gen_contains, hom_to_gen_vanishes, is_tau_rigid,
                  minimal_left_add_approximation, tau_profile)

__version__ = "0.1.0"
