"""Exact tensor algebra for trace maps, cobrackets and highest-weight counts on
free Lie algebras, with a CLI of verification campaigns."""

from __future__ import annotations

from jcoker.contract import (
    delta_alg_framed,
    delta_alg_full,
    delta_alg_reduced,
    morita_trace,
    phi,
    theta_ell,
    trace_c,
    verify_cobracket_identity,
)
from jcoker.cyclic import BiCyclicTensor, CyclicTensor, SymmetricTensor, canonical_rotation, cyclic_dimension, pi_k, varpi_ell
from jcoker.free_lie import (
    SimpleCommutator,
    bracket_map,
    commutator,
    dynkin_map,
    expand_commutator,
    is_h_element,
    is_lie_element,
    lie_dimension,
)
from jcoker.genset import GeneratorSpec, build_generator, enumerate_generators, structure_numbers, verify_kernel_chain
from jcoker.linalg import SparseIntegerMatrix, matrix_rank, modular_rank, rank_and_kernel
from jcoker.spreps import (
    Partition,
    dsw_theta_right,
    expansion_D,
    hwv_multiplicity,
    lambda_ab,
    omega,
    raising_operators,
    verify_anti_morita,
    verify_hook,
    wedge,
    weight,
)
from jcoker.tensor import DualBasisContext, SparseTensor, SymplecticContext, cyclic_symmetrizer, zeta_perm

__version__ = "0.1.0"
