"""Exact workbench for F-manifold algebras, their pre- and dual pre- variants,
operator-induced structures, pre-Lie cohomology and pre-Lie deformations."""
from .exact import Matrix, LinearSystemSolution, nullspace, parse_scalar, rank, solve
from .tensor import StructureTensor, tensor_contract
from .model import (
    Algebra,
    BilinearForm,
    CheckReport,
    FamwError,
    FormatError,
    LinearOperator,
    MissingSlotError,
    PreconditionError,
    Representation,
    ShapeError,
    dual_representation,
    load_algebra,
    load_form,
    load_operator,
    load_representation,
    save_algebra,
)
from .axioms import (
    check_class,
    check_dual_rep_condition,
    check_form,
    check_homomorphism,
    check_operator,
    check_prelie_representation,
    check_rep_functionals,
    check_representation,
    solve_derivations,
    structure_functionals,
)
from .constructions import (
    average_induced_dual_pre_f,
    commutator_bracket,
    derivation_induced,
    direct_sum,
    form_induced_pre_f,
    o_operator_induced_pre_f,
    regular_representation,
    rota_baxter_induced_pre_f,
    semidirect_product,
    sub_adjacent_f_manifold,
    symmetrized_product,
    tensor_product,
)
from .cohomology import (
    Cochain,
    DeformationFamily,
    coboundary,
    cohomology_dim,
    deformation_equivalent,
    extend_deformation,
    obstruction,
    semi_classical_limit,
    verify_n_deformation,
)

__version__ = "0.1.0"
