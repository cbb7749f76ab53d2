"""Finite-dimensional DG Poisson algebras, their modules and enveloping algebras,
with exact arithmetic over Q or GF(p)."""

from .core import (QQ, BilinearOp, Element, Field, Fp, GradedLinearMap, GradedSpace,
                   StructureError, koszul_sign)
from .structures import (DGAlgebraData, DGLieData, DGPoissonData, DGPoissonModuleData,
                         VerificationReport, cohomology, verify_dg_algebra, verify_dg_lie,
                         verify_dg_poisson, verify_dg_poisson_module)
from .construct import (DeformationData, DGVectorSpaceData, PreconditionError,
                        deformation_bracket, endomorphism_dgp, exterior_gerstenhaber,
                        gerstenhaber_differential, opposite, opposite_module, regular_module,
                        semidirect_lie, symmetric_dgp, tensor, tensor_module)
from .ue import UETruncation, ideal_quotient_oracle, induced_map, ue_truncated
from .theorems import (IsoCertificate, check_enveloping_ue_iso, check_op_ue_iso,
                       check_sym_lie_ue, check_tensor_ue_iso, compare_with_oracle)

__version__ = "0.1.0"

__all__ = [
    "QQ", "BilinearOp", "Element", "Field", "Fp", "GradedLinearMap", "GradedSpace",
    "StructureError", "koszul_sign",
    "DGAlgebraData", "DGLieData", "DGPoissonData", "DGPoissonModuleData",
    "VerificationReport", "cohomology", "verify_dg_algebra", "verify_dg_lie",
    "verify_dg_poisson", "verify_dg_poisson_module",
    "DeformationData", "DGVectorSpaceData", "PreconditionError", "deformation_bracket",
    "endomorphism_dgp", "exterior_gerstenhaber", "gerstenhaber_differential", "opposite",
    "opposite_module", "regular_module", "semidirect_lie", "symmetric_dgp", "tensor",
    "tensor_module",
    "UETruncation", "ideal_quotient_oracle", "induced_map", "ue_truncated",
    "IsoCertificate", "check_enveloping_ue_iso", "check_op_ue_iso", "check_sym_lie_ue",
    "check_tensor_ue_iso", "compare_with_oracle",
]
