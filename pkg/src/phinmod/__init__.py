"""Exact-arithmetic toolkit for framed Frobenius-nilpotent pairs on gl_n.

Computes, over Q(sqrt(p)) with exact rationals: adjoint and twisted-Frobenius
operators, nilpotent-orbit invariants and attached cocharacters, deformation
complexes and their cohomology dimensions, tangent spaces, and the explicit
GL_2 / GL_3 component and singularity analyses.
"""

from .errors import (
    InternalCheckError,
    InvalidInputError,
    PhinmodError,
    UnsupportedCaseError,
)
from .field import Scalar, is_prime, p_power, scalar_sqrt, sqrt_p
from .linalg import (
    Mat,
    Subspace,
    charpoly,
    is_nilpotent,
    jordan_basis_nilpotent,
    jordan_type,
    kernel,
    minpoly,
    minpoly_squarefree,
    rank,
    rref,
)
from .adjoint import (
    BigOp,
    FrobTuple,
    ad_frobenius,
    ad_n,
    ad_single,
    one_minus_pad,
    pad_minus_one,
)
from .nilpotent import (
    Cochar,
    GradedDecomp,
    ParabolicData,
    associated_cocharacter,
    centralizer_lie,
    grading,
    parabolic_of,
    threshold,
)
from .moduli import (
    ComplexReport,
    Filtration,
    ModuliPoint,
    canonical_point,
    complex_dims,
    filtered_complex_dims,
    tangent_space,
    transport,
    validate_point,
    verify_tangent_vector,
)
from .components import (
    INFINITE_P1,
    Gl2Report,
    SingularityCertificate,
    SubFiber,
    gl2_charpoly_formula,
    gl2_report,
    gl2_x0_tangent,
    reg_filtration_reconstruct,
    singularity_certificate,
    sub_fiber,
    sub_tangent_image,
)

__version__ = "0.1.0"
