"""Rigid Frobenius algebras in Drinfeld centers of finite group algebras,
and their categories of local modules, over exact coefficient fields."""

from .errors import (
    DivisionByZero,
    FieldMismatch,
    GroupMismatch,
    Inconsistent,
    InternalInconsistency,
    InvalidData,
    NonSplit,
    NotAGroup,
    NotContained,
    NotInvertible,
    NotRigidFrobenius,
    NotScalar,
    NotSemisimpleField,
    OrderUnavailable,
    ShapeMismatch,
    SizeBound,
)
from .fields import (
    CyclotomicField,
    PrimeField,
    Scalar,
    integer_in_field,
    is_invertible_integer,
    root_of_unity,
)
from .groups import (
    FinGroup,
    Subgroup,
    Transversal,
    build_group,
    conjugate,
    coset_data,
    is_normal_in,
    named_group,
)
from .cocycles import (
    EpsilonSystem,
    TwoCocycle,
    check_cocycle,
    check_epsilon,
    coboundary,
    cohomologous,
    enumerate_cocycles,
    enumerate_epsilons,
    epsilon_from_gamma_on_N,
    klein_sign_cocycle,
)
from .ydcat import (
    YDModule,
    YDMorphism,
    braiding,
    braiding_inv,
    check_yd,
    decompose,
    dual,
    end_algebra,
    hom_dim,
    hom_space,
    simple_objects,
    tensor,
    twist,
    unit_object,
)
from .frobenius import (
    AlgebraObject,
    FrobeniusData,
    RigidFrobeniusCert,
    build_A,
    build_B,
    characterization_a,
    characterization_b,
    check_algebra,
    check_commutative,
    check_connected,
    check_frobenius,
    check_rigid_frobenius,
    check_special,
    quantum_dimension,
    well_definedness_audit,
)
from .localmod import (
    AModule,
    LocalCert,
    RepCategory,
    check_module,
    fpdim_checks,
    free_module,
    is_local,
    modular_data,
    module_over_self,
    muger_center_local,
    tensor_over_A,
    twist_local,
)
from .classify import ClassificationEntry, classify, enumerate_data

__version__ = "0.1.0"
