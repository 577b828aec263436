"""Counting quasimorphisms, chain normal forms and scl lower bounds in free groups."""

from .basis import BasisEnumeration, Expansion, enumerate_basis, evaluate_expansion, expand
from .chains import (
    BoundCertificate,
    Chain,
    NormalChain,
    SclResult,
    is_boundary,
    normalize,
    parse_chain,
    scl_lower_bound,
    witness,
)
from .counting import (
    Oracle,
    PeriodNotFound,
    big_phi,
    count_disjoint,
    homogenize,
    phi,
    sample_defect,
)
from .cover import (
    CosetTable,
    Lift,
    SchreierData,
    lift_chain,
    parse_table,
    power_conjugate_inverse,
    schreier_basis,
    scl_via_cover,
    validate_table,
)
from .words import (
    DEFAULT,
    Alphabet,
    CyclicForm,
    InvariantError,
    WordError,
    abelianize,
    are_conjugate,
    cyclic_reduce,
    effective_rep,
    free_reduce,
    inverse,
    orient,
    primitive_decompose,
    well_order_compare,
)

__version__ = "0.1.0"
