"""Exact-arithmetic root system toolkit and quaternionic weight-splitting
classifier for equal-rank homogeneous pairs."""

from .linalg import Vector, dot, vec
from .rootcore import (
    PairClass,
    RootSystem,
    ValidationReport,
    cartan_int,
    classify_pair,
    inner,
    is_root_subsystem,
    make_root_system,
    reflect,
    reflection_closure,
    root_chain,
    validate_root_system,
)
from .catalog import (
    CartanLabel,
    G2Component,
    WeylGroup,
    build,
    build_sum,
    direct_sum,
    highest_root,
    identify_type,
    label,
    normalize,
    parse_label,
    weyl_group,
)
from .subalgebra import (
    ClosedSubsystem,
    IsotropyWeights,
    closed_subsystem,
    enumerate_closed_subsystems,
    is_closed,
    is_symmetric_pair,
    is_wolf_pair,
    isotropy_weights,
    weights_from_set,
    wolf_subsystem,
)
from .splitting import (
    CaseTag,
    ConstraintReport,
    EmptyWeights,
    SplittingCertificate,
    case_analysis,
    check_constraints,
    find_splittings,
    splittings_oracle,
    verify_certificate,
    wolf_certificate,
)
from .pipeline import (
    ClassificationReport,
    PairReport,
    classify_all,
    classify_subsystem,
)
from .pipeline import classify_pair as classify_pair_spec

__version__ = "0.1.0"
