"""Q~ and nega-Q~ digit expansions and the functions they define by shift equations."""

from .classify import ClassificationReport, classify
from .function import (
    AffineMap,
    MonotonicityClass,
    check_nowhere_differentiability,
    classify_monotonicity,
    derivative_quotients,
    endpoint_increment,
    eval_F,
    eval_F_at,
    graph_points,
    ifs_maps,
    increment,
    nondiff_witness,
    residual,
    zeta_form,
)
from .integral import (
    NotApplicableError,
    SampleBatch,
    SingularityKind,
    SingularityVerdict,
    cdf_distance,
    integral_closed_form,
    integral_oracle,
    sample,
    singularity_check,
)
from .matrix_spec import (
    ColumnPair,
    SpecParseError,
    SystemSpec,
    ValidationReport,
    column,
    load_spec,
    parse_rational,
    spec_from_json,
    tilde_values,
    validate,
)
from .representation import (
    Cylinder,
    DigitError,
    DigitString,
    EvalResult,
    RepKind,
    TailKind,
    cylinder,
    decode,
    decode_eq3,
    encode,
    other_representation,
    shift,
    to_nega,
    to_plus,
)

__version__ = "0.1.0"
