"""Exact contextuality and antidistinguishability checks for finite sets of pure states."""

from .algebra import (
    Approx,
    Cyclo,
    StateVector,
    W,
    abs_squared,
    canonicalize,
    fine_grain,
    inner_product,
    orthogonal_completion,
    overlap,
    parse_scalar,
    vec,
)
from .analysis import (
    ContextualityVerdict,
    Status,
    find_generating_subsets,
    is_maximally_contextual,
    is_set_contextual,
    theorem1_roundtrip,
)
from .antidist import (
    AdClass,
    ExclusionReport,
    Level,
    Pvm,
    classify,
    coarse_grain_sa_to_a,
    exclusion_report,
    find_wa_pvm,
    triple_criterion,
    validate_pvm,
)
from .coloring import is_contextual_instance, is_scenario_contextual, ks_color
from .datasets import load_dataset
from .io import export_dot, parse_stateset
from .scenario import (
    Pool,
    Scenario,
    closure,
    enumerate_contexts,
    generate_scenario,
    implied_projectors,
    is_generated_by,
)

__version__ = "0.1.0"
