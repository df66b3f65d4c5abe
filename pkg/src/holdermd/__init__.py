"""Width dimension, asymptotic-measure bounds and Mazur-map certificates for
unit balls of l^p over Z^d and free groups."""

from .errors import (
    DomainError,
    EmptyWindowError,
    HolderMDError,
    ResourceLimitError,
    ToleranceNotReachableError,
)
from .groups import BallRule, GroupModel, Window, invert_window, multiply_windows, word_ball
from .mazur import (
    HolderProbeReport,
    holder_probe,
    longest_increasing_run,
    mazur_map,
    power_holder_certificate,
)
from .metric import (
    MetricSpec,
    WeightScheme,
    base_metric,
    base_metric_certified,
    dynamical_metric,
    separation_bound,
)
from .obstruction import VerdictReport, run_obstruction
from .profiles import (
    BoundSequence,
    ModulusBound,
    Profile,
    Verdict,
    bound_sequence,
    lower_bound_sequence,
    profile_eval,
    pushforward_profile,
    theorem_verdict,
    upper_bound_sequence,
)
from .space import LpPoint, act, lp_norm, sample_point
from .widthdim import (
    clip_embedding,
    fiber_diameter_oracle,
    wdm_closed_form,
    wdm_from_power,
)

__version__ = "0.1.0"
