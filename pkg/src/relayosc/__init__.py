"""Self-oscillation analysis for discrete-time relay feedback loops.

A relay (ideal sign nonlinearity) in negative feedback with a stable
linear system can sustain periodic oscillations.  This package decides
when one-peaked (unimodal) oscillations exist, verifies and searches their
one-period fixed points, bounds their periods and cross-checks everything
against time-domain simulation and exhaustive enumeration.
"""

from ._kernels import BACKEND as kernel_backend
from .errors import (AlgebraicLoopError, EnumerationLimitError, InvalidInputError,
                     InvalidSpecError, NotApplicableError, RelayOscError,
                     TruncationError, UndecidableError)
from .lti import (ImpulseResponse, LagSum, PeriodicProfile, RawSamples, SystemSpec,
                  ValidationReport, circulant_apply, cyclic_shift, impulse_samples,
                  is_convex_on_support, kernel_scale, load_spec, periodic_summation,
                  save_spec, validate_assumption1)
from .oscillation import (OscillationReport, PeriodBounds, absence_guaranteed,
                          brute_force_fixed_points, candidate_forms,
                          candidate_patterns, canonical_rotation, check_fixed_point,
                          compute_Ps, derived_periods, exists_period_2Pd, loop_gain,
                          period_bounds, search_oscillations, sweep)
from .simulator import (Trajectory, basin_probe, detect_period, simulate,
                        steady_slice, trajectory_to_csv)
from .variation import (SignCounts, check_lemma4_conditions, count_signs,
                        cyclic_diff, cyclic_variation, satisfies_assumption2,
                        sign_changes, sign_changes_max)

__version__ = "0.1.0"
