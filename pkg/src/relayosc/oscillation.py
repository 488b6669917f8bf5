"""Fixed points of the relay loop: existence checks, period bounds and the
exhaustive sign-vector oracle.

A one-period fixed point with relay pattern s satisfies
``u = -Q^delay H_gbar0 s`` together with ``sign(u) = s`` entrywise, where
``gbar0`` is the periodic fold of the delay-free kernel and Q rotates one
position down.  Candidate patterns are checked in canonical (unrotated)
orientation only; fixed points are rotation covariant, so one
representative per orbit decides existence.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import (EnumerationLimitError, InvalidInputError,
                     NotApplicableError, UndecidableError)
from .lti import circulant_apply, cyclic_shift, is_convex_on_support, periodic_summation
from .variation import count_signs, satisfies_assumption2, validate_sign_pattern

__all__ = [
    "OscillationReport",
    "PeriodBounds",
    "ORACLE_MAX_P",
    "loop_gain",
    "check_fixed_point",
    "candidate_forms",
    "candidate_patterns",
    "search_oscillations",
    "sweep",
    "compute_Ps",
    "period_bounds",
    "exists_period_2Pd",
    "derived_periods",
    "absence_guaranteed",
    "brute_force_fixed_points",
    "canonical_rotation",
    "default_zero_tol",
]

ORACLE_MAX_P = 14
_PS_MAX_T = 10**6


@dataclass(frozen=True)
class PeriodBounds:
    """Admissible period window 2*P_d .. 2*(P_d + P_s), tightened to
    4*P_d + 2 for convex kernels with P_d > 1."""

    P_d: int
    P_s: int
    lower: int
    upper: int
    upper_convex: int | None = None

    @property
    def effective_upper(self):
        if self.upper_convex is None:
            return self.upper
        return min(self.upper, self.upper_convex)

    def contains(self, P):
        return self.lower <= P <= self.effective_upper

    def to_dict(self):
        return {"P_d": self.P_d, "P_s": self.P_s, "lower": self.lower,
                "upper": self.upper, "upper_convex": self.upper_convex,
                "effective_upper": self.effective_upper}


@dataclass(frozen=True)
class OscillationReport:
    """A verified one-period fixed point, stored in canonical rotation."""

    P: int
    P_d: int
    form: str
    pattern: np.ndarray
    amplitudes: np.ndarray
    residual: float
    assumption2: bool
    thm1_balance: bool
    within_bounds: bool | None

    def to_dict(self):
        return {
            "P": self.P,
            "P_d": self.P_d,
            "form": self.form,
            "pattern": [int(x) for x in self.pattern],
            "u": [float(x) for x in self.amplitudes],
            "residual": self.residual,
            "flags": {
                "assumption2": self.assumption2,
                "thm1_balance": self.thm1_balance,
                "within_bounds": self.within_bounds,
            },
        }


def default_zero_tol(profile):
    """Sign-matching tolerance: 1e-9 times the l1 norm of the folded kernel."""
    return 1e-9 * profile.l1_norm()


def _tol_sign(u, zero_tol):
    return np.where(u > zero_tol, 1, np.where(u < -zero_tol, -1, 0)).astype(np.int8)


def _loop_response(profile, pattern, delay):
    conv = circulant_apply(profile.gbar, np.asarray(pattern, dtype=np.float64))
    return -cyclic_shift(conv, delay)


def loop_gain(spec, pattern, P):
    """One-period loop response to a relay pattern:
    ``-Q^delay H_gbar0 pattern``."""
    pat = validate_sign_pattern(pattern)
    if P < 1:
        raise InvalidInputError("P must be >= 1")
    if pat.size != P:
        raise InvalidInputError(f"pattern length {pat.size} != P = {P}")
    return _loop_response(periodic_summation(spec, P), pat, spec.delay)


def canonical_rotation(pattern):
    """Lexicographically largest rotation of a pattern.

    Returns (canonical, k) with ``canonical = roll(pattern, k)`` and k the
    smallest such shift; companion vectors rotate with the same k.
    """
    pat = validate_sign_pattern(pattern)
    best, best_k = tuple(pat), 0
    for k in range(1, pat.size):
        cand = tuple(np.roll(pat, k))
        if cand > best:
            best, best_k = cand, k
    return np.array(best, dtype=np.int8), best_k


def _classify_form(canonical):
    """Letter of the canonical shape: d = no zeros, a = two zeros,
    b/c = one zero (trailing/interior)."""
    zeros = int(np.count_nonzero(canonical == 0))
    if zeros == 0:
        return "d"
    if zeros == 2:
        return "a"
    if zeros == 1:
        return "b" if canonical[-1] == 0 else "c"
    return "?"


def candidate_forms(P):
    """Canonical balanced patterns compatible with a one-peaked period,
    as (form, pattern) pairs.

    Even P: the square wave and, for P >= 4, the two-zero shape.  Odd P:
    the one-zero shapes with the zero trailing or centered.  Rotations are
    omitted (rotation covariance) and the all-zero degenerate of P = 2 is
    excluded.
    """
    if P <= 1:
        raise InvalidInputError("P must be > 1")
    out = []
    if P % 2 == 0:
        h = P // 2
        out.append(("d", np.array([1] * h + [-1] * h, dtype=np.int8)))
        if h >= 2:
            out.append(("a", np.array([1] * (h - 1) + [0] + [-1] * (h - 1) + [0],
                                      dtype=np.int8)))
    else:
        h = (P - 1) // 2
        out.append(("b", np.array([1] * h + [-1] * h + [0], dtype=np.int8)))
        out.append(("c", np.array([1] * h + [0] + [-1] * h, dtype=np.int8)))
    return out


def candidate_patterns(P):
    """Canonical candidate patterns for period P (see candidate_forms)."""
    return [pattern for _, pattern in candidate_forms(P)]


def _resolve_bounds(spec, bounds):
    if bounds is None or isinstance(bounds, PeriodBounds):
        return bounds
    if bounds != "auto":
        raise InvalidInputError("bounds must be 'auto', None or PeriodBounds")
    if spec.delay < 1:
        return None
    try:
        return period_bounds(spec)
    except (NotApplicableError, UndecidableError):
        return None


def check_fixed_point(spec, pattern, P, zero_tol=None, bounds="auto"):
    """Verify one relay pattern as a fixed point of the loop.

    Computes ``u = -Q^delay H_gbar0 pattern`` and accepts iff the sign of u
    under ``zero_tol`` reproduces the pattern entrywise (zeros must land
    within the tolerance) and u is one-peaked per period.  Returns a report
    in canonical rotation, or None.
    """
    pat = validate_sign_pattern(pattern)
    if P <= 1:
        raise InvalidInputError("P must be > 1")
    if pat.size != P:
        raise InvalidInputError(f"pattern length {pat.size} != P = {P}")
    profile = periodic_summation(spec, P)
    if zero_tol is None:
        zero_tol = default_zero_tol(profile)
    u = _loop_response(profile, pat, spec.delay)
    sig = _tol_sign(u, zero_tol)
    if not np.array_equal(sig, pat):
        return None
    if not satisfies_assumption2(u):
        return None

    canonical, shift = canonical_rotation(pat)
    residual = float(np.max(np.abs(u - _loop_response(profile, sig, spec.delay))))
    counts = count_signs(u, zero_tol)
    resolved = _resolve_bounds(spec, bounds)
    within = None if resolved is None else resolved.contains(P)
    return OscillationReport(
        P=P, P_d=spec.delay, form=_classify_form(canonical),
        pattern=canonical, amplitudes=np.roll(u, shift), residual=residual,
        assumption2=True, thm1_balance=counts.positive == counts.negative,
        within_bounds=within)


def search_oscillations(spec, P_min, P_max, zero_tol=None, prune=False):
    """Check every candidate pattern for every period in [P_min, P_max].

    Periods outside the admissible window are still checked and merely
    flagged (within_bounds False) unless ``prune`` is set -- the bounds are
    results under test, not search assumptions.
    """
    if not 1 < P_min <= P_max:
        raise InvalidInputError(f"need 1 < P_min <= P_max, got {P_min}..{P_max}")
    bounds = _resolve_bounds(spec, "auto")
    reports = []
    for P in range(P_min, P_max + 1):
        if prune and bounds is not None and not bounds.contains(P):
            continue
        for _, pat in candidate_forms(P):
            rep = check_fixed_point(spec, pat, P, zero_tol=zero_tol, bounds=bounds)
            if rep is not None:
                reports.append(rep)
    return reports


def sweep(spec, pd_values, P_min, P_max, zero_tol=None):
    """Run search_oscillations for each delay value, keeping the kernel.

    Returns all reports, ordered by delay then period then form.
    """
    reports = []
    for pd in pd_values:
        reports.extend(search_oscillations(replace(spec, delay=int(pd)),
                                           P_min, P_max, zero_tol=zero_tol))
    reports.sort(key=lambda r: (r.P_d, r.P, r.form))
    return reports


def compute_Ps(spec, max_t=_PS_MAX_T):
    """Smallest t >= 1 whose leading partial sum strictly beats the tail:
    ``sum_{k<t} g0(k) - sum_{k>=t} g0(k) > 0``.

    Exact for lag sums.  For raw samples the declared tail bound must leave
    the strict inequality decidable, otherwise UndecidableError.
    """
    kernel = spec.kernel
    if hasattr(kernel, "tail"):  # LagSum: exact geometric evaluation
        total = kernel.total()
        for t in range(1, max_t + 1):
            tail = kernel.tail(t)
            if total - 2.0 * tail > 0.0:
                return t
        raise UndecidableError(f"partial sums never beat the tail for t <= {max_t}")
    samples = np.asarray(kernel.g0, dtype=np.float64)
    total = float(samples.sum())
    tb = kernel.tail_bound
    prefix = 0.0
    for t in range(1, samples.size + 1):
        prefix += samples[t - 1]
        margin = 2.0 * prefix - total  # lead - known tail
        if margin - tb > 0.0:
            return t
        if margin + tb > 0.0:
            raise UndecidableError(
                f"tail bound {tb} leaves the strict inequality open at t = {t}")
    raise UndecidableError("samples exhausted before the partial sums took over")


def period_bounds(spec):
    """Period window for a delayed loop: lower 2*P_d, upper 2*(P_d + P_s);
    convex kernels with P_d > 1 add the 4*P_d + 2 cap."""
    if spec.delay < 1:
        raise NotApplicableError("period bounds need delay >= 1; "
                                 "use absence_guaranteed for delay-free loops")
    ps = compute_Ps(spec)
    convex_cap = None
    if spec.delay > 1 and is_convex_on_support(spec):
        convex_cap = 4 * spec.delay + 2
    return PeriodBounds(P_d=spec.delay, P_s=ps, lower=2 * spec.delay,
                        upper=2 * (spec.delay + ps), upper_convex=convex_cap)


def exists_period_2Pd(spec):
    """True iff the square wave of period 2*P_d closes the loop: the zero-lag
    entry of ``H_gbar0 [1...1,-1...-1]`` is strictly positive."""
    if spec.delay < 1:
        raise NotApplicableError("needs delay >= 1")
    P = 2 * spec.delay
    profile = periodic_summation(spec, P)
    square = np.array([1.0] * spec.delay + [-1.0] * spec.delay)
    return bool(circulant_apply(profile.gbar, square)[0] > 0.0)


def derived_periods(P_d):
    """All periods 2*P_d / (2n+1), n >= 0, that land on an integer.

    Every member is even; odd divisors of 2*P_d divide P_d.
    """
    if P_d < 1:
        raise InvalidInputError("P_d must be >= 1")
    two_pd = 2 * P_d
    return {two_pd // d for d in range(1, two_pd + 1, 2) if two_pd % d == 0}


def absence_guaranteed(spec, horizon=None):
    """True iff the loop provably has no one-peaked oscillation: no delay,
    positive leading sample and a validated decreasing kernel."""
    from .lti import DEFAULT_HORIZON, validate_assumption1

    if spec.delay != 0 or not spec.kernel.sample(0) > 0.0:
        return False
    return validate_assumption1(spec, horizon or DEFAULT_HORIZON).passed


def brute_force_fixed_points(spec, P, zero_tol=None):
    """Exhaustive oracle: test every s in {-1,0,+1}^P except 0.

    Returns all (pattern, u) pairs with ``sign(u) = s`` under ``zero_tol``,
    unfiltered -- callers decide what to do with non-one-peaked fixed
    points.  Guarded to P <= 14 (3^P candidates).
    """
    if P < 1:
        raise InvalidInputError("P must be >= 1")
    if P > ORACLE_MAX_P:
        raise EnumerationLimitError(
            f"3^{P} sign vectors exceed the oracle guard (P <= {ORACLE_MAX_P})")
    profile = periodic_summation(spec, P)
    if zero_tol is None:
        zero_tol = default_zero_tol(profile)
    b = -np.roll(profile.gbar, spec.delay)  # H_b s == -Q^delay H_gbar s
    b = np.ascontiguousarray(b, dtype=np.float64)
    return _kernels.scan_fixed_points(b, float(zero_tol))
