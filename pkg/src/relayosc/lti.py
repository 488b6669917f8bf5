"""System descriptions, impulse responses and circulant algebra.

A system is a pure delay of ``delay`` samples in front of a delay-free
kernel.  Kernels come in two flavours:

* ``LagSum`` -- a parallel sum of first-order lags with impulse response
  ``g0(t) = sum_i k_i * p_i**t``; everything about it (tails, periodic
  folds) has an exact geometric closed form.
* ``RawSamples`` -- a finite list of samples with an l1 bound on whatever
  mass lies beyond the last one.

All one-period vectors are 0-indexed, t = 0 .. P-1.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidInputError, InvalidSpecError, TruncationError

__all__ = [
    "LagSum",
    "RawSamples",
    "SystemSpec",
    "ImpulseResponse",
    "PeriodicProfile",
    "ValidationReport",
    "impulse_samples",
    "periodic_summation",
    "circulant_apply",
    "cyclic_shift",
    "validate_assumption1",
    "is_convex_on_support",
    "kernel_scale",
    "load_spec",
    "save_spec",
]

DEFAULT_HORIZON = 256


@dataclass(frozen=True)
class LagSum:
    """Parallel sum of first-order lags, one (gain, pole) pair per term."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((float(k), float(p)) for k, p in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise InvalidSpecError("a lag sum needs at least one term")
        for k, p in terms:
            if not (0.0 < p < 1.0):
                raise InvalidSpecError(f"pole {p} outside (0, 1)")
            if k == 0.0 or not np.isfinite(k):
                raise InvalidSpecError(f"gain {k} must be nonzero and finite")

    def sample(self, t):
        """g0(t), exact."""
        return sum(k * p**t for k, p in self.terms) if t >= 0 else 0.0

    def total(self):
        """sum_t g0(t), exact geometric value."""
        return sum(k / (1.0 - p) for k, p in self.terms)

    def tail(self, start):
        """sum_{t >= start} g0(t), exact."""
        return sum(k * p**start / (1.0 - p) for k, p in self.terms)

    def abs_tail(self, start):
        """Upper bound on sum_{t >= start} |g0(t)|."""
        return sum(abs(k) * p**start / (1.0 - p) for k, p in self.terms)


@dataclass(frozen=True)
class RawSamples:
    """Finite prefix of an impulse response plus an l1 bound on the rest."""

    g0: tuple
    tail_bound: float = 0.0

    def __post_init__(self):
        samples = tuple(float(x) for x in self.g0)
        object.__setattr__(self, "g0", samples)
        object.__setattr__(self, "tail_bound", float(self.tail_bound))
        if not samples:
            raise InvalidSpecError("need at least one sample")
        if not all(np.isfinite(samples)):
            raise InvalidSpecError("samples must be finite")
        if not (self.tail_bound >= 0.0):
            raise InvalidSpecError("tail_bound must be >= 0")

    def sample(self, t):
        return self.g0[t] if 0 <= t < len(self.g0) else 0.0


@dataclass(frozen=True)
class SystemSpec:
    """Delay plus delay-free kernel; the full impulse response is
    ``g(t) = g0(t - delay)``."""

    delay: int
    kernel: object

    def __post_init__(self):
        if int(self.delay) != self.delay or self.delay < 0:
            raise InvalidSpecError(f"delay must be a nonnegative integer, got {self.delay}")
        object.__setattr__(self, "delay", int(self.delay))
        if not isinstance(self.kernel, (LagSum, RawSamples)):
            raise InvalidSpecError("kernel must be a LagSum or RawSamples")

    @classmethod
    def first_order(cls, pole, delay=0, gain=1.0):
        """Single first-order lag k*z/(z - p) behind a delay."""
        return cls(delay=delay, kernel=LagSum(terms=((gain, pole),)))

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "delay" not in data:
            raise InvalidSpecError("spec must be an object with a 'delay' key")
        extra = set(data) - {"delay", "lags", "samples", "tail_bound"}
        if extra:
            raise InvalidSpecError(f"unknown spec keys: {sorted(extra)}")
        if "lags" in data:
            if "samples" in data or "tail_bound" in data:
                raise InvalidSpecError("give either 'lags' or 'samples', not both")
            try:
                terms = tuple((lag["k"], lag["p"]) for lag in data["lags"])
            except (TypeError, KeyError) as exc:
                raise InvalidSpecError("each lag needs 'k' and 'p'") from exc
            return cls(delay=data["delay"], kernel=LagSum(terms=terms))
        if "samples" in data:
            return cls(delay=data["delay"],
                       kernel=RawSamples(g0=tuple(data["samples"]),
                                         tail_bound=data.get("tail_bound", 0.0)))
        raise InvalidSpecError("spec needs a 'lags' or 'samples' key")

    def to_dict(self):
        if isinstance(self.kernel, LagSum):
            return {"delay": self.delay,
                    "lags": [{"k": k, "p": p} for k, p in self.kernel.terms]}
        return {"delay": self.delay,
                "samples": list(self.kernel.g0),
                "tail_bound": self.kernel.tail_bound}


def load_spec(path):
    """Read a SystemSpec from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidSpecError(f"{path}: invalid JSON ({exc})") from exc
    return SystemSpec.from_dict(data)


def save_spec(spec, path):
    """Write a SystemSpec as JSON; floats round-trip bit-exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec.to_dict(), fh, indent=2)
        fh.write("\n")


@dataclass(frozen=True)
class ImpulseResponse:
    """Samples g0(0 .. N-1) of a delay-free kernel."""

    samples: np.ndarray
    exact: bool
    truncation_error: float  # l1 mass beyond the last sample


@dataclass(frozen=True)
class PeriodicProfile:
    """One period of the periodic fold gbar(t) = sum_{i>=0} g0(t + i P)."""

    gbar: np.ndarray
    P: int

    def l1_norm(self):
        return float(np.abs(self.gbar).sum())


def impulse_samples(spec, horizon):
    """First ``horizon`` samples of the delay-free kernel g0."""
    if horizon < 1:
        raise InvalidInputError("horizon must be >= 1")
    kernel = spec.kernel
    if isinstance(kernel, LagSum):
        t = np.arange(horizon)
        samples = np.zeros(horizon)
        for k, p in kernel.terms:
            samples += k * p**t
        return ImpulseResponse(samples=samples, exact=True,
                               truncation_error=kernel.abs_tail(horizon))
    raw = np.asarray(kernel.g0, dtype=np.float64)
    samples = np.zeros(horizon)
    n = min(horizon, raw.size)
    samples[:n] = raw[:n]
    beyond = float(np.abs(raw[horizon:]).sum()) + kernel.tail_bound
    return ImpulseResponse(samples=samples,
                           exact=horizon >= raw.size and kernel.tail_bound == 0.0,
                           truncation_error=beyond)


def periodic_summation(spec, P, tol=1e-12):
    """One period of gbar0(t) = sum_{i>=0} g0(t + i P), entrywise error <= tol.

    Lag sums use the exact geometric closed form
    ``gbar0(t) = sum_i k_i p_i**t / (1 - p_i**P)``.  Raw samples fold their
    shifted copies; their tail bound must fit under ``tol``.
    """
    if P < 1:
        raise InvalidInputError("P must be >= 1")
    if not tol > 0:
        raise InvalidInputError("tol must be > 0")
    kernel = spec.kernel
    t = np.arange(P)
    if isinstance(kernel, LagSum):
        gbar = np.zeros(P)
        for k, p in kernel.terms:
            gbar += k * p**t / (1.0 - p**P)
        return PeriodicProfile(gbar=gbar, P=P)
    if kernel.tail_bound > tol:
        raise TruncationError(
            f"tail bound {kernel.tail_bound} exceeds requested tolerance {tol}")
    raw = np.asarray(kernel.g0, dtype=np.float64)
    gbar = np.zeros(P)
    for start in range(0, raw.size, P):
        block = raw[start:start + P]
        gbar[: block.size] += block
    return PeriodicProfile(gbar=gbar, P=P)


def circulant_apply(v, w):
    """Apply the circulant generated by v to w (cyclic convolution).

    ``out[t] = sum_j v[(t - j) mod n] * w[j]``; symmetric in v and w.
    """
    v = np.ascontiguousarray(v, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    if v.shape != w.shape or v.ndim != 1:
        raise InvalidInputError(
            f"need two vectors of equal length, got {v.shape} and {w.shape}")
    return _kernels.cyclic_convolve(v, w)


def cyclic_shift(w, k):
    """Rotate w down by k positions (k may be any integer)."""
    return np.roll(np.asarray(w), k)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the decreasing-kernel checks over a finite horizon.

    ``infinite_support`` can only be certified for closed-form kernels;
    raw-sample kernels always fail it (their support provably ends or is
    unknown beyond the last sample).
    """

    horizon: int
    support_start: int | None
    connected_support: bool
    first_gap: int | None
    strictly_decreasing: bool
    first_nonstrict: int | None
    summable: bool
    tail_bound: float
    infinite_support: bool

    @property
    def passed(self):
        return (self.support_start is not None
                and self.connected_support
                and self.strictly_decreasing
                and self.summable
                and self.infinite_support)

    def to_dict(self):
        return {
            "horizon": self.horizon,
            "support_start": self.support_start,
            "connected_support": self.connected_support,
            "first_gap": self.first_gap,
            "strictly_decreasing": self.strictly_decreasing,
            "first_nonstrict": self.first_nonstrict,
            "summable": self.summable,
            "tail_bound": self.tail_bound,
            "infinite_support": self.infinite_support,
            "passed": self.passed,
        }


def _samples_with_boundary(spec, horizon):
    """Kernel samples g0(0..horizon-1) plus the exact-ish g0(horizon)."""
    resp = impulse_samples(spec, horizon)
    boundary = spec.kernel.sample(horizon)
    return resp.samples, boundary, resp.truncation_error


def validate_assumption1(spec, horizon=DEFAULT_HORIZON, strict_tol=0.0):
    """Check the decreasing-kernel requirements on g0 over a finite horizon:
    connected support, strict decrease on the support and l1 summability.

    Violations are report entries, never exceptions.
    """
    g, boundary, tail = _samples_with_boundary(spec, horizon)
    support = np.nonzero(g)[0]
    infinite = isinstance(spec.kernel, LagSum)

    if support.size == 0:
        return ValidationReport(
            horizon=horizon, support_start=None, connected_support=False,
            first_gap=None, strictly_decreasing=False, first_nonstrict=None,
            summable=True, tail_bound=float(tail), infinite_support=infinite)

    t1 = int(support[0])
    last = int(support[-1])
    first_gap = None
    for t in range(t1, last):
        if g[t] == 0.0:
            first_gap = t
            break

    first_nonstrict = None
    for t in range(t1, last + 1):
        nxt = g[t + 1] if t + 1 < horizon else boundary
        if not g[t] - nxt > strict_tol:
            first_nonstrict = t
            break

    return ValidationReport(
        horizon=horizon,
        support_start=t1,
        connected_support=first_gap is None,
        first_gap=first_gap,
        strictly_decreasing=first_nonstrict is None,
        first_nonstrict=first_nonstrict,
        summable=bool(np.isfinite(tail)),
        tail_bound=float(tail),
        infinite_support=infinite,
    )


def is_convex_on_support(spec, horizon=DEFAULT_HORIZON):
    """True iff the kernel differences are nondecreasing from the support
    start onwards: g0(t+1) - g0(t) >= g0(t) - g0(t-1)."""
    g, boundary, _ = _samples_with_boundary(spec, horizon)
    support = np.nonzero(g)[0]
    if support.size == 0:
        return True
    t1 = int(support[0])
    ext = np.append(g[t1:], boundary)
    d = np.diff(ext)
    return bool(np.all(d[1:] >= d[:-1]))


def kernel_scale(spec):
    """Upper bound on the l1 norm of g0 (tolerance scale for the package)."""
    kernel = spec.kernel
    if isinstance(kernel, LagSum):
        return kernel.abs_tail(0)
    return float(np.abs(kernel.g0).sum()) + kernel.tail_bound
