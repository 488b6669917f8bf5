"""Time stepping of the relay loop and steady-state period detection.

The free initial condition is the relay history: a prefix of relay symbols
occupying t = -L .. -1, extended periodically into the infinite past.  Lag
states are started at the value that past induces (closed form), so the
simulated trajectory stays inside the exact convolution semantics of the
loop.  A zero prefix therefore gives the identically zero trajectory.

Time stepping needs delay >= 1; with no delay the relay input at time t
would depend on its own output (use the absence analysis instead).
"""

import csv
from dataclasses import dataclass

import numpy as np

from .errors import AlgebraicLoopError, InvalidInputError
from .lti import LagSum, kernel_scale
from .variation import validate_sign_pattern

__all__ = [
    "Trajectory",
    "simulate",
    "detect_period",
    "basin_probe",
    "steady_slice",
    "trajectory_to_csv",
]


@dataclass(frozen=True)
class Trajectory:
    """Loop input u and relay output r over t = 0 .. T-1, with
    r(t) = sign(u(t)) pointwise.  ``scale`` is the l1 norm of the kernel,
    the natural unit for amplitude tolerances."""

    u: np.ndarray
    r: np.ndarray
    scale: float

    def __len__(self):
        return self.u.size


def _sign_int(x):
    if x > 0.0:
        return 1
    if x < 0.0:
        return -1
    return 0


def simulate(spec, initial_relay, T):
    """Run the loop for T steps from a relay-history prefix.

    ``initial_relay`` supplies r(-L .. -1) (length L >= delay >= 1) and
    repeats into the infinite past.  Each step feeds the relay symbol
    delayed by ``spec.delay`` into the kernel, sums the kernel outputs into
    u(t) and closes the loop with r(t) = sign(u(t)), where sign(0) = 0.
    """
    if spec.delay < 1:
        raise AlgebraicLoopError(
            "the loop has no delay, so u(t) would depend on r(t); "
            "delay-free loops are handled analytically (absence check)")
    if T < 1:
        raise InvalidInputError("T must be >= 1")
    prefix = validate_sign_pattern(initial_relay)
    L = prefix.size
    if L < spec.delay:
        raise InvalidInputError(
            f"initial relay prefix must cover the delay ({spec.delay}), got {L}")

    def past_relay(t):
        # t < 0; prefix occupies -L..-1 and repeats further back
        return float(prefix[t % L])

    delay = spec.delay
    kernel = spec.kernel
    u = np.empty(T)
    r = np.empty(T, dtype=np.int8)

    if isinstance(kernel, LagSum):
        # state y_i(t) = p_i y_i(t-1) + k_i d(t) with d(t) = r(t - delay);
        # y_i(-1) in closed form from the periodic past
        states = []
        for k, p in kernel.terms:
            acc = 0.0
            geo = 1.0 / (1.0 - p**L)
            for j in range(L):
                acc += past_relay(-1 - j - delay) * (k * p**j) * geo
            states.append(acc)
        poles = [p for _, p in kernel.terms]
        gains = [k for k, _ in kernel.terms]
        for t in range(T):
            d = r[t - delay] if t - delay >= 0 else past_relay(t - delay)
            total = 0.0
            for i in range(len(states)):
                states[i] = poles[i] * states[i] + gains[i] * d
                total += states[i]
            u[t] = -total
            r[t] = _sign_int(u[t])
    else:
        g0 = np.asarray(kernel.g0, dtype=np.float64)
        for t in range(T):
            acc = 0.0
            for m in range(g0.size):
                tau = t - delay - m
                d = r[tau] if tau >= 0 else past_relay(tau)
                acc += g0[m] * d
            u[t] = -acc
            r[t] = _sign_int(u[t])

    return Trajectory(u=u, r=r, scale=kernel_scale(spec))


def detect_period(traj, P_max, tol=None):
    """Smallest period P <= P_max and smallest onset T0 such that the relay
    sequence repeats exactly for t >= T0 over at least two full periods and
    |u(t+P) - u(t)| <= tol on that window.  None if no cycle qualifies.
    """
    if tol is None:
        tol = 1e-8 * max(traj.scale, 1e-300)
    T = len(traj)
    u, r = traj.u, traj.r
    for P in range(1, P_max + 1):
        if T < 2 * P:
            break
        onset = 0
        for t in range(T - P - 1, -1, -1):
            if r[t] != r[t + P] or abs(u[t + P] - u[t]) > tol:
                onset = t + 1
                break
        if T - onset >= 2 * P:
            return P, onset
    return None


def steady_slice(traj, period, onset):
    """One period of u from the settled part of a trajectory (the latest
    full period, where transients have decayed furthest)."""
    T = len(traj)
    start = onset + ((T - onset) // period - 1) * period
    return traj.u[start:start + period]


def basin_probe(spec, n_trials, seed, T, P_max=None, prefix_len=None):
    """Histogram of detected periods over random relay-history prefixes.

    Prefix entries are drawn from {-1, +1}; trial seeds derive
    deterministically from ``seed``.  Trials with no detected cycle count
    under the key "undetected".
    """
    if n_trials < 1:
        raise InvalidInputError("n_trials must be >= 1")
    if prefix_len is None:
        prefix_len = max(spec.delay, 1)
    if P_max is None:
        from .oscillation import period_bounds

        try:
            P_max = period_bounds(spec).effective_upper
        except Exception:
            P_max = 4 * max(spec.delay, 1) + 2
    histogram = {}
    for child in np.random.SeedSequence(seed).spawn(n_trials):
        rng = np.random.default_rng(child)
        prefix = rng.choice((-1, 1), size=prefix_len)
        found = detect_period(simulate(spec, prefix, T), P_max)
        key = found[0] if found is not None else "undetected"
        histogram[key] = histogram.get(key, 0) + 1
    return histogram


def trajectory_to_csv(traj, fh):
    """Write a trajectory as CSV rows t,u,r (header included)."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["t", "u", "r"])
    for t in range(len(traj)):
        writer.writerow([t, repr(float(traj.u[t])), int(traj.r[t])])
