"""Sign-variation and cyclic-difference primitives.

Conventions used throughout the package:

* ``sign_changes`` (written S- below) deletes zeros before counting
  adjacent sign flips and returns -1 for the all-zero vector.
* ``sign_changes_max`` (S+) substitutes every zero by -1 or +1 so as to
  maximize S-.  For the all-zero vector of length n this substitution rule
  gives n - 1; the -1 convention applies to S- only.
* The cyclic minus variant takes the supremum over all n wrap-around
  rotations ``[v_i, ..., v_n, v_1, ..., v_i]`` (length n + 1, endpoint
  repeated).  The cyclic plus variant maximizes the minus variant over
  {-1,+1} substitutions of the zeros, one value per period entry.
* One-period vectors are 0-indexed, t = 0 .. P-1.
"""

from collections import namedtuple

import numpy as np

from . import _kernels
from .errors import InvalidInputError

__all__ = [
    "SignCounts",
    "sign_changes",
    "sign_changes_max",
    "cyclic_variation",
    "cyclic_diff",
    "count_signs",
    "satisfies_assumption2",
    "check_lemma4_conditions",
    "as_real_vector",
    "validate_sign_pattern",
]

SignCounts = namedtuple("SignCounts", ["positive", "negative", "zero"])


def as_real_vector(v):
    """Coerce to a finite, contiguous float64 vector of length >= 1."""
    arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise InvalidInputError(f"expected a 1-d vector, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InvalidInputError("vector entries must be finite")
    return arr


def validate_sign_pattern(pattern):
    """Coerce to an int8 vector with entries in {-1, 0, +1}."""
    arr = np.asarray(pattern)
    if arr.ndim != 1 or arr.size < 1:
        raise InvalidInputError(f"expected a 1-d pattern, got shape {arr.shape}")
    out = np.ascontiguousarray(np.rint(arr), dtype=np.int8)
    if not np.array_equal(out, arr) or not np.isin(out, (-1, 0, 1)).all():
        raise InvalidInputError("pattern entries must be -1, 0 or +1")
    return out


def sign_changes(v):
    """Number of sign changes in v with zeros deleted (S-).

    Returns -1 for the all-zero vector.
    """
    return int(_kernels.sign_changes(as_real_vector(v)))


def sign_changes_max(v):
    """Largest S- obtainable by replacing each zero of v with -1 or +1 (S+)."""
    return int(_kernels.sign_changes_max(as_real_vector(v)))


def cyclic_variation(v, kind="minus"):
    """Cyclic variation of v.

    "minus": supremum of sign_changes over all wrap-around rotations.
    "plus": maximum of the minus variant over {-1,+1} substitutions of the
    zeros (one value per entry, shared by every rotation).
    """
    arr = as_real_vector(v)
    if kind == "minus":
        return int(_kernels.cyclic_variation_minus(arr))
    if kind == "plus":
        return int(_kernels.cyclic_variation_plus(arr))
    raise InvalidInputError(f"kind must be 'minus' or 'plus', got {kind!r}")


def cyclic_diff(v):
    """Cyclic forward difference [v1-v0, v2-v1, ..., v0-v_{n-1}]."""
    arr = as_real_vector(v)
    return np.roll(arr, -1) - arr


def count_signs(v, zero_tol=0.0):
    """Counts of positive, negative and zero entries of v.

    Entries with ``|x| <= zero_tol`` count as zero.  The default 0 suits
    exact integer patterns; for floating data a tolerance on the order of
    ``1e-9 * max(abs(v))`` is the sensible choice.
    """
    if zero_tol < 0:
        raise InvalidInputError("zero_tol must be >= 0")
    arr = as_real_vector(v)
    zero = np.abs(arr) <= zero_tol
    pos = int(np.count_nonzero(~zero & (arr > 0)))
    neg = int(np.count_nonzero(~zero & (arr < 0)))
    return SignCounts(pos, neg, int(np.count_nonzero(zero)))


def satisfies_assumption2(u):
    """True iff u is strictly one-peaked per period in the cyclic-variation
    sense: the cyclic difference has exactly two cyclic sign changes and the
    adversarial cyclic variation of u itself is exactly two."""
    arr = as_real_vector(u)
    if arr.size < 2:
        raise InvalidInputError("need a period of length > 1")
    if _kernels.cyclic_variation_minus(np.roll(arr, -1) - arr) != 2:
        return False
    return int(_kernels.cyclic_variation_plus(arr)) == 2


def check_lemma4_conditions(v):
    """Variation-diminishing test for the circulant generated by v: the
    cyclic difference may change sign at most twice and every quadratic
    minor ``(d_t)^2 - d_{t-1} d_{t+1}`` of the differences (indices mod n)
    must be nonnegative.  Requires length > 3."""
    arr = as_real_vector(v)
    if arr.size <= 3:
        raise InvalidInputError("defined for vectors of length > 3")
    d = np.roll(arr, -1) - arr
    if _kernels.cyclic_variation_minus(d) > 2:
        return False
    return bool(np.all(d * d >= np.roll(d, 1) * np.roll(d, -1)))
