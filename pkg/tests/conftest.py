"""Shared generators and independent oracles for the test suite.

The oracles follow the definitions literally (explicit rotation loops,
exhaustive zero substitutions) and stay independent of the package
kernels; tests freeze expected values computed with them.
"""

import itertools

import numpy as np

import relayosc as ro


def first_order(a, delay=0, gain=1.0):
    return ro.SystemSpec.first_order(a, delay=delay, gain=gain)


def random_lag_spec(rng, delay=0, max_terms=3,
                    pole_range=(0.05, 0.95), gain_range=(0.1, 2.0)):
    """Random parallel lag sum with positive gains (decreasing kernel)."""
    n = int(rng.integers(1, max_terms + 1))
    terms = tuple((float(rng.uniform(*gain_range)), float(rng.uniform(*pole_range)))
                  for _ in range(n))
    return ro.SystemSpec(delay=delay, kernel=ro.LagSum(terms=terms))


def lattice_vectors(n):
    """All vectors in {-1, 0, +1}^n."""
    for combo in itertools.product((-1, 0, 1), repeat=n):
        yield np.array(combo, dtype=np.int8)


def random_cyclic_unimodal(rng, n):
    """Random real vector whose cyclic difference changes sign at most
    twice: sorted values arranged to rise then fall, randomly rotated."""
    vals = np.sort(rng.normal(size=n))
    m = int(rng.integers(1, n + 1))
    arranged = np.concatenate([vals[:m], vals[m:][::-1]])
    return np.roll(arranged, int(rng.integers(n)))


def _unimodal_run(rng, r, lo, hi):
    base = np.sort(rng.uniform(lo, hi, size=r))
    j = int(rng.integers(0, r))
    return np.concatenate([base[:j], base[j:][::-1]])


def random_assumption2_vector(rng, P):
    """Random one-peaked period with equally many positive and negative
    entries, built from one of the four balanced sign shapes."""
    if P % 2 == 0:
        form = "d" if P == 2 or rng.integers(2) == 0 else "a"
    else:
        form = "b" if rng.integers(2) == 0 else "c"
    r = P // 2 if form == "d" else (P - 1) // 2 if form in "bc" else P // 2 - 1
    pos = _unimodal_run(rng, r, 0.5, 2.0)
    neg = -_unimodal_run(rng, r, 0.5, 2.0)
    if form == "d":
        u = np.concatenate([pos, neg])
    elif form == "a":
        u = np.concatenate([pos, [0.0], neg, [0.0]])
    elif form == "b":
        u = np.concatenate([pos, neg, [0.0]])
    else:
        u = np.concatenate([pos, [0.0], neg])
    u = np.roll(u, int(rng.integers(P)))
    assert ro.satisfies_assumption2(u)
    return u


# ---------------------------------------------------------------------------
# independent oracles

def oracle_sign_changes(v):
    """Zero-deletion sign-change count straight from the definition."""
    signs = [1 if x > 0 else -1 for x in v if x != 0]
    if not signs:
        return -1
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _zero_substitutions(v):
    v = np.asarray(v, dtype=np.float64)
    zeros = np.nonzero(v == 0)[0]
    for fill in itertools.product((-1.0, 1.0), repeat=len(zeros)):
        filled = v.copy()
        filled[zeros] = fill
        yield filled


def oracle_sign_changes_max(v):
    """Exhaustive {-1,+1} substitution of zeros (use on few zeros only)."""
    return max(oracle_sign_changes(f) for f in _zero_substitutions(v))


def oracle_cyclic_minus(v):
    """Explicit supremum over all wrap-around rotations."""
    v = list(v)
    n = len(v)
    return max(oracle_sign_changes(v[i:] + v[:i] + [v[i]]) for i in range(n))


def oracle_cyclic_plus(v):
    """Exhaustive zero substitution, then the rotation supremum."""
    return max(oracle_cyclic_minus(f) for f in _zero_substitutions(v))
