"""Pure NumPy kernel backend.

Same contracts as the compiled backend in ``_fast.pyx``: scalar variation
counts follow the definitions literally (zero deletion, rotation loop),
while the two exhaustive scans are vectorized in NumPy so that the package
stays usable when the extension is not built.
"""

import numpy as np

NAME = "python"

_NEG_INF = -(1 << 30)


def _sgn(x):
    if x > 0.0:
        return 1
    if x < 0.0:
        return -1
    return 0


def sign_changes(v):
    """Sign changes after deleting zeros; -1 for the all-zero vector."""
    count = 0
    last = 0
    seen = False
    for x in v:
        s = _sgn(x)
        if s == 0:
            continue
        if seen and s != last:
            count += 1
        last = s
        seen = True
    return count if seen else -1


def sign_changes_max(v):
    """Maximum of sign_changes over all {-1,+1} substitutions of the zeros.

    Dynamic program over the running sign: substituting each zero by -1 or
    +1 is exhaustive because only signs matter.
    """
    s = _sgn(v[0])
    best_pos = 0 if s >= 0 else _NEG_INF
    best_neg = 0 if s <= 0 else _NEG_INF
    for x in v[1:]:
        s = _sgn(x)
        new_pos = max(best_pos, best_neg + 1) if s >= 0 else _NEG_INF
        new_neg = max(best_neg, best_pos + 1) if s <= 0 else _NEG_INF
        best_pos, best_neg = new_pos, new_neg
    return max(best_pos, best_neg)


def _rotations(v):
    n = len(v)
    for i in range(n):
        rot = np.empty(n + 1, dtype=np.float64)
        rot[: n - i] = v[i:]
        rot[n - i : n] = v[:i]
        rot[n] = v[i]
        yield rot


def cyclic_variation_minus(v):
    """sup of sign_changes over all wrap-around rotations of v."""
    return max(sign_changes(rot) for rot in _rotations(v))


def cyclic_variation_plus(v):
    """Maximum of cyclic_variation_minus over all {-1,+1} substitutions of
    the zeros of v.

    The substitution happens once per period (a zero keeps one value in
    every rotation), which is what makes one-peaked patterns with zeros at
    both crossings come out as exactly two.  Computed by a cyclic dynamic
    program over the running sign.
    """
    n = len(v)
    signs = [_sgn(x) for x in v]
    if all(s == 0 for s in signs):
        # alternating fill: n cyclic flips when n is even, n - 1 otherwise
        return n if n % 2 == 0 else n - 1
    first = (1, -1) if signs[0] == 0 else (signs[0],)
    best = _NEG_INF
    for c0 in first:
        fpos = 0 if c0 > 0 else _NEG_INF
        fneg = 0 if c0 < 0 else _NEG_INF
        for s in signs[1:]:
            npos = max(fpos, fneg + 1) if s >= 0 else _NEG_INF
            nneg = max(fneg, fpos + 1) if s <= 0 else _NEG_INF
            fpos, fneg = npos, nneg
        close_pos = fpos + (1 if c0 != 1 else 0)
        close_neg = fneg + (1 if c0 != -1 else 0)
        best = max(best, close_pos, close_neg)
    return best


def cyclic_convolve(v, w):
    """Cyclic convolution: out[t] = sum_j v[(t - j) mod n] * w[j]."""
    n = len(v)
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return np.asarray(v)[idx] @ np.asarray(w)


def _batch_cyclic_sign_changes(cols):
    """Cyclic sign changes (zeros deleted) of every column of ``cols``.

    Equivalent to cyclic_variation_minus per column: for a nonzero vector
    the rotation supremum equals the number of sign flips between cyclically
    adjacent nonzero entries; all-zero columns give -1.
    """
    n, m = cols.shape
    signs = np.sign(cols).astype(np.int8)
    nonzero = signs != 0
    any_nz = nonzero.any(axis=0)

    # Index of the most recent nonzero entry at or before each row (-1 if
    # none yet); wrap the start of each column around to its last nonzero.
    idx = np.where(nonzero, np.arange(n)[:, None], -1)
    last = np.maximum.accumulate(idx, axis=0)
    wrap = np.where(any_nz, last[-1], 0)
    filled_idx = np.where(last >= 0, last, wrap[None, :])
    filled = signs[filled_idx, np.arange(m)[None, :]]
    prev = np.roll(filled, 1, axis=0)

    flips = (nonzero & (signs != prev)).sum(axis=0)
    return np.where(any_nz, flips, -1)


def scan_fixed_points(b, zero_tol):
    """Enumerate every s in {-1,0,+1}^P except 0 and keep the pairs with
    sign(H_b s) == s entrywise under ``zero_tol``.

    Enumeration is lexicographic in s (entries ordered -1 < 0 < +1).
    Returns a list of (pattern int8[P], values float64[P]) tuples.
    """
    b = np.ascontiguousarray(b, dtype=np.float64)
    P = len(b)
    idx = (np.arange(P)[:, None] - np.arange(P)[None, :]) % P
    H = b[idx]

    total = 3**P
    weights = 3 ** np.arange(P - 1, -1, -1, dtype=np.int64)
    out = []
    chunk = 3**11
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (codes[None, :] // weights[:, None]) % 3
        S = (digits - 1).astype(np.int8)
        U = H @ S.astype(np.float64)
        sig = np.where(U > zero_tol, 1, np.where(U < -zero_tol, -1, 0))
        ok = (sig == S).all(axis=0) & (S != 0).any(axis=0)
        for k in np.nonzero(ok)[0]:
            out.append((S[:, k].copy(), U[:, k].copy()))
    return out


def count_lemma1_violations(V, W):
    """Count pairs (v, w) with more than two cyclic sign changes in the
    cyclic difference of H_v w.

    V: int8 matrix, one lattice vector per row.  W: float64 matrix, one
    vector per row.  Returns (count, first_v_index, first_w_index) with
    indices -1 when there is no violation.
    """
    V = np.asarray(V, dtype=np.int8)
    W = np.ascontiguousarray(W, dtype=np.float64)
    n = V.shape[1]
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    count = 0
    first = (-1, -1)
    for i, v in enumerate(V):
        out = v.astype(np.float64)[idx] @ W.T  # n x kw, columns are H_v w
        diff = np.roll(out, -1, axis=0) - out
        bad = _batch_cyclic_sign_changes(diff) > 2
        nbad = int(bad.sum())
        if nbad and first == (-1, -1):
            first = (i, int(np.nonzero(bad)[0][0]))
        count += nbad
    return count, first[0], first[1]
