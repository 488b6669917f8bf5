# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Hot inner loops behind the public API: sign-variation counts, cyclic
convolution, the 3^P fixed-point scan and the pairwise variation scan.
Contracts are identical to ``pure.py``; cross-backend equivalence is
enforced by the test suite.
"""

import numpy as np

NAME = "compiled"

DEF SCAN_MAX_P = 16

cdef int _NEG_INF = -(1 << 30)


cdef inline int _sgn(double x) nogil:
    if x > 0.0:
        return 1
    if x < 0.0:
        return -1
    return 0


cdef int _sign_changes(const double* v, Py_ssize_t n) nogil:
    cdef int count = 0, last = 0, seen = 0, s
    cdef Py_ssize_t i
    for i in range(n):
        s = _sgn(v[i])
        if s == 0:
            continue
        if seen and s != last:
            count += 1
        last = s
        seen = 1
    if not seen:
        return -1
    return count


cdef int _sign_changes_max(const double* v, Py_ssize_t n) nogil:
    # DP over {-1,+1} substitutions of zeros; only signs matter.
    cdef int best_pos, best_neg, new_pos, new_neg, s
    cdef Py_ssize_t i
    s = _sgn(v[0])
    best_pos = 0 if s >= 0 else _NEG_INF
    best_neg = 0 if s <= 0 else _NEG_INF
    for i in range(1, n):
        s = _sgn(v[i])
        if s >= 0:
            new_pos = best_pos if best_pos > best_neg + 1 else best_neg + 1
        else:
            new_pos = _NEG_INF
        if s <= 0:
            new_neg = best_neg if best_neg > best_pos + 1 else best_pos + 1
        else:
            new_neg = _NEG_INF
        best_pos = new_pos
        best_neg = new_neg
    return best_pos if best_pos > best_neg else best_neg


def sign_changes(double[::1] v):
    """Sign changes after deleting zeros; -1 for the all-zero vector."""
    return _sign_changes(&v[0], v.shape[0])


def sign_changes_max(double[::1] v):
    """Maximum of sign_changes over all {-1,+1} substitutions of the zeros."""
    return _sign_changes_max(&v[0], v.shape[0])


def cyclic_variation_minus(double[::1] v):
    """sup of sign_changes over all wrap-around rotations of v."""
    cdef Py_ssize_t n = v.shape[0], i, j
    cdef int best = _NEG_INF, r
    rot_arr = np.empty(n + 1, dtype=np.float64)
    cdef double[::1] rot = rot_arr
    with nogil:
        for i in range(n):
            for j in range(n):
                rot[j] = v[(i + j) % n]
            rot[n] = v[i]
            r = _sign_changes(&rot[0], n + 1)
            if r > best:
                best = r
    return best


def cyclic_variation_plus(double[::1] v):
    """Maximum of cyclic_variation_minus over all {-1,+1} substitutions of
    the zeros of v.

    The substitution happens once per period (a zero keeps one value in
    every rotation), which is what makes one-peaked patterns with zeros at
    both crossings come out as exactly two.  Computed by a cyclic dynamic
    program over the running sign.
    """
    cdef Py_ssize_t n = v.shape[0], i
    cdef int s, c0, branch, best, fpos, fneg, npos, nneg, close
    cdef bint any_nonzero = False
    for i in range(n):
        if _sgn(v[i]) != 0:
            any_nonzero = True
            break
    if not any_nonzero:
        return n if n % 2 == 0 else n - 1
    s = _sgn(v[0])
    best = _NEG_INF
    for branch in range(2):
        if s != 0:
            if branch == 1:
                break
            c0 = s
        else:
            c0 = 1 if branch == 0 else -1
        fpos = 0 if c0 > 0 else _NEG_INF
        fneg = 0 if c0 < 0 else _NEG_INF
        for i in range(1, n):
            if _sgn(v[i]) >= 0:
                npos = fpos if fpos > fneg + 1 else fneg + 1
            else:
                npos = _NEG_INF
            if _sgn(v[i]) <= 0:
                nneg = fneg if fneg > fpos + 1 else fpos + 1
            else:
                nneg = _NEG_INF
            fpos = npos
            fneg = nneg
        close = fpos + (1 if c0 != 1 else 0)
        if close > best:
            best = close
        close = fneg + (1 if c0 != -1 else 0)
        if close > best:
            best = close
    return best


def cyclic_convolve(double[::1] v, double[::1] w):
    """Cyclic convolution: out[t] = sum_j v[(t - j) mod n] * w[j]."""
    cdef Py_ssize_t n = v.shape[0], t, j, k
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double acc
    with nogil:
        for t in range(n):
            acc = 0.0
            for j in range(n):
                k = t - j
                if k < 0:
                    k += n
                acc += v[k] * w[j]
            o[t] = acc
    return out


def scan_fixed_points(double[::1] b, double zero_tol):
    """Enumerate every s in {-1,0,+1}^P except 0 and keep the pairs with
    sign(H_b s) == s entrywise under ``zero_tol``.

    Enumeration is lexicographic in s (entries ordered -1 < 0 < +1).
    Returns a list of (pattern int8[P], values float64[P]) tuples.
    """
    cdef Py_ssize_t P = b.shape[0]
    if P > SCAN_MAX_P:
        raise ValueError(f"scan limited to P <= {SCAN_MAX_P}, got {P}")
    cdef signed char s[SCAN_MAX_P]
    cdef double u[SCAN_MAX_P]
    cdef Py_ssize_t t, j, k, pos
    cdef int ok, su, nonzero, done = 0
    cdef double acc
    out = []
    for j in range(P):
        s[j] = -1
    while not done:
        nonzero = 0
        for j in range(P):
            if s[j] != 0:
                nonzero = 1
                break
        if nonzero:
            ok = 1
            for t in range(P):
                acc = 0.0
                for j in range(P):
                    k = t - j
                    if k < 0:
                        k += P
                    acc += b[k] * s[j]
                u[t] = acc
                if acc > zero_tol:
                    su = 1
                elif acc < -zero_tol:
                    su = -1
                else:
                    su = 0
                if su != s[t]:
                    ok = 0
                    break
            if ok:
                pat = np.empty(P, dtype=np.int8)
                val = np.empty(P, dtype=np.float64)
                for j in range(P):
                    pat[j] = s[j]
                    val[j] = u[j]
                out.append((pat, val))
        # odometer increment, last index least significant
        pos = P - 1
        while True:
            if s[pos] < 1:
                s[pos] += 1
                break
            s[pos] = -1
            if pos == 0:
                done = 1
                break
            pos -= 1
    return out


cdef int _cyclic_sign_changes(const double* v, Py_ssize_t n) nogil:
    # Cyclic flips between adjacent nonzero entries; equals the rotation
    # supremum of _sign_changes for nonzero vectors, -1 for the zero vector.
    cdef int first = 0, last = 0, count = 0, s
    cdef Py_ssize_t i
    for i in range(n):
        s = _sgn(v[i])
        if s == 0:
            continue
        if first == 0:
            first = s
        elif s != last:
            count += 1
        last = s
    if first == 0:
        return -1
    if last != first:
        count += 1
    return count


def count_lemma1_violations(signed char[:, ::1] V, double[:, ::1] W):
    """Count pairs (v, w) with more than two cyclic sign changes in the
    cyclic difference of H_v w.

    Returns (count, first_v_index, first_w_index), indices -1 if none.
    """
    cdef Py_ssize_t kv = V.shape[0], kw = W.shape[0], n = V.shape[1]
    cdef Py_ssize_t i, j, t, m, k
    conv_arr = np.empty(n, dtype=np.float64)
    diff_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] conv = conv_arr
    cdef double[::1] diff = diff_arr
    cdef double acc
    cdef long count = 0
    cdef Py_ssize_t first_i = -1, first_j = -1
    with nogil:
        for i in range(kv):
            for j in range(kw):
                for t in range(n):
                    acc = 0.0
                    for m in range(n):
                        k = t - m
                        if k < 0:
                            k += n
                        acc += V[i, k] * W[j, m]
                    conv[t] = acc
                for t in range(n):
                    diff[t] = conv[(t + 1) % n] - conv[t]
                if _cyclic_sign_changes(&diff[0], n) > 2:
                    count += 1
                    if first_i < 0:
                        first_i = i
                        first_j = j
    return count, first_i, first_j
