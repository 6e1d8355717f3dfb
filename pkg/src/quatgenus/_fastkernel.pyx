# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled isotropic-vector search kernel.

Mirrors quatgenus._searchpure.search exactly: same shell/rank enumeration
order, same first-hit result. The dispatcher guarantees all partial sums
and ordinals fit in 64-bit integers before selecting this kernel.
"""

from libc.stdlib cimport free, malloc


cdef inline long long _rank_value(long long r):
    if r == 0:
        return 0
    if r & 1:
        return (r + 1) >> 1
    return -(r >> 1)


cdef void _fold_surface(long long *coef, long long *pw, int k, long long m,
                        dict table) except *:
    """Min-fold (value -> ordinal) over tuples whose max rank is 2m-1 or 2m."""
    cdef long long hi = 2 * m
    cdef long long new_lo = hi - 1
    cdef long long d[8]
    cdef long long lo_i[8]
    cdef long long hi_i[8]
    cdef int i, j, t
    cdef long long val, ordinal, v
    cdef object prev
    for j in range(k):
        for i in range(k):
            if i < j:
                lo_i[i] = 0
                hi_i[i] = new_lo - 1
            elif i == j:
                lo_i[i] = new_lo
                hi_i[i] = hi
            else:
                lo_i[i] = 0
                hi_i[i] = hi
            d[i] = lo_i[i]
        while True:
            val = 0
            ordinal = 0
            for i in range(k):
                v = _rank_value(d[i])
                val += coef[i] * v * v
                ordinal += d[i] * pw[i]
            prev = table.get(val)
            if prev is None or ordinal < <long long> prev:
                table[val] = ordinal
            t = k - 1
            while t >= 0 and d[t] == hi_i[t]:
                d[t] = lo_i[t]
                t -= 1
            if t < 0:
                break
            d[t] += 1


def search(coefficients, long long bound):
    """First isotropic vector in enumeration order with max-norm <= bound, or None."""
    cdef int n = len(coefficients)
    if n < 2 or bound < 1:
        return None
    cdef int k_right = n // 2
    cdef int k_left = n - k_right
    if k_left > 8 or k_right > 8:
        raise ValueError("dimension too large for the compiled kernel")
    cdef long long base = 2 * bound + 1
    cdef long long *cl = <long long *> malloc(k_left * sizeof(long long))
    cdef long long *cr = <long long *> malloc(k_right * sizeof(long long))
    cdef long long *pw_l = <long long *> malloc(k_left * sizeof(long long))
    cdef long long *pw_r = <long long *> malloc(k_right * sizeof(long long))
    cdef dict left_all = {0: 0}
    cdef dict right_all = {0: 0}
    cdef dict right_new
    cdef long long m, val, ordinal, need, v, best_l, best_r, lo_ord, ro_ord
    cdef long long d[8]
    cdef long long lo_i[8]
    cdef long long hi_i[8]
    cdef long long hi, new_lo
    cdef int i, j, t, have_best
    cdef object hit, prev
    try:
        for i in range(k_left):
            cl[i] = coefficients[i]
            pw_l[i] = base ** (k_left - 1 - i)
        for i in range(k_right):
            cr[i] = coefficients[k_left + i]
            pw_r[i] = base ** (k_right - 1 - i)
        for m in range(1, bound + 1):
            right_new = {}
            _fold_surface(cr, pw_r, k_right, m, right_new)
            for val_obj, ord_obj in right_new.items():
                prev = right_all.get(val_obj)
                if prev is None or <long long> ord_obj < <long long> prev:
                    right_all[val_obj] = ord_obj
            have_best = 0
            best_l = 0
            best_r = 0
            # new left tuples against every right tuple seen so far
            hi = 2 * m
            new_lo = hi - 1
            for j in range(k_left):
                for i in range(k_left):
                    if i < j:
                        lo_i[i] = 0
                        hi_i[i] = new_lo - 1
                    elif i == j:
                        lo_i[i] = new_lo
                        hi_i[i] = hi
                    else:
                        lo_i[i] = 0
                        hi_i[i] = hi
                    d[i] = lo_i[i]
                while True:
                    val = 0
                    ordinal = 0
                    for i in range(k_left):
                        v = _rank_value(d[i])
                        val += cl[i] * v * v
                        ordinal += d[i] * pw_l[i]
                    need = -val
                    hit = right_all.get(need)
                    if hit is not None:
                        ro_ord = <long long> hit
                        if (not have_best) or ordinal < best_l or (ordinal == best_l and ro_ord < best_r):
                            best_l = ordinal
                            best_r = ro_ord
                            have_best = 1
                    t = k_left - 1
                    while t >= 0 and d[t] == hi_i[t]:
                        d[t] = lo_i[t]
                        t -= 1
                    if t < 0:
                        break
                    d[t] += 1
            # new right tuples against strictly older lefts
            for val_obj, ord_obj in right_new.items():
                hit = left_all.get(-<long long> val_obj)
                if hit is not None:
                    lo_ord = <long long> hit
                    ro_ord = <long long> ord_obj
                    if (not have_best) or lo_ord < best_l or (lo_ord == best_l and ro_ord < best_r):
                        best_l = lo_ord
                        best_r = ro_ord
                        have_best = 1
            if have_best:
                out = []
                for i in range(k_left):
                    out.append(int(_rank_value((best_l // pw_l[i]) % base)))
                for i in range(k_right):
                    out.append(int(_rank_value((best_r // pw_r[i]) % base)))
                return tuple(out)
            _fold_surface(cl, pw_l, k_left, m, left_all)
    finally:
        free(cl)
        free(cr)
        free(pw_l)
        free(pw_r)
    return None
