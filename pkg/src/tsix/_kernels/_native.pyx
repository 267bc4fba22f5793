# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics mirror pyref.py exactly.

Inputs are array('q') buffers (int64).  The callers keep the backing arrays
alive for the duration of each call, so raw data pointers are safe here.
"""

from cpython cimport array
from libc.stdlib cimport free, malloc

import array as _array


cpdef Py_ssize_t lower_bound(object keys_obj, long long k):
    """Index of the first key >= k."""
    cdef array.array keys = keys_obj
    cdef long long * data = keys.data.as_longlongs
    cdef Py_ssize_t lo = 0, hi = len(keys), mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if data[mid] < k:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef struct _List:
    long long *keys
    long long *off
    long long *flat
    Py_ssize_t n


cdef _List *_acquire(list triples) except NULL:
    cdef Py_ssize_t n = len(triples)
    cdef _List *ls = <_List *> malloc(n * sizeof(_List))
    if ls == NULL:
        raise MemoryError()
    cdef array.array keys, off, flat
    cdef Py_ssize_t i
    for i in range(n):
        keys, off, flat = triples[i]
        ls[i].keys = keys.data.as_longlongs
        ls[i].off = off.data.as_longlongs
        ls[i].flat = flat.data.as_longlongs
        ls[i].n = len(keys)
    return ls


cdef inline Py_ssize_t _lb(long long *keys, Py_ssize_t n, long long k):
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < k:
            lo = mid + 1
        else:
            hi = mid
    return lo


cpdef list slca_candidates(object o_off_obj, object o_flat_obj, list others):
    cdef array.array o_off_arr = o_off_obj
    cdef array.array o_flat_arr = o_flat_obj
    cdef long long *o_off = o_off_arr.data.as_longlongs
    cdef long long *o_flat = o_flat_arr.data.as_longlongs
    cdef Py_ssize_t n_out = len(o_off_arr) - 1
    cdef Py_ssize_t n_lists = len(others)

    cdef Py_ssize_t max_len = 1, a, i
    for a in range(n_out):
        if o_off[a + 1] - o_off[a] > max_len:
            max_len = o_off[a + 1] - o_off[a]
    cdef long long *cand = <long long *> malloc(max_len * sizeof(long long))
    if cand == NULL:
        raise MemoryError()
    cdef _List *ls = NULL
    cdef Py_ssize_t cand_len, li, idx, probe, s2, e2, best, l, n
    cdef long long cid
    out = []
    try:
        ls = _acquire(others)
        for a in range(n_out):
            cand_len = o_off[a + 1] - o_off[a]
            for i in range(cand_len):
                cand[i] = o_flat[o_off[a] + i]
            for li in range(n_lists):
                cid = cand[cand_len - 1]
                idx = _lb(ls[li].keys, ls[li].n, cid)
                best = 0
                for probe in range(2):
                    if 0 <= idx - probe < ls[li].n:
                        s2 = ls[li].off[idx - probe]
                        e2 = ls[li].off[idx - probe + 1]
                        n = e2 - s2
                        if cand_len < n:
                            n = cand_len
                        l = 0
                        while l < n and cand[l] == ls[li].flat[s2 + l]:
                            l += 1
                        if l > best:
                            best = l
                cand_len = best
            out.append(tuple([cand[i] for i in range(cand_len)]))
    finally:
        free(cand)
        if ls != NULL:
            free(ls)
    return out


cpdef list evaluate_join(object np_off_obj, object np_flat_obj,
                         object lp_off_obj, object lp_flat_obj,
                         object q_depths_obj, object q_lpids_obj, list others):
    cdef array.array np_off_arr = np_off_obj
    cdef array.array np_flat_arr = np_flat_obj
    cdef array.array lp_off_arr = lp_off_obj
    cdef array.array lp_flat_arr = lp_flat_obj
    cdef array.array q_depths_arr = q_depths_obj
    cdef array.array q_lpids_arr = q_lpids_obj
    cdef long long *np_off = np_off_arr.data.as_longlongs
    cdef long long *np_flat = np_flat_arr.data.as_longlongs
    cdef long long *lp_off = lp_off_arr.data.as_longlongs
    cdef long long *lp_flat = lp_flat_arr.data.as_longlongs
    cdef long long *q_depths = q_depths_arr.data.as_longlongs
    cdef long long *q_lpids = q_lpids_arr.data.as_longlongs
    cdef Py_ssize_t n_out = len(np_off_arr) - 1
    cdef Py_ssize_t nq = len(q_depths_arr)
    cdef Py_ssize_t n_lists = len(others)

    cdef _List *ls = NULL
    cdef Py_ssize_t a, j, li, qi, idx, s, e
    cdef long long d, k
    cdef bint ok
    results = []
    try:
        ls = _acquire(others)
        for a in range(n_out):
            qi = -1
            for j in range(nq):
                d = q_depths[j]
                if lp_off[a + 1] - lp_off[a] > d and lp_flat[lp_off[a] + d] == q_lpids[j]:
                    qi = j
                    break
            if qi < 0:
                continue
            d = q_depths[qi]
            k = np_flat[np_off[a] + d]
            ok = True
            for li in range(n_lists):
                idx = _lb(ls[li].keys, ls[li].n, k)
                if idx >= ls[li].n:
                    ok = False
                    break
                s = ls[li].off[idx]
                e = ls[li].off[idx + 1]
                if e - s <= d or ls[li].flat[s + d] != k:
                    ok = False
                    break
            if ok:
                results.append((qi, k))
    finally:
        if ls != NULL:
            free(ls)
    return results
