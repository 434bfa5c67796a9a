# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels.  Same signatures and results as ``_pykernels``."""

import numpy as np
cimport cython
from libc.stdint cimport int64_t


cdef inline bint _propagate(int64_t arc, int64_t value, int64_t[::1] assign,
                            int64_t[::1] trail, Py_ssize_t* tlen, int64_t[::1] queue,
                            const int64_t[::1] inc_ptr, const int64_t[::1] inc,
                            const int64_t[::1] ins, const int64_t[::1] overs,
                            const int64_t[::1] outs,
                            const int64_t[:, :, ::1] fwd, const int64_t[:, :, ::1] bwd) noexcept nogil:
    cdef Py_ssize_t qlen = 0, k
    cdef int64_t cur, c, i, o, u, vi, vo, vu, w
    assign[arc] = value
    trail[tlen[0]] = arc
    tlen[0] += 1
    queue[qlen] = arc
    qlen += 1
    while qlen > 0:
        qlen -= 1
        cur = queue[qlen]
        for k in range(inc_ptr[cur], inc_ptr[cur + 1]):
            c = inc[k]
            i = ins[c]
            o = overs[c]
            u = outs[c]
            vo = assign[o]
            if vo < 0:
                continue
            vi = assign[i]
            vu = assign[u]
            if vi >= 0:
                w = fwd[c, vi, vo]
                if vu < 0:
                    assign[u] = w
                    trail[tlen[0]] = u
                    tlen[0] += 1
                    queue[qlen] = u
                    qlen += 1
                elif vu != w:
                    return False
            elif vu >= 0:
                assign[i] = bwd[c, vu, vo]
                trail[tlen[0]] = i
                tlen[0] += 1
                queue[qlen] = i
                qlen += 1
    return True


def search_colorings(ins, overs, outs, fwd, bwd, Py_ssize_t arc_count, int64_t ncolors, bint count_only=False):
    cdef int64_t[::1] ins_v = np.ascontiguousarray(ins, dtype=np.int64)
    cdef int64_t[::1] overs_v = np.ascontiguousarray(overs, dtype=np.int64)
    cdef int64_t[::1] outs_v = np.ascontiguousarray(outs, dtype=np.int64)
    cdef Py_ssize_t ncross = ins_v.shape[0]
    fwd_arr = np.ascontiguousarray(fwd, dtype=np.int64).reshape(ncross, ncolors, ncolors)
    bwd_arr = np.ascontiguousarray(bwd, dtype=np.int64).reshape(ncross, ncolors, ncolors)
    cdef const int64_t[:, :, ::1] fwd_v = fwd_arr
    cdef const int64_t[:, :, ::1] bwd_v = bwd_arr

    # incidence lists in CSR form, each crossing listed once per distinct arc
    lists = [[] for _ in range(arc_count)]
    for c in range(ncross):
        for arc in {ins_v[c], overs_v[c], outs_v[c]}:
            lists[arc].append(c)
    ptr = np.zeros(arc_count + 1, dtype=np.int64)
    for arc in range(arc_count):
        ptr[arc + 1] = ptr[arc] + len(lists[arc])
    flat = np.array([c for l in lists for c in l], dtype=np.int64)
    cdef const int64_t[::1] inc_ptr = ptr
    cdef const int64_t[::1] inc = flat if flat.size else np.zeros(1, dtype=np.int64)

    n1 = arc_count if arc_count > 0 else 1
    cdef int64_t[::1] assign = np.full(n1, -1, dtype=np.int64)
    cdef int64_t[::1] trail = np.zeros(n1, dtype=np.int64)
    cdef int64_t[::1] queue = np.zeros(n1, dtype=np.int64)
    cdef int64_t[::1] f_arc = np.zeros(n1, dtype=np.int64)
    cdef int64_t[::1] f_val = np.zeros(n1, dtype=np.int64)
    cdef int64_t[::1] f_mark = np.zeros(n1, dtype=np.int64)
    cdef Py_ssize_t tlen = 0, depth = 0, d, start = 0, a
    cdef int64_t v
    cdef bint found
    cdef Py_ssize_t count = 0
    solutions = []
    assign_np = np.asarray(assign)

    while True:
        a = start
        while a < arc_count and assign[a] >= 0:
            a += 1
        if a == arc_count:
            count += 1
            if not count_only:
                solutions.append(assign_np[:arc_count].copy())
        else:
            f_arc[depth] = a
            f_val[depth] = 0
            f_mark[depth] = tlen
            depth += 1
        found = False
        with nogil:
            while depth > 0:
                d = depth - 1
                while tlen > f_mark[d]:
                    tlen -= 1
                    assign[trail[tlen]] = -1
                if f_val[d] >= ncolors:
                    depth -= 1
                    continue
                v = f_val[d]
                f_val[d] += 1
                if _propagate(f_arc[d], v, assign, trail, &tlen, queue, inc_ptr, inc,
                              ins_v, overs_v, outs_v, fwd_v, bwd_v):
                    start = f_arc[d] + 1
                    found = True
                    break
        if not found:
            break

    if count_only:
        return int(count), None
    if count:
        return int(count), np.vstack(solutions)
    return 0, np.zeros((0, arc_count), dtype=np.int64)


cdef inline int64_t _inv_mod(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod_p(A, int64_t p):
    M_arr = np.ascontiguousarray(np.array(A, dtype=np.int64) % p)
    cdef int64_t[:, ::1] M = M_arr
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, k, j, i
    cdef int64_t inv, f, tmp
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        with nogil:
            if k != r:
                for j in range(cols):
                    tmp = M[r, j]
                    M[r, j] = M[k, j]
                    M[k, j] = tmp
            inv = _inv_mod(M[r, c], p)
            for j in range(c, cols):
                M[r, j] = (M[r, j] * inv) % p
            for i in range(rows):
                if i == r:
                    continue
                f = M[i, c]
                if f == 0:
                    continue
                for j in range(c, cols):
                    if M[r, j] != 0:
                        M[i, j] = (M[i, j] - f * M[r, j]) % p
                        if M[i, j] < 0:
                            M[i, j] += p
        pivots.append(c)
        r += 1
    return M_arr, pivots
