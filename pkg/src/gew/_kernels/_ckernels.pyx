# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled word kernels; same contract as ``_pykernels``."""

from libc.stdlib cimport malloc, free

BACKEND = "cython"


def reduce_syllables(pairs):
    cdef Py_ssize_t n = len(pairs)
    cdef long *gs = <long *>malloc((n + 1) * sizeof(long))
    cdef long *es = <long *>malloc((n + 1) * sizeof(long))
    cdef Py_ssize_t top = 0, k
    cdef long g, e
    if gs == NULL or es == NULL:
        free(gs); free(es)
        raise MemoryError()
    try:
        for p in pairs:
            g = p[0]
            e = p[1]
            if e == 0:
                continue
            if top > 0 and gs[top - 1] == g:
                e += es[top - 1]
                top -= 1
                if e != 0:
                    gs[top] = g
                    es[top] = e
                    top += 1
            else:
                gs[top] = g
                es[top] = e
                top += 1
        out = [None] * top
        for k in range(top):
            out[k] = (gs[k], es[k])
        return tuple(out)
    finally:
        free(gs)
        free(es)


def mul_syllables(tuple u, tuple v):
    if not u:
        return v
    if not v:
        return u
    cdef Py_ssize_t i = len(u) - 1, j = 0, nv = len(v)
    cdef long gu, eu, gv, ev, e
    while i >= 0 and j < nv:
        gu = u[i][0]
        eu = u[i][1]
        gv = v[j][0]
        ev = v[j][1]
        if gu != gv:
            break
        e = eu + ev
        if e != 0:
            return u[:i] + ((gu, e),) + v[j + 1:]
        i -= 1
        j += 1
    return u[:i + 1] + v[j:]


cdef Py_ssize_t _free_reduce_c(long *w, Py_ssize_t n) nogil:
    # in place; returns new length
    cdef Py_ssize_t top = 0, k
    for k in range(n):
        if top > 0 and w[top - 1] == -w[k]:
            top -= 1
        else:
            w[top] = w[k]
            top += 1
    return top


cdef tuple _to_tuple(long *w, Py_ssize_t n):
    out = [None] * n
    cdef Py_ssize_t k
    for k in range(n):
        out[k] = w[k]
    return tuple(out)


def free_reduce(letters):
    cdef Py_ssize_t n = len(letters), k = 0
    cdef long *w = <long *>malloc((n + 1) * sizeof(long))
    if w == NULL:
        raise MemoryError()
    try:
        for a in letters:
            w[k] = a
            k += 1
        n = _free_reduce_c(w, n)
        return _to_tuple(w, n)
    finally:
        free(w)


def cyclic_core(letters):
    cdef Py_ssize_t n = len(letters), k = 0
    while 2 * k + 1 < n and letters[k] == -letters[n - 1 - k]:
        k += 1
    return k, tuple(letters[k:n - k])


cdef inline long _rel_at(long *rel, Py_ssize_t L, int d, Py_ssize_t s, Py_ssize_t m) nogil:
    cdef Py_ssize_t idx
    if d == 0:
        return rel[(s + m) % L]
    idx = (s - m) % L
    if idx < 0:
        idx += L
    return -rel[idx]


cdef void _longest_piece(long *w, Py_ssize_t n, Py_ssize_t i, long *rel, Py_ssize_t L,
                         Py_ssize_t *bm, int *bd, Py_ssize_t *bs) nogil:
    cdef int d
    cdef Py_ssize_t s, m
    bm[0] = 0
    bd[0] = 0
    bs[0] = 0
    for d in range(2):
        for s in range(L):
            m = 0
            while m < L and i + m < n:
                if w[i + m] != _rel_at(rel, L, d, s, m):
                    break
                m += 1
            if m > bm[0]:
                bm[0] = m
                bd[0] = d
                bs[0] = s


cdef Py_ssize_t _dehn_c(long *w, Py_ssize_t n, long *tmp, long *rel, Py_ssize_t L) nogil:
    # w and tmp have capacity >= n + L
    cdef Py_ssize_t i, m, s, t, k, q
    cdef int d
    cdef bint changed = True
    n = _free_reduce_c(w, n)
    while changed:
        changed = False
        for i in range(n):
            _longest_piece(w, n, i, rel, L, &m, &d, &s)
            if 2 * m > L:
                k = 0
                for q in range(i):
                    tmp[k] = w[q]
                    k += 1
                t = L - 1
                while t >= m:
                    tmp[k] = -_rel_at(rel, L, d, s, t)
                    k += 1
                    t -= 1
                for q in range(i + m, n):
                    tmp[k] = w[q]
                    k += 1
                for q in range(k):
                    w[q] = tmp[q]
                n = _free_reduce_c(w, k)
                changed = True
                break
    return n


def dehn_reduce(letters, relator):
    cdef Py_ssize_t n = len(letters), L = len(relator), k
    cdef long *w = <long *>malloc((n + L + 1) * sizeof(long))
    cdef long *tmp = <long *>malloc((n + L + 1) * sizeof(long))
    cdef long *rel = <long *>malloc((L + 1) * sizeof(long))
    if w == NULL or tmp == NULL or rel == NULL:
        free(w); free(tmp); free(rel)
        raise MemoryError()
    try:
        for k in range(n):
            w[k] = letters[k]
        for k in range(L):
            rel[k] = relator[k]
        if L == 0:
            n = _free_reduce_c(w, n)
        else:
            n = _dehn_c(w, n, tmp, rel, L)
        return _to_tuple(w, n)
    finally:
        free(w)
        free(tmp)
        free(rel)


def dehn_is_trivial(letters, relator):
    cdef Py_ssize_t n = len(letters), L = len(relator), k, i, j, c, core_n, m, s, t
    cdef int d
    cdef bint hit
    cdef long *w = <long *>malloc((n + L + 1) * sizeof(long))
    cdef long *tmp = <long *>malloc((n + L + 1) * sizeof(long))
    cdef long *rot = <long *>malloc((n + L + 1) * sizeof(long))
    cdef long *rel = <long *>malloc((L + 1) * sizeof(long))
    if w == NULL or tmp == NULL or rot == NULL or rel == NULL:
        free(w); free(tmp); free(rot); free(rel)
        raise MemoryError()
    try:
        for k in range(n):
            w[k] = letters[k]
        for k in range(L):
            rel[k] = relator[k]
        if L == 0:
            return _free_reduce_c(w, n) == 0
        n = _dehn_c(w, n, tmp, rel, L)
        while n > 0:
            c = 0
            while 2 * c + 1 < n and w[c] == -w[n - 1 - c]:
                c += 1
            core_n = n - 2 * c
            hit = False
            for i in range(core_n):
                for j in range(core_n):
                    rot[j] = w[c + (i + j) % core_n]
                _longest_piece(rot, core_n, 0, rel, L, &m, &d, &s)
                if 2 * m > L:
                    k = 0
                    t = L - 1
                    while t >= m:
                        w[k] = -_rel_at(rel, L, d, s, t)
                        k += 1
                        t -= 1
                    for j in range(m, core_n):
                        w[k] = rot[j]
                        k += 1
                    n = _dehn_c(w, k, tmp, rel, L)
                    hit = True
                    break
            if not hit:
                return False
        return True
    finally:
        free(w)
        free(tmp)
        free(rot)
        free(rel)
