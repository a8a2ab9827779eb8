# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled homomorphism search kernel (targets with at most 64 vertices).

Same algorithm, value order and node accounting as ``_search_py.search``.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy

cdef enum:
    STATUS_EXHAUSTED = 0
    STATUS_LIMIT = 1
    STATUS_BUDGET = 2

MAX_TARGET = 64


cdef inline int _popcount(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int _ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef bint _propagate(uint64_t* D, int* queue, int qlen, char* inq, int n,
                     const int* out_ptr, const int* out_idx,
                     const int* in_ptr, const int* in_idx,
                     const uint64_t* tgt_out, const uint64_t* tgt_in) nogil:
    # queue is circular of capacity n; inq prevents duplicates
    cdef int head = 0
    cdef int count = qlen
    cdef int tail = qlen % n if n > 0 else 0
    cdef int x, w, i, a
    cdef uint64_t dx, m, sup_out, sup_in, dw, nd
    while count > 0:
        x = queue[head]
        head += 1
        if head == n:
            head = 0
        count -= 1
        inq[x] = 0
        dx = D[x]
        sup_out = 0
        sup_in = 0
        m = dx
        while m:
            a = _ctz(m)
            sup_out |= tgt_out[a]
            sup_in |= tgt_in[a]
            m &= m - 1
        for i in range(out_ptr[x], out_ptr[x + 1]):
            w = out_idx[i]
            dw = D[w]
            nd = dw & sup_out
            if nd != dw:
                if nd == 0:
                    return 0
                D[w] = nd
                if not inq[w]:
                    inq[w] = 1
                    queue[tail] = w
                    tail += 1
                    if tail == n:
                        tail = 0
                    count += 1
        for i in range(in_ptr[x], in_ptr[x + 1]):
            w = in_idx[i]
            dw = D[w]
            nd = dw & sup_in
            if nd != dw:
                if nd == 0:
                    return 0
                D[w] = nd
                if not inq[w]:
                    inq[w] = 1
                    queue[tail] = w
                    tail += 1
                    if tail == n:
                        tail = 0
                    count += 1
    return 1


cdef int _choose(const uint64_t* D, const int* degree, int n) nogil:
    cdef int best = -1
    cdef int best_size = 0
    cdef int best_deg = -1
    cdef int v, size
    for v in range(n):
        size = _popcount(D[v])
        if size > 1 and (best < 0 or size < best_size or (size == best_size and degree[v] > best_deg)):
            best = v
            best_size = size
            best_deg = degree[v]
    return best


cdef list _decode(const uint64_t* D, int n):
    return [_ctz(D[v]) for v in range(n)]


cdef int* _int_array(object seq) except NULL:
    cdef Py_ssize_t k = len(seq)
    cdef int* arr = <int*> malloc((k if k > 0 else 1) * sizeof(int))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(k):
        arr[i] = seq[i]
    return arr


cdef void* _grow(void* ptr, size_t size) except NULL:
    cdef void* out = realloc(ptr, size)
    if out == NULL:
        raise MemoryError()
    return out


def search(int n, out_ptr, out_idx, in_ptr, in_idx, degree, tgt_out, tgt_in, domains,
           long long budget, long long max_solutions, pick=None):
    """Return ``(status, solutions, nodes, count)``; see ``_search_py.search``."""
    cdef int m = len(tgt_out)
    if m > MAX_TARGET:
        raise ValueError("compiled kernel supports targets with at most 64 vertices")
    cdef list solutions = []
    cdef long long nodes = 0
    cdef long long count = 0
    cdef Py_ssize_t npick = -1 if pick is None else len(pick)
    cdef Py_ssize_t pi = 0
    cdef long long next_pick = -1
    if npick > 0:
        next_pick = pick[0]
    cdef int i, v, var, depth, cap_depth
    cdef uint64_t rem, low
    cdef uint64_t tout[64]
    cdef uint64_t tin[64]
    for i in range(m):
        tout[i] = <uint64_t> tgt_out[i]
        tin[i] = <uint64_t> tgt_in[i]
    for i in range(n):
        if domains[i] == 0:
            return STATUS_EXHAUSTED, solutions, nodes, count
    if npick == 0:
        return STATUS_EXHAUSTED, solutions, nodes, count

    cdef int* c_out_ptr = _int_array(out_ptr)
    cdef int* c_out_idx = NULL
    cdef int* c_in_ptr = NULL
    cdef int* c_in_idx = NULL
    cdef int* c_deg = NULL
    cdef int* queue = NULL
    cdef char* inq = NULL
    cdef uint64_t* D = NULL
    cdef uint64_t* saved = NULL
    cdef int* fvar = NULL
    cdef uint64_t* frem = NULL
    cdef int nn = n if n > 0 else 1
    cdef int status = STATUS_EXHAUSTED
    try:
        c_out_idx = _int_array(out_idx)
        c_in_ptr = _int_array(in_ptr)
        c_in_idx = _int_array(in_idx)
        c_deg = _int_array(degree)
        queue = <int*> malloc(nn * sizeof(int))
        inq = <char*> malloc(nn * sizeof(char))
        D = <uint64_t*> malloc(nn * sizeof(uint64_t))
        cap_depth = 16
        saved = <uint64_t*> malloc(cap_depth * nn * sizeof(uint64_t))
        fvar = <int*> malloc(cap_depth * sizeof(int))
        frem = <uint64_t*> malloc(cap_depth * sizeof(uint64_t))
        if queue == NULL or inq == NULL or D == NULL or saved == NULL or fvar == NULL or frem == NULL:
            raise MemoryError()
        for i in range(n):
            D[i] = <uint64_t> domains[i]
            queue[i] = i
            inq[i] = 1
        if not _propagate(D, queue, n, inq, n, c_out_ptr, c_out_idx, c_in_ptr, c_in_idx, tout, tin):
            return STATUS_EXHAUSTED, solutions, nodes, count

        depth = 0
        while True:
            v = _choose(D, c_deg, n)
            if v < 0:
                if npick < 0:
                    solutions.append(_decode(D, n))
                elif next_pick == count:
                    solutions.append(_decode(D, n))
                    pi += 1
                    if pi < npick:
                        next_pick = pick[pi]
                count += 1
                if 0 <= max_solutions <= count or pi == npick:
                    status = STATUS_LIMIT
                    break
            else:
                if depth == cap_depth:
                    cap_depth *= 2
                    saved = <uint64_t*> _grow(saved, cap_depth * nn * sizeof(uint64_t))
                    fvar = <int*> _grow(fvar, cap_depth * sizeof(int))
                    frem = <uint64_t*> _grow(frem, cap_depth * sizeof(uint64_t))
                fvar[depth] = v
                frem[depth] = D[v]
                memcpy(saved + depth * nn, D, n * sizeof(uint64_t))
                depth += 1
            # advance to the next consistent child
            while depth > 0:
                rem = frem[depth - 1]
                if rem == 0:
                    depth -= 1
                    continue
                low = rem & (~rem + 1)
                frem[depth - 1] = rem ^ low
                nodes += 1
                if 0 <= budget < nodes:
                    status = STATUS_BUDGET
                    break
                var = fvar[depth - 1]
                memcpy(D, saved + (depth - 1) * nn, n * sizeof(uint64_t))
                D[var] = low
                for i in range(n):
                    inq[i] = 0
                inq[var] = 1
                queue[0] = var
                if _propagate(D, queue, 1, inq, n, c_out_ptr, c_out_idx, c_in_ptr, c_in_idx, tout, tin):
                    break
            if status == STATUS_BUDGET or depth == 0:
                break
        return status, solutions, nodes, count
    finally:
        free(c_out_ptr)
        free(c_out_idx)
        free(c_in_ptr)
        free(c_in_idx)
        free(c_deg)
        free(queue)
        free(inq)
        free(D)
        free(saved)
        free(fvar)
        free(frem)

