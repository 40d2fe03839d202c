# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; results match ``zqspin._pykernels`` exactly in contract."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline long _mod(long a, long q) nogil:
    cdef long r = a % q
    return r + q if r < 0 else r


cdef inline void _neumaier(double x, double* s, double* c) noexcept nogil:
    # compensated sum: s + c carries the running total
    cdef double t = s[0] + x
    if abs(s[0]) >= abs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def configuration_sum(long n, long q, heads, tails, weights):
    cdef const long[::1] h = np.ascontiguousarray(heads, dtype=np.int_)
    cdef const long[::1] t = np.ascontiguousarray(tails, dtype=np.int_)
    cdef const double complex[:, ::1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef long num_edges = h.shape[0]
    cdef long[::1] s = np.zeros(max(n, 1), dtype=np.int_)
    cdef double complex term
    cdef double sr = 0, cr = 0, si = 0, ci = 0
    cdef long e, p
    with nogil:
        while True:
            term = 1
            for e in range(num_edges):
                term = term * w[e, _mod(s[h[e]] - s[t[e]], q)]
            _neumaier(term.real, &sr, &cr)
            _neumaier(term.imag, &si, &ci)
            p = n - 1
            while p >= 0:
                s[p] += 1
                if s[p] < q:
                    break
                s[p] = 0
                p -= 1
            if p < 0:
                break
    return complex(sr + cr, si + ci)


def codeword_sum(long n, long q, heads, tails, weights):
    cdef const long[::1] h = np.ascontiguousarray(heads, dtype=np.int_)
    cdef const long[::1] t = np.ascontiguousarray(tails, dtype=np.int_)
    cdef const double complex[:, ::1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef long num_edges = h.shape[0]
    cdef long[::1] s = np.zeros(max(n, 1), dtype=np.int_)
    cdef long[::1] word = np.zeros(max(num_edges, 1), dtype=np.int_)
    cdef double complex term
    cdef double sr = 0, cr = 0, si = 0, ci = 0
    cdef long e, p
    with nogil:
        while True:
            for e in range(num_edges):
                word[e] = _mod(s[h[e]] - s[t[e]], q)
            term = 1
            for e in range(num_edges):
                term = term * w[e, word[e]]
            _neumaier(term.real, &sr, &cr)
            _neumaier(term.imag, &si, &ci)
            # vertex 0 stays pinned at zero
            p = n - 1
            while p >= 1:
                s[p] += 1
                if s[p] < q:
                    break
                s[p] = 0
                p -= 1
            if p < 1:
                break
    return complex(sr + cr, si + ci)


def contract_node(long q, long k, edge_a, edge_b, edge_rows, children, out_positions):
    cdef const long[::1] ea = np.ascontiguousarray(edge_a, dtype=np.int_)
    cdef const long[::1] eb = np.ascontiguousarray(edge_b, dtype=np.int_)
    cdef long m = ea.shape[0]
    cdef const double complex[:, ::1] ew = np.ascontiguousarray(
        edge_rows if m else np.zeros((1, q)), dtype=np.complex128)
    cdef long nc = len(children)
    cdef long c, p, e

    offsets_py = np.zeros(nc + 1, dtype=np.int_)
    strides_py = np.zeros((max(nc, 1), k), dtype=np.int_)
    for c, (table, positions) in enumerate(children):
        stride = 1
        for p in reversed(list(positions)):
            strides_py[c, p] = stride
            stride *= q
        offsets_py[c + 1] = offsets_py[c] + stride
    if nc:
        data_py = np.concatenate([np.ascontiguousarray(tb, dtype=np.complex128).reshape(-1) for tb, _ in children])
    else:
        data_py = np.zeros(1, dtype=np.complex128)
    out_strides_py = np.zeros(k, dtype=np.int_)
    stride = 1
    for p in reversed(list(out_positions)):
        out_strides_py[p] = stride
        stride *= q
    out_py = np.zeros(stride, dtype=np.complex128)

    cdef long[::1] offsets = offsets_py
    cdef long[:, ::1] cstrides = strides_py
    cdef double complex[::1] cdata = data_py
    cdef long[::1] ostrides = out_strides_py
    cdef double complex[::1] out = out_py
    cdef long[::1] x = np.zeros(k, dtype=np.int_)
    cdef long[::1] cidx = np.zeros(max(nc, 1), dtype=np.int_)
    cdef long oidx = 0
    cdef double complex term

    with nogil:
        while True:
            term = 1
            for e in range(m):
                term = term * ew[e, _mod(x[ea[e]] - x[eb[e]], q)]
            for c in range(nc):
                term = term * cdata[offsets[c] + cidx[c]]
            out[oidx] = out[oidx] + term
            p = k - 1
            while p >= 0:
                x[p] += 1
                if x[p] < q:
                    oidx += ostrides[p]
                    for c in range(nc):
                        cidx[c] += cstrides[c, p]
                    break
                x[p] = 0
                oidx -= (q - 1) * ostrides[p]
                for c in range(nc):
                    cidx[c] -= (q - 1) * cstrides[c, p]
                p -= 1
            if p < 0:
                break
    return out_py
