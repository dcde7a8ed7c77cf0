# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops for 1-D convolution and max-pool, forward and backward.

All functions take pre-padded, C-contiguous arrays and write into
caller-allocated outputs. Loop nests keep the time axis innermost so the
compiler can vectorize; every output element is produced by exactly one
fixed-order accumulation, which keeps results bit-reproducible.
"""

ctypedef fused floating:
    float
    double


def conv1d_forward(floating[:, :, ::1] xpad,
                   floating[:, :, ::1] w,
                   floating[:, :, ::1] out):
    cdef Py_ssize_t n_batch = xpad.shape[0]
    cdef Py_ssize_t c_in = xpad.shape[1]
    cdef Py_ssize_t tp = xpad.shape[2]
    cdef Py_ssize_t c_out = w.shape[0]
    cdef Py_ssize_t klen = w.shape[2]
    cdef Py_ssize_t t_out = tp - klen + 1
    cdef Py_ssize_t n, o, c, k, t
    cdef floating wv
    with nogil:
        for n in range(n_batch):
            for o in range(c_out):
                for c in range(c_in):
                    for k in range(klen):
                        wv = w[o, c, k]
                        for t in range(t_out):
                            out[n, o, t] += wv * xpad[n, c, t + k]


def conv1d_backward_data(floating[:, :, ::1] gy,
                         floating[:, :, ::1] w,
                         floating[:, :, ::1] gxpad):
    cdef Py_ssize_t n_batch = gy.shape[0]
    cdef Py_ssize_t c_out = gy.shape[1]
    cdef Py_ssize_t t_out = gy.shape[2]
    cdef Py_ssize_t c_in = w.shape[1]
    cdef Py_ssize_t klen = w.shape[2]
    cdef Py_ssize_t n, o, c, k, t
    cdef floating wv
    with nogil:
        for n in range(n_batch):
            for c in range(c_in):
                for o in range(c_out):
                    for k in range(klen):
                        wv = w[o, c, k]
                        for t in range(t_out):
                            gxpad[n, c, t + k] += wv * gy[n, o, t]


def conv1d_backward_weights(floating[:, :, ::1] gy,
                            floating[:, :, ::1] xpad,
                            floating[:, :, ::1] gw):
    cdef Py_ssize_t n_batch = gy.shape[0]
    cdef Py_ssize_t c_out = gy.shape[1]
    cdef Py_ssize_t t_out = gy.shape[2]
    cdef Py_ssize_t c_in = xpad.shape[1]
    cdef Py_ssize_t klen = gw.shape[2]
    cdef Py_ssize_t n, o, c, k, t
    cdef floating acc
    with nogil:
        for n in range(n_batch):
            for o in range(c_out):
                for c in range(c_in):
                    for k in range(klen):
                        acc = 0
                        for t in range(t_out):
                            acc += gy[n, o, t] * xpad[n, c, t + k]
                        gw[o, c, k] += acc


def maxpool1d_forward(floating[:, :, ::1] xpad,
                      Py_ssize_t width,
                      floating[:, :, ::1] out,
                      signed char[:, :, ::1] arg):
    cdef Py_ssize_t n_batch = xpad.shape[0]
    cdef Py_ssize_t c_in = xpad.shape[1]
    cdef Py_ssize_t tp = xpad.shape[2]
    cdef Py_ssize_t t_out = tp - width + 1
    cdef Py_ssize_t n, c, t, k
    cdef floating best, v
    cdef signed char bi
    with nogil:
        for n in range(n_batch):
            for c in range(c_in):
                for t in range(t_out):
                    best = xpad[n, c, t]
                    bi = 0
                    for k in range(1, width):
                        v = xpad[n, c, t + k]
                        if v > best:  # first maximum wins ties
                            best = v
                            bi = <signed char> k
                    out[n, c, t] = best
                    arg[n, c, t] = bi


def maxpool1d_backward(floating[:, :, ::1] gy,
                       signed char[:, :, ::1] arg,
                       floating[:, :, ::1] gxpad):
    cdef Py_ssize_t n_batch = gy.shape[0]
    cdef Py_ssize_t c_in = gy.shape[1]
    cdef Py_ssize_t t_out = gy.shape[2]
    cdef Py_ssize_t n, c, t
    with nogil:
        for n in range(n_batch):
            for c in range(c_in):
                for t in range(t_out):
                    gxpad[n, c, t + arg[n, c, t]] += gy[n, c, t]
