# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled gate kernels over the flat amplitude array.

Same contract as _kernels_py: in-place, head is index bit 0, tape spin mu is
index bit mu. The loops are plain strided passes (while loops, since the
strides are runtime values) so the compiler can keep everything in
registers; no temporaries are allocated.
"""


def rotate_head(double complex[::1] amps, double c, double s):
    """Mix each (head=0, head=1) amplitude pair by the rotation
    (a0, a1) -> (c*a0 - i*s*a1, -i*s*a0 + c*a1)."""
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t n = amps.shape[0]
    cdef double complex a0, a1
    cdef double complex ms = -1j * s
    with nogil:
        while i < n:
            a0 = amps[i]
            a1 = amps[i + 1]
            amps[i] = c * a0 + ms * a1
            amps[i + 1] = ms * a0 + c * a1
            i += 2


def cnot_flip(double complex[::1] amps, int mu):
    """Swap amplitudes differing in tape bit mu wherever head bit is 0."""
    cdef Py_ssize_t stride = (<Py_ssize_t> 1) << mu
    cdef Py_ssize_t block = stride << 1
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t b = 0
    cdef Py_ssize_t k, i0, i1
    cdef double complex t
    with nogil:
        while b < n:
            k = 0
            while k < stride:
                i0 = b + k
                i1 = i0 + stride
                t = amps[i0]
                amps[i0] = amps[i1]
                amps[i1] = t
                k += 2
            b += block


def cnot_signed_flip(double complex[::1] amps, int mu):
    """Signed swap (t0, t1) -> (-t1, t0) on tape bit mu, head-0 block only."""
    cdef Py_ssize_t stride = (<Py_ssize_t> 1) << mu
    cdef Py_ssize_t block = stride << 1
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t b = 0
    cdef Py_ssize_t k, i0, i1
    cdef double complex t
    with nogil:
        while b < n:
            k = 0
            while k < stride:
                i0 = b + k
                i1 = i0 + stride
                t = amps[i0]
                amps[i0] = -amps[i1]
                amps[i1] = t
                k += 2
            b += block
