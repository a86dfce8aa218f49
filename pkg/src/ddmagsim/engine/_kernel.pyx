# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled event walk: one pass over the merged plate/segment event list."""

from libc.math cimport cos


def walk(const double[::1] plates, const double[::1] inner,
         const double[::1] rates,
         double coef, double k, double phi0, double length):
    """Return (toggled_signal, toggled_total, pulse_count) for one pass."""
    cdef Py_ssize_t n_plates = plates.shape[0]
    cdef Py_ssize_t n_inner = inner.shape[0]
    cdef Py_ssize_t ip = 0, ib = 0
    cdef double x = 0.0
    cdef double nxt, cos_prev, cos_next
    cdef double t_sig = 0.0, t_noise = 0.0
    cdef double s = 1.0
    cdef long parity = 0
    with nogil:
        cos_prev = cos(phi0)
        while x < length:
            nxt = length
            if ib < n_inner and inner[ib] < nxt:
                nxt = inner[ib]
            if ip < n_plates and plates[ip] < nxt:
                nxt = plates[ip]
            if nxt > x:
                cos_next = cos(k * nxt + phi0)
                t_sig += s * (coef * (cos_prev - cos_next))
                t_noise += s * (rates[ib] * (nxt - x))
                cos_prev = cos_next
                x = nxt
            while ip < n_plates and plates[ip] <= x:
                s = -s
                parity += 1
                ip += 1
            while ib < n_inner and inner[ib] <= x:
                ib += 1
    return t_sig, t_sig + t_noise, int(parity)
