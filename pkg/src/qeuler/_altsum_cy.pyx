# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the alternating weighted power-sum kernel.

Handles moduli below 2^63 with 128-bit intermediate products; the
selector in ``kernels`` falls back to the pure-Python twin beyond that.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef inline unsigned long long _mulmod(unsigned long long a,
                                       unsigned long long b,
                                       unsigned long long m) nogil:
    return <unsigned long long> ((<u128> a * <u128> b) % <u128> m)


def alt_weighted_power_sum(coeffs, q, modulus, count):
    """sum_{x=0}^{count-1} P(x) * (-q)^x mod modulus, P given by ascending coeffs."""
    cdef unsigned long long m, qm, total, power, acc, term, xm, x, cnt
    cdef Py_ssize_t ncoef, i

    if modulus <= 0:
        raise ValueError("modulus must be positive")
    if modulus >= (<unsigned long long> 1) << 63:
        raise OverflowError("modulus does not fit the compiled kernel")
    if count < 0:
        raise ValueError("count must be >= 0")

    m = <unsigned long long> modulus
    qm = <unsigned long long> (q % modulus)
    cnt = <unsigned long long> count

    clist = [int(c) % modulus for c in coeffs]
    ncoef = len(clist)
    if ncoef == 0 or cnt == 0:
        return 0

    cdef unsigned long long *cs = <unsigned long long *> malloc(ncoef * sizeof(unsigned long long))
    if cs == NULL:
        raise MemoryError()
    for i in range(ncoef):
        cs[i] = <unsigned long long> clist[ncoef - 1 - i]  # Horner order

    total = 0
    power = 1 % m
    try:
        with nogil:
            for x in range(cnt):
                xm = x % m
                acc = 0
                for i in range(ncoef):
                    acc = _mulmod(acc, xm, m) + cs[i]
                    if acc >= m:
                        acc -= m
                term = _mulmod(acc, power, m)
                if x & 1:
                    total = total + m - term
                else:
                    total = total + term
                if total >= m:
                    total -= m
                power = _mulmod(power, qm, m)
    finally:
        free(cs)
    return int(total)
