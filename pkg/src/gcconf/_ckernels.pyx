# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse polynomial kernels over gmpy2 rationals.

Same contract as ``_pykernels``; coefficients must be ``gmpy2.mpq``.
Products clear denominators first: both operands are rescaled to integer
numerators over their lcm denominators, the dense scratch array accumulates
raw ``mpz_t`` with ``mpz_addmul`` (no gcd in the inner loop), and each output
coefficient is canonicalized once.
"""

from libc.stdlib cimport malloc, free
from gmpy2 cimport mpq, GMPy_MPQ_New, import_gmpy2, __mpq_struct, mpq_ptr, mpq_srcptr
from gmpy2 cimport __mpz_struct, mpz_ptr, mpz_srcptr

cdef extern from "gmp.h":
    void mpq_init(mpq_ptr x)
    void mpq_clear(mpq_ptr x)
    void mpq_set(mpq_ptr rop, mpq_srcptr op)
    void mpq_mul(mpq_ptr rop, mpq_srcptr a, mpq_srcptr b)
    void mpq_add(mpq_ptr rop, mpq_srcptr a, mpq_srcptr b)
    int mpq_sgn(mpq_srcptr op)
    void mpq_canonicalize(mpq_ptr op)
    mpz_ptr mpq_numref(mpq_ptr op)
    mpz_ptr mpq_denref(mpq_ptr op)
    void mpz_init(mpz_ptr x)
    void mpz_init_set_ui(mpz_ptr x, unsigned long v)
    void mpz_clear(mpz_ptr x)
    void mpz_set(mpz_ptr rop, mpz_srcptr op)
    void mpz_mul(mpz_ptr rop, mpz_srcptr a, mpz_srcptr b)
    void mpz_addmul(mpz_ptr rop, mpz_srcptr a, mpz_srcptr b)
    void mpz_lcm(mpz_ptr rop, mpz_srcptr a, mpz_srcptr b)
    void mpz_divexact(mpz_ptr rop, mpz_srcptr a, mpz_srcptr b)
    int mpz_sgn(mpz_srcptr op)

import_gmpy2()

cdef enum:
    BITS = 21
cdef long long MASK = (1 << BITS) - 1
cdef Py_ssize_t DENSE_LIMIT = 1 << 16


def pack(long long e0, long long e1, long long e2):
    return e0 | (e1 << BITS) | (e2 << (2 * BITS))


def unpack(long long key):
    return key & MASK, (key >> BITS) & MASK, key >> (2 * BITS)


def add(dict a, dict b, c=1):
    """Return a + c*b."""
    cdef dict r = dict(a)
    cdef mpq v, s, out, cq
    cdef bint unit = (c == 1)
    if not b:
        return r
    if not unit:
        cq = c if isinstance(c, mpq) else mpq(c)
        if mpq_sgn(cq.q) == 0:
            return r
    for k, o in b.items():
        v = <mpq>o
        s_obj = r.get(k)
        out = GMPy_MPQ_New(NULL)
        if unit:
            mpq_set(out.q, v.q)
        else:
            mpq_mul(out.q, cq.q, v.q)
        if s_obj is not None:
            s = <mpq>s_obj
            mpq_add(out.q, out.q, s.q)
        if mpq_sgn(out.q) != 0:
            r[k] = out
        elif s_obj is not None:
            del r[k]
    return r


def scale(dict a, c):
    cdef mpq cq = c if isinstance(c, mpq) else mpq(c)
    cdef mpq v, out
    cdef dict r = {}
    if mpq_sgn(cq.q) == 0:
        return r
    for k, o in a.items():
        v = <mpq>o
        out = GMPy_MPQ_New(NULL)
        mpq_mul(out.q, cq.q, v.q)
        r[k] = out
    return r


cdef inline void _maxexp(dict p, long long* m):
    cdef long long key
    m[0] = 0
    m[1] = 0
    m[2] = 0
    for k in p:
        key = k
        if (key & MASK) > m[0]:
            m[0] = key & MASK
        if ((key >> BITS) & MASK) > m[1]:
            m[1] = (key >> BITS) & MASK
        if (key >> (2 * BITS)) > m[2]:
            m[2] = key >> (2 * BITS)


def mul(dict a, dict b):
    cdef long long ma[3]
    cdef long long mb[3]
    cdef long long d0, d1, d2, size, key
    cdef Py_ssize_t na, nb, i, j, nused, idx
    if not a or not b:
        return {}
    _maxexp(a, ma)
    _maxexp(b, mb)
    d0 = ma[0] + mb[0] + 1
    d1 = ma[1] + mb[1] + 1
    d2 = ma[2] + mb[2] + 1
    size = d0 * d1 * d2
    if size > DENSE_LIMIT:
        return _mul_sparse(a, b)

    na = len(a)
    nb = len(b)
    cdef long long* ia = <long long*> malloc(na * sizeof(long long))
    cdef long long* ib = <long long*> malloc(nb * sizeof(long long))
    cdef __mpz_struct* za = <__mpz_struct*> malloc(na * sizeof(__mpz_struct))
    cdef __mpz_struct* zb = <__mpz_struct*> malloc(nb * sizeof(__mpz_struct))
    cdef __mpz_struct* acc = <__mpz_struct*> malloc(size * sizeof(__mpz_struct))
    cdef char* used = <char*> malloc(size)
    cdef Py_ssize_t* order = <Py_ssize_t*> malloc(size * sizeof(Py_ssize_t))
    cdef __mpz_struct la, lb, den
    cdef mpq q
    cdef dict r = {}
    mpz_init_set_ui(&la, 1)
    mpz_init_set_ui(&lb, 1)
    mpz_init(&den)
    for i in range(na):
        mpz_init(&za[i])
    for j in range(nb):
        mpz_init(&zb[j])
    nused = 0
    try:
        for o in a.values():
            q = <mpq>o
            mpz_lcm(&la, &la, mpq_denref(q.q))
        for o in b.values():
            q = <mpq>o
            mpz_lcm(&lb, &lb, mpq_denref(q.q))
        i = 0
        for k, o in a.items():
            key = k
            ia[i] = (key & MASK) + d0 * (((key >> BITS) & MASK) + d1 * (key >> (2 * BITS)))
            q = <mpq>o
            mpz_divexact(&za[i], &la, mpq_denref(q.q))
            mpz_mul(&za[i], &za[i], mpq_numref(q.q))
            i += 1
        j = 0
        for k, o in b.items():
            key = k
            ib[j] = (key & MASK) + d0 * (((key >> BITS) & MASK) + d1 * (key >> (2 * BITS)))
            q = <mpq>o
            mpz_divexact(&zb[j], &lb, mpq_denref(q.q))
            mpz_mul(&zb[j], &zb[j], mpq_numref(q.q))
            j += 1
        mpz_mul(&den, &la, &lb)
        for i in range(size):
            used[i] = 0
        for i in range(na):
            for j in range(nb):
                idx = ia[i] + ib[j]
                if used[idx]:
                    mpz_addmul(&acc[idx], &za[i], &zb[j])
                else:
                    used[idx] = 1
                    mpz_init(&acc[idx])
                    mpz_mul(&acc[idx], &za[i], &zb[j])
                    order[nused] = idx
                    nused += 1
        for i in range(nused):
            idx = order[i]
            if mpz_sgn(&acc[idx]) != 0:
                q = GMPy_MPQ_New(NULL)
                mpz_set(mpq_numref(q.q), &acc[idx])
                mpz_set(mpq_denref(q.q), &den)
                mpq_canonicalize(q.q)
                key = (idx % d0) | (((idx // d0) % d1) << BITS) | ((idx // (d0 * d1)) << (2 * BITS))
                r[key] = q
    finally:
        for i in range(nused):
            mpz_clear(&acc[order[i]])
        for i in range(na):
            mpz_clear(&za[i])
        for j in range(nb):
            mpz_clear(&zb[j])
        mpz_clear(&la)
        mpz_clear(&lb)
        mpz_clear(&den)
        free(ia)
        free(ib)
        free(za)
        free(zb)
        free(acc)
        free(used)
        free(order)
    return r


cdef dict _mul_sparse(dict a, dict b):
    cdef dict r = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            s = r.get(k)
            r[k] = va * vb if s is None else s + va * vb
    return {k: v for k, v in r.items() if v}
