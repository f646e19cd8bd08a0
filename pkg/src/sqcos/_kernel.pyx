# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled MPFR series kernels.

Operation-for-operation mirror of sqcos._kernel_py (see its docstring
for the kernel contract and stopping rules). Both backends round every
value-path operation to nearest-even at the same working precision, so
their outputs are bit-identical. Keep the loops in sync with the Python
module when changing either.

Values cross the boundary as (hex mantissa string, binary exponent)
pairs, which is exact in both directions.
"""

from libc.stdlib cimport free, malloc

cdef extern from "gmp.h" nogil:
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    void mpz_init(mpz_t)
    void mpz_clear(mpz_t)
    int mpz_set_str(mpz_t, const char *, int)
    char *mpz_get_str(char *, int, const mpz_t)
    size_t mpz_sizeinbase(const mpz_t, int)
    void mpz_fac_ui(mpz_t, unsigned long)
    void mpz_mul_ui(mpz_t, const mpz_t, unsigned long)
    void mpz_set_ui(mpz_t, unsigned long)
    void mpz_neg(mpz_t, const mpz_t)
    int mpz_sgn(const mpz_t)

cdef extern from "mpfr.h" nogil:
    ctypedef struct __mpfr_struct:
        pass
    ctypedef __mpfr_struct mpfr_t[1]
    ctypedef int mpfr_rnd_t
    ctypedef long mpfr_prec_t
    ctypedef long mpfr_exp_t
    int MPFR_RNDN
    void mpfr_init2(mpfr_t, mpfr_prec_t)
    void mpfr_clear(mpfr_t)
    int mpfr_set_ui(mpfr_t, unsigned long, mpfr_rnd_t)
    int mpfr_set_ui_2exp(mpfr_t, unsigned long, mpfr_exp_t, mpfr_rnd_t)
    int mpfr_set_z(mpfr_t, const mpz_t, mpfr_rnd_t)
    int mpfr_set(mpfr_t, const mpfr_t, mpfr_rnd_t)
    int mpfr_mul(mpfr_t, const mpfr_t, const mpfr_t, mpfr_rnd_t)
    int mpfr_mul_ui(mpfr_t, const mpfr_t, unsigned long, mpfr_rnd_t)
    int mpfr_mul_2si(mpfr_t, const mpfr_t, long, mpfr_rnd_t)
    int mpfr_div_ui(mpfr_t, const mpfr_t, unsigned long, mpfr_rnd_t)
    int mpfr_div_z(mpfr_t, const mpfr_t, const mpz_t, mpfr_rnd_t)
    int mpfr_div(mpfr_t, const mpfr_t, const mpfr_t, mpfr_rnd_t)
    int mpfr_div_2ui(mpfr_t, const mpfr_t, unsigned long, mpfr_rnd_t)
    int mpfr_add(mpfr_t, const mpfr_t, const mpfr_t, mpfr_rnd_t)
    int mpfr_sub(mpfr_t, const mpfr_t, const mpfr_t, mpfr_rnd_t)
    int mpfr_ui_sub(mpfr_t, unsigned long, const mpfr_t, mpfr_rnd_t)
    int mpfr_cmp(const mpfr_t, const mpfr_t)
    int mpfr_cmp_ui(const mpfr_t, unsigned long)
    int mpfr_cmp_d(const mpfr_t, double)
    int mpfr_zero_p(const mpfr_t)
    mpfr_exp_t mpfr_get_exp(const mpfr_t)
    mpfr_exp_t mpfr_get_z_2exp(mpz_t, const mpfr_t)

cdef int INFLATION_BITS = 20
cdef long EXP_NONE = -(2 ** 60)


cdef void _set_from_hex(mpfr_t dest, str man_hex, long exp, mpz_t scratch):
    cdef bytes b = man_hex.encode("ascii")
    mpz_set_str(scratch, b, 16)
    mpfr_set_z(dest, scratch, MPFR_RNDN)
    mpfr_mul_2si(dest, dest, exp, MPFR_RNDN)


cdef tuple _man_exp(mpfr_t v, mpz_t scratch, bint negate):
    cdef mpfr_exp_t e
    cdef size_t sz
    cdef char *buf
    if mpfr_zero_p(v):
        return ("0", 0)
    e = mpfr_get_z_2exp(scratch, v)
    if negate:
        mpz_neg(scratch, scratch)
    sz = mpz_sizeinbase(scratch, 16) + 3
    buf = <char *> malloc(sz)
    mpz_get_str(buf, 16, scratch)
    out = (<bytes> buf).decode("ascii")
    free(buf)
    return (out, <long> e)


def cos_series(long n, str x_man, long x_exp, bint alt, long prec,
               str tol_man, long tol_exp, long max_terms):
    cdef mpz_t z, zfac
    cdef mpfr_t x, tol_half, infl, term, total, r_up, tail, tmp
    cdef unsigned long a, d
    cdef long k = 0, ops = 4, max_e = EXP_NONE, terms_out = 0
    cdef long e
    cdef int converged = 0, tail_negative = 0, stop = 0
    cdef bint neg_add

    mpz_init(z)
    mpz_init(zfac)
    mpfr_init2(x, prec)
    mpfr_init2(tol_half, prec)
    mpfr_init2(infl, prec)
    mpfr_init2(term, prec)
    mpfr_init2(total, prec)
    mpfr_init2(r_up, prec)
    mpfr_init2(tail, prec)
    mpfr_init2(tmp, prec)
    try:
        _set_from_hex(x, x_man, x_exp, z)
        _set_from_hex(tol_half, tol_man, tol_exp, z)
        mpfr_div_2ui(tol_half, tol_half, 1, MPFR_RNDN)
        mpfr_set_ui(infl, 1, MPFR_RNDN)
        mpfr_set_ui_2exp(tmp, 1, -INFLATION_BITS, MPFR_RNDN)
        mpfr_add(infl, infl, tmp, MPFR_RNDN)

        # term 0: n!/(2n)!
        mpz_fac_ui(zfac, n)
        mpfr_set_z(term, zfac, MPFR_RNDN)
        mpz_fac_ui(zfac, 2 * n)
        mpfr_div_z(term, term, zfac, MPFR_RNDN)
        mpfr_set(total, term, MPFR_RNDN)
        max_e = mpfr_get_exp(term)

        with nogil:
            while k < max_terms:
                a = k + n + 1
                d = (k + 1)
                d *= (2 * k + 2 * n + 1)
                d *= (2 * k + 2 * n + 2)
                mpfr_mul_ui(r_up, x, a, MPFR_RNDN)
                mpfr_div_ui(r_up, r_up, d, MPFR_RNDN)
                mpfr_mul(r_up, r_up, infl, MPFR_RNDN)
                if (not alt) and mpfr_cmp_d(r_up, 0.5) < 0:
                    mpfr_mul(tail, term, r_up, MPFR_RNDN)
                    mpfr_ui_sub(tmp, 1, r_up, MPFR_RNDN)
                    mpfr_div(tail, tail, tmp, MPFR_RNDN)
                    mpfr_mul(tail, tail, infl, MPFR_RNDN)
                    if mpfr_cmp(tail, tol_half) < 0:
                        converged = 1
                        terms_out = k + 1
                        stop = 1
                        break
                mpfr_mul(term, term, x, MPFR_RNDN)
                mpfr_mul_ui(term, term, a, MPFR_RNDN)
                mpfr_div_ui(term, term, d, MPFR_RNDN)
                k += 1
                if alt and mpfr_cmp_ui(r_up, 1) < 0 and mpfr_cmp(term, tol_half) < 0:
                    mpfr_mul(tail, term, infl, MPFR_RNDN)
                    tail_negative = k % 2
                    converged = 1
                    terms_out = k
                    stop = 1
                    break
                neg_add = alt and (k % 2 == 1)
                if neg_add:
                    mpfr_sub(total, total, term, MPFR_RNDN)
                else:
                    mpfr_add(total, total, term, MPFR_RNDN)
                ops += 4
                if not mpfr_zero_p(term):
                    e = mpfr_get_exp(term)
                    if e > max_e:
                        max_e = e
                if not mpfr_zero_p(total):
                    e = mpfr_get_exp(total)
                    if e > max_e:
                        max_e = e

        if not stop:
            mpfr_set(tail, term, MPFR_RNDN)
            terms_out = k
        total_out = _man_exp(total, z, False)
        tail_out = _man_exp(tail, z, tail_negative)
        return (converged, total_out[0], total_out[1], tail_out[0],
                tail_out[1], max_e, terms_out, ops)
    finally:
        mpfr_clear(x)
        mpfr_clear(tol_half)
        mpfr_clear(infl)
        mpfr_clear(term)
        mpfr_clear(total)
        mpfr_clear(r_up)
        mpfr_clear(tail)
        mpfr_clear(tmp)
        mpz_clear(z)
        mpz_clear(zfac)


def sinc_series(long n, str x_man, long x_exp, long prec,
                str tol_man, long tol_exp, long max_terms):
    cdef mpz_t z, zfac
    cdef mpfr_t x, xx, tol_half, infl, term, total, env, tail, tmp
    cdef unsigned long a, d, dd
    cdef long k0 = (n + 1) // 2
    cdef long k, i, ops = 6, max_e = EXP_NONE, terms_out = 0
    cdef long e
    cdef int converged = 0, tail_negative = 0, stop = 0, negative

    mpz_init(z)
    mpz_init(zfac)
    mpfr_init2(x, prec)
    mpfr_init2(xx, prec)
    mpfr_init2(tol_half, prec)
    mpfr_init2(infl, prec)
    mpfr_init2(term, prec)
    mpfr_init2(total, prec)
    mpfr_init2(env, prec)
    mpfr_init2(tail, prec)
    mpfr_init2(tmp, prec)
    try:
        _set_from_hex(x, x_man, x_exp, z)
        _set_from_hex(tol_half, tol_man, tol_exp, z)
        mpfr_div_2ui(tol_half, tol_half, 1, MPFR_RNDN)
        mpfr_set_ui(infl, 1, MPFR_RNDN)
        mpfr_set_ui_2exp(tmp, 1, -INFLATION_BITS, MPFR_RNDN)
        mpfr_add(infl, infl, tmp, MPFR_RNDN)
        mpfr_mul(xx, x, x, MPFR_RNDN)

        # term k0: (2 k0)!/(2 k0 - n)! * x^(2 k0 - n) / (2 k0 + 1)!
        mpz_set_ui(zfac, 1)
        for i in range(2 * k0 - n + 1, 2 * k0 + 1):
            mpz_mul_ui(zfac, zfac, i)
        mpfr_set_z(term, zfac, MPFR_RNDN)
        mpz_fac_ui(zfac, 2 * k0 + 1)
        mpfr_div_z(term, term, zfac, MPFR_RNDN)
        if n % 2:
            mpfr_mul(term, term, x, MPFR_RNDN)
        negative = k0 % 2
        mpfr_set(total, term, MPFR_RNDN)
        if negative:
            mpfr_ui_sub(total, 0, total, MPFR_RNDN)
        max_e = mpfr_get_exp(term)

        k = k0
        with nogil:
            while k - k0 < max_terms:
                a = 2 * k + 1
                d = (2 * k + 3)
                d *= (2 * k + 2 - n)
                d *= (2 * k + 1 - n)
                dd = (2 * k + 2 - n)
                dd *= (2 * k + 1 - n)
                mpfr_div_ui(env, xx, dd, MPFR_RNDN)
                mpfr_mul(env, env, infl, MPFR_RNDN)
                mpfr_mul(term, term, xx, MPFR_RNDN)
                mpfr_mul_ui(term, term, a, MPFR_RNDN)
                mpfr_div_ui(term, term, d, MPFR_RNDN)
                k += 1
                negative = 1 - negative
                if mpfr_cmp_ui(env, 1) < 0 and mpfr_cmp(term, tol_half) < 0:
                    mpfr_mul(tail, term, infl, MPFR_RNDN)
                    tail_negative = negative
                    converged = 1
                    terms_out = k - k0
                    stop = 1
                    break
                if negative:
                    mpfr_sub(total, total, term, MPFR_RNDN)
                else:
                    mpfr_add(total, total, term, MPFR_RNDN)
                ops += 4
                if not mpfr_zero_p(term):
                    e = mpfr_get_exp(term)
                    if e > max_e:
                        max_e = e
                if not mpfr_zero_p(total):
                    e = mpfr_get_exp(total)
                    if e > max_e:
                        max_e = e

        if not stop:
            mpfr_set(tail, term, MPFR_RNDN)
            terms_out = k - k0
        total_out = _man_exp(total, z, False)
        tail_out = _man_exp(tail, z, tail_negative)
        return (converged, total_out[0], total_out[1], tail_out[0],
                tail_out[1], max_e, terms_out, ops)
    finally:
        mpfr_clear(x)
        mpfr_clear(xx)
        mpfr_clear(tol_half)
        mpfr_clear(infl)
        mpfr_clear(term)
        mpfr_clear(total)
        mpfr_clear(env)
        mpfr_clear(tail)
        mpfr_clear(tmp)
        mpz_clear(z)
        mpz_clear(zfac)
