# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernels.

Same surface as ``nlspectra._purepy``; see that module for the algorithm
notes. Arguments are assumed pre-validated by the public wrappers.
"""

from libc.math cimport (cos, exp, expm1, fabs, log, log1p, pow, sin, sqrt,
                        M_PI, NAN, INFINITY)

BACKEND_NAME = "compiled"

# Lanczos representation of Gamma(z+1) with shift g = 607/128 and the
# 15-coefficient table computed by Godfrey; roughly 1e-15 relative accuracy
# on the real axis for Re(z) >= -0.5.
LANCZOS_G = 4.7421875
LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

EULER_GAMMA = 0.5772156649015328606

cdef double _G = 4.7421875
cdef double _EULER = 0.5772156649015328606
cdef double[15] _LC
cdef int _i
for _i in range(15):
    _LC[_i] = LANCZOS_C[_i]

cdef double _SQRT2PI = sqrt(2.0 * M_PI)
cdef double _SQRT_HALF = sqrt(0.5)
cdef double _RESCALE_THRESHOLD = 2.0 ** 512
cdef double _RESCALE_TINY = 2.0 ** -512

ctypedef double complex dcomplex

ctypedef fused real_or_cplx:
    double
    dcomplex


cdef inline double _lanczos_sum(double z) nogil:
    cdef double s = _LC[0]
    cdef int i
    for i in range(1, 15):
        s += _LC[i] / (z + i)
    return s


cdef double _gamma1p(double z) nogil:
    cdef double t = z + _G + 0.5
    return _SQRT2PI * pow(t, z + 0.5) * exp(-t) * _lanczos_sum(z)


cdef double _gamma(double x) nogil:
    if x < 0.5:
        return _gamma1p(x) / x
    return _gamma1p(x - 1.0)


def gamma(double x):
    return _gamma(x)


cdef double _log_gamma_ratio(double z, double eps) nogil:
    cdef double g5 = z + _G + 0.5
    cdef double s1 = _LC[0]
    cdef double s2 = 0.0
    cdef double zi
    cdef int i
    for i in range(1, 15):
        zi = z + i
        s1 += _LC[i] / zi
        s2 += _LC[i] / (zi * (zi + eps))
    return ((z + 0.5) * log1p(eps / g5)
            + eps * log(g5 + eps)
            - eps
            + log1p(-eps * s2 / s1))


def log_gamma_ratio(double z, double eps):
    return _log_gamma_ratio(z, eps)


cdef double _digamma(double x) nogil:
    cdef double acc = 0.0
    cdef double w, t
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    w = 1.0 / (x * x)
    t = 691.0 / 32760.0 - w * (1.0 / 12.0)
    t = 1.0 / 132.0 - w * t
    t = 1.0 / 240.0 - w * t
    t = 1.0 / 252.0 - w * t
    t = 1.0 / 120.0 - w * t
    t = 1.0 / 12.0 - w * t
    return acc + log(x) - 0.5 / x - w * t


def digamma(double x):
    return _digamma(x)


cdef double _bessel_series(double nu, double x) except? -1e308:
    cdef double q = -0.25 * x * x
    cdef double term = 1.0
    cdef double s = 1.0
    cdef int j
    for j in range(1, 201):
        term *= q / (j * (nu + j))
        s += term
        if fabs(term) <= 1e-17 * fabs(s):
            return s * pow(0.5 * x, nu) / _gamma(nu + 1.0)
    raise RuntimeError(f"bessel series did not converge for nu={nu}, x={x}")


cdef double _bessel_int_miller(int nu, double x) nogil:
    cdef int m = <int>x + 40
    if m < nu + 20:
        m = nu + 20
    cdef double bjp = 0.0
    cdef double bj = 1e-30
    cdef double total = 2.0 * bj if m % 2 == 0 else 0.0
    cdef double res = bj if m == nu else 0.0
    cdef double bjm
    while m > 0:
        bjm = (2.0 * m / x) * bj - bjp
        bjp = bj
        bj = bjm
        m -= 1
        if fabs(bj) > 1e150:
            bj *= 1e-150
            bjp *= 1e-150
            total *= 1e-150
            res *= 1e-150
        if m == 0:
            total += bj
        elif m % 2 == 0:
            total += 2.0 * bj
        if m == nu:
            res = bj
    return res / total


cdef double _bessel_int_hankel(int nu, double x) nogil:
    cdef double mu = 4.0 * nu * nu
    cdef double inv_x = 1.0 / x
    cdef double p = 1.0
    cdef double q = 0.0
    cdef double tk = 1.0
    cdef double prev = INFINITY
    cdef double cph, sph, cx, sx, cosw, sinw
    cdef int k, r
    for k in range(1, 40):
        tk *= (mu - (2 * k - 1) * (2 * k - 1)) / (8.0 * k) * inv_x
        if fabs(tk) >= prev:
            break
        r = k % 4
        if r == 0:
            p += tk
        elif r == 1:
            q += tk
        elif r == 2:
            p -= tk
        else:
            q -= tk
        if fabs(tk) < 1e-17:
            break
        prev = fabs(tk)
    r = (2 * nu + 1) % 8
    if r == 1:
        cph = _SQRT_HALF; sph = _SQRT_HALF
    elif r == 3:
        cph = -_SQRT_HALF; sph = _SQRT_HALF
    elif r == 5:
        cph = -_SQRT_HALF; sph = -_SQRT_HALF
    else:
        cph = _SQRT_HALF; sph = -_SQRT_HALF
    cx = cos(x)
    sx = sin(x)
    cosw = cx * cph + sx * sph
    sinw = sx * cph - cx * sph
    return sqrt(2.0 / (M_PI * x)) * (cosw * p - sinw * q)


cdef double _bessel_int(int nu, double x) except? -1e308:
    if x <= 7.0:
        return _bessel_series(<double>nu, x)
    if x < 28.0:
        return _bessel_int_miller(nu, x)
    return _bessel_int_hankel(nu, x)


cdef double _bessel_half(int two_nu, double x) except? -1e308:
    cdef double c = sqrt(2.0 / (M_PI * x))
    cdef double nu, jm, jc, jn, order
    cdef int steps, i
    if two_nu == 1:
        return c * sin(x)
    if two_nu == -1:
        return c * cos(x)
    if two_nu == -3:
        return c * (-cos(x) / x - sin(x))
    nu = 0.5 * two_nu
    if x < max(1.0, nu):
        return _bessel_series(nu, x)
    jm = c * cos(x)
    jc = c * sin(x)
    order = 0.5
    steps = (two_nu - 1) // 2
    for i in range(steps):
        jn = (2.0 * order / x) * jc - jm
        jm = jc
        jc = jn
        order += 1.0
    return jc


def bessel_j(int two_nu, double x):
    """J_nu(x) with the order passed as 2*nu (integer)."""
    cdef int nu
    cdef double val
    if two_nu % 2 != 0:
        return _bessel_half(two_nu, x)
    nu = two_nu >> 1
    if nu < 0:
        val = _bessel_int(-nu, x)
        return -val if (-nu) % 2 == 1 else val
    return _bessel_int(nu, x)


def stable_prefactor(double x, double y, double z):
    # f(x, y, z) = [y^(2x) Gamma(x+1) Gamma(z) / Gamma(z-x) - 1] / x with
    # the removable singularity at x = 0 evaluated exactly.
    cdef double t
    if x == 0.0:
        return 2.0 * log(y) - _EULER + _digamma(z)
    t = 2.0 * x * log(y) + _log_gamma_ratio(0.0, x) - _log_gamma_ratio(z - 1.0, -x)
    return expm1(t) / x


def maclaurin_lambda(int d, double alpha, double k, double delta, double tol, int cap):
    """Small-k*delta eigenvalue series, prefactor included.

    Returns (value, terms, converged, est_rel_err); the n = 1 term is
    exactly -k**2 so the sum needs no gamma evaluations.
    """
    cdef double y = 0.25 * (k * delta) * (k * delta)
    cdef double u = -(k * k)
    cdef double s = u
    cdef double au, a_s
    cdef int n = 1
    while n < cap:
        u *= -y * (d + 2.0 * n - alpha) / ((n + 1.0) * (n + 0.5 * d) * (d + 2.0 * n + 2.0 - alpha))
        if fabs(u) < tol * fabs(s):
            return (s, n, True, fabs(u) / fabs(s))
        s += u
        n += 1
    au = fabs(u)
    a_s = fabs(s)
    return (s, n, False, au / a_s if a_s > 0.0 else INFINITY)


cdef inline double _mag(real_or_cplx v) nogil:
    if real_or_cplx is double:
        return fabs(v)
    else:
        return abs(v)


def drummond_2f0(real_or_cplx alpha, real_or_cplx beta, real_or_cplx z,
                 int n, double tol, int k_max):
    """Resummation of sum_k (alpha)_k (beta)_k / (-z)^k by the four-term
    numerator/denominator recurrence.

    Returns (value, order, converged, est_rel_err). Terminating parameter
    values (alpha or beta a nonpositive integer) must be screened by the
    caller.
    """
    cdef real_or_cplx a = 1.0
    cdef real_or_cplx s = 1.0
    cdef real_or_cplx r, d_prev, n_prev, d_cur, n_cur, d_prev2, n_prev2
    cdef real_or_cplx lead, b, n_new, d_new, t_prev, t_cur, t_new
    cdef real_or_cplx cnan
    cdef double m, diff1, diff0, at_new, at, est
    cdef real_or_cplx ab2n
    cdef int j, k, order
    if real_or_cplx is double:
        cnan = NAN
    else:
        cnan = NAN + 1j * NAN
    for j in range(n):
        a = a * (alpha + j) * (beta + j) / (-z)
        s = s + a
    a = a * (alpha + n) * (beta + n) / (-z)  # a_{n+1}
    d_prev = 1.0 / a
    n_prev = s * d_prev
    r = (alpha + n + 1.0) * (beta + n + 1.0)
    d_cur = -(z / r + 1.0) * d_prev
    n_cur = s * d_cur - z / r
    n_prev2 = 0.0
    d_prev2 = 0.0
    t_prev = s
    t_cur = n_cur / d_cur if d_cur != 0 else cnan
    order = 1
    ab2n = alpha + beta + 2.0 * n
    for k in range(1, k_max):
        lead = (alpha + n + k + 1.0) * (beta + n + k + 1.0)
        if lead == 0:
            break
        b = z + k * (ab2n + 2.0 * k + 1.0) + lead
        n_new = -(b * n_cur + (k * (ab2n + 3.0 * k)) * n_prev + (k * (k - 1.0)) * n_prev2) / lead
        d_new = -(b * d_cur + (k * (ab2n + 3.0 * k)) * d_prev + (k * (k - 1.0)) * d_prev2) / lead
        m = _mag(n_new)
        if _mag(d_new) > m:
            m = _mag(d_new)
        if m > _RESCALE_THRESHOLD:
            n_new *= _RESCALE_TINY
            n_cur *= _RESCALE_TINY
            n_prev *= _RESCALE_TINY
            d_new *= _RESCALE_TINY
            d_cur *= _RESCALE_TINY
            d_prev *= _RESCALE_TINY
        elif 0.0 < m < _RESCALE_TINY:
            n_new *= _RESCALE_THRESHOLD
            n_cur *= _RESCALE_THRESHOLD
            n_prev *= _RESCALE_THRESHOLD
            d_new *= _RESCALE_THRESHOLD
            d_cur *= _RESCALE_THRESHOLD
            d_prev *= _RESCALE_THRESHOLD
        t_new = n_new / d_new if d_new != 0 else cnan
        order = k + 1
        diff1 = _mag(t_new - t_cur)
        diff0 = _mag(t_cur - t_prev)
        at_new = _mag(t_new)
        if diff1 < tol * at_new and diff0 < tol * _mag(t_cur):
            est = diff1 / at_new if at_new > 0.0 else 0.0
            return (t_new, order, True, est)
        n_prev2 = n_prev; n_prev = n_cur; n_cur = n_new
        d_prev2 = d_prev; d_prev = d_cur; d_cur = d_new
        t_prev = t_cur; t_cur = t_new
    at = _mag(t_cur)
    est = _mag(t_cur - t_prev) / at if at > 0.0 else INFINITY
    return (t_cur, order, False, est)


def drummond_2f0_fixed(real_or_cplx alpha, real_or_cplx beta, real_or_cplx z,
                       int n, int order):
    """T_n^(order) by the same recurrence, no convergence exit.

    Non-finite intermediates (poles of the approximant, z = 0) propagate
    as NaN rather than raising.
    """
    cdef real_or_cplx a = 1.0
    cdef real_or_cplx s = 1.0
    cdef real_or_cplx r, d_prev, n_prev, d_cur, n_cur, d_prev2, n_prev2
    cdef real_or_cplx lead, b, n_new, d_new, ab2n
    cdef real_or_cplx cnan
    cdef double m
    cdef int j, k
    if real_or_cplx is double:
        cnan = NAN
    else:
        cnan = NAN + 1j * NAN
    if z == 0:
        return cnan
    for j in range(n):
        a = a * (alpha + j) * (beta + j) / (-z)
        s = s + a
    if order == 0:
        return s
    a = a * (alpha + n) * (beta + n) / (-z)
    d_prev = 1.0 / a
    n_prev = s * d_prev
    r = (alpha + n + 1.0) * (beta + n + 1.0)
    if r == 0:
        return cnan
    d_cur = -(z / r + 1.0) * d_prev
    n_cur = s * d_cur - z / r
    n_prev2 = 0.0
    d_prev2 = 0.0
    ab2n = alpha + beta + 2.0 * n
    for k in range(1, order):
        lead = (alpha + n + k + 1.0) * (beta + n + k + 1.0)
        if lead == 0:
            return cnan
        b = z + k * (ab2n + 2.0 * k + 1.0) + lead
        n_new = -(b * n_cur + (k * (ab2n + 3.0 * k)) * n_prev + (k * (k - 1.0)) * n_prev2) / lead
        d_new = -(b * d_cur + (k * (ab2n + 3.0 * k)) * d_prev + (k * (k - 1.0)) * d_prev2) / lead
        m = _mag(n_new)
        if _mag(d_new) > m:
            m = _mag(d_new)
        if m > _RESCALE_THRESHOLD:
            n_new *= _RESCALE_TINY
            n_cur *= _RESCALE_TINY
            n_prev *= _RESCALE_TINY
            d_new *= _RESCALE_TINY
            d_cur *= _RESCALE_TINY
            d_prev *= _RESCALE_TINY
        elif 0.0 < m < _RESCALE_TINY:
            n_new *= _RESCALE_THRESHOLD
            n_cur *= _RESCALE_THRESHOLD
            n_prev *= _RESCALE_THRESHOLD
            d_new *= _RESCALE_THRESHOLD
            d_cur *= _RESCALE_THRESHOLD
            d_prev *= _RESCALE_THRESHOLD
        n_prev2 = n_prev; n_prev = n_cur; n_cur = n_new
        d_prev2 = d_prev; d_prev = d_cur; d_cur = d_new
    return n_cur / d_cur if d_cur != 0 else cnan
