"""Pure-Python evaluation kernels.

Mirror of the compiled extension ``nlspectra._core``; the backend selector
picks whichever is available (see ``nlspectra._backend``). Functions here
assume their arguments were already validated by the public wrappers in
``specfun``, ``drummond``, and ``spectra``.
"""

from __future__ import annotations

import math

BACKEND_NAME = "python"

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

_SQRT2PI = math.sqrt(2.0 * math.pi)
_SQRT_HALF = math.sqrt(0.5)

# N, D in the Drummond recurrence grow factorially; a common power-of-two
# rescale leaves every approximant T = N/D bit-identical.
_RESCALE_THRESHOLD = 2.0**512
_RESCALE_TINY = 2.0**-512


def _lanczos_sum(z):
    s = LANCZOS_C[0]
    for i in range(1, 15):
        s += LANCZOS_C[i] / (z + i)
    return s


def _gamma1p(z):
    # Gamma(z+1) for z >= -0.5
    t = z + LANCZOS_G + 0.5
    return _SQRT2PI * t ** (z + 0.5) * math.exp(-t) * _lanczos_sum(z)


def gamma(x):
    if x < 0.5:
        return _gamma1p(x) / x
    return _gamma1p(x - 1.0)


def log_gamma_ratio(z, eps):
    # log(Gamma(z+1+eps)/Gamma(z+1)), arranged so every term vanishes
    # smoothly as eps -> 0 (log1p keeps the eps ~ 0 regime cancellation-free).
    g5 = z + LANCZOS_G + 0.5
    s1 = LANCZOS_C[0]
    s2 = 0.0
    for i in range(1, 15):
        zi = z + i
        s1 += LANCZOS_C[i] / zi
        s2 += LANCZOS_C[i] / (zi * (zi + eps))
    return (
        (z + 0.5) * math.log1p(eps / g5)
        + eps * math.log(g5 + eps)
        - eps
        + math.log1p(-eps * s2 / s1)
    )


def digamma(x):
    # Shift x above 10, then the Bernoulli asymptotic series; truncation
    # below 1e-15 for x >= 10.
    acc = 0.0
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
    return acc + math.log(x) - 0.5 / x - w * t


def _bessel_series(nu, x):
    # Frobenius series; safe whenever x is small enough that the terms do
    # not grow far above the result (callers enforce that regime).
    q = -0.25 * x * x
    term = 1.0
    s = 1.0
    for j in range(1, 201):
        term *= q / (j * (nu + j))
        s += term
        if abs(term) <= 1e-17 * abs(s):
            return s * (0.5 * x) ** nu / gamma(nu + 1.0)
    raise RuntimeError(f"bessel series did not converge for nu={nu}, x={x}")


def _bessel_int_miller(nu, x):
    # Backward recurrence normalized by J_0 + 2*sum(J_{2m}) = 1; stable in
    # the band where both the series and the large-x expansion lose digits.
    m = int(x) + 40
    if m < nu + 20:
        m = nu + 20
    bjp = 0.0
    bj = 1e-30
    total = 2.0 * bj if m % 2 == 0 else 0.0
    res = bj if m == nu else 0.0
    while m > 0:
        bjm = (2.0 * m / x) * bj - bjp
        bjp = bj
        bj = bjm
        m -= 1
        if abs(bj) > 1e150:
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


def _bessel_int_hankel(nu, x):
    # Large-argument expansion. The phase x - (2nu+1)pi/4 is expanded with
    # exact multiples of pi/4 so no accuracy is lost subtracting from large x.
    mu = 4.0 * nu * nu
    inv_x = 1.0 / x
    p = 1.0
    q = 0.0
    tk = 1.0
    prev = math.inf
    for k in range(1, 40):
        tk *= (mu - (2 * k - 1) ** 2) / (8.0 * k) * inv_x
        if abs(tk) >= prev:
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
        if abs(tk) < 1e-17:
            break
        prev = abs(tk)
    r = (2 * nu + 1) % 8
    if r == 1:
        cph, sph = _SQRT_HALF, _SQRT_HALF
    elif r == 3:
        cph, sph = -_SQRT_HALF, _SQRT_HALF
    elif r == 5:
        cph, sph = -_SQRT_HALF, -_SQRT_HALF
    else:
        cph, sph = _SQRT_HALF, -_SQRT_HALF
    cx = math.cos(x)
    sx = math.sin(x)
    cosw = cx * cph + sx * sph
    sinw = sx * cph - cx * sph
    return math.sqrt(2.0 / (math.pi * x)) * (cosw * p - sinw * q)


def _bessel_int(nu, x):
    if x <= 7.0:
        return _bessel_series(float(nu), x)
    if x < 28.0:
        return _bessel_int_miller(nu, x)
    return _bessel_int_hankel(nu, x)


def _bessel_half(two_nu, x):
    c = math.sqrt(2.0 / (math.pi * x))
    if two_nu == 1:
        return c * math.sin(x)
    if two_nu == -1:
        return c * math.cos(x)
    if two_nu == -3:
        return c * (-math.cos(x) / x - math.sin(x))
    nu = 0.5 * two_nu
    if x < max(1.0, nu):
        # upward recurrence and the trig form both cancel badly here
        return _bessel_series(nu, x)
    jm = c * math.cos(x)
    jc = c * math.sin(x)
    order = 0.5
    for _ in range((two_nu - 1) // 2):
        jm, jc = jc, (2.0 * order / x) * jc - jm
        order += 1.0
    return jc


def bessel_j(two_nu, x):
    """J_nu(x) with the order passed as 2*nu (integer)."""
    if two_nu & 1:
        return _bessel_half(two_nu, x)
    nu = two_nu >> 1
    if nu < 0:
        val = _bessel_int(-nu, x)
        return -val if nu & 1 else val
    return _bessel_int(nu, x)


def stable_prefactor(x, y, z):
    # f(x, y, z) = [y^(2x) Gamma(x+1) Gamma(z) / Gamma(z-x) - 1] / x with
    # the removable singularity at x = 0 evaluated exactly.
    if x == 0.0:
        return 2.0 * math.log(y) - EULER_GAMMA + digamma(z)
    t = 2.0 * x * math.log(y) + log_gamma_ratio(0.0, x) - log_gamma_ratio(z - 1.0, -x)
    return math.expm1(t) / x


def maclaurin_lambda(d, alpha, k, delta, tol, cap):
    """Small-k*delta eigenvalue series, prefactor included.

    Returns (value, terms, converged, est_rel_err). The n = 1 term is
    exactly -k**2, so the whole sum is built by the term-ratio recurrence
    with no gamma evaluations.
    """
    y = 0.25 * (k * delta) ** 2
    u = -(k * k)
    s = u
    n = 1
    while n < cap:
        u *= -y * (d + 2.0 * n - alpha) / ((n + 1.0) * (n + 0.5 * d) * (d + 2.0 * n + 2.0 - alpha))
        if abs(u) < tol * abs(s):
            return (s, n, True, abs(u) / abs(s))
        s += u
        n += 1
    au = abs(u)
    a_s = abs(s)
    est = au / a_s if a_s > 0.0 else math.inf
    return (s, n, False, est)


def _nan_like(v):
    if isinstance(v, complex):
        return complex(math.nan, math.nan)
    return math.nan


def drummond_2f0(alpha, beta, z, n, tol, k_max):
    """Resummation of sum_k (alpha)_k (beta)_k / (-z)^k by the four-term
    numerator/denominator recurrence.

    Returns (value, order, converged, est_rel_err). Works for float or
    complex parameters; terminating parameter values (alpha or beta a
    nonpositive integer) must be screened by the caller.
    """
    a = 1.0
    s = 1.0
    for j in range(n):
        a = a * (alpha + j) * (beta + j) / (-z)
        s = s + a
    a = a * (alpha + n) * (beta + n) / (-z)  # a_{n+1}
    d_prev = 1.0 / a
    n_prev = s * d_prev
    r = (alpha + n + 1.0) * (beta + n + 1.0)
    d_cur = -(z / r + 1.0) * d_prev
    n_cur = s * d_cur - z / r
    n_prev2 = 0.0 * d_cur
    d_prev2 = 0.0 * d_cur
    t_prev = s + 0.0 * d_cur
    t_cur = n_cur / d_cur if d_cur != 0 else _nan_like(d_cur)
    order = 1
    ab2n = alpha + beta + 2.0 * n
    for k in range(1, k_max):
        lead = (alpha + n + k + 1.0) * (beta + n + k + 1.0)
        if lead == 0:
            break
        b = z + k * (ab2n + 2.0 * k + 1.0) + lead
        c = k * (ab2n + 3.0 * k)
        e = k * (k - 1.0)
        n_new = -(b * n_cur + c * n_prev + e * n_prev2) / lead
        d_new = -(b * d_cur + c * d_prev + e * d_prev2) / lead
        m = max(abs(n_new), abs(d_new))
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
        t_new = n_new / d_new if d_new != 0 else _nan_like(d_new)
        order = k + 1
        diff1 = abs(t_new - t_cur)
        diff0 = abs(t_cur - t_prev)
        at_new = abs(t_new)
        if diff1 < tol * at_new and diff0 < tol * abs(t_cur):
            est = diff1 / at_new if at_new > 0.0 else 0.0
            return (t_new, order, True, est)
        n_prev2, n_prev, n_cur = n_prev, n_cur, n_new
        d_prev2, d_prev, d_cur = d_prev, d_cur, d_new
        t_prev, t_cur = t_cur, t_new
    at = abs(t_cur)
    est = abs(t_cur - t_prev) / at if at > 0.0 else math.inf
    return (t_cur, order, False, est)


def drummond_2f0_fixed(alpha, beta, z, n, order):
    """T_n^(order) by the same recurrence, no convergence exit.

    Non-finite intermediates (poles of the approximant, z = 0) propagate
    as NaN rather than raising.
    """
    if z == 0:
        return _nan_like(1.0 * alpha * beta * z)
    a = 1.0
    s = 1.0
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
        return _nan_like(d_prev)
    d_cur = -(z / r + 1.0) * d_prev
    n_cur = s * d_cur - z / r
    n_prev2 = 0.0 * d_cur
    d_prev2 = 0.0 * d_cur
    ab2n = alpha + beta + 2.0 * n
    for k in range(1, order):
        lead = (alpha + n + k + 1.0) * (beta + n + k + 1.0)
        if lead == 0:
            return _nan_like(d_cur)
        b = z + k * (ab2n + 2.0 * k + 1.0) + lead
        c = k * (ab2n + 3.0 * k)
        e = k * (k - 1.0)
        n_new = -(b * n_cur + c * n_prev + e * n_prev2) / lead
        d_new = -(b * d_cur + c * d_prev + e * d_prev2) / lead
        m = max(abs(n_new), abs(d_new))
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
        n_prev2, n_prev, n_cur = n_prev, n_cur, n_new
        d_prev2, d_prev, d_cur = d_prev, d_cur, d_new
    return n_cur / d_cur if d_cur != 0 else _nan_like(d_cur)
