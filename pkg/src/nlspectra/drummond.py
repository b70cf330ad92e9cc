"""Drummond's sequence transformation and Lommel function evaluation.

Drummond's transformation resums a (possibly divergent) series from its
partial sums s_n:

    T_n^(k) = Delta^k (s_n / Delta s_n) / Delta^k (1 / Delta s_n)

``drummond_generic`` computes this finite-difference quotient directly in
O(k^2) operations for arbitrary term sequences. For the hypergeometric-type
terms a_k = (alpha)_k (beta)_k / (-z)^k the numerators and denominators
both satisfy a four-term recurrence in k, which ``drummond_2f0`` advances
in O(1) work per order; besides the speedup, the recurrence is what keeps
high orders numerically stable. Lommel functions of the second kind are
evaluated by resumming their divergent large-argument expansion.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Sequence, Union

from ._backend import kernels as _k
from .errors import NonConvergenceError

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_KMAX",
    "HypTerm2F0",
    "DrummondState",
    "TransformResult",
    "LommelOrder",
    "drummond_generic",
    "drummond_2f0",
    "drummond_2f0_at_order",
    "drummond_2f0_approximants",
    "lommel_s",
]

Scalar = Union[float, complex]

#: Stopping tolerance 10 * machine epsilon.
DEFAULT_TOL = 10.0 * sys.float_info.epsilon
#: Order cap; convergence typically needs a few tens of orders.
DEFAULT_KMAX = 500

_RESCALE_THRESHOLD = 2.0**512
_RESCALE_TINY = 2.0**-512


def _nonpositive_int(value: Scalar) -> int | None:
    """-value if value is exactly a nonpositive integer, else None."""
    c = complex(value)
    if c.imag != 0.0:
        return None
    r = c.real
    if r > 0.0 or r != int(r):
        return None
    return -int(r)


@dataclass(frozen=True)
class HypTerm2F0:
    """Term family a_k = (alpha)_k (beta)_k / (-z)^k."""

    alpha: complex
    beta: complex
    z: complex

    def term_ratio(self, k: int) -> Scalar:
        """a_{k+1} / a_k = -(alpha+k)(beta+k)/z."""
        return -(self.alpha + k) * (self.beta + k) / self.z

    def term(self, k: int) -> Scalar:
        a: Scalar = 1.0
        for j in range(k):
            a = a * (self.alpha + j) * (self.beta + j) / (-self.z)
        return a

    def terms(self, count: int) -> list[Scalar]:
        """[a_0, ..., a_{count-1}]."""
        out: list[Scalar] = [1.0]
        a: Scalar = 1.0
        for j in range(count - 1):
            a = a * (self.alpha + j) * (self.beta + j) / (-self.z)
            out.append(a)
        return out

    def termination_index(self) -> int | None:
        """m such that a_k = 0 for all k > m, or None if non-terminating."""
        best = None
        for p in (self.alpha, self.beta):
            m = _nonpositive_int(p)
            if m is not None and (best is None or m < best):
                best = m
        return best

    def is_real(self) -> bool:
        return all(complex(p).imag == 0.0 for p in (self.alpha, self.beta, self.z))


@dataclass
class TransformResult:
    """Outcome of a resummation."""

    value: Scalar
    order: int
    converged: bool
    est_rel_err: float


@dataclass(frozen=True)
class LommelOrder:
    """Order pair (mu, nu) of the Lommel function S_{mu,nu}."""

    mu: float
    nu: float

    def hyp_term(self, x: float) -> HypTerm2F0:
        """Terms of the large-argument expansion of S_{mu,nu}(x)/x^(mu-1)."""
        return HypTerm2F0(
            alpha=0.5 * (1.0 - self.mu + self.nu),
            beta=0.5 * (1.0 - self.mu - self.nu),
            z=0.25 * x * x,
        )


def _terminating_sum(term: HypTerm2F0, m: int) -> Scalar:
    a: Scalar = 1.0
    s: Scalar = 1.0
    for j in range(m):
        a = a * (term.alpha + j) * (term.beta + j) / (-term.z)
        s = s + a
    if term.is_real():
        return s.real if isinstance(s, complex) else s
    return s


def drummond_generic(terms: Sequence[Scalar], n: int, k: int) -> Scalar:
    """T_n^(k) from explicit terms a_0..a_m via the finite-difference quotient.

    Needs m >= n+k+1. The difference tables are updated in place, so no
    binomial coefficients are formed. A zero term among the weights
    a_{n+1}..a_{n+k+1} is treated as series termination and the terminal
    partial sum (the transformation's exact limit there) is returned.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if len(terms) < n + k + 2:
        raise ValueError(
            f"need terms a_0..a_{n + k + 1} (got {len(terms)}) for n={n}, k={k}"
        )
    ps: list[Scalar] = []
    s: Scalar = 0.0
    for a in terms[: n + k + 2]:
        s = s + a
        ps.append(s)
    for j in range(k + 1):
        if terms[n + j + 1] == 0:
            return ps[n + j]
    num = [ps[n + j] / terms[n + j + 1] for j in range(k + 1)]
    den = [1.0 / terms[n + j + 1] for j in range(k + 1)]
    for i in range(k):
        for j in range(k - i):
            num[j] = num[j + 1] - num[j]
            den[j] = den[j + 1] - den[j]
    if den[0] == 0:
        raise ZeroDivisionError(f"denominator difference vanished at n={n}, k={k}")
    return num[0] / den[0]


def drummond_2f0(
    term: HypTerm2F0,
    n: int = 0,
    tol: float = DEFAULT_TOL,
    k_max: int = DEFAULT_KMAX,
) -> TransformResult:
    """Resum sum_k (alpha)_k (beta)_k / (-z)^k via the four-term recurrence.

    Stops once two consecutive approximant differences fall below
    tol * |T|. Terminating series (alpha or beta a nonpositive integer -m)
    are summed exactly and report order m+1. On hitting ``k_max`` the best
    value is returned with ``converged=False``; no exception is raised.
    """
    if term.z == 0:
        raise ValueError("z = 0: the series has no meaningful resummation")
    if not tol >= sys.float_info.epsilon:
        raise ValueError(f"tol must be >= machine epsilon, got {tol}")
    if k_max < 2:
        raise ValueError(f"k_max must be >= 2, got {k_max}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")

    m = term.termination_index()
    if m is not None:
        return TransformResult(_terminating_sum(term, m), m + 1, True, 0.0)

    if term.is_real():
        args = (complex(term.alpha).real, complex(term.beta).real, complex(term.z).real)
    else:
        args = (complex(term.alpha), complex(term.beta), complex(term.z))
    value, order, converged, est = _k.drummond_2f0(*args, n, tol, k_max)
    return TransformResult(value, order, bool(converged), est)


def drummond_2f0_at_order(term: HypTerm2F0, n: int, order: int) -> Scalar:
    """T_n^(order) with no early exit; NaN where the approximant has a pole."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if term.z == 0:
        raise ValueError("z = 0: the series has no meaningful resummation")
    m = term.termination_index()
    if m is not None and order > m:
        return _terminating_sum(term, m)
    if term.is_real():
        args = (complex(term.alpha).real, complex(term.beta).real, complex(term.z).real)
    else:
        args = (complex(term.alpha), complex(term.beta), complex(term.z))
    return _k.drummond_2f0_fixed(*args, n, order)


@dataclass
class DrummondState:
    """Rolling window of the numerator/denominator recurrence.

    Holds N_n^(k), N_n^(k-1), N_n^(k-2) and the D counterparts together
    with the last two approximants; ``advance`` moves k -> k+1.
    """

    k: int
    n: int
    N_cur: Scalar
    N_prev: Scalar
    N_prev2: Scalar
    D_cur: Scalar
    D_prev: Scalar
    D_prev2: Scalar
    T_cur: Scalar
    T_prev: Scalar

    @classmethod
    def start(cls, term: HypTerm2F0, n: int = 0) -> "DrummondState":
        """State at k = 1 from the initial data D^(0)=1/a_{n+1}, N^(0)=s_n D^(0),
        N^(1) = s_n D^(1) + a_{n+1}/a_{n+2}."""
        if term.z == 0:
            raise ValueError("z = 0: the series has no meaningful resummation")
        a: Scalar = 1.0
        s: Scalar = 1.0
        for j in range(n):
            a = a * (term.alpha + j) * (term.beta + j) / (-term.z)
            s = s + a
        a = a * (term.alpha + n) * (term.beta + n) / (-term.z)
        d0 = 1.0 / a
        n0 = s * d0
        r = (term.alpha + n + 1.0) * (term.beta + n + 1.0)
        d1 = -(term.z / r + 1.0) * d0
        n1 = s * d1 - term.z / r
        t1 = n1 / d1 if d1 != 0 else math.nan
        return cls(1, n, n1, n0, 0.0, d1, d0, 0.0, t1, s)

    def advance(self, term: HypTerm2F0) -> None:
        k = self.k
        n = self.n
        lead = (term.alpha + n + k + 1.0) * (term.beta + n + k + 1.0)
        if lead == 0:
            raise ZeroDivisionError(
                f"recurrence leading coefficient vanished at k={k} (terminating series)"
            )
        ab2n = term.alpha + term.beta + 2.0 * n
        b = term.z + k * (ab2n + 2.0 * k + 1.0) + lead
        c = k * (ab2n + 3.0 * k)
        e = k * (k - 1.0)
        n_new = -(b * self.N_cur + c * self.N_prev + e * self.N_prev2) / lead
        d_new = -(b * self.D_cur + c * self.D_prev + e * self.D_prev2) / lead
        m = max(abs(n_new), abs(d_new))
        if m > _RESCALE_THRESHOLD or 0.0 < m < _RESCALE_TINY:
            scale = _RESCALE_TINY if m > _RESCALE_THRESHOLD else _RESCALE_THRESHOLD
            n_new *= scale
            d_new *= scale
            self.N_cur *= scale
            self.D_cur *= scale
            self.N_prev *= scale
            self.D_prev *= scale
        self.N_prev2, self.N_prev, self.N_cur = self.N_prev, self.N_cur, n_new
        self.D_prev2, self.D_prev, self.D_cur = self.D_prev, self.D_cur, d_new
        self.T_prev = self.T_cur
        self.T_cur = n_new / d_new if d_new != 0 else math.nan
        self.k = k + 1


def drummond_2f0_approximants(term: HypTerm2F0, n: int = 0, k_max: int = DEFAULT_KMAX):
    """Yield (k, T_n^(k)) for k = 0, 1, ... via DrummondState.

    Introspectable step-by-step path; the backends implement the same
    recurrence as a closed loop.
    """
    a: Scalar = 1.0
    s: Scalar = 1.0
    for j in range(n):
        a = a * (term.alpha + j) * (term.beta + j) / (-term.z)
        s = s + a
    yield 0, s
    state = DrummondState.start(term, n)
    yield 1, state.T_cur
    while state.k < k_max:
        state.advance(term)
        yield state.k, state.T_cur


def _lommel_with_info(
    order: LommelOrder, x: float, tol: float, k_max: int
) -> tuple[float, int, float, bool]:
    """(S_{mu,nu}(x), resummation order, est_rel_err, converged)."""
    term = order.hyp_term(x)
    res = drummond_2f0(term, 0, tol, k_max)
    value = res.value.real if isinstance(res.value, complex) else res.value
    return x ** (order.mu - 1.0) * value, res.order, res.est_rel_err, res.converged


def lommel_s(
    order: LommelOrder,
    x: float,
    tol: float = DEFAULT_TOL,
    k_max: int = DEFAULT_KMAX,
) -> float:
    """Lommel function S_{mu,nu}(x) by resummation of its divergent expansion.

    Reliable for x of a few and beyond (the eigenvalue formulas call it
    with x >= 6); raises NonConvergenceError when the resummation cannot
    reach ``tol`` within ``k_max`` orders.
    """
    if x <= 0.0:
        raise ValueError(f"lommel_s requires x > 0, got {x}")
    value, order_used, est, converged = _lommel_with_info(order, x, tol, k_max)
    if not converged:
        raise NonConvergenceError(
            f"Lommel S resummation stalled at order {order_used} "
            f"(mu={order.mu}, nu={order.nu}, x={x}, est {est:.2e})",
            result=TransformResult(value, order_used, False, est),
        )
    return value
