"""Fourier spectra of spherically symmetric nonlocal diffusion operators.

Evaluates the eigenvalues of the integral operator

    L u(x) = integral over |y - x| <= delta of rho(|y - x|) (u(y) - u(x)) dy

acting on Fourier modes of the d-dimensional torus, for the kernel family
rho(r) ~ r^(-alpha) normalized to recover the Laplacian as delta -> 0.
Each eigenvalue is computed independently, to individually controlled
accuracy, by a convergent series (small k*delta) or a resummed divergent
asymptotic series (large k*delta).

Hot kernels run in a compiled extension when available; set
``NLSPECTRA_BACKEND=python`` to force the pure-Python fallback (see
``nlspectra._backend.BACKEND`` for the active choice).
"""

from ._backend import BACKEND
from .drummond import (
    DEFAULT_KMAX,
    DEFAULT_TOL,
    DrummondState,
    HypTerm2F0,
    LommelOrder,
    TransformResult,
    drummond_2f0,
    drummond_2f0_approximants,
    drummond_2f0_at_order,
    drummond_generic,
    lommel_s,
)
from .errors import NonConvergenceError
from .specfun import LANCZOS, LanczosTable, bessel_j, digamma, gamma, log_gamma_ratio
from .spectra import (
    HYBRID_SWITCH,
    EvalResult,
    KernelParams,
    SpectrumTable,
    WavenumberKey,
    achievable_squared_norms,
    apply_to_fourier_coeffs,
    lambda_asymptotic,
    lambda_hybrid,
    lambda_maclaurin,
    lattice_spectrum,
    stable_prefactor,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_KMAX",
    "DEFAULT_TOL",
    "HYBRID_SWITCH",
    "LANCZOS",
    "DrummondState",
    "EvalResult",
    "HypTerm2F0",
    "KernelParams",
    "LanczosTable",
    "LommelOrder",
    "NonConvergenceError",
    "SpectrumTable",
    "TransformResult",
    "WavenumberKey",
    "achievable_squared_norms",
    "apply_to_fourier_coeffs",
    "bessel_j",
    "digamma",
    "drummond_2f0",
    "drummond_2f0_approximants",
    "drummond_2f0_at_order",
    "drummond_generic",
    "gamma",
    "lambda_asymptotic",
    "lambda_hybrid",
    "lambda_maclaurin",
    "lattice_spectrum",
    "log_gamma_ratio",
    "lommel_s",
    "stable_prefactor",
]
