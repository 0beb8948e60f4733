"""Truncated-Fock-space brute-force checks of the operator algebra.

Everything here works on explicit (dim x dim) matrices so that the
closed-form layers can be verified against direct linear algebra: the
map's Gauss factorization, the metric identity, and wave-function
propagation under quadratic generators.

Truncation policy: results are trusted only while the top n_edge (10 by
default) Fock levels stay essentially unpopulated; helpers expose that
edge population so callers can flag or reject runs that touch the lid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from .drive import DriveParams, alpha_beta, omega as drive_omega
from .errors import NormTooLarge, SingularEta, TruncationUntrusted
from .hermitize import HermitizedCoeffs
from .integrate import (
    IntegrationStats,
    IvpProblem,
    integrate,
    pack_complex,
    unpack_complex,
    wrap_complex_rhs,
)

_EDGE_LEVELS = 10
_EDGE_TOL = 1e-12
_EXPM_MAX_NORM = 600.0
_COND_LIMIT = 1e14


class FockSpace:
    """Ladder operators on a dim-level truncation."""

    def __init__(self, dim: int = 128):
        if dim < 4:
            raise ValueError(f"dim must be at least 4, got {dim}")
        self.dim = dim
        root = np.sqrt(np.arange(1, dim, dtype=float))
        self.a = np.zeros((dim, dim), dtype=complex)
        self.a[np.arange(dim - 1), np.arange(1, dim)] = root
        self.adag = self.a.conj().T.copy()
        self.n_levels = np.arange(dim, dtype=float)
        self.a_sq = self.a @ self.a
        self.adag_sq = self.adag @ self.adag

    def number_plus_half(self) -> np.ndarray:
        return np.diag(self.n_levels + 0.5).astype(complex)

    def vacuum(self) -> np.ndarray:
        psi = np.zeros(self.dim, dtype=complex)
        psi[0] = 1.0
        return psi


@dataclass(frozen=True)
class TruncatedState:
    """State amplitudes with the truncation-trust metric attached."""

    amplitudes: np.ndarray
    n_edge: int = _EDGE_LEVELS

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def edge_population(self) -> float:
        """Population of the top n_edge levels, relative to the total."""
        total = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if total == 0.0:
            return 0.0
        edge = self.amplitudes[-self.n_edge:]
        return float(np.vdot(edge, edge).real) / total

    def mean_photon(self, f: FockSpace) -> float:
        total = float(np.vdot(self.amplitudes, self.amplitudes).real)
        weighted = float(
            np.sum(f.n_levels * np.abs(self.amplitudes) ** 2))
        return weighted / total


def squeeze_trust_bound(dim: int, n_edge: int = _EDGE_LEVELS) -> float:
    """Largest squeeze r whose photon number the truncation resolves.

    Conservative rule sinh(r)^2 <= dim/20, which keeps the occupied tail
    well below the lid for a squeezed vacuum.
    """
    del n_edge
    return math.asinh(math.sqrt(dim / 20.0))


def matrix_exponential(m: np.ndarray, max_norm: float = _EXPM_MAX_NORM) -> np.ndarray:
    """exp(m) with finite-entry and norm guards.

    Raises NormTooLarge when the 1-norm exceeds max_norm; beyond that the
    result would overflow or lose all accuracy in double precision.
    """
    m = np.asarray(m)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    norm1 = float(np.linalg.norm(m, 1))
    if norm1 > max_norm:
        raise NormTooLarge(f"1-norm {norm1:.3e} exceeds {max_norm:.3e}")
    return scipy.linalg.expm(m)


def gauss_product_matrix(lam: complex, big_lambda: float, f: FockSpace) -> np.ndarray:
    """exp(lam*K+) * Lambda^K0 * exp(conj(lam)*K-) assembled factor by factor.

    The raising and lowering factors are built from the exact Fock-basis
    series; because K- only descends and K+ only ascends, every matrix
    element of the product inside the truncation is exact (no leakage
    through the lid for this factor ordering).
    """
    dim = f.dim
    up = np.zeros((dim, dim), dtype=complex)
    for n in range(dim):
        term = 1.0 + 0j
        up[n, n] = term
        k = 0
        while n + 2 * (k + 1) < dim:
            k += 1
            m = n + 2 * k
            term *= (lam / 2.0) / k * math.sqrt(m * (m - 1))
            up[m, n] = term
    if big_lambda <= 0.0:
        raise ValueError(f"Lambda must be positive, got {big_lambda}")
    half_log = 0.5 * math.log(big_lambda)
    diag = np.exp(half_log * (f.n_levels + 0.5)).astype(complex)
    down = np.zeros((dim, dim), dtype=complex)
    lam_c = complex(lam).conjugate()
    for n in range(dim):
        term = 1.0 + 0j
        down[n, n] = term
        k = 0
        while n + 2 * (k + 1) < dim:
            k += 1
            m = n + 2 * k
            term *= (lam_c / 2.0) / k * math.sqrt(m * (m - 1))
            down[n, m] = term
    return (up * diag[np.newaxis, :]) @ down


def eta_matrix(eps_map: float, mu: complex, f: FockSpace,
               form: str = "exponential", check_edge: bool = False,
               edge_tol: float = _EDGE_TOL) -> np.ndarray:
    """The map as a dim x dim matrix.

    form "exponential" exponentiates the generator directly (suffers
    genuine truncation error near the lid); form "gauss" assembles the
    factorized product (exact within the truncation).  With check_edge,
    raises TruncationUntrusted when any column from the trusted block
    leaks more than edge_tol of its norm into the top levels.
    """
    if form == "exponential":
        gen = (eps_map * f.number_plus_half()
               + mu * f.a_sq + np.conj(mu) * f.adag_sq)
        eta = matrix_exponential(gen)
    elif form == "gauss":
        from .dyson import gauss_coefficients

        g = gauss_coefficients(eps_map, mu)
        eta = gauss_product_matrix(g.lam, g.Lambda, f)
    else:
        raise ValueError(f"form must be 'exponential' or 'gauss', got {form!r}")
    if check_edge:
        trusted = f.dim - _EDGE_LEVELS
        col_norms = np.linalg.norm(eta[:, :trusted], axis=0)
        edge_norms = np.linalg.norm(eta[trusted:, :trusted], axis=0)
        leak = float(np.max(edge_norms / col_norms))
        if leak > edge_tol:
            raise TruncationUntrusted(
                f"map couples trusted levels to the lid at {leak:.3e} "
                f"(> {edge_tol:.1e})"
            )
    return eta


def metric(eta: np.ndarray) -> np.ndarray:
    """Theta = eta^dag * eta."""
    return eta.conj().T @ eta


def quasi_hermiticity_residual(H: np.ndarray, theta_center: np.ndarray,
                               theta_plus: np.ndarray,
                               theta_minus: np.ndarray, h: float,
                               n_edge: int = _EDGE_LEVELS) -> float:
    """Relative Frobenius residual of H^dag*Theta - Theta*H = i*dTheta/dt.

    The time derivative is the central difference of the two offset
    metrics; the norm is taken on the sub-block that excludes the top
    n_edge levels in both indices.
    """
    dtheta = (theta_plus - theta_minus) / (2.0 * h)
    residual = H.conj().T @ theta_center - theta_center @ H - 1j * dtheta
    cut = residual.shape[0] - n_edge
    sub = residual[:cut, :cut]
    ref = theta_center[:cut, :cut]
    return float(np.linalg.norm(sub) / np.linalg.norm(ref))


def drive_hamiltonian(t: float, p: DriveParams, f: FockSpace) -> np.ndarray:
    """H(t) = omega*(n + 1/2) + alpha*a^2 + beta*a^dag^2 as a matrix."""
    a_pol, b_pol = alpha_beta(t, p)
    return (drive_omega(t, p) * f.number_plus_half()
            + a_pol.to_complex() * f.a_sq + b_pol.to_complex() * f.adag_sq)


def counterpart_matrix(c: HermitizedCoeffs, f: FockSpace) -> np.ndarray:
    """h = W*(n + 1/2) + T*a^2 + conj(T)*a^dag^2 as a matrix (Hermitian)."""
    T = c.T()
    return (c.W * f.number_plus_half()
            + T * f.a_sq + T.conjugate() * f.adag_sq)


@dataclass(frozen=True)
class PropagationResult:
    """Sampled wave function with truncation and norm diagnostics."""

    t: np.ndarray
    amplitudes: np.ndarray
    norm_drift: float
    max_edge_population: float
    trusted: bool
    stats: IntegrationStats

    def state_at(self, i: int) -> TruncatedState:
        return TruncatedState(amplitudes=self.amplitudes[i])

    def mean_photon(self, f: FockSpace) -> np.ndarray:
        probs = np.abs(self.amplitudes) ** 2
        totals = probs.sum(axis=1)
        return (probs @ f.n_levels) / totals


CoeffFn = Callable[[float], tuple[complex, complex, complex]]


def propagate(coeffs: CoeffFn, psi0: np.ndarray, t_grid: np.ndarray,
              f: FockSpace, rtol: float = 1e-9, atol: float = 1e-12,
              max_step: Optional[float] = None, strict: bool = False,
              edge_tol: float = _EDGE_TOL) -> PropagationResult:
    """Integrate i dpsi/dt = H(t) psi with H = c_n*(n+1/2) + c2*a^2 + c2d*a^dag^2.

    coeffs(t) returns (c_n, c2, c2d); Hermitian generators have
    c2d = conj(c2) and real c_n, in which case norm_drift measures
    integrator quality.  Edge population is sampled on the reporting
    grid; if it ever exceeds edge_tol the result is flagged untrusted
    (and raises TruncationUntrusted when strict).
    """
    t_grid = np.asarray(t_grid, dtype=float)
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (f.dim,):
        raise ValueError(f"psi0 must have shape ({f.dim},), got {psi0.shape}")
    n_half = f.n_levels + 0.5

    def rhs_c(t, psi):
        c_n, c2, c2d = coeffs(t)
        return -1j * (c_n * (n_half * psi) + c2 * (f.a_sq @ psi)
                      + c2d * (f.adag_sq @ psi))

    problem = IvpProblem(rhs=wrap_complex_rhs(rhs_c),
                         t_span=(float(t_grid[0]), float(t_grid[-1])),
                         y0=pack_complex(psi0), t_eval=t_grid)
    sol = integrate(problem, method="rk45", rtol=rtol, atol=atol,
                    max_step=max_step)

    m = sol.t.size
    amps = np.empty((m, f.dim), dtype=complex)
    for i in range(m):
        amps[i] = unpack_complex(sol.y[i])
    norms = np.linalg.norm(amps, axis=1)
    norm_drift = float(np.max(np.abs(norms - np.linalg.norm(psi0))))
    probs = np.abs(amps) ** 2
    edge = probs[:, -_EDGE_LEVELS:].sum(axis=1) / probs.sum(axis=1)
    max_edge = float(np.max(edge))
    trusted = max_edge <= edge_tol
    if strict and not trusted:
        raise TruncationUntrusted(
            f"edge population reached {max_edge:.3e} (> {edge_tol:.1e})"
        )
    return PropagationResult(t=sol.t, amplitudes=amps, norm_drift=norm_drift,
                             max_edge_population=max_edge, trusted=trusted,
                             stats=sol.stats)


def nonhermitian_expectation(eta: np.ndarray, psi: np.ndarray,
                             observable: np.ndarray) -> complex:
    """Metric expectation <psi| eta^dag eta O |psi> without forming Theta.

    Assembled as (eta psi)^dag (eta O psi), which is exact for the
    metric ordering Theta*O and avoids the explicit product.
    """
    left = eta @ psi
    right = eta @ (observable @ psi)
    return complex(np.vdot(left, right))


def inverse_map_state(eta: np.ndarray, psi: np.ndarray,
                      cond_limit: float = _COND_LIMIT) -> np.ndarray:
    """eta^{-1} psi with a conditioning guard (SingularEta beyond it)."""
    cond = float(np.linalg.cond(eta))
    if not math.isfinite(cond) or cond > cond_limit:
        raise SingularEta(f"map condition number {cond:.3e} exceeds {cond_limit:.1e}")
    return np.linalg.solve(eta, psi)


def map_observable(eta: np.ndarray, observable: np.ndarray,
                   cond_limit: float = _COND_LIMIT) -> np.ndarray:
    """eta^{-1} O eta, the observable carried to the non-Hermitian side."""
    cond = float(np.linalg.cond(eta))
    if not math.isfinite(cond) or cond > cond_limit:
        raise SingularEta(f"map condition number {cond:.3e} exceeds {cond_limit:.1e}")
    return np.linalg.solve(eta, observable @ eta)
