"""Dephasing kernel D(T) for Gaussian pure-dephasing noise.

For a coupling operator with eigenvalues ``a`` and ``b`` driven by real
stationary Gaussian noise with covariance ``C(tau)``, the coherence obeys
``|rho_ab(T)/rho_ab(0)| = exp(-(a-b)**2 D(T) / (2 hbar**2))`` with
``D(T) = int_0^T int_0^T C(t-s) dt ds``.

Closed forms exist for the single line (``C = A cos(Omega tau)``) and for its
Lorentzian broadening (``C = A exp(-gamma|tau|) cos(Omega tau)``).  A
quadrature oracle and a Monte-Carlo sampler are provided to check them.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

__all__ = [
    "d_exact",
    "d_broadened",
    "short_time_expansion",
    "long_time_slope",
    "coherence_ratio",
    "gamma_qs",
    "lambda_eff",
    "route_b_exponent",
    "d_quadrature",
    "d_quadrature_2d",
    "NoiseRealization",
    "sample_noise",
    "monte_carlo_coherence",
    "monte_carlo_D",
    "DephasingCurve",
    "dephasing_curve",
    "classify_regime",
]

_SERIES_CUTOFF = 0.1
_SERIES_TERMS = 20


def _check_T(T):
    T = np.asarray(T, dtype=float)
    if np.any(T < 0):
        raise ValueError("T must be nonnegative")
    return T


def _ret(x):
    return x if np.ndim(x) else float(x)


def d_exact(A_J, omega0, T):
    """Unbroadened line: ``A_J (1 - cos 2 omega0 T) / (2 omega0**2)``.

    Evaluated as ``A_J T**2 sinc(omega0 T)**2``, which is the same number
    without the cancellation at small ``T`` or small ``omega0``.
    """
    if not omega0 > 0:
        raise ValueError("omega0 must be positive")
    T = _check_T(T)
    return _ret(A_J * T**2 * _sinc(omega0 * T) ** 2)


def _sinc(x):
    return np.sinc(x / np.pi)


def _phi(u):
    """``(u - 1 + e^{-u}) / u**2`` for complex ``u``, stable near 0."""
    u = np.asarray(u, dtype=complex)
    out = np.empty(u.shape, dtype=complex)
    small = np.abs(u) < _SERIES_CUTOFF
    if np.any(small):
        us = u[small]
        acc = np.zeros(us.shape, dtype=complex)
        term = np.full(us.shape, 0.5, dtype=complex)
        for k in range(_SERIES_TERMS):
            acc += term
            term = term * (-us) / (k + 3)
        out[small] = acc
    big = ~small
    if np.any(big):
        ub = u[big]
        out[big] = (ub + np.expm1(-ub)) / ub**2
    return out


def d_broadened(A_J, Omega, gamma, T):
    """Lorentzian-broadened line: ``2 A_J Re[(T z - 1 + e^{-zT}) / z**2]``, ``z = gamma - i Omega``.

    Written as ``2 A_J T**2 Re[phi(zT)]`` with ``phi(u) = (u - 1 + e^{-u})/u**2``,
    summed as a power series for ``|zT| < 0.1``.  ``gamma = 0`` delegates to
    :func:`d_exact`; ``gamma = Omega = 0`` gives ``A_J T**2``.
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    T = _check_T(T)
    if gamma == 0 and Omega != 0:
        return d_exact(A_J, abs(Omega) / 2.0, T)
    z = gamma - 1j * Omega
    return _ret(2.0 * A_J * T**2 * _phi(z * T).real)


def short_time_expansion(A_J, Omega, gamma, T):
    """Fourth-order Taylor polynomial of :func:`d_broadened`."""
    T = _check_T(T)
    return _ret(A_J * T**2 - A_J * gamma * T**3 / 3.0 + A_J * (gamma**2 - Omega**2) * T**4 / 12.0)


def long_time_slope(A_J, Omega, gamma):
    """``lim D(T)/T = S_sym(0) = 2 A_J gamma / (gamma**2 + Omega**2)``."""
    return 2.0 * A_J * gamma / (gamma**2 + Omega**2)


def coherence_ratio(a_minus_b, A_J, omega0, gamma, T, hbar=1.0, pure_dephasing=True):
    """Surviving coherence ``exp(-(a-b)**2 D(T) / (2 hbar**2))``.

    Exact only when the coupling commutes with the system Hamiltonian; pass
    ``pure_dephasing=False`` and this refuses to answer.
    """
    if not pure_dephasing:
        raise ValueError("the Gaussian dephasing formula holds only for pure-dephasing couplings")
    D = d_broadened(A_J, 2.0 * omega0, gamma, T)
    return _ret(np.exp(-(a_minus_b**2) * np.asarray(D) / (2.0 * hbar**2)))


def gamma_qs(a_minus_b, A_J, hbar=1.0):
    """Quasi-static coefficient of ``T**2`` in the dephasing exponent."""
    return a_minus_b**2 * A_J / (2.0 * hbar**2)


def lambda_eff(gamma_qs_val, T_ref):
    """Markovian rate giving the same exponent at ``T_ref``."""
    if not T_ref > 0:
        raise ValueError("T_ref must be positive")
    return gamma_qs_val * T_ref


def route_b_exponent(omega0, T):
    """``|int_0^T e^{-2 i omega0 t} dt|**2 = sin(omega0 T)**2 / omega0**2``."""
    T = _check_T(T)
    return _ret(T**2 * _sinc(omega0 * T) ** 2)


def d_quadrature(cov, T, epsabs=1e-12, epsrel=1e-11):
    """``D(T) = 2 int_0^T (T - tau) C(tau) dtau`` by adaptive quadrature.

    Valid for even covariances.  This is the one-dimensional reduction of the
    double integral through stationarity.
    """
    if T < 0:
        raise ValueError("T must be nonnegative")
    if T == 0:
        return 0.0
    val, _ = integrate.quad(lambda t: (T - t) * cov(t), 0.0, T, epsabs=epsabs, epsrel=epsrel, limit=500)
    return 2.0 * val


def d_quadrature_2d(cov, T, epsabs=1e-13, epsrel=1e-11):
    """``D(T) = int_0^T int_0^T C(t - s) ds dt`` by nested adaptive quadrature.

    The square is split along the diagonal so neither triangle contains the
    kink of ``C`` at ``t = s``.
    """
    if T < 0:
        raise ValueError("T must be nonnegative")
    if T == 0:
        return 0.0
    lower, _ = integrate.dblquad(lambda s, t: cov(t - s), 0.0, T, 0.0, lambda t: t, epsabs=epsabs, epsrel=epsrel)
    upper, _ = integrate.dblquad(lambda s, t: cov(t - s), 0.0, T, lambda t: t, T, epsabs=epsabs, epsrel=epsrel)
    return lower + upper


@dataclass(frozen=True)
class NoiseRealization:
    """Draws of ``xi(t) = sqrt(A_J) (alpha cos 2 w t + beta sin 2 w t)``.

    One row per realization.  The two-coefficient form is an exact sample of
    the Gaussian process with covariance ``A_J cos(2 w tau)``.
    """

    A_J: float
    omega0: float
    alpha: np.ndarray
    beta: np.ndarray
    seed: int | None

    def __len__(self):
        return len(self.alpha)

    def __call__(self, t):
        """Values at times ``t``, shape ``(n_samples, len(t))``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        w = 2.0 * self.omega0 * t
        return np.sqrt(self.A_J) * (np.outer(self.alpha, np.cos(w)) + np.outer(self.beta, np.sin(w)))

    def integral(self, T):
        """``int_0^T xi(t) dt`` for every realization, integrated in closed form."""
        W = 2.0 * self.omega0
        if W == 0:
            return np.sqrt(self.A_J) * self.alpha * T
        return np.sqrt(self.A_J) * (self.alpha * np.sin(W * T) + self.beta * (1.0 - np.cos(W * T))) / W


def sample_noise(A_J, omega0, rng_seed=None, n_samples=1) -> NoiseRealization:
    """Independent realizations of the single-line classical noise."""
    if A_J < 0:
        raise ValueError("A_J must be nonnegative")
    rng = np.random.default_rng(rng_seed)
    ab = rng.standard_normal((2, int(n_samples)))
    return NoiseRealization(float(A_J), float(omega0), ab[0], ab[1], rng_seed)


def monte_carlo_coherence(a_minus_b, A_J, omega0, T, n_samples=100_000, seed=None, hbar=1.0):
    """Average ``exp(-i (a-b) int xi / hbar)`` over noise draws.

    Each draw is a unitary on the two-level system; the average is the Kraus
    mixture, so the result is a completely positive map by construction.

    Returns
    -------
    mean : float
        Real part of the average phase factor.
    stderr : float
        Standard error of that mean.
    """
    noise = sample_noise(A_J, omega0, seed, n_samples)
    phase = a_minus_b * noise.integral(T) / hbar
    x = np.cos(phase)
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(len(x)))


def monte_carlo_D(A_J, omega0, T, n_samples=100_000, seed=None):
    """Sample estimate of ``D(T) = E[(int_0^T xi)**2]`` with its standard error."""
    noise = sample_noise(A_J, omega0, seed, n_samples)
    x = noise.integral(T) ** 2
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(len(x)))


def classify_regime(T, Omega, gamma) -> str:
    """``quasi_static`` below both ``1/Omega`` and ``1/gamma``; then ``markovian`` past ``1/gamma``, else ``oscillatory``."""
    t_osc = math.inf if Omega == 0 else 1.0 / abs(Omega)
    t_mark = math.inf if gamma == 0 else 1.0 / gamma
    if T < min(t_osc, t_mark):
        return "quasi_static"
    if T >= t_mark:
        return "markovian"
    return "oscillatory"


@dataclass(frozen=True)
class DephasingCurve:
    T: np.ndarray
    D: np.ndarray
    regime: tuple

    def __post_init__(self):
        if np.any(np.asarray(self.D) < 0):
            raise ValueError("D(T) must be nonnegative")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["T", "D", "regime"])
        for t, d, r in zip(self.T, self.D, self.regime):
            w.writerow([repr(float(t)), repr(float(d)), r])
        return buf.getvalue()


def dephasing_curve(A_J, Omega, gamma, T_grid) -> DephasingCurve:
    T = _check_T(np.atleast_1d(T_grid))
    D = np.atleast_1d(d_broadened(A_J, Omega, gamma, T))
    # clip roundoff below zero at T -> 0
    D = np.where(np.abs(D) < 1e-300, 0.0, D)
    return DephasingCurve(T, D, tuple(classify_regime(t, Omega, gamma) for t in T))
