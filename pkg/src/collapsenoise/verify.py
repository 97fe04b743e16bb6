"""Oracle-versus-closed-form verification suites.

Each suite returns a list of :class:`Check`.  The command line ``verify``
subcommand runs them and exits nonzero when any check fails.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import dephasing as dp
from . import dynamics as dy
from . import fock
from .params import GtdParams, amplitude_AJ

__all__ = ["Check", "SUITES", "run_suite", "random_generator"]


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float
    passed: bool
    comparison: str = "residual <= tolerance"

    def to_dict(self):
        return asdict(self)


def _le(name, residual, tol):
    residual = float(residual)
    return Check(name, residual, tol, bool(residual <= tol))


def wick_suite(seed=0, n_tau=20, n_pop=20):
    rng = np.random.default_rng(seed)
    checks = []
    ws = fock.current_workspace(1)
    for sigma in (1, -1):
        p = GtdParams.natural(sigma_branch=sigma)
        A = amplitude_AJ(p)
        taus = rng.uniform(-10, 10, n_tau)
        res = max(abs(fock.correlator_JJ(ws, p, t) - A * np.exp(-2j * sigma * t)) for t in taus)
        checks.append(_le(f"vacuum line sigma={sigma:+d}", res, 1e-10))
    p = GtdParams.natural()
    res = 0.0
    for _ in range(n_pop):
        nb, nd = rng.uniform(0, 1, 2)
        st = fock.product_state(ws, [nb, nd])
        t = rng.uniform(-10, 10)
        res = max(res, abs(fock.correlator_JJ(ws, p, t, st) - fock.analytic_populated_fermion(p, nb, nd, t)))
    checks.append(_le("populated bath coefficients", res, 1e-10))
    taus = rng.uniform(-10, 10, n_tau)
    res = max(
        abs(0.5 * (fock.correlator_JJ(ws, p, t) + fock.correlator_JJ(ws, p, -t)) - amplitude_AJ(p) * np.cos(2 * t))
        for t in taus
    )
    checks.append(_le("symmetrized correlator", res, 1e-10))
    res = max(
        abs(fock.correlator_JJ(ws, p, t) - fock.correlator_JJ(ws, p, -t) + 2j * amplitude_AJ(p) * np.sin(2 * t))
        for t in taus
    )
    checks.append(_le("commutator kernel", res, 1e-10))
    p2 = GtdParams.natural(n_matrix=2)
    ws2 = fock.current_workspace(2)
    res = max(abs(fock.correlator_JJ(ws2, p2, t) - amplitude_AJ(p2) * np.exp(-2j * t)) for t in taus[:5])
    checks.append(_le("vacuum line n_matrix=2", res, 1e-10))
    res = max(fock.heisenberg_current_residual(ws, p, t) for t in taus[:5])
    checks.append(_le("phase expansion equals free evolution", res, 1e-10))
    sw = fock.surrogate_workspace(6)
    res = max(abs(fock.correlator_surrogate(sw, p, t) - amplitude_AJ(p) * np.exp(2j * t)) for t in taus)
    checks.append(_le("surrogate vacuum line", res, 1e-10))
    return checks


def hasvac_suite(seed=0, n_ratios=20):
    rng = np.random.default_rng(seed)
    checks = [_le("m_F = m_R cancels", fock.check_has_vacuum(1.0, 1.0), 1e-12)]
    ratios = np.exp(rng.uniform(np.log(0.05), np.log(20.0), n_ratios))
    res = max(abs(fock.check_has_vacuum(r, 1.0) - fock.hasvac_residual_formula(r, 1.0)) for r in ratios)
    checks.append(_le("residual formula at random mass ratios", res, 1e-10))
    r4 = fock.check_has_vacuum(4.0, 1.0)
    checks.append(Check("m_F = 4 m_R is nonzero", r4, 1e-3, bool(r4 > 1e-3), "residual > tolerance"))
    return checks


def bateman_suite(seed=0):
    checks = []
    for n_max in (3, 4, 6):
        rep = fock.bateman_check(n_max)
        checks.append(_le(f"spectrum n_max={n_max}", rep.eigen_residual, 1e-10))
        checks.append(_le(f"Heisenberg phases n_max={n_max}", max(rep.phase_residual_plus, rep.phase_residual_minus), 1e-10))
        checks.append(_le(f"minimum eigenvalue -n_max n_max={n_max}", abs(rep.min_eigenvalue + n_max), 1e-10))
        checks.append(_le(f"ghost phase n_max={n_max}", abs(rep.ghost_phase - np.exp(1j * rep.tau)), 1e-10))
    return checks


def dephasing_suite(seed=0, n_sets=5):
    rng = np.random.default_rng(seed)
    checks = []
    worst = 0.0
    for _ in range(n_sets):
        A, g, W, T = rng.uniform(0.1, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.0, 4.0), rng.uniform(0.05, 5.0)
        cov = lambda t: A * np.exp(-g * abs(t)) * np.cos(W * t)
        ref = dp.d_quadrature_2d(cov, T)
        worst = max(worst, abs(dp.d_broadened(A, W, g, T) - ref) / abs(ref))
    checks.append(_le("broadened closed form vs 2-D quadrature", worst, 1e-8))
    T = 0.01
    checks.append(_le("short-time expansion", abs(dp.d_broadened(1, 2, 1, T) - dp.short_time_expansion(1, 2, 1, T)), 1e-10))
    T = 1e4
    slope = dp.d_broadened(1, 2, 1, T) / T
    checks.append(_le("long-time slope", abs(slope / dp.long_time_slope(1, 2, 1) - 1), 1e-4))
    Ts = np.linspace(0, 10, 101)
    checks.append(_le("gamma=0 reduces to exact", np.max(np.abs(dp.d_broadened(1.0, 2.0, 0.0, Ts) - dp.d_exact(1.0, 1.0, Ts))), 1e-10))
    return checks


def random_generator(rng, d=2, n_sites=3, gamma=None):
    """Random secular generator on a ``d``-level system with a Gaussian kernel."""
    p = GtdParams.natural(gamma_width=gamma if gamma is not None else rng.uniform(0.2, 3.0), g_int=rng.uniform(0.2, 2.0))
    X = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    H = X + X.conj().T
    terms = []
    omegas = rng.uniform(-4, 4, 2)
    for s in range(n_sites):
        site = (rng.uniform(-1, 1),)
        for w in omegas:
            M = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            terms.append(dy.JumpTerm(M, float(w), site))
    kernel = dy.SpatialKernel.gaussian(rng.uniform(0.2, 2.0))
    return dy.lindblad_generator(terms, kernel, p, hamiltonian=H)


def cp_suite(seed=0, n_maps=10):
    rng = np.random.default_rng(seed)
    worst = np.inf
    trace_err = 0.0
    for _ in range(n_maps):
        gen = random_generator(rng, d=int(rng.integers(2, 4)))
        ch = dy.choi_of(gen, rng.uniform(0, 3))
        worst = min(worst, dy.cp_check(ch)[1])
        trace_err = max(trace_err, ch.trace_preservation_error())
    checks = [
        Check("Choi minimum eigenvalue", worst, -1e-10, bool(worst >= -1e-10), "residual >= tolerance"),
        _le("trace preservation", trace_err, 1e-10),
    ]
    sz = np.diag([1.0, -1.0]).astype(complex)
    neg = dy.gkls_generator([sz], -np.eye(1), check_psd=False)
    lam = dy.cp_check(dy.choi_of(neg, 1.0))[1]
    checks.append(Check("sign-flipped dissipator is not CP", lam, -1e-3, bool(lam < -1e-3), "residual < tolerance"))
    return checks


SUITES = {
    "wick": wick_suite,
    "hasvac": hasvac_suite,
    "bateman": bateman_suite,
    "dephasing": dephasing_suite,
    "cp": cp_suite,
}


def run_suite(name: str, seed: int = 0) -> dict[str, list[Check]]:
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {name!r}")
    return {n: SUITES[n](seed=seed) for n in names}
