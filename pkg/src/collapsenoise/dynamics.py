"""Small-system GKLS generators with a spatial Kossakowski kernel.

Superoperators act on column-stacked density matrices:
``vec(A rho B) = (B.T kron A) vec(rho)`` with ``vec = rho.reshape(-1, order="F")``.

The principal-value (Lamb shift) correction to the system Hamiltonian is
not included.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm

from .params import GtdParams, amplitude_AJ

__all__ = [
    "vec",
    "unvec",
    "SpatialKernel",
    "JumpTerm",
    "ChannelMap",
    "rate_function",
    "gkls_generator",
    "lindblad_generator",
    "propagate",
    "choi_of",
    "channel_from_superop",
    "cp_check",
    "gaussian_dephasing_channel",
    "decoherence_functional",
    "homogeneous_obstruction_check",
    "single_particle_localization",
]

PSD_TOL = -1e-10


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v: np.ndarray, d: int) -> np.ndarray:
    return np.asarray(v).reshape((d, d), order="F")


def _spre(A):
    return np.kron(np.eye(A.shape[0]), A)


def _spost(B):
    return np.kron(B.T, np.eye(B.shape[0]))


@dataclass(frozen=True)
class SpatialKernel:
    """Symmetric spatial weight ``Theta(x, y)``.

    ``gaussian`` is ``(2 pi r_C**2)**(-dim/2) exp(-|x-y|**2 / (2 r_C**2))``,
    ``constant`` is ``value`` everywhere and ``user_table`` wraps any
    symmetric callable.
    """

    kind: str
    r_C: float | None = None
    value: float = 1.0
    func: Callable | None = None

    def __post_init__(self):
        if self.kind not in ("gaussian", "constant", "user_table"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "gaussian" and not (self.r_C and self.r_C > 0):
            raise ValueError("gaussian kernel needs r_C > 0")
        if self.kind == "user_table" and self.func is None:
            raise ValueError("user_table kernel needs a callable")

    @classmethod
    def gaussian(cls, r_C: float) -> "SpatialKernel":
        return cls("gaussian", r_C=r_C)

    @classmethod
    def constant(cls, value: float = 1.0) -> "SpatialKernel":
        return cls("constant", value=value)

    @classmethod
    def user_table(cls, func: Callable) -> "SpatialKernel":
        return cls("user_table", func=func)

    def sample(self, x, y) -> float:
        x, y = np.atleast_1d(np.asarray(x, float)), np.atleast_1d(np.asarray(y, float))
        return float(self.gram(x[None, :], y[None, :])[0, 0])

    def gram(self, X, Y=None) -> np.ndarray:
        """Kernel matrix between point sets of shape ``(n, dim)``."""
        X = _points(X)
        Y = X if Y is None else _points(Y)
        if self.kind == "constant":
            return np.full((len(X), len(Y)), float(self.value))
        if self.kind == "gaussian":
            dim = X.shape[1]
            r2 = np.sum((X[:, None, :] - Y[None, :, :]) ** 2, axis=-1)
            return (2 * np.pi * self.r_C**2) ** (-dim / 2) * np.exp(-r2 / (2 * self.r_C**2))
        return np.array([[float(self.func(x, y)) for y in Y] for x in X])


def _points(X):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    return X


def single_particle_localization(delta_x, r_C):
    """CSL single-particle factor ``1 - exp(-delta_x**2 / (4 r_C**2))``.

    This is what a point particle sees through a Gaussian kernel of width
    ``sqrt(2) r_C``, i.e. a mass density smeared at ``r_C`` on both sides of
    the quadratic form.
    """
    return 1.0 - np.exp(-np.asarray(delta_x, float) ** 2 / (4.0 * r_C**2))


@dataclass(frozen=True)
class JumpTerm:
    """Component ``M(omega_S)`` of the coupling located at ``site``."""

    operator: np.ndarray
    omega_S: float
    site: tuple


def rate_function(omega_S, p: GtdParams):
    """``g**2/hbar**2 * 2 A_J gamma / ((omega_S + 2 sigma omega0)**2 + gamma**2)``."""
    g = p.gamma_width
    det = np.asarray(omega_S, float) + 2.0 * p.sigma_branch * p.omega0
    out = p.g_int**2 / p.hbar**2 * 2.0 * amplitude_AJ(p) * g / (det**2 + g**2)
    return out if np.ndim(out) else float(out)


def gkls_generator(
    jump_ops: Sequence[np.ndarray],
    kossakowski: np.ndarray,
    hamiltonian: np.ndarray | None = None,
    hbar: float = 1.0,
    check_psd: bool = True,
) -> np.ndarray:
    """``L rho = -i/hbar [H, rho] + sum_jk K_jk (M_j rho M_k^dag - {M_k^dag M_j, rho}/2)``."""
    K = np.asarray(kossakowski, dtype=complex)
    n = len(jump_ops)
    if K.shape != (n, n):
        raise ValueError("Kossakowski matrix must be square with one row per jump operator")
    if check_psd:
        Kh = 0.5 * (K + K.conj().T)
        lam = np.linalg.eigvalsh(Kh).min() if n else 0.0
        if lam < PSD_TOL * max(1.0, np.abs(K).max()):
            raise ValueError(f"Kossakowski matrix is not positive semidefinite (min eigenvalue {lam:.3e})")
    d = jump_ops[0].shape[0] if n else hamiltonian.shape[0]
    L = np.zeros((d * d, d * d), dtype=complex)
    if hamiltonian is not None:
        H = np.asarray(hamiltonian, dtype=complex)
        L += -1j / hbar * (_spre(H) - _spost(H))
    for j in range(n):
        Mj = np.asarray(jump_ops[j], dtype=complex)
        for k in range(n):
            if K[j, k] == 0:
                continue
            Mk = np.asarray(jump_ops[k], dtype=complex)
            MkMj = Mk.conj().T @ Mj
            L += K[j, k] * (np.kron(Mk.conj(), Mj) - 0.5 * (_spre(MkMj) + _spost(MkMj)))
    return L


def lindblad_generator(
    system_ops: Sequence[JumpTerm],
    kernel: SpatialKernel,
    p: GtdParams,
    hamiltonian: np.ndarray | None = None,
    group_tol: float = 1e-9,
) -> np.ndarray:
    """Secular generator with rates ``Gamma(omega_S) Theta(x, y)``.

    Jump components whose Bohr frequencies agree within ``group_tol * omega0``
    share a Kossakowski block.  Each block's kernel Gram matrix must be PSD.
    """
    terms = list(system_ops)
    if not terms:
        raise ValueError("need at least one jump term")
    groups: list[list[int]] = []
    for i, t in enumerate(terms):
        for g in groups:
            if abs(terms[g[0]].omega_S - t.omega_S) <= group_tol * p.omega0:
                g.append(i)
                break
        else:
            groups.append([i])
    n = len(terms)
    K = np.zeros((n, n))
    for g in groups:
        sites = np.array([np.atleast_1d(terms[i].site) for i in g], dtype=float)
        G = kernel.gram(sites)
        lam = np.linalg.eigvalsh(0.5 * (G + G.T)).min()
        if lam < PSD_TOL * max(1.0, np.abs(G).max()):
            raise ValueError(f"kernel Gram matrix is not positive semidefinite (min eigenvalue {lam:.3e})")
        omega = np.mean([terms[i].omega_S for i in g])
        K[np.ix_(g, g)] = rate_function(omega, p) * G
    return gkls_generator([t.operator for t in terms], K, hamiltonian, p.hbar, check_psd=False)


def propagate(gen: np.ndarray, rho0: np.ndarray, t: float) -> np.ndarray:
    """``exp(gen t)`` applied to ``rho0``; Hermitized, never renormalized."""
    rho0 = np.asarray(rho0, dtype=complex)
    d = rho0.shape[0]
    if gen.shape != (d * d, d * d):
        raise ValueError(f"generator shape {gen.shape} does not match a {d}x{d} state")
    rho = unvec(expm(gen * t) @ vec(rho0), d)
    return 0.5 * (rho + rho.conj().T)


@dataclass(frozen=True)
class ChannelMap:
    dim: int
    superop: np.ndarray
    choi: np.ndarray

    def apply(self, rho):
        return unvec(self.superop @ vec(rho), self.dim)

    def trace_preservation_error(self) -> float:
        d = self.dim
        ptr = np.einsum("iaja->ij", self.choi.reshape(d, d, d, d))
        return float(np.max(np.abs(ptr - np.eye(d))))

    def to_dict(self) -> dict:
        def pairs(M):
            return [[[float(z.real), float(z.imag)] for z in row] for row in M]

        return {"dim": self.dim, "superoperator": pairs(self.superop), "choi": pairs(self.choi)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def channel_from_superop(S: np.ndarray) -> ChannelMap:
    """Choi matrix ``sum_ij |i><j| kron E(|i><j|)`` of a column-stacked superoperator."""
    S = np.asarray(S, dtype=complex)
    d = int(round(np.sqrt(S.shape[0])))
    if S.shape != (d * d, d * d):
        raise ValueError("superoperator must be d^2 x d^2")
    choi = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            Eij = np.zeros((d, d), dtype=complex)
            Eij[i, j] = 1.0
            choi += np.kron(Eij, unvec(S @ vec(Eij), d))
    return ChannelMap(d, S, choi)


def choi_of(gen: np.ndarray, t: float) -> ChannelMap:
    d = int(round(np.sqrt(gen.shape[0])))
    if d > 8:
        raise ValueError("Choi construction limited to d <= 8")
    return channel_from_superop(expm(gen * t))


def cp_check(ch: ChannelMap, tol: float = PSD_TOL) -> tuple[bool, float]:
    """Return ``(is_cp, min_eigenvalue)`` of the Hermitian part of the Choi matrix."""
    C = 0.5 * (ch.choi + ch.choi.conj().T)
    lam = float(np.linalg.eigvalsh(C).min())
    return lam >= tol, lam


def gaussian_dephasing_channel(a: float, b: float, D_T: float, hbar: float = 1.0) -> ChannelMap:
    """Qubit map keeping populations and scaling coherences by ``exp(-(a-b)**2 D_T/(2 hbar**2))``."""
    if D_T < 0:
        raise ValueError("D_T must be nonnegative")
    f = np.exp(-((a - b) ** 2) * D_T / (2.0 * hbar**2))
    return channel_from_superop(np.diag([1.0, f, f, 1.0]).astype(complex))


def decoherence_functional(mu_a, mu_b, points, kernel: SpatialKernel, cell_volume: float = 1.0) -> float:
    """Discretized ``sum_xy (mu_a - mu_b)(x) Theta(x, y) (mu_a - mu_b)(y) dV**2``."""
    mu_a = np.asarray(mu_a, dtype=float)
    mu_b = np.asarray(mu_b, dtype=float)
    X = _points(points)
    if mu_a.shape != mu_b.shape or mu_a.shape[0] != len(X):
        raise ValueError("mass densities and grid points do not match")
    dmu = (mu_a - mu_b) * cell_volume
    return float(dmu @ kernel.gram(X) @ dmu)


def homogeneous_obstruction_check(mu_a, mu_b, points, kernel: SpatialKernel, cell_volume: float = 1.0, mass_rtol: float = 1e-12) -> float:
    """Decoherence functional for two branches that carry the same total mass."""
    ma, mb = np.sum(mu_a), np.sum(mu_b)
    if abs(ma - mb) > mass_rtol * max(abs(ma), abs(mb), 1e-300):
        raise ValueError(f"branches carry different total mass ({ma!r} vs {mb!r})")
    return decoherence_functional(mu_a, mu_b, points, kernel, cell_volume)
