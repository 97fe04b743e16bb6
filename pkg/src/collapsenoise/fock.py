"""Brute-force Fock-space oracle.

Dense ladder matrices on a tensor product of truncated bosonic modes and
exact two-level fermionic modes.  Fermions get Jordan-Wigner strings over the
fermionic modes that precede them in ``mode_specs`` order; bosonic factors
are left untouched by the strings, so bosons commute with everything else.

Every routine here evaluates operator products literally.  No Wick theorem
is used, which is the point: the analytic correlators elsewhere in the
package are checked against these numbers.

Bosonic cutoffs are maximal occupations: a mode with cutoff ``n_max`` has
dimension ``n_max + 1`` and ``[a, a^dag] = 1`` holds on states with fewer
than ``n_max`` quanta.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from scipy.linalg import expm

from .params import GtdParams, amplitude_AJ, surrogate_kappa_sq

__all__ = [
    "ModeSpec",
    "FockWorkspace",
    "BathState",
    "current_workspace",
    "surrogate_workspace",
    "product_state",
    "build_current_J",
    "correlator_JJ",
    "correlator_surrogate",
    "check_has_vacuum",
    "hasvac_residual_formula",
    "bateman_check",
    "BatemanReport",
]

_F_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
_F_PARITY = np.diag([1.0, -1.0]).astype(complex)


@dataclass(frozen=True)
class ModeSpec:
    kind: str
    cutoff: int = 1
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("boson", "fermion"):
            raise ValueError(f"unknown mode kind {self.kind!r}")
        if self.kind == "fermion" and self.cutoff != 1:
            raise ValueError("fermionic modes have cutoff 1 (two levels)")
        if self.kind == "boson" and self.cutoff < 1:
            raise ValueError("bosonic cutoff must be at least 1")

    @property
    def local_dim(self) -> int:
        return self.cutoff + 1


def _boson_lower(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), k=1).astype(complex)


class FockWorkspace:
    """Tensor-product Fock space with embedded annihilation operators.

    Parameters
    ----------
    mode_specs : sequence of ModeSpec or (kind, cutoff[, label]) tuples
    """

    def __init__(self, mode_specs):
        specs = []
        for s in mode_specs:
            specs.append(s if isinstance(s, ModeSpec) else ModeSpec(*s))
        if not specs:
            raise ValueError("need at least one mode")
        self.mode_specs = tuple(specs)
        self.local_dims = tuple(s.local_dim for s in specs)
        self.dim = int(np.prod(self.local_dims))
        self._lower = tuple(self._embed(i) for i in range(len(specs)))
        for op in self._lower:
            op.setflags(write=False)

    def _embed(self, i: int) -> np.ndarray:
        factors = []
        for j, s in enumerate(self.mode_specs):
            if j == i:
                factors.append(_F_LOWER if s.kind == "fermion" else _boson_lower(s.cutoff))
            elif j < i and s.kind == "fermion" and self.mode_specs[i].kind == "fermion":
                factors.append(_F_PARITY)
            else:
                factors.append(np.eye(s.local_dim, dtype=complex))
        return reduce(np.kron, factors)

    def __len__(self):
        return len(self.mode_specs)

    def index(self, label: str) -> int:
        for i, s in enumerate(self.mode_specs):
            if s.label == label:
                return i
        raise KeyError(label)

    def lower(self, i) -> np.ndarray:
        if isinstance(i, str):
            i = self.index(i)
        return self._lower[i]

    def raise_(self, i) -> np.ndarray:
        return self.lower(i).conj().T

    def number(self, i) -> np.ndarray:
        a = self.lower(i)
        return a.conj().T @ a

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def basis_index(self, occupations) -> int:
        """Flat index of the number state with the given occupations."""
        if len(occupations) != len(self):
            raise ValueError("one occupation per mode required")
        return int(np.ravel_multi_index(tuple(occupations), self.local_dims))

    def number_state(self, occupations) -> "BathState":
        v = np.zeros(self.dim, dtype=complex)
        v[self.basis_index(occupations)] = 1.0
        return BathState(v)

    def vacuum(self) -> "BathState":
        return self.number_state([0] * len(self))

    def occupations(self) -> np.ndarray:
        """Occupation tuple for every basis index, shape ``(dim, n_modes)``."""
        return np.array(np.unravel_index(np.arange(self.dim), self.local_dims)).T


@dataclass(frozen=True)
class BathState:
    """Pure vector or density matrix on a workspace."""

    data: np.ndarray
    atol: float = field(default=1e-10, repr=False)

    def __post_init__(self):
        d = np.asarray(self.data, dtype=complex)
        object.__setattr__(self, "data", d)
        if d.ndim == 1:
            if abs(np.vdot(d, d).real - 1.0) > self.atol:
                raise ValueError("pure state is not normalized")
        elif d.ndim == 2 and d.shape[0] == d.shape[1]:
            if np.max(np.abs(d - d.conj().T)) > self.atol:
                raise ValueError("density matrix is not Hermitian")
            if abs(np.trace(d).real - 1.0) > self.atol:
                raise ValueError("density matrix does not have unit trace")
            if np.linalg.eigvalsh(0.5 * (d + d.conj().T)).min() < -self.atol:
                raise ValueError("density matrix is not positive semidefinite")
        else:
            raise ValueError("state must be a vector or a square matrix")

    @property
    def is_pure(self) -> bool:
        return self.data.ndim == 1

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def expect(self, op: np.ndarray) -> complex:
        if op.shape != (self.dim, self.dim):
            raise ValueError(f"operator shape {op.shape} does not match state dimension {self.dim}")
        if self.is_pure:
            return complex(np.vdot(self.data, op @ self.data))
        return complex(np.trace(self.data @ op))


def product_state(ws: FockWorkspace, mean_occupations) -> BathState:
    """Diagonal Gaussian (thermal-like) product state.

    Fermionic modes get ``diag(1-n, n)``.  Bosonic modes get a geometric
    distribution with mean ``n`` truncated at the cutoff and renormalized, so
    the bosonic mean is exact only up to the tail beyond the cutoff.
    """
    if len(mean_occupations) != len(ws):
        raise ValueError("one occupation per mode required")
    blocks = []
    for s, n in zip(ws.mode_specs, mean_occupations):
        if s.kind == "fermion":
            if not 0.0 <= n <= 1.0:
                raise ValueError(f"fermionic occupation {n} outside [0, 1]")
            blocks.append(np.array([1.0 - n, n]))
        else:
            if n < 0:
                raise ValueError(f"bosonic occupation {n} is negative")
            r = n / (n + 1.0)
            w = r ** np.arange(s.local_dim)
            blocks.append(w / w.sum())
    diag = reduce(np.kron, blocks)
    return BathState(np.diag(diag).astype(complex))


def current_workspace(n_matrix: int = 1) -> FockWorkspace:
    """Workspace with one (b, d) fermion pair per gl(n) basis element."""
    if n_matrix < 1 or n_matrix > 2:
        raise ValueError("the dense oracle supports n_matrix 1 or 2")
    n_gen = n_matrix**2
    specs = [ModeSpec("fermion", 1, f"b{a}") for a in range(n_gen)]
    specs += [ModeSpec("fermion", 1, f"d{a}") for a in range(n_gen)]
    return FockWorkspace(specs)


def _current_pairs(ws: FockWorkspace, p: GtdParams):
    n_gen = p.n_matrix**2
    try:
        pairs = [(ws.index(f"b{a}"), ws.index(f"d{a}")) for a in range(n_gen)]
    except KeyError as exc:
        raise ValueError(f"workspace lacks the {n_gen} (b, d) pairs needed for n_matrix={p.n_matrix}") from exc
    n_ferm = sum(s.kind == "fermion" for s in ws.mode_specs)
    if n_ferm != 2 * n_gen:
        raise ValueError(f"expected {2 * n_gen} fermionic modes, found {n_ferm}")
    return pairs


def _current_normalization(p: GtdParams) -> float:
    if p.dirac_factor_D != 1.0 or p.trace_factor_N != p.n_matrix**2:
        raise ValueError("the Fock current realizes D = 1 and N = n_matrix**2 only")
    return p.hbar / (2.0 * p.m_R * p.omega0 * p.L_aik**2)


def build_current_J(ws: FockWorkspace, p: GtdParams, tau: float) -> np.ndarray:
    """Matrix of the bath current at time ``tau``.

    The fermionic coordinate is expanded over elementary matrices ``E_ij``,
    which are orthonormal under ``Tr(A^dag B)``, so the trace collapses to a
    sum over generators::

        J = s * sum_a (b_a^dag e^{+i sigma w tau} + d_a e^{-i sigma w tau})
                      (b_a e^{-i sigma w tau} + d_a^dag e^{+i sigma w tau})

    with ``s = hbar / (2 m_R omega0 L_aik**2)``.  Products are taken
    literally, so the constant from ``d d^dag`` stays in.
    """
    pairs = _current_pairs(ws, p)
    s = _current_normalization(p)
    ph = np.exp(-1j * p.sigma_branch * p.omega0 * tau)
    J = np.zeros((ws.dim, ws.dim), dtype=complex)
    for ib, id_ in pairs:
        b, d = ws.lower(ib), ws.lower(id_)
        q = b * ph + d.conj().T * np.conj(ph)
        J += q.conj().T @ q
    return s * J


def _as_state(ws: FockWorkspace, state) -> BathState:
    if state is None:
        return ws.vacuum()
    if not isinstance(state, BathState):
        state = BathState(state)
    if state.dim != ws.dim:
        raise ValueError(f"state dimension {state.dim} does not match workspace dimension {ws.dim}")
    return state


def _connected(state: BathState, A: np.ndarray, B: np.ndarray) -> complex:
    return state.expect(A @ B) - state.expect(A) * state.expect(B)


def correlator_JJ(ws: FockWorkspace, p: GtdParams, tau: float, state: BathState | None = None) -> complex:
    """Connected Wightman function ``<J(tau) J(0)> - <J(tau)><J(0)>``.

    The disconnected piece is nonzero because ``d d^dag`` leaves a constant
    on the vacuum; removing it is what isolates the line at ``2 omega0``.
    """
    state = _as_state(ws, state)
    return _connected(state, build_current_J(ws, p, tau), build_current_J(ws, p, 0.0))


def surrogate_workspace(n_max: int = 6) -> FockWorkspace:
    return FockWorkspace([ModeSpec("boson", n_max, "minus")])


def surrogate_current(ws: FockWorkspace, p: GtdParams, tau: float, kappa: float | None = None) -> np.ndarray:
    """``kappa :X(tau)^2:`` with ``X = -sqrt(hbar/(m_R w)) (a e^{+i w tau} + a^dag e^{-i w tau})``."""
    if len(ws) != 1 or ws.mode_specs[0].kind != "boson":
        raise ValueError("surrogate needs exactly one bosonic mode")
    if ws.mode_specs[0].cutoff < 3:
        raise ValueError("surrogate correlator needs n_max >= 3")
    if kappa is None:
        kappa = np.sqrt(surrogate_kappa_sq(p))
    a = ws.lower(0)
    ad = a.conj().T
    ph = np.exp(1j * p.omega0 * tau)
    scale = p.hbar / (p.m_R * p.omega0)
    normal_ordered = a @ a * ph**2 + ad @ ad * np.conj(ph) ** 2 + 2.0 * ad @ a
    return kappa * scale * normal_ordered


def correlator_surrogate(
    ws: FockWorkspace,
    p: GtdParams,
    tau: float,
    state: BathState | None = None,
    kappa: float | None = None,
) -> complex:
    """Connected correlator of the normal-ordered surrogate current.

    On the vacuum this is ``2 kappa**2 (hbar/(m_R omega0))**2 e^{+2 i omega0 tau}``.
    The vacuum result is truncation-exact for ``n_max >= 3``; thermal states
    carry the truncation error of :func:`product_state`.
    """
    state = _as_state(ws, state)
    return _connected(state, surrogate_current(ws, p, tau, kappa), surrogate_current(ws, p, 0.0, kappa))


def check_has_vacuum(m_F: float, m_R: float, omega0: float = 1.0, truncation: int = 2, hbar: float = 1.0) -> float:
    """Norm of the cross-bilinear Hamiltonian acting on the Fock vacuum, in units of ``hbar*omega0``.

    The operator is ``(p_B p_F + p_F p_B)/m_R + m_R omega0**2 (q_B q_F + q_F q_B)``
    on one bosonic mode and one fermionic mode, with the Grassmann prefactor
    dropped.
    """
    if not (m_F > 0 and m_R > 0):
        raise ValueError("masses must be positive")
    if not omega0 > 0:
        raise ValueError("omega0 must be positive")
    if truncation < 2:
        raise ValueError("truncation must be at least 2")
    ws = FockWorkspace([ModeSpec("boson", truncation, "plus"), ModeSpec("fermion", 1, "b")])
    a, b = ws.lower(0), ws.lower(1)
    ad, bd = a.conj().T, b.conj().T
    qB = np.sqrt(hbar / (4.0 * m_R * omega0)) * (a + ad)
    pB = -1j * np.sqrt(hbar * m_R * omega0 / 4.0) * (a - ad)
    qF = np.sqrt(hbar / (2.0 * m_F * omega0)) * (b + bd)
    pF = -1j * np.sqrt(hbar * m_F * omega0 / 2.0) * (b - bd)
    H = (pB @ pF + pF @ pB) / m_R + m_R * omega0**2 * (qB @ qF + qF @ qB)
    v = H @ ws.vacuum().data
    return float(np.linalg.norm(v) / (hbar * omega0))


def hasvac_residual_formula(m_F: float, m_R: float) -> float:
    """Closed form ``|sqrt(m_R/m_F) - sqrt(m_F/m_R)| / sqrt(2)`` in units of ``hbar*omega0``."""
    return abs(np.sqrt(m_R / m_F) - np.sqrt(m_F / m_R)) / np.sqrt(2.0)


@dataclass(frozen=True)
class BatemanReport:
    n_max: int
    eigenvalues: np.ndarray
    expected: np.ndarray
    eigen_residual: float
    phase_residual_plus: float
    phase_residual_minus: float
    ghost_phase: complex
    tau: float
    min_eigenvalue: float

    @property
    def ok(self) -> bool:
        return max(self.eigen_residual, self.phase_residual_plus, self.phase_residual_minus) < 1e-10


def bateman_check(truncation: int = 4, omega0: float = 1.0, m: float = 1.0, hbar: float = 1.0, tau: float = 0.7) -> BatemanReport:
    """Build the opposite-sign oscillator pair from quadratures and check its spectrum.

    ``H = (P+^2 - P-^2)/(2m) + m w^2 (Q+^2 - Q-^2)/2`` is assembled on a space
    padded by one quantum per mode and then compressed to occupations
    ``<= truncation``.  Squares of quadratures only reach one level above the
    kept block, so the compression is exact and its eigenvalues must equal
    ``hbar w (n+ - n-)`` with the zero-point terms cancelling.
    """
    if truncation < 3:
        raise ValueError("truncation must be at least 3")
    n_max = int(truncation)
    big = FockWorkspace([ModeSpec("boson", n_max + 1, "+"), ModeSpec("boson", n_max + 1, "-")])

    def quadratures(a):
        ad = a.conj().T
        Q = np.sqrt(hbar / (2.0 * m * omega0)) * (a + ad)
        P = -1j * np.sqrt(hbar * m * omega0 / 2.0) * (a - ad)
        return Q, P

    Qp, Pp = quadratures(big.lower(0))
    Qm, Pm = quadratures(big.lower(1))
    H_big = (Pp @ Pp - Pm @ Pm) / (2.0 * m) + 0.5 * m * omega0**2 * (Qp @ Qp - Qm @ Qm)

    occ = big.occupations()
    keep = np.flatnonzero((occ[:, 0] <= n_max) & (occ[:, 1] <= n_max))
    H = H_big[np.ix_(keep, keep)]
    a_p = big.lower(0)[np.ix_(keep, keep)]
    a_m = big.lower(1)[np.ix_(keep, keep)]
    kept_occ = occ[keep]

    evals = np.sort(np.linalg.eigvalsh(H))
    expected = np.sort(hbar * omega0 * (kept_occ[:, 0] - kept_occ[:, 1]).astype(float))
    eig_res = float(np.max(np.abs(evals - expected)))

    U = expm(-1j * H * tau / hbar)
    Ud = U.conj().T
    res_p = float(np.max(np.abs(Ud @ a_p @ U - a_p * np.exp(-1j * omega0 * tau))))
    res_m = float(np.max(np.abs(Ud @ a_m @ U - a_m * np.exp(1j * omega0 * tau))))

    vac = np.flatnonzero((kept_occ[:, 0] == 0) & (kept_occ[:, 1] == 0))[0]
    one_m = np.flatnonzero((kept_occ[:, 0] == 0) & (kept_occ[:, 1] == 1))[0]
    ghost = complex((Ud @ a_m @ U)[vac, one_m])

    return BatemanReport(
        n_max=n_max,
        eigenvalues=evals,
        expected=expected,
        eigen_residual=eig_res,
        phase_residual_plus=res_p,
        phase_residual_minus=res_m,
        ghost_phase=ghost,
        tau=tau,
        min_eigenvalue=float(evals[0]),
    )


def heisenberg_current_residual(ws: FockWorkspace, p: GtdParams, tau: float) -> float:
    """Compare the phase-expanded current with conjugation by the free fermion evolution.

    The free Hamiltonian is ``sigma hbar omega0 sum (b^dag b + d^dag d)``.
    """
    pairs = _current_pairs(ws, p)
    H = np.zeros((ws.dim, ws.dim), dtype=complex)
    for ib, id_ in pairs:
        H += ws.number(ib) + ws.number(id_)
    H *= p.sigma_branch * p.hbar * p.omega0
    U = expm(-1j * H * tau / p.hbar)
    evolved = U.conj().T @ build_current_J(ws, p, 0.0) @ U
    return float(np.max(np.abs(evolved - build_current_J(ws, p, tau))))


def analytic_populated_fermion(p: GtdParams, n_b: float, n_d: float, tau: float) -> complex:
    """Closed-form connected Wightman function of a populated fermionic bath."""
    A = amplitude_AJ(p)
    ph = np.exp(-2j * p.sigma_branch * p.omega0 * tau)
    return A * ((1 - n_b) * (1 - n_d) * ph + n_b * n_d / ph + n_b * (1 - n_b) + n_d * (1 - n_d))
