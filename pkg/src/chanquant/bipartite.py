"""Two-qubit states in Hilbert-Schmidt form and the Choi-state side of the story.

A state is stored as ``(x, y, T)`` with

    rho = (1(x)1 + x.sigma (x) 1 + 1 (x) y.sigma + sum_ij T_ij sigma_i (x) sigma_j) / 4.

A local channel on qubit B maps ``(x, y, T) -> (x, lam y + t, T lam^T + x t^T)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import AffineChannel, partial_transpose_second
from .errors import ValidationError
from .numerics import IDENTITY2, PAULI, herm_eig4, kron, sym_eig3
from .quantumness import quantumness

PSD_TOL = 1e-10
EQUALITY_TOL = 1e-10


@dataclass(frozen=True)
class TwoQubitState:
    x: np.ndarray
    y: np.ndarray
    t_corr: np.ndarray

    def __post_init__(self):
        for name, shape in (("x", (3,)), ("y", (3,)), ("t_corr", (3, 3))):
            a = np.array(getattr(self, name), dtype=float)
            if a.shape != shape:
                raise ValidationError(f"{name} has shape {a.shape}, expected {shape}")
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @classmethod
    def from_density(cls, rho) -> "TwoQubitState":
        rho = np.asarray(rho, dtype=complex)
        x = [np.trace(rho @ kron(s, IDENTITY2)).real for s in PAULI]
        y = [np.trace(rho @ kron(IDENTITY2, s)).real for s in PAULI]
        t = [[np.trace(rho @ kron(si, sj)).real for sj in PAULI] for si in PAULI]
        return cls(np.array(x), np.array(y), np.array(t))

    def density(self) -> np.ndarray:
        rho = kron(IDENTITY2, IDENTITY2).copy()
        for i in range(3):
            rho += self.x[i] * kron(PAULI[i], IDENTITY2)
            rho += self.y[i] * kron(IDENTITY2, PAULI[i])
            for j in range(3):
                rho += self.t_corr[i, j] * kron(PAULI[i], PAULI[j])
        return 0.25 * rho

    def validate(self) -> "TwoQubitState":
        e, _ = herm_eig4(self.density())
        if e[-1] < -PSD_TOL:
            raise ValidationError(f"state has negative eigenvalue {e[-1]:.3g}")
        return self


BELL_STATE = TwoQubitState(np.zeros(3), np.zeros(3), np.diag([1.0, -1.0, 1.0]))
MAXIMALLY_MIXED = TwoQubitState(np.zeros(3), np.zeros(3), np.zeros((3, 3)))


def local_apply_bob(st: TwoQubitState, ch: AffineChannel) -> TwoQubitState:
    return TwoQubitState(
        st.x,
        ch.lam @ st.y + ch.t,
        st.t_corr @ ch.lam.T + np.outer(st.x, ch.t),
    )


def choi_state(ch: AffineChannel) -> TwoQubitState:
    lam_p = np.array(ch.lam)
    lam_p[:, 1] *= -1.0
    return TwoQubitState(np.zeros(3), ch.t, lam_p.T)


@dataclass(frozen=True)
class DiscordReport:
    d_g: float
    n_eigenvalues: np.ndarray
    k_matrix: np.ndarray
    optimal_n: np.ndarray


def geometric_discord_b(st: TwoQubitState) -> DiscordReport:
    """Normalized geometric discord with the measurement on qubit B.

    ``D = (|y|^2 + |T|_F^2 - k_max) / 2`` where ``k_max`` is the top
    eigenvalue of ``K = y y^T + T^T T``; equivalently the sum of the two
    smaller eigenvalues of ``K / 2``.
    """
    k = np.outer(st.y, st.y) + st.t_corr.T @ st.t_corr
    e, v = sym_eig3(k)
    d = 0.5 * (st.y @ st.y + np.sum(st.t_corr ** 2) - e[0])
    return DiscordReport(d_g=float(d), n_eigenvalues=0.5 * e, k_matrix=k, optimal_n=v[:, 0])


def ppt_min_eigenvalue(st: TwoQubitState) -> float:
    return float(np.linalg.eigvalsh(partial_transpose_second(st.density()))[0])


def local_unitary_conjugate(st: TwoQubitState, ra, rb) -> TwoQubitState:
    """State after ``U_A (x) U_B`` given the SO(3) rotations ``ra``, ``rb``."""
    return TwoQubitState(ra @ st.x, rb @ st.y, ra @ st.t_corr @ rb.T)


@dataclass(frozen=True)
class ObservationRecord:
    q: float
    d_g: float
    inequality_holds: bool
    gap: float
    equality_expected: bool
    equality: bool

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def observation_check(ch: AffineChannel) -> ObservationRecord:
    """Compare quantumness with the discord of the Choi state.

    Equality is expected exactly when ``t = 0`` or ``t`` lies in the top
    eigenspace of ``N = (lam lam^T + t t^T)/2``.
    """
    q = quantumness(ch).q
    rep = geometric_discord_b(choi_state(ch))
    t_norm = float(np.linalg.norm(ch.t))
    if t_norm <= EQUALITY_TOL:
        expected = True
    else:
        n = 0.5 * rep.k_matrix
        t_hat = ch.t / t_norm
        expected = bool(np.linalg.norm(n @ t_hat - rep.n_eigenvalues[0] * t_hat) <= 1e-9)
    gap = q - rep.d_g
    return ObservationRecord(
        q=q,
        d_g=rep.d_g,
        inequality_holds=bool(rep.d_g <= q + 1e-10 and q <= 1 + 1e-10),
        gap=float(gap),
        equality_expected=expected,
        equality=bool(abs(gap) < EQUALITY_TOL),
    )
