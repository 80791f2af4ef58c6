"""Standard teleportation viewed as a generalized depolarizing channel."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bipartite import TwoQubitState
from .channels import BELL_PROJECTOR, AffineChannel, generalized_depolarizing
from .errors import InvalidParameter
from .numerics import IDENTITY2, PAULI4, kron, sample_sphere
from .quantumness import quantumness

CLASSICAL_FIDELITY = 2.0 / 3.0

# E_i = (sigma_i (x) 1) E_0 (sigma_i (x) 1)
BELL_PROJECTORS = tuple(kron(s, IDENTITY2) @ BELL_PROJECTOR @ kron(s, IDENTITY2) for s in PAULI4)


# p_i = (1 + sum_j BELL_SIGNS[i, j] * T_jj) / 4, read off from the Hilbert-Schmidt
# form of E_i (x = y = 0, correlations diag(1, -1, 1) with rows j != i flipped)
BELL_SIGNS = np.array(
    [
        [1.0, -1.0, 1.0],
        [1.0, 1.0, -1.0],
        [-1.0, -1.0, -1.0],
        [-1.0, 1.0, 1.0],
    ]
)


def bell_probabilities(rho_ab: TwoQubitState) -> np.ndarray:
    """Overlaps ``Tr(E_i rho)`` with the four Bell projectors."""
    return 0.25 * (1.0 + BELL_SIGNS @ np.diag(rho_ab.t_corr))


def bell_probabilities_dense(rho_ab: TwoQubitState) -> np.ndarray:
    rho = rho_ab.density()
    return np.array([np.trace(e @ rho).real for e in BELL_PROJECTORS])


def relabel(p) -> tuple[np.ndarray, tuple[int, ...]]:
    """Swap the largest probability into slot 0 (ties go to the lowest index).

    Returns the relabeled vector and the permutation ``perm`` with
    ``new[i] = p[perm[i]]``.
    """
    p = np.asarray(p, dtype=float)
    k = int(np.argmax(p))
    perm = list(range(4))
    perm[0], perm[k] = perm[k], perm[0]
    return p[perm], tuple(perm)


def gd_channel(p, relabel_max: bool = True) -> AffineChannel:
    if relabel_max:
        p, _ = relabel(p)
    return generalized_depolarizing(p)


def fidelity(ch: AffineChannel, r_hat) -> float:
    """Input/output fidelity for a pure input with Bloch vector ``r_hat`` (unital channels)."""
    r_hat = np.asarray(r_hat, dtype=float)
    return float(0.5 * (1.0 + r_hat @ ch.lam @ r_hat))


def average_fidelity(p) -> float:
    return float((1.0 + 2.0 * np.asarray(p, dtype=float)[0]) / 3.0)


def mc_average_fidelity(ch: AffineChannel, samples: int, seed: int) -> tuple[float, float]:
    r = sample_sphere(np.random.default_rng(seed), samples)
    f = 0.5 * (1.0 + np.einsum("ki,ij,kj->k", r, ch.lam, r))
    return float(f.mean()), float(f.std(ddof=1) / np.sqrt(samples))


def werner_state(w: float) -> TwoQubitState:
    """``w |beta><beta| + (1-w)/4 * 1``."""
    if not 0.0 <= w <= 1.0:
        raise InvalidParameter(f"Werner parameter must lie in [0, 1], got {w}")
    return TwoQubitState(np.zeros(3), np.zeros(3), w * np.diag([1.0, -1.0, 1.0]))


@dataclass(frozen=True)
class TeleportReport:
    p: np.ndarray
    channel: AffineChannel
    avg_fidelity: float
    q: float
    beats_classical: bool
    relabeling: tuple[int, ...]


def teleport_report(rho_ab: TwoQubitState) -> TeleportReport:
    p, perm = relabel(bell_probabilities(rho_ab))
    ch = generalized_depolarizing(p)
    f = average_fidelity(p)
    return TeleportReport(
        p=p,
        channel=ch,
        avg_fidelity=f,
        q=quantumness(ch).q,
        beats_classical=f > CLASSICAL_FIDELITY,
        relabeling=perm,
    )


def random_resource_state(rng: np.random.Generator, rank: int | None = None) -> TwoQubitState:
    """Random two-qubit density matrix from a 4 x rank Ginibre matrix.

    Rank 1 gives Haar-random pure states, rank 4 the Hilbert-Schmidt measure.
    A random rank is drawn when none is given.
    """
    if rank is None:
        rank = int(rng.integers(1, 5))
    g = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    rho = g @ g.conj().T
    return TwoQubitState.from_density(rho / np.trace(rho).real)
