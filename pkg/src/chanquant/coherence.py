"""Squared l1-coherence of qubit states and the five-operator incoherent family.

A general qubit incoherent operation has at most five Kraus operators

    K1 = [[0, b1], [a1, 0]]    K2 = [[a2, 0], [0, b2]]
    K3 = [[a3, b3], [0, 0]]    K4 = [[0, 0], [a4, b4]]    K5 = [[a5, 0], [0, 0]]

with real ``a``, complex ``b``, ``sum a_i^2 = sum |b_i|^2 = 1`` and
``a3 b3 + a4 b4 = 0``. Only K1 and K2 carry coherence through.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstraintViolation, DegenerateDenominator
from .numerics import bloch_to_density, density_to_bloch, rng_from

CONSTRAINT_TOL = 1e-8
OUTCOME_CUTOFF = 1e-14
DENOM_CUTOFF = 1e-14


@dataclass(frozen=True)
class IncoherentBasis:
    """Orthonormal qubit basis {|n+>, |n->} labelled by Bloch angles."""

    alpha: float
    beta: float

    @classmethod
    def from_vector(cls, n) -> "IncoherentBasis":
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n)
        alpha = float(np.arccos(np.clip(n[2], -1.0, 1.0)))
        beta = float(np.arctan2(n[1], n[0]) % (2 * np.pi))
        return cls(alpha, beta)

    @property
    def n_hat(self) -> np.ndarray:
        a, b = self.alpha, self.beta
        return np.array([np.sin(a) * np.cos(b), np.sin(a) * np.sin(b), np.cos(a)])

    @property
    def kets(self) -> tuple[np.ndarray, np.ndarray]:
        c, s = np.cos(self.alpha / 2), np.sin(self.alpha / 2)
        phase = np.exp(1j * self.beta)
        plus = np.array([c, phase * s])
        minus = np.array([s / phase, -c])
        return plus, minus


COMPUTATIONAL = IncoherentBasis(0.0, 0.0)


def c_l1_sq(r, basis: IncoherentBasis = COMPUTATIONAL) -> float:
    """Squared l1-coherence ``|r x n|^2`` of the state with Bloch vector ``r``."""
    return float(np.sum(np.cross(np.asarray(r, dtype=float), basis.n_hat) ** 2))


def c_l1_sq_density(rho, basis: IncoherentBasis = COMPUTATIONAL) -> float:
    plus, minus = basis.kets
    return float(4 * abs(minus.conj() @ rho @ plus) ** 2)


def c_l1(r, basis: IncoherentBasis = COMPUTATIONAL) -> float:
    return float(np.sqrt(c_l1_sq(r, basis)))


@dataclass(frozen=True)
class IncoherentOp:
    a: np.ndarray
    b: np.ndarray

    @property
    def kraus(self) -> list[np.ndarray]:
        a, b = self.a, self.b
        return [
            np.array([[0, b[0]], [a[0], 0]], dtype=complex),
            np.array([[a[1], 0], [0, b[1]]], dtype=complex),
            np.array([[a[2], b[2]], [0, 0]], dtype=complex),
            np.array([[0, 0], [a[3], b[3]]], dtype=complex),
            np.array([[a[4], 0], [0, 0]], dtype=complex),
        ]


def build_incoherent_op(a, b) -> IncoherentOp:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=complex)
    if a.shape != (5,) or b.shape != (4,):
        raise ConstraintViolation(f"need a real 5-vector and complex 4-vector, got {a.shape}, {b.shape}")
    if abs(a @ a - 1) > CONSTRAINT_TOL:
        raise ConstraintViolation(f"sum a_i^2 = {a @ a:.12g}, expected 1")
    if abs(np.vdot(b, b).real - 1) > CONSTRAINT_TOL:
        raise ConstraintViolation(f"sum |b_i|^2 = {np.vdot(b, b).real:.12g}, expected 1")
    cross = a[2] * b[2] + a[3] * b[3]
    if abs(cross) > CONSTRAINT_TOL:
        raise ConstraintViolation(f"a3 b3 + a4 b4 = {cross:.3g}, expected 0")
    a.setflags(write=False)
    b.setflags(write=False)
    return IncoherentOp(a, b)


def random_incoherent_op(seed) -> IncoherentOp:
    rng = rng_from(seed)
    a = rng.standard_normal(5)
    a /= np.linalg.norm(a)
    b = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    # (b3, b4) restricted to the null space of a3 b3 + a4 b4 = 0
    null = np.array([a[3], -a[2]])
    if np.linalg.norm(null) > 0:
        b[2:] = b[2] * null / np.linalg.norm(null)
    b /= np.linalg.norm(b)
    return build_incoherent_op(a, b)


@dataclass(frozen=True)
class OutcomeEnsemble:
    probabilities: np.ndarray
    states: np.ndarray  # Bloch vectors, one row per outcome
    labels: tuple[int, ...]

    def mean_coherence_sq(self, basis: IncoherentBasis = COMPUTATIONAL) -> float:
        return float(sum(p * c_l1_sq(r, basis) for p, r in zip(self.probabilities, self.states)))


def apply_incoherent(op: IncoherentOp, r) -> OutcomeEnsemble:
    rho = bloch_to_density(r)
    probs, states, labels = [], [], []
    for n, k in enumerate(op.kraus):
        out = k @ rho @ k.conj().T
        p = float(np.trace(out).real)
        if p < OUTCOME_CUTOFF:
            continue
        probs.append(p)
        states.append(density_to_bloch(out / p))
        labels.append(n + 1)
    return OutcomeEnsemble(np.array(probs), np.array(states).reshape(-1, 3), tuple(labels))


def w_factor(q1: float, q2: float, q1p: float, q2p: float, r3: float, strict: bool = False) -> float:
    """Ratio of post-measurement to initial squared coherence under K1, K2.

    ``q_i = a_i^2`` and ``q_i' = |b_i|^2``. A term whose denominator (twice
    the outcome probability) underflows is an outcome that never occurs and
    contributes 0, unless ``strict`` asks for ``DegenerateDenominator``.
    """
    total = 0.0
    for q, qp in ((q1, q1p), (q2, q2p)):
        den = q * (1 + r3) + qp * (1 - r3)
        if den < DENOM_CUTOFF:
            if strict:
                raise DegenerateDenominator(f"denominator {den:.3g} for q={q}, q'={qp}, r3={r3}")
            continue
        total += 2 * q * qp / den
    return total


def w_factor_grid(q1, q2, q1p, q2p, r3) -> np.ndarray:
    """Vectorized :func:`w_factor`; underflowing terms contribute 0."""
    q1, q2, q1p, q2p, r3 = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (q1, q2, q1p, q2p, r3)))
    total = np.zeros(q1.shape)
    for q, qp in ((q1, q1p), (q2, q2p)):
        den = q * (1 + r3) + qp * (1 - r3)
        ok = den >= DENOM_CUTOFF
        total[ok] += 2 * q[ok] * qp[ok] / den[ok]
    return total
