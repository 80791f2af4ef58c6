"""Qubit channel representations and conversions.

Conventions
-----------
* Pauli matrices are the standard ones with ``sigma_z |0> = |0>``.
* A channel acts on Bloch vectors as ``r -> lam @ r + t``.
* The Choi matrix is the trace-one state ``(I (x) E)|beta><beta|`` with
  ``|beta> = (|00> + |11>)/sqrt(2)``; the channel acts on the *second* qubit.
* Kraus extraction reshapes a Choi eigenvector ``v`` into ``V[i, j] = v[2*i + j]``
  (row = input index, column = output index) and returns ``K = sqrt(2 mu) V.T``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    CompletenessViolation,
    InvalidParameter,
    NotCompletelyPositive,
    ValidationError,
)
from .numerics import (
    IDENTITY2,
    PAULI,
    bloch_to_density,
    density_to_bloch,
    herm_eig4,
    kron,
    rng_from,
)

KRAUS_TOL = 1e-8
CP_TOL = 1e-8
CONTRACTION_TOL = 1e-10
UNITAL_TOL = 1e-10
PPT_TOL = 1e-10
KRAUS_DROP = 1e-12

BELL = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
BELL_PROJECTOR = np.outer(BELL, BELL.conj())


def _frozen(a, dtype) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class KrausChannel:
    ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(_frozen(k, complex) for k in self.ops))

    def apply_density(self, rho) -> np.ndarray:
        return sum(k @ rho @ k.conj().T for k in self.ops)

    def apply(self, r) -> np.ndarray:
        return density_to_bloch(self.apply_density(bloch_to_density(r)))


@dataclass(frozen=True)
class AffineChannel:
    """Bloch-ball action ``r -> lam @ r + t``.

    Construction only checks shapes; use :func:`validate_affine` for complete
    positivity and contraction.
    """

    lam: np.ndarray
    t: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        lam = _frozen(self.lam, float)
        t = _frozen(self.t, float)
        if lam.shape != (3, 3) or t.shape != (3,):
            raise ValidationError(f"bad affine shapes lam={lam.shape} t={t.shape}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "t", t)

    def to_json(self) -> dict:
        return {"kind": "affine", "lambda": self.lam.tolist(), "t": self.t.tolist()}


def identity_channel() -> AffineChannel:
    return AffineChannel(np.eye(3), np.zeros(3))


def kraus_validate(ops: Sequence) -> KrausChannel:
    ops = [np.asarray(k, dtype=complex) for k in ops]
    if not 1 <= len(ops) <= 8:
        raise InvalidParameter(f"expected 1-8 Kraus operators, got {len(ops)}")
    for k in ops:
        if k.shape != (2, 2):
            raise ValidationError(f"Kraus operator has shape {k.shape}, expected (2, 2)")
    s = sum(k.conj().T @ k for k in ops)
    dev = np.abs(s - IDENTITY2).max()
    if dev > KRAUS_TOL:
        raise CompletenessViolation(f"sum K^dag K deviates from identity by {dev:.3g}")
    return KrausChannel(tuple(ops))


def kraus_to_affine(ch: KrausChannel) -> AffineChannel:
    def act(x):
        return ch.apply_density(x)

    t = 0.5 * np.real([np.trace(s @ act(IDENTITY2)) for s in PAULI])
    lam = np.empty((3, 3))
    for j, sj in enumerate(PAULI):
        out = act(sj)
        for i, si in enumerate(PAULI):
            lam[i, j] = 0.5 * np.real(np.trace(si @ out))
    return AffineChannel(lam, t)


def _choi_from_affine(lam, t) -> np.ndarray:
    lam_p = np.array(lam, dtype=float)
    lam_p[:, 1] *= -1.0
    corr = lam_p.T
    rho = kron(IDENTITY2, IDENTITY2) + kron(IDENTITY2, np.einsum("i,ijk->jk", t, PAULI))
    for i in range(3):
        for j in range(3):
            if corr[i, j] != 0.0:
                rho = rho + corr[i, j] * kron(PAULI[i], PAULI[j])
    return 0.25 * rho


def affine_to_choi(ch: AffineChannel) -> np.ndarray:
    """Choi state ``(I (x) E)|beta><beta|`` built from the affine parameters."""
    rho = _choi_from_affine(ch.lam, ch.t)
    e, _ = herm_eig4(rho)
    if e[-1] < -CP_TOL:
        raise NotCompletelyPositive(f"Choi matrix has eigenvalue {e[-1]:.3g}")
    return rho


def kraus_to_choi(ch: KrausChannel) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    for k in ch.ops:
        v = kron(IDENTITY2, k) @ BELL
        rho += np.outer(v, v.conj())
    return rho


def choi_to_kraus(choi) -> KrausChannel:
    choi = np.asarray(choi, dtype=complex)
    e, v = herm_eig4(choi)
    if e[-1] < -CP_TOL:
        raise NotCompletelyPositive(f"Choi matrix has eigenvalue {e[-1]:.3g}")
    ops = []
    for mu, vec in zip(e, v.T):
        if mu <= KRAUS_DROP:
            continue
        ops.append(np.sqrt(2.0 * mu) * vec.reshape(2, 2).T)
    return kraus_validate(ops)


def partial_trace_second(rho) -> np.ndarray:
    return np.einsum("ijkj->ik", np.asarray(rho).reshape(2, 2, 2, 2))


def partial_transpose_second(rho) -> np.ndarray:
    return np.asarray(rho).reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def validate_choi(choi) -> np.ndarray:
    choi = np.asarray(choi, dtype=complex)
    e, _ = herm_eig4(choi)
    if e[-1] < -CP_TOL:
        raise NotCompletelyPositive(f"Choi matrix has eigenvalue {e[-1]:.3g}")
    if abs(np.trace(choi) - 1) > 1e-10:
        raise ValidationError("Choi matrix does not have unit trace")
    if np.abs(partial_trace_second(choi) - IDENTITY2 / 2).max() > 1e-10:
        raise ValidationError("Choi matrix is not trace preserving")
    return choi


def validate_affine(ch: AffineChannel) -> AffineChannel:
    sv = np.linalg.svd(ch.lam, compute_uv=False)
    if sv[0] > 1 + CONTRACTION_TOL:
        raise ValidationError(f"largest singular value of lambda is {sv[0]:.6g} > 1")
    affine_to_choi(ch)
    return ch


def apply(ch: AffineChannel, r) -> np.ndarray:
    return ch.lam @ np.asarray(r, dtype=float) + ch.t


def compose(outer: AffineChannel, inner: AffineChannel) -> AffineChannel:
    """Affine parameters of ``outer o inner`` (inner acts first)."""
    return AffineChannel(outer.lam @ inner.lam, outer.lam @ inner.t + outer.t)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if norm == 0:
        raise InvalidParameter("rotation axis must be nonzero")
    k = axis / norm
    kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + np.sin(angle) * kx + (1 - np.cos(angle)) * (kx @ kx)


class ChannelName(str, enum.Enum):
    AMPLITUDE_DAMPING = "amplitude_damping"
    GENERALIZED_DEPOLARIZING = "generalized_depolarizing"
    DEPHASING = "dephasing"
    UNITARY = "unitary"


def amplitude_damping_kraus(gamma: float) -> KrausChannel:
    if not 0.0 <= gamma <= 1.0:
        raise InvalidParameter(f"gamma must lie in [0, 1], got {gamma}")
    k1 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]])
    k2 = np.array([[0, np.sqrt(gamma)], [0, 0]])
    return kraus_validate([k1, k2])


def amplitude_damping(gamma: float) -> AffineChannel:
    if not 0.0 <= gamma <= 1.0:
        raise InvalidParameter(f"gamma must lie in [0, 1], got {gamma}")
    s = np.sqrt(1 - gamma)
    return AffineChannel(np.diag([s, s, 1 - gamma]), np.array([0.0, 0.0, gamma]))


def _check_probabilities(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (4,) or (p < -1e-12).any() or abs(p.sum() - 1) > 1e-10:
        raise InvalidParameter(f"expected four probabilities summing to 1, got {p.tolist()}")
    return p


def generalized_depolarizing(p) -> AffineChannel:
    """``rho -> sum_i p_i sigma_i rho sigma_i`` with ``sigma_0 = 1``."""
    p0, p1, p2, p3 = _check_probabilities(p)
    lam = np.diag([p0 + p1 - p2 - p3, p0 - p1 + p2 - p3, p0 - p1 - p2 + p3])
    return AffineChannel(lam, np.zeros(3))


def generalized_depolarizing_kraus(p) -> KrausChannel:
    p = _check_probabilities(p)
    ops = [np.sqrt(max(pi, 0.0)) * s for pi, s in zip(p, [IDENTITY2, *PAULI])]
    return kraus_validate(ops)


def dephasing(p: float = 1.0) -> AffineChannel:
    """Dephasing in the computational basis; ``p=1`` is complete dephasing."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"dephasing strength must lie in [0, 1], got {p}")
    return AffineChannel(np.diag([1 - p, 1 - p, 1.0]), np.zeros(3))


def unitary(axis, angle: float) -> AffineChannel:
    return AffineChannel(rotation_matrix(axis, angle), np.zeros(3))


def named_channel(name: str | ChannelName, params: Mapping[str, object] | None = None) -> AffineChannel:
    params = dict(params or {})
    try:
        name = ChannelName(name)
    except ValueError:
        raise InvalidParameter(f"unknown channel family {name!r}") from None
    try:
        if name is ChannelName.AMPLITUDE_DAMPING:
            ch = amplitude_damping(float(params.pop("gamma")))
        elif name is ChannelName.GENERALIZED_DEPOLARIZING:
            ch = generalized_depolarizing(params.pop("p"))
        elif name is ChannelName.DEPHASING:
            ch = dephasing(float(params.pop("p", 1.0)))
        else:
            ch = unitary(params.pop("axis", [0, 0, 1]), float(params.pop("angle")))
    except KeyError as exc:
        raise InvalidParameter(f"{name.value}: missing parameter {exc}") from None
    except InvalidParameter:
        raise
    except (TypeError, ValueError) as exc:
        raise InvalidParameter(f"{name.value}: {exc}") from None
    if params:
        raise InvalidParameter(f"{name.value}: unexpected parameters {sorted(params)}")
    return ch


def random_isometry(rng: np.random.Generator, rank: int) -> np.ndarray:
    g = rng.standard_normal((2 * rank, 2)) + 1j * rng.standard_normal((2 * rank, 2))
    q, r = np.linalg.qr(g)
    # fix the phase freedom of QR so the distribution is Haar
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    return random_isometry(rng, 1)


def random_cptp(seed: int | np.random.Generator, kraus_rank: int) -> KrausChannel:
    """Random channel from a Haar isometry into qubit (x) environment.

    The Kraus operators are the 2x2 environment slices of the isometry.
    """
    if not 1 <= kraus_rank <= 4:
        raise InvalidParameter(f"kraus_rank must be in 1..4, got {kraus_rank}")
    v = random_isometry(rng_from(seed), kraus_rank)
    return kraus_validate([v[2 * k: 2 * k + 2] for k in range(kraus_rank)])


def random_mixed_unitary(rng: np.random.Generator, terms: int = 3) -> KrausChannel:
    """Random unital channel as a convex mixture of Haar unitaries."""
    w = rng.dirichlet(np.ones(terms))
    return kraus_validate([np.sqrt(wi) * random_unitary(rng) for wi in w])


def random_semiclassical(rng: np.random.Generator) -> KrausChannel:
    """Measure in a random basis, prepare states of another random basis.

    Transition probabilities are random; the output always commutes with the
    preparation basis, so the channel is quantum-classical.
    """
    u_in = random_unitary(rng)
    u_out = random_unitary(rng)
    stoch = rng.dirichlet(np.ones(2), size=2)  # stoch[i, j] = P(j | i)
    ops = []
    for i in range(2):
        for j in range(2):
            ops.append(np.sqrt(stoch[i, j]) * np.outer(u_out[:, j], u_in[:, i].conj()))
    return kraus_validate(ops)


def random_entanglement_breaking(rng: np.random.Generator, outcomes: int = 4) -> KrausChannel:
    """Measure-and-prepare channel with rank-one POVM elements and pure outputs.

    ``K_n = |psi_n><n| V`` for a random isometry ``V`` into ``C^outcomes`` and
    Haar-random preparations ``psi_n``.
    """
    g = rng.standard_normal((outcomes, 2)) + 1j * rng.standard_normal((outcomes, 2))
    v, _ = np.linalg.qr(g)
    ops = [np.outer(random_unitary(rng)[:, 0], v[n]) for n in range(outcomes)]
    return kraus_validate(ops)


def random_pauli_channel(rng: np.random.Generator) -> AffineChannel:
    """Generalized depolarizing channel sandwiched between random rotations."""
    p = rng.dirichlet(np.ones(4))
    inner = kraus_to_affine(KrausChannel((random_unitary(rng),)))
    outer = kraus_to_affine(KrausChannel((random_unitary(rng),)))
    return compose(outer, compose(generalized_depolarizing(p), inner))


def random_channel_population(seed: int, n: int) -> list[AffineChannel]:
    """Seeded mixed population of valid channels.

    Cycles through isometry channels of Kraus rank 1-4, mixed-unitary and
    rotated Pauli channels (unital), quantum-classical channels and
    measure-and-prepare entanglement-breaking channels.
    """
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        kind = i % 8
        if kind < 4:
            out.append(kraus_to_affine(random_cptp(rng, kind + 1)))
        elif kind == 4:
            out.append(kraus_to_affine(random_mixed_unitary(rng, int(rng.integers(2, 5)))))
        elif kind == 5:
            out.append(random_pauli_channel(rng))
        elif kind == 6:
            out.append(kraus_to_affine(random_semiclassical(rng)))
        else:
            out.append(kraus_to_affine(random_entanglement_breaking(rng, int(rng.integers(2, 5)))))
    return out


def is_unital(ch: AffineChannel) -> bool:
    return bool(np.linalg.norm(ch.t) <= UNITAL_TOL)


def ppt_min_eigenvalue_of(rho) -> float:
    return float(np.linalg.eigvalsh(partial_transpose_second(rho))[0])


def is_entanglement_breaking(ch: AffineChannel) -> bool:
    """PPT test on the Choi state (exact for two qubits)."""
    return ppt_min_eigenvalue_of(_choi_from_affine(ch.lam, ch.t)) >= -PPT_TOL
