"""Coherence-based quantumness of qubit channels.

For a channel ``r -> lam r + t`` the ball-averaged squared l1-coherence of the
output, measured in the basis with Bloch axis ``n``, is

    (5/2) * mean_{|r|<=1} |(lam r + t) x n|^2 = Tr M - n.M.n,
    M = (lam lam^T + 5 t t^T) / 2,

so the minimum over bases is the sum of the two smallest eigenvalues of M,
attained along the top eigenvector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import AffineChannel, is_entanglement_breaking, is_unital
from .numerics import chunked_moments, sample_ball, sample_sphere, sym_eig3

NORMALIZATION = 2.5
PURE_STATE_NORMALIZATION = 1.5
SEMICLASSICAL_TOL = 1e-9
DEGENERACY_TOL = 1e-9
UNITARY_TOL = 1e-10
EB_BOUND = 0.5
UNITAL_EB_BOUND = 0.125


def m_matrix(ch: AffineChannel) -> np.ndarray:
    return 0.5 * (ch.lam @ ch.lam.T + 5.0 * np.outer(ch.t, ch.t))


@dataclass(frozen=True)
class QuantumnessReport:
    q: float
    m_eigenvalues: np.ndarray
    optimal_n: np.ndarray
    m_matrix: np.ndarray
    degenerate: bool

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "m_eigenvalues": self.m_eigenvalues.tolist(),
            "optimal_n": self.optimal_n.tolist(),
            "degenerate": self.degenerate,
        }


def quantumness(ch: AffineChannel) -> QuantumnessReport:
    m = m_matrix(ch)
    e, v = sym_eig3(m)
    n = v[:, 0]
    # sign convention: first nonzero component positive
    k = int(np.argmax(np.abs(n) > 1e-12))
    if n[k] < 0:
        n = -n
    return QuantumnessReport(
        q=float(e[1] + e[2]),
        m_eigenvalues=e,
        optimal_n=n,
        m_matrix=m,
        degenerate=bool(e[0] - e[1] < DEGENERACY_TOL),
    )


def fixed_basis_quantumness(ch: AffineChannel, n) -> float:
    """Quantumness without the basis minimization, for basis axis ``n``."""
    n = np.asarray(n, dtype=float)
    m = m_matrix(ch)
    return float(np.trace(m) - n @ m @ n)


def _cross_sq(ch: AffineChannel, n: np.ndarray, r: np.ndarray) -> np.ndarray:
    out = r @ ch.lam.T + ch.t
    return np.sum(np.cross(out, n) ** 2, axis=1)


def mc_quantumness(ch: AffineChannel, n, samples: int, seed: int, workers: int = 1) -> tuple[float, float]:
    """Monte Carlo estimate of the ball-averaged coherence for fixed axis ``n``.

    Returns ``(estimate, std_error)``, both already scaled by 5/2.
    """
    if samples < 1000:
        raise ValueError("mc_quantumness needs at least 1000 samples")
    n = np.asarray(n, dtype=float)
    mean, se = chunked_moments(seed, samples, lambda rng, k: _cross_sq(ch, n, sample_ball(rng, k)), workers)
    return NORMALIZATION * mean, NORMALIZATION * se


def basis_grid(resolution: int) -> np.ndarray:
    """Unit vectors on a ``resolution x 2*resolution`` (polar, azimuth) grid.

    Polar angles include both poles; azimuths cover [0, 2 pi).
    """
    alpha = np.linspace(0.0, np.pi, resolution)
    beta = np.arange(2 * resolution) * (np.pi / resolution)
    a, b = np.meshgrid(alpha, beta, indexing="ij")
    return np.stack([np.sin(a) * np.cos(b), np.sin(a) * np.sin(b), np.cos(a)], axis=-1).reshape(-1, 3)


def grid_min_quantumness(ch: AffineChannel, resolution: int = 64) -> tuple[float, np.ndarray]:
    """Brute-force minimum of :func:`fixed_basis_quantumness` over a basis grid."""
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    grid = basis_grid(resolution)
    m = m_matrix(ch)
    vals = np.trace(m) - np.einsum("ki,ij,kj->k", grid, m, grid)
    i = int(np.argmin(vals))
    return float(vals[i]), grid[i]


def is_semiclassical(ch: AffineChannel, tol: float = SEMICLASSICAL_TOL) -> bool:
    return quantumness(ch).q <= tol


def projector_condition(ch: AffineChannel, n, tol: float = 1e-9) -> bool:
    """True when ``n n^T t = t`` and ``n n^T lam = lam``."""
    n = np.asarray(n, dtype=float)
    p = np.outer(n, n)
    return bool(np.abs(p @ ch.t - ch.t).max() <= tol and np.abs(p @ ch.lam - ch.lam).max() <= tol)


@dataclass(frozen=True)
class Classification:
    q: float
    unital: bool
    semiclassical: bool
    entanglement_breaking: bool
    unitary: bool
    eb_bound_ok: bool
    unital_eb_bound_ok: bool

    def flags(self) -> dict:
        return {
            "unital": self.unital,
            "semiclassical": self.semiclassical,
            "eb": self.entanglement_breaking,
            "unitary": self.unitary,
        }


def classify(ch: AffineChannel) -> Classification:
    q = quantumness(ch).q
    unital = is_unital(ch)
    eb = is_entanglement_breaking(ch)
    return Classification(
        q=q,
        unital=unital,
        semiclassical=q <= SEMICLASSICAL_TOL,
        entanglement_breaking=eb,
        unitary=abs(q - 1.0) <= UNITARY_TOL,
        eb_bound_ok=(not eb) or q < EB_BOUND,
        unital_eb_bound_ok=(not (eb and unital)) or q <= UNITAL_EB_BOUND + 1e-10,
    )


def optimal_axis_class(eigenvalues, eigenvectors, tol: float = 1e-9) -> str:
    """Classify the top eigenspace as ``"z"``, ``"xy"`` or ``"tilted"``.

    A top eigenspace of dimension two or more always meets the xy-plane and
    is reported as ``"xy"``.
    """
    e = np.asarray(eigenvalues)
    if e[0] - e[1] < tol:
        return "xy"
    n = np.asarray(eigenvectors)[:, 0]
    if abs(abs(n[2]) - 1.0) < tol:
        return "z"
    if abs(n[2]) < tol:
        return "xy"
    return "tilted"


def pure_state_moment(ch: AffineChannel) -> np.ndarray:
    """Exact normalized sphere second moment (3/2)(lam lam^T/3 + t t^T)."""
    return PURE_STATE_NORMALIZATION * (ch.lam @ ch.lam.T / 3.0 + np.outer(ch.t, ch.t))


@dataclass(frozen=True)
class PureStateReport:
    estimate: float
    std_error: float
    analytic: float
    d_g: float

    @property
    def discrepancy(self) -> float:
        return self.analytic - self.d_g


def _pure_state_mc(ch: AffineChannel, samples: int, seed: int, resolution: int) -> tuple[float, float]:
    if samples < 1000:
        raise ValueError("pure-state estimate needs at least 1000 samples")
    rng = np.random.default_rng(seed)
    out = sample_sphere(rng, samples) @ ch.lam.T + ch.t
    moment = out.T @ out / samples
    grid = basis_grid(resolution)
    vals = np.trace(moment) - np.einsum("ki,ij,kj->k", grid, moment, grid)
    n = grid[int(np.argmin(vals))]
    per_sample = np.sum(np.cross(out, n) ** 2, axis=1)
    est = PURE_STATE_NORMALIZATION * per_sample.mean()
    se = PURE_STATE_NORMALIZATION * per_sample.std(ddof=1) / np.sqrt(samples)
    return float(est), float(se)


def pure_state_quantumness_mc(ch: AffineChannel, samples: int, seed: int, resolution: int = 64) -> float:
    """Sphere-averaged (pure-input) quantumness, minimized over a basis grid.

    Normalized by 3/2 so that the identity channel gives 1.
    """
    return _pure_state_mc(ch, samples, seed, resolution)[0]


def pure_state_report(ch: AffineChannel, samples: int, seed: int, resolution: int = 64) -> PureStateReport:
    from .bipartite import choi_state, geometric_discord_b

    est, se = _pure_state_mc(ch, samples, seed, resolution)
    e, _ = sym_eig3(pure_state_moment(ch))
    return PureStateReport(
        estimate=est,
        std_error=se,
        analytic=float(e[1] + e[2]),
        d_g=geometric_discord_b(choi_state(ch)).d_g,
    )
