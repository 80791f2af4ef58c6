"""Small dense linear algebra and seeded sampling.

Eigensolvers wrap ``numpy.linalg.eigh`` but enforce the conventions the rest
of the package relies on: symmetric/Hermitian input is checked, eigenvalues
come back in nonincreasing order, and eigenvectors are the matching columns.

All randomness goes through ``numpy.random.Generator`` (PCG64). Sub-streams
for chunked Monte Carlo are derived with ``SeedSequence.spawn`` so results
depend only on the seed and the sample budget.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

from .errors import ValidationError

SYM_TOL = 1e-12
PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
IDENTITY2 = np.eye(2, dtype=complex)
# sigma_0 .. sigma_3
PAULI4 = np.concatenate([IDENTITY2[None], PAULI])

# chunk size used by every Monte Carlo routine; fixing it makes results
# independent of the number of workers
MC_CHUNK = 1 << 17


def rng_from(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sym_eig3(s) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric 3x3 matrix.

    Returns ``(e, v)`` with ``e[0] >= e[1] >= e[2]`` and ``v[:, i]`` the unit
    eigenvector for ``e[i]``. Raises ``ValidationError`` for non-symmetric
    input.
    """
    s = np.asarray(s, dtype=float)
    if s.shape != (3, 3):
        raise ValidationError(f"expected a 3x3 matrix, got shape {s.shape}")
    if not np.allclose(s, s.T, rtol=0.0, atol=SYM_TOL * max(1.0, np.abs(s).max())):
        raise ValidationError("matrix is not symmetric")
    e, v = np.linalg.eigh(0.5 * (s + s.T))
    return e[::-1].copy(), v[:, ::-1].copy()


def herm_eig4(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a 4x4 Hermitian matrix, eigenvalues nonincreasing."""
    h = np.asarray(h, dtype=complex)
    if h.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 matrix, got shape {h.shape}")
    if not np.allclose(h, h.conj().T, rtol=0.0, atol=SYM_TOL * max(1.0, np.abs(h).max())):
        raise ValidationError("matrix is not Hermitian")
    e, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return e[::-1].copy(), v[:, ::-1].copy()


def sample_sphere(rng: np.random.Generator, n: int | None = None) -> np.ndarray:
    """Uniform points on the unit sphere (normalized Gaussian triples)."""
    size = (1 if n is None else n, 3)
    g = rng.standard_normal(size)
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    # a zero Gaussian triple has probability zero but would poison the batch
    bad = norms[:, 0] == 0.0
    while bad.any():
        g[bad] = rng.standard_normal((int(bad.sum()), 3))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
        bad = norms[:, 0] == 0.0
    out = g / norms
    return out[0] if n is None else out


def sample_ball(rng: np.random.Generator, n: int | None = None) -> np.ndarray:
    """Uniform points in the unit ball.

    Direction from :func:`sample_sphere`, radius ``U**(1/3)``. With ``n=None``
    a single 3-vector is returned, otherwise an ``(n, 3)`` array.
    """
    d = sample_sphere(rng, 1 if n is None else n)
    r = rng.random(d.shape[0]) ** (1.0 / 3.0)
    out = d * r[:, None]
    return out[0] if n is None else out


def chunked_moments(
    seed: int,
    samples: int,
    fn: Callable[[np.random.Generator, int], np.ndarray],
    workers: int = 1,
) -> tuple[float, float]:
    """Mean and standard error of ``fn`` values over ``samples`` draws.

    ``fn(rng, k)`` must return ``k`` sample values. The budget is split into
    fixed-size chunks, each with its own spawned generator, and partial sums
    are combined in chunk order.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    sizes = [MC_CHUNK] * (samples // MC_CHUNK)
    if samples % MC_CHUNK:
        sizes.append(samples % MC_CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(i: int) -> tuple[float, float]:
        vals = fn(np.random.default_rng(children[i]), sizes[i])
        return float(vals.sum()), float(np.dot(vals, vals))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(i) for i in range(len(sizes))]
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0) * samples / (samples - 1)
    return mean, float(np.sqrt(var / samples))


def kron(*mats) -> np.ndarray:
    out = np.array([[1.0]], dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def bloch_to_density(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return 0.5 * (IDENTITY2 + np.einsum("i,ijk->jk", r, PAULI))


def density_to_bloch(rho) -> np.ndarray:
    return np.real(np.einsum("ijk,kj->i", PAULI, rho))
