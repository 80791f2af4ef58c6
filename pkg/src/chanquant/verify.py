"""Seeded invariant suites behind ``chanquant verify``.

Each suite returns a :class:`SuiteResult`; the first failing case is kept as
a JSON-serializable record so the run can be reproduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bipartite import observation_check
from .channels import (
    AffineChannel,
    KrausChannel,
    compose,
    is_entanglement_breaking,
    is_unital,
    kraus_to_affine,
    random_channel_population,
    random_unitary,
)
from .coherence import apply_incoherent, c_l1_sq, random_incoherent_op, w_factor_grid
from .numerics import sample_ball
from .quantumness import grid_min_quantumness, mc_quantumness, quantumness
from .teleport import CLASSICAL_FIDELITY, random_resource_state, teleport_report

ORACLE_SLACK = 5e-3
MC_SIGMAS = 4.0


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    failure: dict | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None and self.passed == self.total

    def check(self, ok: bool, record: Callable[[], dict]) -> None:
        self.total += 1
        if ok:
            self.passed += 1
        elif self.failure is None:
            self.failure = record()


@dataclass
class VerifyConfig:
    seed: int = 7
    n_channels: int = 1000
    mc_samples: int = 100_000
    mc_channels: int = 100
    unitary_channels: int = 100
    unitaries_per_channel: int = 10
    resolution: int = 64
    extra_channels: list[AffineChannel] = field(default_factory=list)


def _unitary_channel(rng) -> AffineChannel:
    return kraus_to_affine(KrausChannel((random_unitary(rng),)))


def suite_observation(channels) -> SuiteResult:
    res = SuiteResult("observation")
    for ch in channels:
        rec = observation_check(ch)
        unital_eq = (not is_unital(ch)) or rec.equality
        zero_iff = (rec.d_g < 1e-10) == (rec.q < 1e-10)
        res.check(
            rec.inequality_holds and unital_eq and zero_iff,
            lambda: {"channel": ch.to_json(), **rec.to_json()},
        )
    return res


def suite_unitary_invariance(channels, rng, per_channel: int) -> SuiteResult:
    res = SuiteResult("unitary_invariance")
    for ch in channels:
        q = quantumness(ch).q
        for _ in range(per_channel):
            u = _unitary_channel(rng)
            q1 = quantumness(compose(u, ch)).q
            q2 = quantumness(compose(ch, u)).q
            res.check(
                abs(q1 - q) < 1e-10 and abs(q2 - q) < 1e-10,
                lambda: {"channel": ch.to_json(), "unitary": u.to_json(), "q": q, "q_after": q1, "q_before": q2},
            )
    return res


def suite_oracle(channels, resolution: int) -> SuiteResult:
    res = SuiteResult("grid_oracle")
    for ch in channels:
        q = quantumness(ch).q
        qg, _ = grid_min_quantumness(ch, resolution)
        res.check(
            -1e-10 <= qg - q <= ORACLE_SLACK,
            lambda: {"channel": ch.to_json(), "q": q, "q_grid": qg},
        )
    return res


def suite_monte_carlo(channels, samples: int, seed: int) -> SuiteResult:
    res = SuiteResult("monte_carlo")
    for i, ch in enumerate(channels):
        rep = quantumness(ch)
        est, se = mc_quantumness(ch, rep.optimal_n, samples, seed + i)
        res.check(
            abs(est - rep.q) <= MC_SIGMAS * se + 1e-12,
            lambda: {"channel": ch.to_json(), "q": rep.q, "estimate": est, "std_error": se},
        )
    return res


def suite_monotonicity(n_pairs: int, seed: int) -> SuiteResult:
    res = SuiteResult("strong_monotonicity")
    rng = np.random.default_rng(seed)
    for _ in range(n_pairs):
        op = random_incoherent_op(rng)
        r = sample_ball(rng)
        ens = apply_incoherent(op, r)
        before, after = c_l1_sq(r), ens.mean_coherence_sq()
        res.check(
            after <= before + 1e-10,
            lambda: {"a": op.a.tolist(), "b": [[z.real, z.imag] for z in op.b], "r": r.tolist(),
                     "before": before, "after": after},
        )
    q = np.linspace(0.0, 1.0, 21)
    q1, q2, q1p, q2p, r3 = np.meshgrid(q, q, q, q, np.array([-0.9, 0.0, 0.9]), indexing="ij")
    valid = (q1 + q2 <= 1 + 1e-12) & (q1p + q2p <= 1 + 1e-12)
    w = w_factor_grid(q1[valid], q2[valid], q1p[valid], q2p[valid], r3[valid])
    res.check(bool(w.max() <= 1 + 1e-12), lambda: {"w_max": float(w.max())})
    return res


def suite_eb_bounds(channels) -> SuiteResult:
    res = SuiteResult("eb_bounds")
    for ch in channels:
        if not is_entanglement_breaking(ch):
            continue
        q = quantumness(ch).q
        ok = q < 0.5 and (not is_unital(ch) or q <= 0.125 + 1e-10)
        res.check(ok, lambda: {"channel": ch.to_json(), "q": q, "unital": is_unital(ch)})
    return res


def suite_teleport(n_states: int, seed: int) -> SuiteResult:
    res = SuiteResult("teleport_necessity")
    rng = np.random.default_rng(seed)
    for _ in range(n_states):
        st = random_resource_state(rng)
        rep = teleport_report(st)
        ok = (not rep.avg_fidelity > CLASSICAL_FIDELITY) or rep.q > 1e-10
        res.check(ok, lambda: {"x": st.x.tolist(), "y": st.y.tolist(), "T": st.t_corr.tolist(),
                               "q": rep.q, "avg_fidelity": rep.avg_fidelity})
    return res


def run_all(cfg: VerifyConfig) -> list[SuiteResult]:
    seeds = np.random.SeedSequence(cfg.seed).generate_state(4)
    channels = random_channel_population(cfg.seed, cfg.n_channels) + list(cfg.extra_channels)
    return [
        suite_observation(channels),
        suite_unitary_invariance(channels[: cfg.unitary_channels], np.random.default_rng(seeds[0]),
                                 cfg.unitaries_per_channel),
        suite_oracle(channels, cfg.resolution),
        suite_monte_carlo(channels[: cfg.mc_channels], cfg.mc_samples, int(seeds[1])),
        suite_monotonicity(10 * cfg.n_channels, int(seeds[2])),
        suite_eb_bounds(channels),
        suite_teleport(10 * cfg.n_channels, int(seeds[3])),
    ]

