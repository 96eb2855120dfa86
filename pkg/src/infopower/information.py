"""Classical information measures over ensemble/POVM outcome statistics.

All public results default to bits; pass ``LogBase.NATS`` for natural units.
Internally everything is computed in nats. Terms with probability below
1e-300 are skipped (continuous extension of x log x), and zero-probability
output columns are skipped entirely.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .objects import DensityOperator, Ensemble, Povm

_TINY = 1e-300
LN2 = float(np.log(2.0))


class LogBase(enum.Enum):
    """Reporting unit for entropies and capacities."""

    BITS = "bits"
    NATS = "nats"

    def from_nats(self, value: float) -> float:
        return value / LN2 if self is LogBase.BITS else value

    def to_nats(self, value: float) -> float:
        return value * LN2 if self is LogBase.BITS else value


@dataclass(frozen=True)
class Distribution:
    """Probability vector: non-negative, sums to 1 within 1e-12."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float).reshape(-1)
        if p.shape[0] < 1:
            raise ValueError("distribution needs at least one entry")
        if not np.isfinite(p).all():
            raise ValueError("distribution contains non-finite entries")
        if (p < 0).any():
            raise ValueError(f"negative probability {p.min()!r}")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1 within 1e-12")
        object.__setattr__(self, "probs", p)

    def __len__(self) -> int:
        return self.probs.shape[0]


@dataclass(frozen=True)
class ClassicalChannel:
    """Row-stochastic conditional distribution p(j|i) as an (M, N) matrix."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError(f"channel matrix must be 2-D and non-empty, got shape {p.shape}")
        if not np.isfinite(p).all():
            raise ValueError("channel contains non-finite entries")
        if (p < 0).any():
            raise ValueError(f"negative channel probability {p.min()!r}")
        sums = p.sum(axis=1)
        if np.max(np.abs(sums - 1.0)) > 1e-10:
            worst = int(np.argmax(np.abs(sums - 1.0)))
            raise ValueError(f"channel row {worst} sums to {sums[worst]!r}, not 1 within 1e-10")
        object.__setattr__(self, "probs", p)

    @property
    def num_inputs(self) -> int:
        return self.probs.shape[0]

    @property
    def num_outputs(self) -> int:
        return self.probs.shape[1]


def outcome_probabilities(e: Ensemble, p: Povm) -> np.ndarray:
    """Raw matrix Tr[rho_i Pi_j], clamped to [0, 1] at 1e-12 slack."""
    if e.dim != p.dim:
        raise DimensionMismatch(f"ensemble dim {e.dim} vs POVM dim {p.dim}")
    probs = np.einsum("idc,jcd->ij", e.states_stack(), p.elements).real
    if probs.min() < -1e-12 or probs.max() > 1.0 + 1e-12:
        raise ValueError(
            f"outcome probability outside [0,1] beyond slack: min {probs.min()!r}, max {probs.max()!r}"
        )
    return np.clip(probs, 0.0, 1.0)


def joint_statistics(e: Ensemble, p: Povm) -> ClassicalChannel:
    """The classical channel p(j|i) = Tr[rho_i Pi_j] induced by measuring the POVM."""
    probs = outcome_probabilities(e, p)
    sums = probs.sum(axis=1)
    if np.max(np.abs(sums - 1.0)) > 1e-10:
        worst = int(np.argmax(np.abs(sums - 1.0)))
        raise ValueError(f"row {worst} of Tr[rho Pi] sums to {sums[worst]!r}, not 1 within 1e-10")
    return ClassicalChannel(probs / sums[:, None])


def shannon_entropy(d: Distribution | np.ndarray, base: LogBase = LogBase.BITS) -> float:
    """H(p) = -sum p log p, with 0 log 0 = 0."""
    p = d.probs if isinstance(d, Distribution) else np.asarray(d, dtype=float)
    mask = p > _TINY
    h = -float(np.sum(p[mask] * np.log(p[mask])))
    return base.from_nats(max(h, 0.0))


def relative_entropy_rows(probs: np.ndarray, q: np.ndarray) -> np.ndarray:
    """D(p(.|i) || q) in nats for every row of a channel matrix.

    Columns with q_j = 0 are skipped; they carry zero output probability.
    """
    keep = q > _TINY
    p = probs[:, keep]
    logq = np.log(q[keep])
    out = np.where(p > _TINY, p * (np.log(np.maximum(p, _TINY)) - logq[None, :]), 0.0)
    return out.sum(axis=1)


def channel_mutual_information_nats(prior: np.ndarray, probs: np.ndarray) -> float:
    """I(prior, channel) in nats: sum_i r_i D(p(.|i) || q)."""
    q = prior @ probs
    return float(prior @ relative_entropy_rows(probs, q))


def mutual_information(e: Ensemble, p: Povm, base: LogBase = LogBase.BITS) -> float:
    """Mutual information between message index and outcome index.

    I = sum_ij p_i p(j|i) log(p(j|i)/q_j) with q_j = sum_k p_k p(k|j);
    zero-probability terms contribute 0.
    """
    ch = joint_statistics(e, p)
    return base.from_nats(channel_mutual_information_nats(e.priors, ch.probs))


def apply_qc_channel(p: Povm, rho: DensityOperator) -> Distribution:
    """Outcome distribution Tr[rho Pi_j] of measuring rho with the POVM."""
    if rho.dim != p.dim:
        raise DimensionMismatch(f"state dim {rho.dim} vs POVM dim {p.dim}")
    probs = np.einsum("dc,jcd->j", rho.matrix, p.elements).real
    probs = np.clip(probs, 0.0, None)
    total = probs.sum()
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"outcome probabilities sum to {total!r}, not 1 within 1e-10")
    return Distribution(probs / total)


@dataclass(frozen=True)
class BlahutArimotoResult:
    """Capacity estimate with its optimality certificate.

    ``gap`` is the final value of max_i D(p(.|i)||q) - I(r, p), an upper
    bound on the distance to the true capacity, in the requested base.
    """

    capacity: float
    optimal_prior: Distribution
    converged: bool
    iterations: int
    gap: float


def blahut_arimoto(
    ch: ClassicalChannel,
    tol: float = 1e-12,
    max_iter: int = 100000,
    base: LogBase = LogBase.BITS,
    initial_prior: np.ndarray | None = None,
) -> BlahutArimotoResult:
    """Discrete memoryless channel capacity by alternating maximization.

    Stops when the capacity gap max_i D_i - sum_i r_i D_i falls to ``tol``
    (interpreted in ``base``), which certifies the returned capacity is
    within ``tol`` of the true value. Exceeding ``max_iter`` returns the
    best iterate flagged ``converged=False``.

    ``initial_prior`` warm-starts the iteration; entries at exact zero stay
    zero under the multiplicative update, freezing that support.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    probs = ch.probs
    m = probs.shape[0]
    if initial_prior is None:
        r = np.full(m, 1.0 / m)
    else:
        r = np.asarray(initial_prior, dtype=float).reshape(-1)
        if r.shape[0] != m or (r < 0).any() or abs(r.sum() - 1.0) > 1e-9:
            raise ValueError("initial_prior must be a distribution over the channel inputs")
        r = r / r.sum()
    tol_nats = base.to_nats(tol)

    # Quantities that never change across iterations are hoisted: the set of
    # output columns carrying any mass, the per-row entropy term sum_j p log p,
    # and (under the support-freezing multiplicative update) the live inputs.
    keep = probs.max(axis=0) > _TINY
    p = probs[:, keep]
    plogp = np.sum(np.where(p > _TINY, p * np.log(np.maximum(p, _TINY)), 0.0), axis=1)
    live = np.flatnonzero(r > 0)
    full_support = live.size == m

    value = 0.0
    gap = np.inf
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        q = r @ p
        logq = np.log(np.maximum(q, _TINY))
        d = plogp - p @ logq
        value = float(r @ d)
        gap = float(d.max() - value)
        if gap <= tol_nats:
            converged = True
            break
        if full_support:
            w = r * np.exp(d - d.max())
            r = w / w.sum()
        else:
            dl = d[live]
            w = r[live] * np.exp(dl - dl.max())
            r = np.zeros(m)
            r[live] = w / w.sum()
    return BlahutArimotoResult(
        capacity=base.from_nats(value),
        optimal_prior=Distribution(r),
        converged=converged,
        iterations=iterations,
        gap=base.from_nats(max(gap, 0.0)),
    )
