"""Informational power W(Pi) = max over ensembles of I(R, Pi).

The generic path is a multistart see-saw over ensembles of M pure states:
exact prior optimization by Blahut-Arimoto alternates with projected
gradient ascent on the states (Armijo backtracking on the unit sphere).
When an outer iteration stalls, the solver searches for a pure state whose
relative entropy to the current output distribution exceeds the current
rate; by the dual capacity bound C = min_q max_psi D(P(.|psi) || q), no
such state exists only at the global optimum, so a stall with no violator
certifies convergence, and any violator found replaces a negligible-prior
member and receives weight along a line search that never lowers the rate.

POVMs with commuting elements skip all of this: the optimum is achieved on
the common eigenbasis, so a single Blahut-Arimoto run is exact.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .information import (
    LogBase,
    blahut_arimoto,
    ClassicalChannel,
    mutual_information,
    relative_entropy_rows,
)
from .objects import Ensemble, Povm

COMMUTING_TOL = 1e-10
ARMIJO_C = 1e-4
ARMIJO_SHRINK = 0.5
ARMIJO_INITIAL_STEP = 1.0
ARMIJO_MAX_BACKTRACKS = 50
GRAD_STEPS_PER_OUTER = 30
INNER_BA_TOL = 1e-12
INNER_BA_MAX_ITER = 100000
INNER_BA_CAP = 400
TIGHT_BA_MAX_ITER = 20000
MERGE_OVERLAP_TOL = 1e-6
REVIVALS_PER_RESTART = 50
_REVIVAL_BETAS = (0.5, 0.25, 0.1, 0.04, 0.015, 0.006, 0.0025, 0.001, 1e-4)
_TINY = 1e-300


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of the see-saw solver.

    ``tol`` is the per-outer-iteration improvement threshold in nats;
    ``num_states`` defaults to D^2 (the Davies bound, never fewer than
    needed); ``prune_tol`` drops ensemble members below that prior after
    convergence.
    """

    num_states: int | None = None
    restarts: int = 20
    tol: float = 1e-9
    max_outer_iter: int = 10000
    seed: int = 0
    base: LogBase = LogBase.BITS
    prune_tol: float = 1e-8

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.max_outer_iter < 1:
            raise ValueError(f"max_outer_iter must be >= 1, got {self.max_outer_iter}")
        if not 0 <= self.prune_tol < 1:
            raise ValueError(f"prune_tol must lie in [0, 1), got {self.prune_tol!r}")

    def resolved_num_states(self, dim: int) -> int:
        m = dim * dim if self.num_states is None else self.num_states
        if m < dim:
            raise ValueError(f"num_states {m} is below the dimension {dim}; D states are required")
        if m > dim * dim:
            warnings.warn(
                f"num_states {m} exceeds D^2 = {dim * dim}; pure-state optima never need more",
                stacklevel=2,
            )
        return m


@dataclass(frozen=True)
class BoundCheck:
    """Davies-type cardinality bounds on the pruned ensemble size."""

    dim: int
    m_eff: int
    lower: int
    upper: int
    passed: bool
    real_entries: bool
    real_upper: int | None
    real_passed: bool | None


@dataclass(frozen=True)
class PowerReport:
    """Solver output: the W estimate and how it was reached."""

    w_estimate: float
    best_ensemble: Ensemble
    per_restart_values: tuple[float, ...]
    converged: bool
    iterations_used: int
    fast_path_used: bool
    pruned_to: int
    bound_check: BoundCheck
    base: LogBase = field(default=LogBase.BITS)


@dataclass(frozen=True)
class AdditivityReport:
    """W on two POVMs and on their tensor product; theory says gap = 0."""

    w1: float
    w2: float
    w12: float
    gap: float


def _bound_check(p: Povm, m_eff: int) -> BoundCheck:
    d = p.dim
    real = p.is_real()
    real_upper = d * (d + 1) // 2 if real else None
    return BoundCheck(
        dim=d,
        m_eff=m_eff,
        lower=d,
        upper=d * d,
        passed=bool(d <= m_eff <= d * d),
        real_entries=real,
        real_upper=real_upper,
        real_passed=bool(m_eff <= real_upper) if real else None,
    )


# ---------------------------------------------------------------------------
# see-saw internals (all probabilities and rates in nats)


def _normalize_rows(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v, axis=1)[:, None]


def _channel_probs(vectors: np.ndarray, elements: np.ndarray) -> np.ndarray:
    """Outcome probabilities <psi_i|Pi_j|psi_i> for unit row vectors."""
    probs = np.einsum("id,jdc,ic->ij", vectors.conj(), elements, vectors).real
    return np.clip(probs, 0.0, 1.0)


def _mi_nats(prior: np.ndarray, probs: np.ndarray) -> float:
    return float(prior @ relative_entropy_rows(probs, prior @ probs))


def _log_ratio(probs: np.ndarray, q: np.ndarray) -> np.ndarray:
    """ln(p_ij / q_j) where both are positive, else 0."""
    mask = (probs > _TINY) & (q[None, :] > _TINY)
    return np.where(
        mask,
        np.log(np.maximum(probs, _TINY)) - np.log(np.maximum(q, _TINY))[None, :],
        0.0,
    )


def _mi_gradient(vectors: np.ndarray, prior: np.ndarray, elements: np.ndarray,
                 probs: np.ndarray) -> np.ndarray:
    """Tangent gradient of I w.r.t. the state vectors, priors fixed."""
    lr = _log_ratio(probs, prior @ probs)
    g = 2.0 * prior[:, None] * np.einsum("ij,jdc,ic->id", lr, elements, vectors)
    radial = np.sum(np.real(vectors.conj() * g), axis=1)
    return g - radial[:, None] * vectors


def _ba_prior(
    probs: np.ndarray,
    r0: np.ndarray | None,
    max_iter: int = INNER_BA_MAX_ITER,
) -> tuple[float, np.ndarray, float]:
    """Prior optimization on a fixed channel; returns (value, prior, gap) in nats.

    The value is the mutual information of the returned prior (recomputed,
    so it stays consistent with every other rate in the see-saw even when
    ``max_iter`` cuts the run short); the gap bounds how far that prior is
    from the best one on this channel.
    """
    res = blahut_arimoto(
        ClassicalChannel(probs),
        tol=INNER_BA_TOL,
        max_iter=max_iter,
        base=LogBase.NATS,
        initial_prior=r0,
    )
    prior = res.optimal_prior.probs
    return _mi_nats(prior, probs), prior, res.gap


def _gradient_phase(
    vectors: np.ndarray,
    prior: np.ndarray,
    elements: np.ndarray,
    tol: float,
    max_steps: int = GRAD_STEPS_PER_OUTER,
) -> np.ndarray:
    """Projected gradient ascent on the states with the prior held fixed."""
    for _ in range(max_steps):
        probs = _channel_probs(vectors, elements)
        f0 = _mi_nats(prior, probs)
        g = _mi_gradient(vectors, prior, elements, probs)
        gn2 = float(np.sum(np.real(g.conj() * g)))
        if gn2 < 1e-30:
            break
        step = ARMIJO_INITIAL_STEP
        accepted = False
        f1 = f0
        for _ in range(ARMIJO_MAX_BACKTRACKS):
            trial = _normalize_rows(vectors + step * g)
            f1 = _mi_nats(prior, _channel_probs(trial, elements))
            if f1 >= f0 + ARMIJO_C * step * gn2:
                vectors = trial
                accepted = True
                break
            step *= ARMIJO_SHRINK
        if not accepted or f1 - f0 < 0.25 * tol:
            break
    return vectors


def _max_relative_entropy_states(
    q: np.ndarray,
    elements: np.ndarray,
    rng: np.random.Generator,
    n_init: int,
    extra_inits: np.ndarray | None = None,
    max_steps: int = 150,
    tol: float = 1e-11,
) -> tuple[np.ndarray, np.ndarray]:
    """Search for pure states maximizing D(P(.|psi) || q), q held fixed.

    Multi-initialization projected gradient ascent; each row climbs
    independently since the objective separates per state. ``extra_inits``
    rows (e.g. the current ensemble) are climbed alongside the random
    starts. Returns the final vectors with their relative entropies (nats).
    """
    dim = elements.shape[1]
    vectors = rng.standard_normal((n_init, dim)) + 1j * rng.standard_normal((n_init, dim))
    vectors = _normalize_rows(vectors)
    if extra_inits is not None:
        vectors = np.concatenate([vectors, _normalize_rows(extra_inits)])
        n_init = vectors.shape[0]

    def values(v: np.ndarray) -> np.ndarray:
        return relative_entropy_rows(_channel_probs(v, elements), q)

    vals = values(vectors)
    for _ in range(max_steps):
        probs = _channel_probs(vectors, elements)
        lr = _log_ratio(probs, q)
        g = 2.0 * np.einsum("ij,jdc,ic->id", lr, elements, vectors)
        radial = np.sum(np.real(vectors.conj() * g), axis=1)
        g -= radial[:, None] * vectors
        gn2 = np.sum(np.real(g.conj() * g), axis=1)
        step = np.full(n_init, ARMIJO_INITIAL_STEP)
        live = gn2 > 1e-30
        new_vectors = vectors.copy()
        new_vals = vals.copy()
        for _ in range(ARMIJO_MAX_BACKTRACKS):
            if not live.any():
                break
            idx = np.where(live)[0]
            trial = _normalize_rows(vectors[idx] + step[idx, None] * g[idx])
            ft = values(trial)
            ok = ft >= vals[idx] + ARMIJO_C * step[idx] * gn2[idx]
            new_vectors[idx[ok]] = trial[ok]
            new_vals[idx[ok]] = ft[ok]
            live[idx[ok]] = False
            step[idx[~ok]] *= ARMIJO_SHRINK
        gain = float(np.max(new_vals - vals)) if n_init else 0.0
        vectors, vals = new_vectors, new_vals
        if gain < tol:
            break
    return vectors, vals


def _element_seed_states(elements: np.ndarray) -> np.ndarray:
    """Top eigenvector of each POVM element: cheap violator-search seeds."""
    return np.stack([linalg.eigh(m)[1][:, -1] for m in elements])


@dataclass(frozen=True)
class _RestartOutcome:
    value_nats: float
    vectors: np.ndarray
    priors: np.ndarray
    iterations: int
    converged: bool
    history: tuple[float, ...]


def _run_restart(
    elements: np.ndarray,
    num_states: int,
    seed: int,
    restart_index: int,
    tol: float,
    max_outer_iter: int,
    prune_tol: float,
) -> _RestartOutcome:
    """One seeded see-saw run; deterministic given (seed, restart_index).

    The running value is exactly the mutual information of the current
    (vectors, priors) pair and never decreases beyond roundoff: both inner
    phases are monotone, and the revival step keeps a reweighting toward a
    violator only when it beats the incumbent.
    """
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(restart_index,)))
    dim = elements.shape[1]
    vectors = rng.standard_normal((num_states, dim)) + 1j * rng.standard_normal((num_states, dim))
    vectors = _normalize_rows(vectors)
    value, prior, _ = _ba_prior(_channel_probs(vectors, elements), None, INNER_BA_CAP)
    history = [value]
    converged = False
    revivals = 0
    n_probe = max(16, 8 * dim)
    eig_seeds = _element_seed_states(elements)
    outer = 0
    for outer in range(1, max_outer_iter + 1):
        vectors = _gradient_phase(vectors, prior, elements, tol)
        probs = _channel_probs(vectors, elements)
        new_value, prior, gap = _ba_prior(probs, prior, INNER_BA_CAP)
        if new_value - value < tol and gap > tol:
            # the capped run left slack on this fixed channel: finish it
            new_value, prior, gap = _ba_prior(probs, prior, TIGHT_BA_MAX_ITER)
        improvement = new_value - value
        value = new_value
        history.append(value)
        if improvement >= tol:
            continue
        # stalled: certify via the dual bound, or reweight toward a violator
        q = prior @ probs
        jitter = 0.15 * (rng.standard_normal(vectors.shape) + 1j * rng.standard_normal(vectors.shape))
        seeds = np.concatenate([vectors, vectors + jitter, eig_seeds])
        cand_vectors, cand_vals = _max_relative_entropy_states(
            q, elements, rng, n_probe, extra_inits=seeds
        )
        # The see-saw stops improving once gains drop below tol, so its value
        # can sit up to ~tol under the optimum; candidates polished past that
        # resolution are not evidence of a better basin. Only treat an excess
        # clearly above the stopping resolution as a genuine violation.
        margin = max(10.0 * tol, 1e-9)
        if float(cand_vals.max()) <= value + margin:
            converged = True
            break
        if revivals >= REVIVALS_PER_RESTART:
            break
        revivals += 1
        order = np.argsort(cand_vals)[::-1]
        picked: list[np.ndarray] = []
        for k in order:
            if cand_vals[k] <= value + margin:
                break
            v = cand_vectors[k]
            if all(abs(np.vdot(v, u)) ** 2 < 1.0 - MERGE_OVERLAP_TOL for u in picked):
                picked.append(v)
        slots = np.where(prior < prune_tol)[0]
        if slots.size == 0:
            slots = np.array([int(np.argmin(prior))])
        slots = slots[: len(picked)]
        saved = vectors[slots].copy()
        vectors[slots] = np.stack(picked[: slots.size])
        probs = _channel_probs(vectors, elements)
        mix = np.zeros_like(prior)
        mix[slots] = 1.0 / slots.size
        best_try: tuple[float, np.ndarray] | None = None
        for beta in _REVIVAL_BETAS:
            r_try = (1.0 - beta) * prior + beta * mix
            v_try = _mi_nats(r_try, probs)
            if v_try > value and (best_try is None or v_try > best_try[0]):
                best_try = (v_try, r_try)
        if best_try is None:
            # reweighting toward the violator cannot beat the incumbent
            # from here (it displaced a member carrying real weight);
            # stop uncertified rather than accept a regression
            vectors[slots] = saved
            break
        value, prior = best_try
        history.append(value)
    return _RestartOutcome(
        value_nats=value,
        vectors=vectors,
        priors=prior,
        iterations=outer,
        converged=converged,
        history=tuple(history),
    )


def _merge_duplicates(vectors: np.ndarray, priors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Coalesce members that are the same state up to global phase."""
    keep: list[int] = []
    priors = priors.copy()
    for i in range(vectors.shape[0]):
        for j in keep:
            if abs(np.vdot(vectors[i], vectors[j])) ** 2 > 1.0 - MERGE_OVERLAP_TOL:
                priors[j] += priors[i]
                break
        else:
            keep.append(i)
    return vectors[keep], priors[keep]


def _prune_and_polish(
    elements: np.ndarray,
    outcome: _RestartOutcome,
    tol: float,
    prune_tol: float,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Drop negligible-prior members, merge duplicates, re-optimize once."""
    vectors, priors = outcome.vectors, outcome.priors
    keep = priors >= prune_tol
    if not keep.any():
        keep[int(np.argmax(priors))] = True
    vectors, priors = _merge_duplicates(vectors[keep], priors[keep])
    priors = priors / priors.sum()

    value0 = _mi_nats(priors, _channel_probs(vectors, elements))
    polished = _gradient_phase(vectors, priors, elements, tol)
    value1, priors1, _ = _ba_prior(_channel_probs(polished, elements), priors)
    if value1 >= value0:
        vectors, priors = polished, priors1
    # polishing can re-empty a member; apply the prior cut once more
    keep = priors >= prune_tol
    if not keep.any():
        keep[int(np.argmax(priors))] = True
    vectors, priors = _merge_duplicates(vectors[keep], priors[keep])
    priors = priors / priors.sum()
    return vectors, priors, vectors.shape[0]


def see_saw_power(p: Povm, cfg: SolverConfig | None = None, jobs: int = 1) -> PowerReport:
    """Generic multistart see-saw estimate of W(Pi).

    Runs ``cfg.restarts`` independently seeded restarts (optionally on a
    process pool; results are identical for any ``jobs``), keeps the best,
    prunes and re-polishes its ensemble, and reports the recomputed mutual
    information of the final ensemble.

    ``converged`` reflects the winning restart: True when it stalled with
    no pure state beating the dual optimality bound by more than the
    stopping resolution (max(10*tol, 1e-9) nats), False when it hit an
    iteration cap before that certificate. ``iterations_used`` counts its
    outer iterations.
    """
    cfg = cfg or SolverConfig()
    m = cfg.resolved_num_states(p.dim)
    args = [
        (p.elements, m, cfg.seed, k, cfg.tol, cfg.max_outer_iter, cfg.prune_tol)
        for k in range(cfg.restarts)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_restart_packed, args))
    else:
        outcomes = [_run_restart_packed(a) for a in args]

    values = np.array([o.value_nats for o in outcomes])
    best_index = int(np.argmax(values))
    best = outcomes[best_index]

    vectors, priors, m_eff = _prune_and_polish(p.elements, best, cfg.tol, cfg.prune_tol)
    ensemble = Ensemble.from_pure(priors, vectors)
    w = mutual_information(ensemble, p, cfg.base)
    return PowerReport(
        w_estimate=w,
        best_ensemble=ensemble,
        per_restart_values=tuple(cfg.base.from_nats(v) for v in values),
        converged=best.converged,
        iterations_used=best.iterations,
        fast_path_used=False,
        pruned_to=m_eff,
        bound_check=_bound_check(p, m_eff),
        base=cfg.base,
    )


def _run_restart_packed(args: tuple) -> _RestartOutcome:
    return _run_restart(*args)


def commuting_fast_path(
    p: Povm,
    tol: float = 1e-12,
    base: LogBase = LogBase.BITS,
    prune_tol: float = 1e-8,
    commute_tol: float = COMMUTING_TOL,
) -> PowerReport:
    """Exact W for POVMs with commuting elements.

    A maximally informative ensemble lives on the common eigenbasis, so
    the problem reduces to the classical channel p(j|i) = <i|Pi_j|i> and a
    single Blahut-Arimoto run is exact to its tolerance (``tol``, in
    ``base``). Raises NotCommuting when elements do not commute.
    """
    basis = linalg.simultaneous_eigenbasis(list(p.elements), tol=commute_tol)
    probs = np.einsum("di,jdc,ci->ij", basis.conj(), p.elements, basis).real
    probs = np.clip(probs, 0.0, 1.0)
    res = blahut_arimoto(ClassicalChannel(probs), tol=tol, base=base)

    keep = res.optimal_prior.probs >= prune_tol
    if not keep.any():
        keep[int(np.argmax(res.optimal_prior.probs))] = True
    kept = np.where(keep)[0]
    refit = blahut_arimoto(
        ClassicalChannel(probs[kept]),
        tol=tol,
        base=base,
        initial_prior=res.optimal_prior.probs[kept] / res.optimal_prior.probs[kept].sum(),
    )
    vectors = basis.T[kept]
    ensemble = Ensemble.from_pure(refit.optimal_prior.probs, vectors)
    w = mutual_information(ensemble, p, base)
    m_eff = len(kept)
    return PowerReport(
        w_estimate=w,
        best_ensemble=ensemble,
        per_restart_values=(w,),
        converged=res.converged and refit.converged,
        iterations_used=res.iterations + refit.iterations,
        fast_path_used=True,
        pruned_to=m_eff,
        bound_check=_bound_check(p, m_eff),
        base=base,
    )


def informational_power(p: Povm, cfg: SolverConfig | None = None, jobs: int = 1) -> PowerReport:
    """W(Pi): dispatches to the commuting fast path when applicable.

    Commuting elements (all pairwise commutator norms <= 1e-10) admit an
    exact solution on the common eigenbasis; anything else runs the
    multistart see-saw.
    """
    cfg = cfg or SolverConfig()
    if p.max_commutator_norm() <= COMMUTING_TOL:
        return commuting_fast_path(
            p,
            tol=min(INNER_BA_TOL, cfg.tol),
            base=cfg.base,
            prune_tol=cfg.prune_tol,
        )
    return see_saw_power(p, cfg, jobs=jobs)


def state_gradient(e: Ensemble, p: Povm) -> list[np.ndarray]:
    """Tangent gradient of the mutual information at a pure-state ensemble.

    For member i the Euclidean gradient is
    g_i = 2 p_i sum_j ln(p(j|i)/q_j) Pi_j |psi_i>, projected onto the
    tangent space of the unit sphere: g_i - Re<psi_i|g_i> |psi_i>.
    Probabilities are clamped at 1e-300 and zero-probability outcomes
    contribute nothing. Raises on mixed-state members.
    """
    if e.dim != p.dim:
        raise ValueError(f"ensemble dim {e.dim} vs POVM dim {p.dim}")
    vectors = _pure_vectors(e)
    probs = _channel_probs(vectors, p.elements)
    g = _mi_gradient(vectors, e.priors, p.elements, probs)
    return [g[i] for i in range(g.shape[0])]


def _pure_vectors(e: Ensemble, tol: float = 1e-8) -> np.ndarray:
    """Extract amplitude vectors from rank-1 members; error on mixed ones."""
    vectors = []
    for i, s in enumerate(e.states):
        w, v = linalg.eigh(s.matrix)
        if w[-1] < 1.0 - tol:
            raise ValueError(
                f"ensemble member {i} is mixed (top eigenvalue {w[-1]!r}); pure states required"
            )
        vectors.append(v[:, -1])
    return np.stack(vectors)


def additivity_check(p1: Povm, p2: Povm, cfg: SolverConfig | None = None) -> AdditivityReport:
    """Compare W(Pi1 (x) Pi2) against W(Pi1) + W(Pi2); theory: equal."""
    from .objects import tensor_povm

    cfg = cfg or SolverConfig()
    r1 = informational_power(p1, cfg)
    r2 = informational_power(p2, cfg)
    r12 = informational_power(tensor_povm(p1, p2), cfg)
    return AdditivityReport(
        w1=r1.w_estimate,
        w2=r2.w_estimate,
        w12=r12.w_estimate,
        gap=r12.w_estimate - (r1.w_estimate + r2.w_estimate),
    )
