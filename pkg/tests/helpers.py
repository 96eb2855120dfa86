"""Test-local oracles and generators, independent of the library internals.

Everything here is computed straight from the definitions with plain numpy
so that library results are checked against a second, separately written
code path: mutual information via joint-distribution entropies (not via
per-row relative entropies), channel capacity via a tiny standalone
alternating-maximization loop, and closed forms where they exist.
"""

from __future__ import annotations

import numpy as np

LN2 = float(np.log(2.0))


# ---------------------------------------------------------------------------
# independent information quantities


def entropy_bits(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float).reshape(-1)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def mi_bits_from_joint(joint: np.ndarray) -> float:
    """I(X;Y) = H(X) + H(Y) - H(X,Y) on a joint probability table."""
    return entropy_bits(joint.sum(axis=1)) + entropy_bits(joint.sum(axis=0)) - entropy_bits(joint)


def mi_bits_direct(priors: np.ndarray, states: np.ndarray, elements: np.ndarray) -> float:
    """Mutual information of measuring density matrices with a POVM, in bits.

    ``states``: (M, D, D) density matrices; ``elements``: (N, D, D).
    """
    cond = np.einsum("idc,jcd->ij", states, elements).real
    joint = np.asarray(priors, dtype=float)[:, None] * np.clip(cond, 0.0, 1.0)
    return mi_bits_from_joint(joint)


def mi_bits_pure(priors: np.ndarray, vectors: np.ndarray, elements: np.ndarray) -> float:
    """Same as mi_bits_direct but from unit state vectors (M, D)."""
    cond = np.einsum("id,jdc,ic->ij", vectors.conj(), elements, vectors).real
    joint = np.asarray(priors, dtype=float)[:, None] * np.clip(cond, 0.0, 1.0)
    return mi_bits_from_joint(joint)


def capacity_bits_oracle(probs: np.ndarray, iters: int = 20000) -> float:
    """Standalone channel capacity: classic multiplicative update, then the
    dual bound max_i D_i as a sandwich; returns the midpoint when the
    sandwich is tight (always is at these iteration counts for tiny
    channels)."""
    probs = np.asarray(probs, dtype=float)
    m = probs.shape[0]
    r = np.full(m, 1.0 / m)
    mask = probs > 0
    logp = np.where(mask, np.log(np.where(mask, probs, 1.0)), 0.0)
    plogp = (np.where(mask, probs * logp, 0.0)).sum(axis=1)
    lo = hi = 0.0
    for _ in range(iters):
        q = r @ probs
        logq = np.where(q > 0, np.log(np.where(q > 0, q, 1.0)), 0.0)
        d = plogp - (np.where(mask, probs, 0.0) @ logq)
        lo = float(r @ d)
        hi = float(d.max())
        if hi - lo < 1e-14:
            break
        w = r * np.exp(d - hi)
        r = w / w.sum()
    return 0.5 * (lo + hi) / LN2


def h2(p: float) -> float:
    """Binary entropy in bits."""
    if p in (0.0, 1.0):
        return 0.0
    return float(-(p * np.log2(p) + (1 - p) * np.log2(1 - p)))


# ---------------------------------------------------------------------------
# generators


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank random density matrix (Wishart-style)."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T + 1e-3 * np.eye(dim)
    return m / np.trace(m).real


def random_commuting_elements(dim: int, outcomes: int, rng: np.random.Generator) -> np.ndarray:
    """POVM elements diagonal in a random common basis."""
    u = random_unitary(dim, rng)
    w = rng.random((outcomes, dim)) + 0.05
    w = w / w.sum(axis=0)
    return np.stack([(u * w[j]) @ u.conj().T for j in range(outcomes)])


def random_pure_vectors(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1)[:, None]


def random_rank_one_elements(
    dim: int, outcomes: int, rng: np.random.Generator, real: bool = False
) -> np.ndarray:
    """Rank-one POVM elements from square-root-normalized random directions.

    With ``outcomes`` Gaussian directions g_j (``outcomes >= dim`` so their
    Gram operator T is invertible), the elements T^{-1/2} |g_j><g_j| T^{-1/2}
    are rank one and sum to the identity.
    """
    if real:
        g = rng.standard_normal((outcomes, dim))
    else:
        g = rng.standard_normal((outcomes, dim)) + 1j * rng.standard_normal((outcomes, dim))
    a = np.einsum("jd,jc->jdc", g, g.conj())
    t = a.sum(axis=0)
    w, v = np.linalg.eigh(t)
    ti = (v / np.sqrt(w)) @ v.conj().T
    return np.einsum("dc,jce,ef->jdf", ti, a, ti)


def top_eigenvector(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    return v[:, -1]


def fd_state_gradient(ensemble, povm, i: int, h: float = 1e-6) -> np.ndarray:
    """Central finite differences of I (nats) in the i-th member's amplitudes.

    Perturbations are renormalized before evaluating, so this approximates
    the gradient restricted to the unit sphere.
    """
    vectors = np.stack([np.linalg.eigh(s.matrix)[1][:, -1] for s in ensemble.states])

    def value(v: np.ndarray) -> float:
        vecs = vectors.copy()
        vecs[i] = v / np.linalg.norm(v)
        return mi_bits_pure(ensemble.priors, vecs, povm.elements) * LN2

    dim = vectors.shape[1]
    g = np.zeros(dim, dtype=complex)
    for k in range(dim):
        for unit in (1.0, 1j):
            ek = np.zeros(dim, dtype=complex)
            ek[k] = unit
            deriv = (value(vectors[i] + h * ek) - value(vectors[i] - h * ek)) / (2 * h)
            g[k] += unit * deriv
    return g


# ---------------------------------------------------------------------------
# closed forms for the structured instances

SIC_W_BITS = float(np.log2(4.0 / 3.0))  # 0.41503749927884381
TRINE_W_BITS = float(np.log2(3.0 / 2.0))  # 0.5849625007211562


def trine_bruteforce_oracle_bits(
    elements: np.ndarray, n_inits: int = 10000, seed: int = 20260816
) -> float:
    """Independent dense multistart estimate of W for a qubit 3-outcome POVM.

    Anti-trine ansatz (closed-form candidate) plus ``n_inits`` random
    2-state and 3-state ensembles, each locally optimized by alternating
    exact-prior updates (tiny standalone Blahut-Arimoto) with fixed-step
    projected gradient ascent on the states. Returns the best value found.
    """
    rng = np.random.default_rng(seed)

    def channel(vecs: np.ndarray) -> np.ndarray:
        # (batch, M, 2) vectors -> (batch, M, N) outcome probabilities
        return np.clip(
            np.einsum("bid,jdc,bic->bij", vecs.conj(), elements, vecs).real, 0.0, 1.0
        )

    def batch_value_and_priors(
        vecs: np.ndarray, priors: np.ndarray, ba_iters: int
    ) -> tuple[np.ndarray, np.ndarray]:
        probs = channel(vecs)
        mask = probs > 0
        plogp = np.where(mask, probs * np.log(np.where(mask, probs, 1.0)), 0.0).sum(axis=2)
        logp = np.where(mask, np.log(np.where(mask, probs, 1.0)), 0.0)
        r = priors
        for _ in range(ba_iters):
            q = np.einsum("bi,bij->bj", r, probs)
            logq = np.where(q > 0, np.log(np.where(q > 0, q, 1.0)), 0.0)
            d = plogp - np.einsum("bij,bj->bi", np.where(mask, probs, 0.0), logq)
            w = r * np.exp(d - d.max(axis=1, keepdims=True))
            r = w / w.sum(axis=1, keepdims=True)
        q = np.einsum("bi,bij->bj", r, probs)
        logq = np.where(q > 0, np.log(np.where(q > 0, q, 1.0)), 0.0)
        d = plogp - np.einsum("bij,bj->bi", np.where(mask, probs, 0.0), logq)
        del logp
        return np.einsum("bi,bi->b", r, d), r

    def gradient_step(vecs: np.ndarray, priors: np.ndarray, step: float) -> np.ndarray:
        probs = channel(vecs)
        q = np.einsum("bi,bij->bj", priors, probs)
        both = (probs > 0) & (q[:, None, :] > 0)
        lr = np.where(
            both,
            np.log(np.where(probs > 0, probs, 1.0)) - np.log(np.where(q > 0, q, 1.0))[:, None, :],
            0.0,
        )
        g = 2.0 * priors[..., None] * np.einsum("bij,jdc,bic->bid", lr, elements, vecs)
        radial = np.sum(np.real(vecs.conj() * g), axis=2)
        g = g - radial[..., None] * vecs
        out = vecs + step * g
        return out / np.linalg.norm(out, axis=2, keepdims=True)

    best = -np.inf
    for m in (2, 3):
        n_batch = n_inits // 2
        vecs = rng.standard_normal((n_batch, m, 2)) + 1j * rng.standard_normal((n_batch, m, 2))
        vecs = vecs / np.linalg.norm(vecs, axis=2, keepdims=True)
        priors = np.full((n_batch, m), 1.0 / m)
        for _ in range(60):
            _, priors = batch_value_and_priors(vecs, priors, 30)
            vecs = gradient_step(vecs, priors, 0.5)
        vals, priors = batch_value_and_priors(vecs, priors, 400)
        best = max(best, float(vals.max()))

    # anti-trine ansatz: per element, the state orthogonal to its range
    # (bottom eigenvector), uniform priors; for the trine this achieves
    # log2(3/2) in closed form and anchors the oracle from below
    anti = np.stack([np.linalg.eigh(m)[1][:, 0] for m in elements])
    vals, _ = batch_value_and_priors(anti[None, :, :], np.full((1, 3), 1.0 / 3), 2000)
    best = max(best, float(vals[0]))
    return best / LN2
