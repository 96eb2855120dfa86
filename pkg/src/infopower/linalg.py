"""Dense complex Hermitian linear algebra primitives.

Everything here operates on plain ``numpy.ndarray`` values. Inputs are
symmetrized (``(m + m†)/2``) before decomposition so that roundoff-level
Hermiticity violations never reach the eigensolver.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatch,
    EigendecompositionError,
    NotCommuting,
    NotPositiveSemidefinite,
    ZeroOperator,
)

PSD_TOL = -1e-10
DEFAULT_RANK_TOL = 1e-12


def hermitize(m: np.ndarray) -> np.ndarray:
    """Return the Hermitian part (m + m†)/2 as a complex array."""
    m = np.asarray(m, dtype=complex)
    return 0.5 * (m + m.conj().T)


def eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and orthonormal
    eigenvectors in the columns of ``v``, so ``m = v @ diag(w) @ v†``.

    Raises
    ------
    EigendecompositionError
        If the LAPACK routine fails to converge; the message carries the
        matrix norm and dimension for diagnosis.
    """
    h = hermitize(m)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigendecompositionError(
            f"eigh failed to converge on a {h.shape[0]}x{h.shape[0]} matrix "
            f"with Frobenius norm {np.linalg.norm(h):.3e}: {exc}"
        ) from exc
    return w, v


def matrix_sqrt(m: np.ndarray) -> np.ndarray:
    """Principal square root of a PSD Hermitian matrix.

    Eigenvalues within ``PSD_TOL`` of zero are clamped to 0.

    Raises
    ------
    NotPositiveSemidefinite
        If any eigenvalue lies below ``PSD_TOL``.
    """
    w, v = eigh(m)
    if w[0] < PSD_TOL:
        raise NotPositiveSemidefinite(
            f"matrix_sqrt: eigenvalue {w[0]:.3e} below tolerance {PSD_TOL:.0e}"
        )
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def pinv_sqrt(m: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Pseudo-inverse square root of a PSD Hermitian matrix.

    Eigenvalues above ``rank_tol * max(eigenvalue)`` map to ``1/sqrt``,
    the rest to 0, so the result acts only on the support of ``m``.

    Raises
    ------
    ZeroOperator
        If ``m`` has no eigenvalue above the rank cutoff.
    NotPositiveSemidefinite
        If any eigenvalue lies below ``PSD_TOL``.
    """
    w, v = eigh(m)
    if w[0] < PSD_TOL:
        raise NotPositiveSemidefinite(
            f"pinv_sqrt: eigenvalue {w[0]:.3e} below tolerance {PSD_TOL:.0e}"
        )
    cutoff = rank_tol * max(w[-1], 0.0)
    keep = w > cutoff
    if not keep.any():
        raise ZeroOperator("pinv_sqrt of the zero matrix is undefined")
    inv = np.where(keep, 1.0 / np.sqrt(np.where(keep, w, 1.0)), 0.0)
    return (v * inv) @ v.conj().T


def support_projector(m: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Orthogonal projector onto the support (range) of a PSD matrix."""
    w, v = eigh(m)
    keep = w > rank_tol * max(w[-1], 0.0)
    if not keep.any():
        return np.zeros_like(np.asarray(m, dtype=complex))
    vk = v[:, keep]
    return vk @ vk.conj().T


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with row-major composite indexing (a-index major)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of the commutator ab - ba."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"commutator_norm: shapes {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a @ b - b @ a))


def _offdiag_residual(ms: list[np.ndarray], v: np.ndarray) -> float:
    worst = 0.0
    for m in ms:
        d = v.conj().T @ m @ v
        np.fill_diagonal(d, 0.0)
        worst = max(worst, float(np.max(np.abs(d))) if d.size else 0.0)
    return worst


def _refine_sequentially(ms: list[np.ndarray]) -> np.ndarray:
    """Diagonalize ms one by one, splitting degenerate eigenspaces."""
    dim = ms[0].shape[0]
    v = np.eye(dim, dtype=complex)
    blocks = [np.arange(dim)]
    for m in ms:
        new_blocks = []
        for idx in blocks:
            sub = v[:, idx].conj().T @ m @ v[:, idx]
            w, u = eigh(sub)
            v[:, idx] = v[:, idx] @ u
            # split the block wherever consecutive eigenvalues separate
            start = 0
            for k in range(1, len(idx)):
                if w[k] - w[k - 1] > 1e-9 * max(1.0, abs(w[-1])):
                    new_blocks.append(idx[start:k])
                    start = k
            new_blocks.append(idx[start:])
        blocks = new_blocks
    return v


def simultaneous_eigenbasis(
    ms: list[np.ndarray],
    tol: float = 1e-10,
    residual_tol: float = 1e-8,
    seed: int = 0,
) -> np.ndarray:
    """Common orthonormal eigenbasis of a family of commuting Hermitian matrices.

    Diagonalizes a random real linear combination of the inputs and verifies
    that it diagonalizes every member to off-diagonal magnitude below
    ``residual_tol``; retries with fresh coefficients up to 5 times, then
    falls back to sequential eigenspace refinement.

    Returns the basis as columns of a unitary matrix.

    Raises
    ------
    NotCommuting
        If any pair has ``commutator_norm`` above ``tol``.
    """
    ms = [hermitize(m) for m in ms]
    if not ms:
        raise ValueError("simultaneous_eigenbasis: empty matrix list")
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            c = commutator_norm(ms[i], ms[j])
            if c > tol:
                raise NotCommuting(
                    f"matrices {i} and {j} have commutator norm {c:.3e} > {tol:.0e}"
                )
    rng = np.random.default_rng(seed)
    for _ in range(5):
        coeffs = rng.standard_normal(len(ms))
        _, v = eigh(sum(c * m for c, m in zip(coeffs, ms)))
        if _offdiag_residual(ms, v) <= residual_tol:
            return v
    v = _refine_sequentially(ms)
    res = _offdiag_residual(ms, v)
    if res > residual_tol:
        raise NotCommuting(
            f"simultaneous diagonalization residual {res:.3e} exceeds {residual_tol:.0e}"
        )
    return v
