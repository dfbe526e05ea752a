"""Dense complex matrix substrate: SVD, polar decomposition, traces,
the Hilbert-Schmidt inner product and powers of positive matrices.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DomainError, NumericalFailure, ShapeError

# relative factor of the PSD clipping threshold
CLIP_REL = 1e-12


def as_matrix(X) -> np.ndarray:
    """Coerce ``X`` to a finite 2-D complex array (a copy is not forced)."""
    A = np.asarray(X, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError("matrix has non-finite entries")
    return A


def _require_square(A: np.ndarray) -> None:
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")


def clip_threshold(largest: float) -> float:
    """Absolute threshold below which spectral values are treated as zero."""
    return CLIP_REL * max(1.0, float(largest))


class PolarParts(NamedTuple):
    """Factors of ``X = U @ P`` with ``P = |X|`` and ``ker U = ker P``."""

    U: np.ndarray
    P: np.ndarray


class _SVD(NamedTuple):
    W: np.ndarray  # left singular vectors (columns)
    s: np.ndarray  # descending singular values
    V: np.ndarray  # right singular vectors (columns)
    rank: int


def _svd(X: np.ndarray) -> _SVD:
    try:
        W, s, Vh = np.linalg.svd(X)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc
    V = Vh.conj().T
    k = s.shape[0]
    W = W[:, :k].copy()
    V = V[:, :k].copy()
    # first non-negligible component of each right singular vector made real positive
    for i in range(k):
        v = V[:, i]
        j = int(np.argmax(np.abs(v) > 1e-8 * np.abs(v).max()))
        if v[j] != 0:
            phase = np.conj(v[j]) / abs(v[j])
            V[:, i] *= phase
            W[:, i] *= phase
    rank = int(np.count_nonzero(s > clip_threshold(s[0] if k else 0.0)))
    return _SVD(W, s, V, rank)


def singular_values(X) -> np.ndarray:
    """Singular values of ``X`` in descending order (length ``min(rows, cols)``)."""
    A = as_matrix(X)
    try:
        s = np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc
    return np.sort(s)[::-1]


def polar_decompose(X) -> PolarParts:
    """Polar decomposition ``X = U|X|`` of a square matrix.

    ``U`` is the partial isometry that vanishes on ``ker |X|``, which makes
    the decomposition unique. Singular values below
    ``1e-12 * max(1, s_max)`` count as zero.
    """
    A = as_matrix(X)
    _require_square(A)
    return _polar_from_svd(_svd(A))


def _polar_from_svd(d: _SVD) -> PolarParts:
    r = d.rank
    Wr, Vr, sr = d.W[:, :r], d.V[:, :r], d.s[:r]
    U = Wr @ Vr.conj().T
    P = (Vr * sr) @ Vr.conj().T
    P = 0.5 * (P + P.conj().T)
    return PolarParts(U, P)


def modulus(X) -> np.ndarray:
    """``|X| = (X*X)^{1/2}``."""
    return polar_decompose(X).P


def adjoint_modulus(X) -> np.ndarray:
    """``|X*| = U|X|U*``."""
    U, P = polar_decompose(X)
    M = U @ P @ U.conj().T
    return 0.5 * (M + M.conj().T)


def trace(X) -> complex:
    A = as_matrix(X)
    _require_square(A)
    return complex(np.trace(A))


def hs_inner(Y, X) -> complex:
    """Hilbert-Schmidt inner product ``<Y, X>_2 = tr(X* Y)``.

    Linear in ``Y`` and conjugate-linear in ``X``.
    """
    A, B = as_matrix(Y), as_matrix(X)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch {A.shape} vs {B.shape}")
    return complex(np.vdot(B, A))


def hs_norm(X) -> float:
    return float(np.linalg.norm(as_matrix(X)))


def trace_product(A: np.ndarray, B: np.ndarray) -> complex:
    """``tr(A @ B)`` without forming the product."""
    return complex(np.einsum("ij,ji->", A, B))


def is_hermitian(P, rtol: float = 1e-10) -> bool:
    A = as_matrix(P)
    if A.shape[0] != A.shape[1]:
        return False
    scale = max(1.0, float(np.abs(A).max()))
    return bool(np.abs(A - A.conj().T).max() <= rtol * scale)


def psd_power(P, exponent: float) -> np.ndarray:
    """Fractional power ``P^t`` of a positive semidefinite Hermitian matrix.

    Eigenvalues below ``1e-12 * max(1, lambda_max)`` are mapped to 0, so
    ``0^t = 0`` and round-off negatives never produce NaN.

    Raises
    ------
    DomainError
        ``P`` is not Hermitian, is clearly indefinite, or ``exponent <= 0``.
    """
    A = as_matrix(P)
    _require_square(A)
    if not exponent > 0:
        raise DomainError(f"exponent must be positive, got {exponent}")
    if not is_hermitian(A):
        raise DomainError("matrix is not Hermitian")
    if np.count_nonzero(A - np.diag(np.diag(A))) == 0:
        w = np.diag(A).real
        tau = clip_threshold(w.max())
        _check_psd(w, tau)
        w = np.where(w > tau, w, 0.0)
        return np.diag(w**exponent).astype(np.complex128)
    A = 0.5 * (A + A.conj().T)
    try:
        w, Q = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigendecomposition failed: {exc}") from exc
    tau = clip_threshold(w.max())
    _check_psd(w, tau)
    w = np.where(w > tau, w, 0.0)
    R = (Q * w**exponent) @ Q.conj().T
    return 0.5 * (R + R.conj().T)


def _check_psd(w: np.ndarray, tau: float) -> None:
    # round-off negatives are tolerated well beyond the clipping threshold
    if w.min() < -1e-8 * max(1.0, abs(w).max()):
        raise DomainError(f"matrix is not positive semidefinite (min eigenvalue {w.min():.3e})")


def is_psd(P, rtol: float = 1e-8) -> bool:
    A = as_matrix(P)
    if not is_hermitian(A):
        return False
    w = np.linalg.eigvalsh(0.5 * (A + A.conj().T))
    return bool(w.min() >= -rtol * max(1.0, abs(w).max()))
