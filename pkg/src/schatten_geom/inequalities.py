"""Cauchy-Schwarz inequality for ``[., .]_p``, its refinement by a
Hilbert-Schmidt witness ``Z``, and the identities behind them.

With ``X = U|X|`` and ``Y = V|Y|`` the two Hilbert-Schmidt operators

    A = |X|^{(p-1)/2} |Y|^{1/2}
    B = |X|^{(p-1)/2} U* V |Y|^{1/2}

satisfy ``[Y, X]_p = ||X||_p^{2-p} <B, A>_2``, and the bound follows from
Cauchy-Schwarz in the Hilbert-Schmidt space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DegenerateOperand, DomainError, HypothesisViolation, ShapeError
from .schatten import SchattenContext, as_context, schatten_norm, sip_value


@dataclass(frozen=True)
class RefinementPair:
    A: np.ndarray
    B: np.ndarray


@dataclass(frozen=True)
class WitnessResult:
    Z: np.ndarray
    delta: float
    cs_lhs: float
    cs_rhs: float
    slack: float


@dataclass(frozen=True)
class NoWitness:
    reason: str


def _check_pair(X, Y):
    A, B = linalg.as_matrix(X), linalg.as_matrix(Y)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch {A.shape} vs {B.shape}")
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected square matrices, got {A.shape}")
    if not np.any(A) or not np.any(B):
        raise DegenerateOperand("X and Y must be nonzero")
    return A, B


def refinement_pair(X, Y, ctx) -> RefinementPair:
    """Build ``A = |X|^{(p-1)/2}|Y|^{1/2}`` and ``B = |X|^{(p-1)/2}U*V|Y|^{1/2}``."""
    ctx = as_context(ctx)
    X, Y = _check_pair(X, Y)
    U, Px = linalg.polar_decompose(X)
    V, Py = linalg.polar_decompose(Y)
    left = linalg.psd_power(Px, 0.5 * (ctx.p - 1.0))
    right = linalg.psd_power(Py, 0.5)
    return RefinementPair(A=left @ right, B=left @ U.conj().T @ V @ right)


def cs_rhs_factors(X, Y, ctx) -> tuple[float, float]:
    """``([|Y*|, |X*|]_p, [|Y|, |X|]_p)``; both are real and non-negative."""
    ctx = as_context(ctx)
    X, Y = _check_pair(X, Y)
    U, Px = linalg.polar_decompose(X)
    V, Py = linalg.polar_decompose(Y)
    Qx = U @ Px @ U.conj().T
    Qy = V @ Py @ V.conj().T
    adj = sip_value(0.5 * (Qy + Qy.conj().T), 0.5 * (Qx + Qx.conj().T), ctx)
    mod = sip_value(Py, Px, ctx)
    return float(adj.real), float(mod.real)


def cs_inequality(X, Y, ctx) -> tuple[float, float]:
    """Return ``(|[Y,X]_p|^2, [|Y*|,|X*|]_p [|Y|,|X|]_p)``; the first never
    exceeds the second (up to round-off)."""
    ctx = as_context(ctx)
    X, Y = _check_pair(X, Y)
    lhs = abs(sip_value(Y, X, ctx)) ** 2
    f_adj, f_mod = cs_rhs_factors(X, Y, ctx)
    return lhs, f_adj * f_mod


def delta_p(Z, X, Y, ctx, pair: RefinementPair | None = None) -> float:
    """``|<B, Z>_2|^2 ||A||_2^2 ||X||_p^{4-2p}``.

    ``Z`` is not required to be normalised here; :func:`refined_cs` checks
    the hypotheses.
    """
    ctx = as_context(ctx)
    X, Y = _check_pair(X, Y)
    Zm = linalg.as_matrix(Z)
    if Zm.shape != X.shape:
        raise ShapeError(f"witness shape {Zm.shape} does not match {X.shape}")
    pair = pair or refinement_pair(X, Y, ctx)
    nx = schatten_norm(X, ctx)
    return (
        abs(linalg.hs_inner(pair.B, Zm)) ** 2
        * linalg.hs_norm(pair.A) ** 2
        * nx ** (4.0 - 2.0 * ctx.p)
    )


def refined_cs(X, Y, Z, ctx) -> WitnessResult:
    """Evaluate ``|[Y,X]_p|^2 + delta_p(Z) <= [|Y*|,|X*|]_p [|Y|,|X|]_p``.

    Raises
    ------
    HypothesisViolation
        ``||Z||_2 != 1`` or ``<Z, A>_2 != 0`` beyond tolerance.
    """
    ctx = as_context(ctx)
    X, Y = _check_pair(X, Y)
    Zm = linalg.as_matrix(Z)
    pair = refinement_pair(X, Y, ctx)
    nz = linalg.hs_norm(Zm)
    if abs(nz - 1.0) > ctx.tol(1.0):
        raise HypothesisViolation(f"witness must have unit Hilbert-Schmidt norm, got {nz!r}")
    overlap = abs(linalg.hs_inner(Zm, pair.A))
    if overlap > ctx.tol(linalg.hs_norm(pair.A)):
        raise HypothesisViolation(f"witness not orthogonal to A (|<Z, A>| = {overlap:.3e})")
    return _witness_result(X, Y, Zm, pair, ctx)


def _witness_result(X, Y, Z, pair, ctx) -> WitnessResult:
    lhs, rhs = cs_inequality(X, Y, ctx)
    d = delta_p(Z, X, Y, ctx, pair)
    return WitnessResult(Z=Z, delta=d, cs_lhs=lhs, cs_rhs=rhs, slack=rhs - lhs - d)


def find_witness(X, Y, ctx) -> WitnessResult | NoWitness:
    """Unit ``Z ⊥ A`` maximising ``delta_p``: the normalised component of
    ``B`` orthogonal to ``A``.

    Returns :class:`NoWitness` when ``B`` lies in ``span{A}`` (no genuine
    refinement exists) or when ``A = 0`` (disjoint moduli, everything vanishes).
    """
    ctx = as_context(ctx)
    X, Y = _check_pair(X, Y)
    pair = refinement_pair(X, Y, ctx)
    A, B = pair.A, pair.B
    na = linalg.hs_norm(A)
    if na <= ctx.tol(linalg.hs_norm(B)) or na == 0.0:
        return NoWitness("disjoint moduli")
    Bp = B.copy()
    # two Gram-Schmidt passes keep <Z, A> at round-off level even when B is nearly parallel to A
    for _ in range(2):
        Bp = Bp - (linalg.hs_inner(Bp, A) / na**2) * A
    nbp = linalg.hs_norm(Bp)
    if nbp == 0.0:
        return NoWitness("B lies in span{A}")
    Z = Bp / nbp
    res = _witness_result(X, Y, Z, pair, ctx)
    if res.delta <= ctx.tol_abs + ctx.tol_rel * res.cs_rhs:
        return NoWitness("B lies in span{A}")
    return res


def zero_product_equivalences(A_psd, B_psd, ctx: SchattenContext | float | None = None) -> bool:
    """Check that ``tr(AB) = 0``, ``||B^{1/2}A^{1/2}||_2 = 0``,
    ``B^{1/2}A^{1/2} = 0`` and ``BA = 0`` are all true or all false.

    Raises
    ------
    DomainError
        Either input is not positive semidefinite.
    """
    tol = as_context(ctx).tol_rel if ctx is not None else 1e-9
    A, B = linalg.as_matrix(A_psd), linalg.as_matrix(B_psd)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch {A.shape} vs {B.shape}")
    if not (linalg.is_psd(A) and linalg.is_psd(B)):
        raise DomainError("zero_product_equivalences needs positive semidefinite inputs")
    return len(set(zero_product_conditions(A, B, tol).values())) == 1


def zero_product_conditions(A, B, tol: float = 1e-9) -> dict:
    """The four conditions individually; squared quantities share one threshold."""
    scale = linalg.hs_norm(A) * linalg.hs_norm(B)
    thr = tol * scale + 1e-300
    ra, rb = linalg.psd_power(A, 0.5), linalg.psd_power(B, 0.5)
    C = rb @ ra
    return {
        "trace": abs(linalg.trace_product(A, B)) <= thr,
        "hs_norm": linalg.hs_norm(C) ** 2 <= thr,
        "root_product": float(np.abs(C).max()) ** 2 <= thr,
        "product": linalg.hs_norm(B @ A) <= np.sqrt(thr * scale),
    }


def hilbert_cs_refinement(v: np.ndarray, w: np.ndarray, z: np.ndarray) -> tuple[float, float]:
    """For unit ``z ⊥ w`` in an inner product space return
    ``(|<v,w>|^2 + |<v,z>|^2 ||w||^2, ||v||^2 ||w||^2)``; first <= second."""
    v, w, z = (np.asarray(a, dtype=np.complex128).ravel() for a in (v, w, z))
    nw2 = float(np.vdot(w, w).real)
    lhs = abs(np.vdot(w, v)) ** 2 + abs(np.vdot(z, v)) ** 2 * nw2
    return lhs, float(np.vdot(v, v).real) * nw2
