"""Schatten p-norms and the semi-inner product ``[Y, X]_p``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .errors import DegenerateOperand, DomainError, ShapeError


@dataclass(frozen=True)
class SchattenContext:
    """Exponent ``p > 1`` plus the tolerances used by every predicate.

    Two reals are considered equal when
    ``|a - b| <= tol_abs + tol_rel * max(|a|, |b|)``.
    """

    p: float
    tol_rel: float = 1e-9
    tol_abs: float = 1e-12

    def __post_init__(self):
        p = float(self.p)
        if not np.isfinite(p) or p <= 1.0:
            raise DomainError(f"p must be a finite real > 1, got {self.p}")
        if not (self.tol_rel > 0 and self.tol_abs > 0):
            raise DomainError("tolerances must be positive")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> float:
        """Dual exponent, ``1/p + 1/q = 1``."""
        return self.p / (self.p - 1.0)

    def tol(self, *scales: float) -> float:
        return self.tol_abs + self.tol_rel * max((abs(s) for s in scales), default=0.0)

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.tol(a, b)


def as_context(ctx) -> SchattenContext:
    """Accept either a :class:`SchattenContext` or a bare exponent."""
    if isinstance(ctx, SchattenContext):
        return ctx
    return SchattenContext(float(ctx))


def _norm_from_sv(s: np.ndarray, p: float) -> float:
    smax = float(s.max()) if s.size else 0.0
    if smax == 0.0:
        return 0.0
    # scaled to avoid overflow/underflow at large p
    return smax * float(np.sum((s / smax) ** p)) ** (1.0 / p)


def schatten_norm(X, ctx) -> float:
    """``||X||_p = (sum_n s_n(X)^p)^{1/p}``, from singular values."""
    ctx = as_context(ctx)
    return _norm_from_sv(linalg.singular_values(X), ctx.p)


@dataclass(frozen=True)
class SipValue:
    """Semi-inner product ``[Y, X]_p`` together with its normalisations.

    ``alpha`` and ``beta`` are ``None`` when ``Y = 0``.
    """

    value: complex
    norm_x: float
    norm_y: float
    alpha: Optional[complex]
    beta: Optional[float]


class _Prepared:
    """Polar data of the second sip argument, computed once."""

    __slots__ = ("X", "U", "P", "norm", "weight", "p")

    def __init__(self, X, p: float):
        A = linalg.as_matrix(X)
        if A.shape[0] != A.shape[1]:
            raise ShapeError(f"expected a square matrix, got shape {A.shape}")
        d = linalg._svd(A)
        self.X = A
        self.p = p
        self.norm = _norm_from_sv(d.s, p)
        if d.rank == 0 or self.norm == 0.0:
            raise DegenerateOperand("semi-inner product [., X]_p needs X != 0")
        self.U, self.P = linalg._polar_from_svd(d)
        r = d.rank
        Vr, sr, Wr = d.V[:, :r], d.s[:r], d.W[:, :r]
        # |X|^{p-1} U* = V diag(s^{p-1}) W*
        self.weight = (Vr * sr ** (p - 1.0)) @ Wr.conj().T

    def bracket(self, Y: np.ndarray) -> complex:
        if Y.shape != self.X.shape:
            raise ShapeError(f"shape mismatch {Y.shape} vs {self.X.shape}")
        return self.norm ** (2.0 - self.p) * linalg.trace_product(self.weight, Y)


def sip_value(Y, X, ctx) -> complex:
    """Raw value of ``[Y, X]_p = ||X||_p^{2-p} tr(|X|^{p-1} U* Y)``."""
    ctx = as_context(ctx)
    return _Prepared(X, ctx.p).bracket(linalg.as_matrix(Y))


def sip(Y, X, ctx) -> SipValue:
    """Semi-inner product ``[Y, X]_p`` with norms, ``alpha`` and ``beta``.

    Linear in ``Y``; ``sip(X, X).value == ||X||_p**2``.

    Raises
    ------
    DegenerateOperand
        ``X`` is zero.
    ShapeError
        ``X`` not square or shapes differ.
    """
    ctx = as_context(ctx)
    prep = _Prepared(X, ctx.p)
    B = linalg.as_matrix(Y)
    value = prep.bracket(B)
    norm_y = schatten_norm(B, ctx)
    if norm_y == 0.0:
        return SipValue(value, prep.norm, 0.0, None, None)
    a = value / (prep.norm * norm_y)
    return SipValue(value, prep.norm, norm_y, a, float(a.real))


def alpha(Y, X, ctx) -> complex:
    """``alpha_{Y,X} = [Y, X]_p / (||X||_p ||Y||_p)``."""
    v = sip(Y, X, ctx)
    if v.alpha is None:
        raise DegenerateOperand("alpha needs Y != 0")
    return v.alpha


def beta(Y, X, ctx) -> float:
    """``beta_{Y,X} = Re(alpha_{Y,X})``."""
    return alpha(Y, X, ctx).real


def gateaux_derivative(X, Y, ctx) -> float:
    """``g(X, Y) = Re [Y, X]_p``.

    Equals ``||X||_p`` times the one-sided derivative of ``t -> ||X + tY||_p``
    at ``t = 0``.
    """
    return float(sip_value(Y, X, ctx).real)
